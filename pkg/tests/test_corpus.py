"""The regression corpus: worked examples plus 20 seeded weight systems, frozen byte for byte."""
from pathlib import Path

from chowq import io
from chowq.cli import execute, main
from chowq.corpus import corpus_jobs

FROZEN = Path(__file__).parent / "corpus"


def test_corpus_matches_frozen_outputs():
    jobs = corpus_jobs(0, 20)
    assert len(jobs) == 44
    names = set()
    for name, command, payload in jobs:
        stem = f"{name}.{command}"
        names.update({stem + ".input.json", stem + ".output.json"})
        assert (FROZEN / f"{stem}.input.json").read_text(encoding="utf-8") == io.dumps(payload)
        code, env, _ = execute(command, payload)
        assert code == 0, stem
        assert (FROZEN / f"{stem}.output.json").read_text(encoding="utf-8") == io.dumps(env), stem
    assert names == {p.name for p in FROZEN.iterdir()}


def test_corpus_command_is_deterministic(tmp_path, capsys):
    assert main(["corpus", "--seed", "3", "--count", "1", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    jobs = {f"{name}.{command}": (command, payload) for name, command, payload in corpus_jobs(3, 1)}
    for path in sorted(tmp_path.iterdir()):
        stem, kind = path.name.rsplit(".", 2)[0], path.name.rsplit(".", 2)[1]
        frozen = FROZEN / path.name
        if frozen.exists():
            assert path.read_bytes() == frozen.read_bytes(), path.name
        elif kind == "output":
            command, payload = jobs[stem]
            assert path.read_text(encoding="utf-8") == io.dumps(execute(command, payload)[1])
    assert len(list(tmp_path.iterdir())) == 2 * len(jobs)


def test_seeded_systems_differ_by_seed():
    first = [p for _, c, p in corpus_jobs(0, 3) if c == "coxring"]
    other = [p for _, c, p in corpus_jobs(1, 3) if c == "coxring"]
    assert first != other
