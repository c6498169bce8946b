"""Command-line entry point ``chowq``.

Exit status 0 on success, 2 when the input is well formed but a hypothesis
or certificate fails (the report is still written), 1 for malformed input.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .corpus import corpus_jobs
from .errors import CertificateFailed, ChowqError, DimensionMismatch, HypothesisViolated, ParseError, RankDeficient
from .gkz import VectorConfig, extremal_columns, gkz_fan_bruteforce, gkz_rays_corank2
from .lattice import IntMat, gale_dual
from .lifting import transfer_principal_ideal, weak_b_lifting
from .polyhedral import quotient_fan
from .quadric import WeightSystem, cox_ring_of_chow_quotient, validate_hypotheses
from .tropres import mds_certificate

EXIT_OK, EXIT_MALFORMED, EXIT_FAILED = 0, 1, 2
MALFORMED = (ParseError, RankDeficient, DimensionMismatch)


class Failure(Exception):
    """A well-formed job whose mathematics did not go through."""

    def __init__(self, status: str, error: ChowqError, result=None, text: str = ""):
        self.status, self.error, self.result, self.text = status, error, result, text
        super().__init__(str(error))


def matrix_text(m: IntMat, indent: str = "  ") -> str:
    if not m.rows or not m.cols:
        return indent + f"({m.rows}x{m.cols} empty)"
    width = max(len(str(x)) for r in m.data for x in r)
    return "\n".join(indent + " ".join(str(x).rjust(width) for x in r) for r in m.data)


def _weights(payload) -> WeightSystem:
    return WeightSystem(io.read_weights(payload["weights"]))


# ---------------------------------------------------------------------------
# commands: payload -> (result, text)


def cmd_gale(payload):
    q = io.read_intmat(payload["q"], "q")
    p = gale_dual(q)
    text = "Q =\n" + matrix_text(q) + "\nP =\n" + matrix_text(p)
    return {"q": q.to_json(), "p": p.to_json()}, text


def cmd_gkz_rays(payload):
    if "weights" in payload:
        q = _weights(payload).extended_weight_matrix()
    else:
        q = io.read_intmat(payload["q"], "q")
    cfg = VectorConfig.from_q(q)
    try:
        rays = gkz_rays_corank2(cfg)
    except HypothesisViolated as exc:
        raise Failure("hypothesis_failed", exc, {"q": q.to_json(), "p": cfg.p.to_json()}) from None
    result = {"q": q.to_json(), "p": cfg.p.to_json(),
              "extremal": sorted(extremal_columns(cfg)),
              "rays": [r.to_json() for r in rays]}
    lines = ["P =", matrix_text(cfg.p), "rays:"]
    lines += [f"  {list(r.generator)}  {r.origin_tag}  coeffs {list(r.coefficients)}" for r in rays]
    if payload.get("bruteforce"):
        fan_rays = gkz_fan_bruteforce(cfg).rays()
        agree = set(fan_rays) == {r.generator for r in rays}
        result["bruteforce_rays"] = [[str(x) for x in g] for g in fan_rays]
        result["agree"] = agree
        lines.append(f"brute force agrees: {agree}")
    return result, "\n".join(lines)


def cmd_quotient_fan(payload):
    fan = io.read_fan(payload["fan"])
    p = io.read_intmat(payload["p"], "p")
    out = quotient_fan(fan, p)
    js = out.to_json()
    lines = [f"quotient fan in dimension {js['dim']}", "rays:"]
    lines += [f"  {i}: {[int(x) for x in r]}" for i, r in enumerate(js["rays"])]
    if js["lineality"]:
        lines.append(f"lineality: {[[int(x) for x in l] for l in js['lineality']]}")
    lines.append("maximal cones: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in js["cones"]))
    return {"fan": js}, "\n".join(lines)


def cmd_transfer(payload):
    g = io.read_laurent(payload["g"], payload.get("vars"))
    p = io.read_intmat(payload["p"], "p")
    b = io.read_intmat(payload["b"], "b")
    if g.num_vars != p.cols:
        raise ParseError(f"field g: {g.num_vars} variables but p has {p.cols} columns", field="g")
    names = payload.get("new_vars")
    if names is not None and len(names) != b.cols:
        raise ParseError("field new_vars: one name per column of b is required", field="new_vars")
    g2 = transfer_principal_ideal(g, p, b, names)
    lift = weak_b_lifting(p, b)
    text = f"g = {g.to_text()}\ng2 = {g2.to_text()}\nmultipliers: {list(lift.m)}"
    return {"relation": g2.to_json(), "relation_text": g2.to_text(), "lifting": lift.to_json()}, text


def cmd_coxring(payload):
    w = _weights(payload)
    report = validate_hypotheses(w)
    if not report.passed:
        err = HypothesisViolated(", ".join(report.failures()), "see hypotheses")
        text = "hypotheses failed: " + ", ".join(report.failures())
        raise Failure("hypothesis_failed", err, {"hypotheses": report.to_json()}, text)
    try:
        pres = cox_ring_of_chow_quotient(w)
    except CertificateFailed as exc:
        raise Failure("certificate_failed", exc, {"hypotheses": report.to_json()}) from None
    return pres.to_json(), pres.to_text()


def cmd_tropres(payload):
    w = _weights(payload)
    rep = mds_certificate(w)
    if not rep.certified:
        raise Failure("certificate_failed", CertificateFailed("MoriDream=Uncertified"),
                      rep.to_json(), rep.to_text())
    return rep.to_json(), rep.to_text()


COMMANDS = {"gale": cmd_gale, "gkz-rays": cmd_gkz_rays, "quotient-fan": cmd_quotient_fan,
            "transfer": cmd_transfer, "coxring": cmd_coxring, "tropres": cmd_tropres}


def _status_for(exc: ChowqError) -> str:
    return "certificate_failed" if isinstance(exc, CertificateFailed) else "hypothesis_failed"


def execute(command: str, payload: dict, source: str = "<input>") -> tuple[int, dict, str]:
    """Validate and run one job; returns (exit status, envelope, text)."""
    io.validate(payload, command, source)
    env = {"schema_version": io.SCHEMA_VERSION, "command": command}
    try:
        result, text = COMMANDS[command](payload)
    except Failure as f:
        env.update(status=f.status, result=f.result, error=_error_json(f.error))
        text = f.text or f"{f.status.replace('_', ' ')}: {f.error}"
        return EXIT_FAILED, env, text
    except MALFORMED:
        raise
    except ChowqError as exc:
        env.update(status=_status_for(exc), result=None, error=_error_json(exc))
        return EXIT_FAILED, env, f"{_status_for(exc).replace('_', ' ')}: {type(exc).__name__}: {exc}"
    env.update(status="ok", result=result)
    return EXIT_OK, env, text


def _error_json(exc: ChowqError) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, HypothesisViolated):
        out["condition"] = str(exc.condition)
    return out


# ---------------------------------------------------------------------------
# argument handling


def _payload_from_args(args) -> tuple[dict, str]:
    if args.input:
        if args.input == "-":
            return io.loads(sys.stdin.read(), "<stdin>"), "<stdin>"
        return io.read_json(args.input), args.input
    payload = {"schema_version": io.SCHEMA_VERSION}
    if getattr(args, "weights", None):
        payload["weights"] = args.weights
    if getattr(args, "matrix", None):
        try:
            payload["q"] = [[x.strip() for x in row.split(",")] for row in args.matrix.split(";")]
        except ValueError:
            raise ParseError("--matrix expects rows like 1,0,2;0,1,1") from None
    if getattr(args, "bruteforce", False):
        payload["bruteforce"] = True
    return payload, "<command line>"


def _emit(args, env: dict, text: str) -> None:
    body = io.dumps(env) if args.format == "json" else text.rstrip("\n") + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(env))


def _run_corpus(args) -> int:
    jobs = corpus_jobs(args.seed, args.count)
    worst = EXIT_OK
    index = []
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for name, command, payload in jobs:
        code, env, _ = execute(command, payload)
        worst = max(worst, code)
        index.append({"name": name, "command": command, "status": env["status"]})
        if args.out:
            with open(os.path.join(args.out, f"{name}.{command}.input.json"), "w", encoding="utf-8") as fh:
                fh.write(io.dumps(payload))
            with open(os.path.join(args.out, f"{name}.{command}.output.json"), "w", encoding="utf-8") as fh:
                fh.write(io.dumps(env))
    env = {"schema_version": io.SCHEMA_VERSION, "command": "corpus",
           "status": "ok" if worst == EXIT_OK else "certificate_failed",
           "result": {"seed": args.seed, "count": args.count, "jobs": index}}
    text = "\n".join(f"{j['name']:>14} {j['command']:<9} {j['status']}" for j in index)
    _emit(args, env, text)
    return worst


class _Parser(argparse.ArgumentParser):
    """Usage errors count as malformed input (exit 1), not as exit 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chowq", description="Cox rings of Chow quotients of quadrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, weights=False, matrix=False):
        sp.add_argument("--input", "-i", help="JSON input file, '-' for stdin")
        if weights:
            sp.add_argument("--weights", help="comma-separated weights, e.g. -2,2,-1,1,0,0,0")
        if matrix:
            sp.add_argument("--matrix", help="integer matrix as rows separated by ';', e.g. 1,1,1;0,1,2")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")

    common(sub.add_parser("gale", help="Gale dual of an integer matrix"), matrix=True)
    sp = sub.add_parser("gkz-rays", help="GKZ rays of a corank-two configuration")
    common(sp, weights=True, matrix=True)
    sp.add_argument("--bruteforce", action="store_true", help="also build the whole fan and compare")
    common(sub.add_parser("quotient-fan", help="quotient fan along a lattice surjection"))
    common(sub.add_parser("transfer", help="transfer a principal ideal along new rays"))
    common(sub.add_parser("coxring", help="Cox ring of the Chow quotient of a quadric"), weights=True)
    common(sub.add_parser("tropres", help="tropical resolution and Mori dream certificate"), weights=True)
    sp = sub.add_parser("corpus", help="run the worked examples and seeded weight systems")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--out", help="directory for input and output files")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--output", "-o")
    sp.add_argument("--json", metavar="PATH")
    return parser


def _join_values(argv) -> list:
    """Attach values such as ``-2,2,-1,1`` to their flag so they are not read as options."""
    out, it = [], iter(argv)
    for a in it:
        if a in ("--weights", "--matrix"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_values(argv))
        if args.command == "corpus":
            return _run_corpus(args)
        payload, source = _payload_from_args(args)
        code, env, text = execute(args.command, payload, source)
    except (*MALFORMED, ValueError) as exc:
        print(f"chowq: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    _emit(args, env, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
