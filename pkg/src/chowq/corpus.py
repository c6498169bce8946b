"""Seeded weight systems and the worked examples used as a regression corpus."""
from __future__ import annotations

import random

from .quadric import WeightSystem, validate_hypotheses

ONE_RAY_WEIGHTS = (-2, 2, -1, 1, 0, 0, 0)
SUBDIVIDED_WEIGHTS = (-3, 3, -3, 3, -2, 2, -1, 1)
CUBIC_TRANSFER = {
    "schema_version": 1,
    "g": "T1*T2 + T3*T4 + T5*T6 + T7*T8",
    "vars": ["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8"],
    # columns e_0 = -(e_1 + ... + e_7), e_1, ..., e_7
    "p": [[-1] + [int(i == j) for j in range(7)] for i in range(7)],
    "b": [[1], [0], [1], [0], [0], [0], [0]],
}


def random_weight_system(rng: random.Random, r_range=(3, 7), max_weight: int = 4) -> WeightSystem:
    """Degree-zero weights: pairs (a, -a) in random order, 0 on the square for even r."""
    r = rng.randint(*r_range)
    zeta = []
    for _ in range((r + 1) // 2):
        a = rng.randint(0, max_weight)
        zeta.extend((-a, a) if rng.random() < 0.5 else (a, -a))
    if r % 2 == 0:
        zeta.append(0)
    return WeightSystem(tuple(zeta))


def valid_weight_systems(seed: int, count: int, **kw) -> list:
    """``count`` distinct weight systems passing every gating hypothesis."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        w = random_weight_system(rng, **kw)
        if w.zeta in seen or not validate_hypotheses(w).passed:
            continue
        seen.add(w.zeta)
        out.append(w)
    return out


def corpus_jobs(seed: int = 0, count: int = 20) -> list:
    """(name, command, input) triples: the worked examples, then seeded instances.

    The second worked example has only two weights of minimal absolute value,
    so it enters through the tropical pipeline alone.
    """
    jobs = [("one_ray", "coxring", {"schema_version": 1, "weights": [str(z) for z in ONE_RAY_WEIGHTS]}),
            ("one_ray", "tropres", {"schema_version": 1, "weights": [str(z) for z in ONE_RAY_WEIGHTS]}),
            ("cubic_transfer", "transfer", CUBIC_TRANSFER),
            ("subdivided", "tropres", {"schema_version": 1, "weights": [str(z) for z in SUBDIVIDED_WEIGHTS]})]
    for k, w in enumerate(valid_weight_systems(seed, count)):
        payload = {"schema_version": 1, "weights": [str(z) for z in w.zeta]}
        jobs.append((f"seed{seed}_{k:02d}", "coxring", payload))
        jobs.append((f"seed{seed}_{k:02d}", "tropres", payload))
    return jobs
