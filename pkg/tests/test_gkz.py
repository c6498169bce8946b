import random

import pytest

from chowq.errors import DimensionMismatch, HypothesisViolated, NotAHyperplane, OutsideSupport, ScaleExceeded, ZeroVector
from chowq.gkz import (GkzRay, VectorConfig, extremal_columns, gkz_cone_at, gkz_fan_bruteforce, gkz_rays_corank2,
                       movable_cone, p_cones, perpendicular, rho)
from chowq.lattice import IntMat, kernel_basis, primitive_part
from chowq.polyhedral import Cone, Fan
from chowq.quadric import WeightSystem
from oracles import ONE_RAY_Q, REFERENCE_P, random_corank2

E1, E2 = (1, 0), (0, 1)
B1 = (-1, 0, -1, 1, 0)
reference = VectorConfig(IntMat.from_rows(REFERENCE_P), IntMat.from_rows(ONE_RAY_Q))


def config(p_columns):
    p = IntMat.from_columns(p_columns)
    return VectorConfig(p, kernel_basis(p))


def test_config_validation():
    with pytest.raises(DimensionMismatch):
        VectorConfig(IntMat.from_rows([[1, 0]]), IntMat.from_rows([[1, 1]]))
    with pytest.raises(DimensionMismatch):
        VectorConfig(IntMat.from_rows([[1, 0]]), IntMat.from_rows([[1, 1, 1]]))


def test_p_cones_small():
    cfg = config([E1, E2])
    assert set(p_cones(cfg)) == {Cone.zero(2), Cone([E1]), Cone([E2]), Cone([E1, E2])}
    cfg = config([(1,), (-1,)])
    assert set(p_cones(cfg)) == {Cone.zero(1), Cone([(1,)]), Cone([(-1,)]), Cone.full(1)}


def test_p_cones_count_for_reference_gale_dual():
    # distinct closures of the 128 column subsets, counted with a Caratheodory oracle
    assert len(p_cones(reference)) == 124


def test_gkz_cone_at_examples():
    assert gkz_cone_at(config([E1, E2]), (1, 1)) == Cone([E1, E2])
    cfg = config([E1, E2, (1, 1)])
    assert gkz_cone_at(cfg, (1, 2)) == Cone([E2, (1, 1)])
    assert gkz_cone_at(reference, B1) == Cone([B1])
    with pytest.raises(OutsideSupport):
        gkz_cone_at(config([E1, E2]), (-1, 0))


def test_extremal_columns_examples():
    q = IntMat.from_columns([E1, E1, E2, E2])
    cfg = VectorConfig(IntMat.from_rows([[1, -1, 0, 0], [0, 0, 1, -1]]), q)
    assert movable_cone(cfg) == Cone([E1, E2])
    assert extremal_columns(cfg) == {0, 1, 2, 3}
    # movable cone of (1,0),(1,1),(0,1),(-1,-1) is the ray through (1,1), worked out by hand
    cfg = VectorConfig.from_q(IntMat.from_columns([(1, 0), (1, 1), (0, 1), (-1, -1)]))
    assert movable_cone(cfg) == Cone([(1, 1)])
    assert extremal_columns(cfg) == {0, 2, 3}
    assert extremal_columns(reference) == {0, 1, 2, 3}


def test_extremal_columns_consistent_with_rays():
    rays = gkz_rays_corank2(reference)
    hyper = {r.origin[1] for r in rays if r.origin[0] == "hyperplane"}
    non_extremal = set(range(7)) - extremal_columns(reference)
    assert hyper <= non_extremal


def test_rho_examples():
    ray = rho(reference, perpendicular((0, 1)), 4)
    assert ray.generator == B1
    assert ray.coefficients == (2, 0, 1, 0, 0, 0, 0)
    assert rho(reference, (1, 0)).generator == B1
    with pytest.raises(NotAHyperplane):
        rho(reference, (1, 5))
    with pytest.raises(NotAHyperplane):
        rho(reference, (0, 0))
    # u(q_i) >= 0 for every column: sum of alpha_i p_i is P applied to a row of Q
    q = IntMat.from_columns([E1, E1, E2, E2])
    cfg = VectorConfig(IntMat.from_rows([[1, -1, 0, 0], [0, 0, 1, -1]]), q)
    with pytest.raises(ZeroVector):
        rho(cfg, (0, 1))


def test_rho_is_even():
    rng = random.Random(3)
    for _ in range(15):
        cfg = random_corank2(rng, rng.randint(4, 7))
        for q in cfg.q.columns():
            u = perpendicular(q)
            try:
                a = rho(cfg, u)
            except ZeroVector:
                continue
            b = rho(cfg, tuple(-x for x in u))
            assert a.generator == b.generator
            assert primitive_part(cfg.p @ a.coefficients) == a.generator


def test_corank2_rays_reference():
    rays = gkz_rays_corank2(reference)
    hyper = [r for r in rays if r.origin[0] == "hyperplane"]
    assert [r.generator for r in hyper] == [B1]
    assert [r.origin for r in rays[:7]] == [("column", i) for i in range(7)]
    assert GkzRay.from_json(hyper[0].to_json()) == hyper[0]


def test_corank2_all_extremal():
    cfg = VectorConfig.from_q([[-2, 0, 0, -3, 3], [1, 2, 1, 3, 1]])
    assert extremal_columns(cfg) == set(range(5))
    assert all(r.origin[0] == "column" for r in gkz_rays_corank2(cfg))


def test_corank2_hypotheses():
    with pytest.raises(HypothesisViolated, match="pairwise independent"):
        gkz_rays_corank2(VectorConfig.from_q(WeightSystem((0, 0, 0, 0, -1, 1)).extended_weight_matrix()))
    with pytest.raises(HypothesisViolated, match="corank two"):
        gkz_rays_corank2(VectorConfig.from_q([[1, 1, 1, 1]]))


def test_bruteforce_examples():
    fan = gkz_fan_bruteforce(config([E1, E2, (1, 1)]))
    assert set(fan.maximal_cones) == {Cone([E1, (1, 1)]), Cone([(1, 1), E2])}
    assert gkz_fan_bruteforce(config([E1, E2])) == Fan([Cone([E1, E2])])
    fan = gkz_fan_bruteforce(reference)
    cols = sorted({tuple(c) for c in reference.p.columns()})
    assert fan.rays() == sorted(cols + [B1])
    assert fan.is_fan()


def test_bruteforce_scale_limit():
    cfg = VectorConfig.from_q([[1] * 12])
    with pytest.raises(ScaleExceeded):
        gkz_fan_bruteforce(cfg)


def test_corank2_matches_bruteforce_sample():
    rng = random.Random(21)
    for _ in range(10):
        cfg = random_corank2(rng, rng.randint(4, 7))
        assert sorted(r.generator for r in gkz_rays_corank2(cfg)) == gkz_fan_bruteforce(cfg).rays()


def test_bruteforce_cones_follow_definition():
    rng = random.Random(4)
    for _ in range(4):
        cfg = random_corank2(rng, rng.randint(4, 6))
        fan = gkz_fan_bruteforce(cfg)
        for c in fan.all_cones():
            assert gkz_cone_at(cfg, c.interior_point()) == c
