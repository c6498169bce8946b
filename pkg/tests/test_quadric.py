import random

import pytest

from chowq.errors import HypothesisViolated, InvalidWeights
from chowq.lattice import IntMat, gale_dual, row_lattices_equal
from chowq.laurent import LaurentPoly
from chowq.quadric import (CoxPresentation, WeightSystem, cox_ring_of_chow_quotient, designated_indices,
                           pair_order, reorder_weights, validate_hypotheses)
from oracles import REFERENCE_GRADING, REFERENCE_P, random_weights

ONE_RAY = WeightSystem((-2, 2, -1, 1, 0, 0, 0))


def names(r, l):
    return [f"T{i}" for i in range(r + 1)] + [f"S{j + 1}" for j in range(l)]


def check_invariants(w, cox):
    """Orthogonality, homogeneity, monomial-freeness and recovery of g1."""
    prov = cox.provenance
    p, b = IntMat.from_json(prov["p"]), IntMat.from_json(prov["b"])
    pb = p.hstack(b)
    assert (cox.grading @ pb.transpose()).is_zero()
    assert cox.grading.rows == 2 + b.cols
    assert len({cox.grading @ e for e in cox.relation.exponents()}) == 1
    assert cox.relation.is_monomial_free()
    back = cox.relation.set_to_one(range(w.r + 1, len(cox.variables)))
    assert back.monomial_free()[0] == w.g1().rename(cox.variables[:w.r + 1]).monomial_free()[0]


# -- weight systems and hypotheses ---------------------------------------------


def test_weight_system_basics():
    assert WeightSystem.parse("-2, 2,-1,1,0,0,0") == ONE_RAY
    assert ONE_RAY.r == 6 and ONE_RAY.parity == "even"
    assert ONE_RAY.pairs() == [(0, 1), (2, 3), (4, 5)]
    assert WeightSystem((1, -1, 0, 0)).pairs() == [(0, 1), (2, 3)]
    with pytest.raises(InvalidWeights):
        WeightSystem((1,))
    with pytest.raises(InvalidWeights):
        WeightSystem.parse("1,x")


def test_hypotheses_of_one_ray_example():
    rep = validate_hypotheses(ONE_RAY)
    assert rep.passed and rep.failures() == []
    # three minimal weights, but only two zeros outside the square position
    assert rep.flags["even_normal_form_three_zeros"] is False
    assert rep.notes


def test_hypotheses_failures():
    rep = validate_hypotheses(WeightSystem((-3, 3, -3, 3, -2, 2, -1, 1)))
    assert rep.failures() == ["minimal_weight_count"]
    assert rep.witnesses["minimal_weight_count"] == {"count": 2, "required": 4, "minimal_abs": 1}
    rep = validate_hypotheses(WeightSystem((0, 0)))
    assert rep.flags["degree_zero"] and not rep.flags["columns_generate"]
    rep = validate_hypotheses(WeightSystem((1, 1, 0, 0)))
    assert not rep.flags["degree_zero"] and rep.witnesses["degree_zero"] == [[0, 1]]
    rep = validate_hypotheses(WeightSystem((-2, 2, 0, 0, 0, 0)))
    assert not rep.flags["r_columns_generate"]


def test_reorder():
    w, perm = reorder_weights(ONE_RAY)
    assert w == ONE_RAY and perm == list(range(7))
    w, perm = reorder_weights(WeightSystem((0, 0, -1, 1)))
    assert w.zeta == (-1, 1, 0, 0) and perm == [2, 3, 0, 1]
    assert designated_indices(ONE_RAY, pair_order(ONE_RAY)) == [4, 5, 6]
    with pytest.raises(HypothesisViolated):
        reorder_weights(WeightSystem((1, 2, 0, 0)))


# -- the pipeline --------------------------------------------------------------


def test_one_ray_example():
    cox = cox_ring_of_chow_quotient(ONE_RAY)
    assert cox.variables == tuple(names(6, 1))
    assert cox.relation == LaurentPoly.parse("T0*T1*S1^2 + T2*T3*S1 + T4*T5 + T6^2", names(6, 1))
    assert row_lattices_equal(cox.grading, REFERENCE_GRADING)
    assert row_lattices_equal(IntMat.from_json(cox.provenance["p"]), REFERENCE_P)
    (ray,) = cox.provenance["rays"]
    # the generator depends on the basis of P, the coefficients do not
    assert ray["coeffs"] == ["2", "0", "1", "0", "0", "0", "0"]
    p = IntMat.from_json(cox.provenance["p"])
    assert list(p @ (2, 0, 1, 0, 0, 0, 0)) == [int(x) for x in ray["gen"]]
    assert cox.provenance["ray_source"] == "closed form"
    check_invariants(ONE_RAY, cox)


def test_odd_example_with_one_new_ray():
    w = WeightSystem((-1, 1, -1, 1, 0, 0, 0, 0))
    cox = cox_ring_of_chow_quotient(w)
    assert cox.relation == LaurentPoly.parse("T0*T1*S1 + T2*T3*S1 + T4*T5 + T6*T7", names(7, 1))
    check_invariants(w, cox)


def test_no_new_rays():
    w = WeightSystem((-1, 1, 0, 0, 0, 0, 0))
    cox = cox_ring_of_chow_quotient(w)
    assert cox.variables == tuple(names(6, 0))
    assert cox.relation == w.g1()
    assert row_lattices_equal(cox.grading, w.extended_weight_matrix())
    check_invariants(w, cox)


def test_fallback_rays():
    # two columns of Q coincide, so the closed form does not apply
    w = WeightSystem((0, 0, 0, 0, -1, 1))
    cox = cox_ring_of_chow_quotient(w)
    assert cox.provenance["ray_source"] == "fan"
    assert cox.relation == w.g1()
    check_invariants(w, cox)


def test_gating():
    with pytest.raises(HypothesisViolated, match="minimal_weight_count"):
        cox_ring_of_chow_quotient(WeightSystem((-3, 3, -3, 3, -2, 2, -1, 1)))
    with pytest.raises(HypothesisViolated, match="degree_zero"):
        cox_ring_of_chow_quotient(WeightSystem((1, 1, 0, 0, 0, 0)))


def test_presentation_round_trip_and_text():
    cox = cox_ring_of_chow_quotient(ONE_RAY)
    assert CoxPresentation.from_json(cox.to_json()) == cox
    text = cox.to_text()
    assert "g2 = T0·T1·S1² + T2·T3·S1 + T4·T5 + T6²" in text
    rows = text.splitlines()[3:]
    assert len({len(line) for line in rows}) == 1


def test_random_weight_systems():
    rng = random.Random(31)
    done = 0
    while done < 8:
        w = random_weights(rng, (3, 6), 3)
        if not validate_hypotheses(w).passed:
            continue
        cox = cox_ring_of_chow_quotient(w)
        check_invariants(w, cox)
        l = len(cox.variables) - w.r - 1
        p = gale_dual(w.extended_weight_matrix())
        assert cox.grading.rows == 2 + l and p.rows + cox.grading.rows == len(cox.variables)
        done += 1
