import random

import pytest

from chowq.errors import DimensionMismatch, NotHomogeneous, NotInSpan, NotOnTropical, ShapeMismatch
from chowq.lattice import IntMat, kernel_basis
from chowq.laurent import LaurentPoly
from chowq.lifting import (EtaData, WeakLifting, common_cone_certificate, eta_rows, lift_h1,
                           prime_certificate_quadric, quadric, shift_polynomial, simplex_coordinates,
                           transfer_principal_ideal, transfer_with, weak_b_lifting)
from oracles import REFERENCE_P, random_transfer_instance, sympy_transfer

EIGHT = [f"T{i}" for i in range(1, 9)]
P1 = IntMat.from_columns([[-1] * 7] + [[int(i == j) for i in range(7)] for j in range(7)])
CUBIC_G = LaurentPoly.parse("T1*T2 + T3*T4 + T5*T6 + T7*T8", EIGHT)
REFERENCE = IntMat.from_rows(REFERENCE_P)
B1 = IntMat.from_columns([(-1, 0, -1, 1, 0)])


def column(*v):
    return IntMat.from_columns([v])


# -- weak liftings -----------------------------------------------------------


def test_lifting_of_a_column_of_p():
    lift = weak_b_lifting(REFERENCE, column(*REFERENCE.col(0)))
    assert lift.m == (1,)
    assert REFERENCE @ lift.a.col(0) == REFERENCE.col(0)
    e0 = (1, 0, 0, 0, 0, 0, 0)
    # any lifting differs from e_0 by a kernel vector
    assert not any(REFERENCE @ tuple(x - y for x, y in zip(lift.a.col(0), e0)))


def test_forced_multiplier():
    lift = weak_b_lifting([[2]], [[1]])
    assert lift.a == IntMat.from_rows([[1]]) and lift.m == (2,)


def test_lifting_reference_ray():
    lift = weak_b_lifting(REFERENCE, B1)
    assert lift.m == (1,)
    assert REFERENCE @ lift.a.col(0) == B1.col(0)


def test_lifting_errors():
    with pytest.raises(NotInSpan):
        weak_b_lifting([[1, 0], [0, 0]], [[0], [1]])
    with pytest.raises(DimensionMismatch):
        weak_b_lifting([[1, 0]], [[1], [1]])
    with pytest.raises(ValueError):
        WeakLifting(IntMat.from_rows([[1]]), IntMat.from_rows([[1]]), IntMat.from_rows([[2]]), (1,))


def test_lifting_json_round_trip():
    lift = weak_b_lifting(REFERENCE, B1)
    assert WeakLifting.from_json(lift.to_json()) == lift


# -- transfer -----------------------------------------------------------------


def test_shift_cubic_example():
    b = column(1, 0, 1, 0, 0, 0, 0)
    lift = weak_b_lifting(P1, b)
    g = shift_polynomial(CUBIC_G, lift, ["S"])
    assert g == LaurentPoly.parse("T1*T2*S + T3*T4*S + T5*T6 + T7*T8", EIGHT + ["S"])


def test_transfer_cubic_example():
    g2 = transfer_principal_ideal(CUBIC_G, P1, column(1, 0, 1, 0, 0, 0, 0))
    assert g2 == LaurentPoly.parse("T1*T2*T9 + T3*T4*T9 + T5*T6 + T7*T8", EIGHT + ["T9"])


def test_transfer_with_empty_b():
    empty = IntMat(7, 0, tuple(() for _ in range(7)))
    assert transfer_principal_ideal(CUBIC_G, P1, empty) == CUBIC_G
    lift = weak_b_lifting(P1, empty)
    assert shift_polynomial(CUBIC_G.times_monomial((1,) * 8), lift) == CUBIC_G


def test_transfer_reference_quadric():
    g1 = quadric(6)
    names = ["S1"]
    g2 = transfer_principal_ideal(g1, REFERENCE, B1, names)
    assert g2 == LaurentPoly.parse("T0*T1*S1^2 + T2*T3*S1 + T4*T5 + T6^2", list(g1.vars) + names)
    a = IntMat.from_columns([(2, 0, 1, 0, 0, 0, 0)])
    assert transfer_with(g1, WeakLifting(REFERENCE, B1, a, (1,)), names) == g2


def test_transfer_not_homogeneous():
    g = LaurentPoly.parse("T0 + T1*T2", [f"T{i}" for i in range(7)])
    with pytest.raises(NotHomogeneous):
        transfer_principal_ideal(g, REFERENCE, B1)


def test_transfer_matches_symbolic_substitution():
    rng = random.Random(17)
    for _ in range(12):
        p, b, g = random_transfer_instance(rng)
        if len(g) < 2:
            continue
        lift = weak_b_lifting(p, b)
        names = [f"S{j + 1}" for j in range(b.cols)]
        expect = sympy_transfer(g, lift.a, lift.m, names)
        assert dict(transfer_with(g, lift, names).items()) == expect


def test_transfer_independent_of_lifting():
    rng = random.Random(23)
    for _ in range(12):
        p, b, g = random_transfer_instance(rng)
        lift = weak_b_lifting(p, b)
        ker = kernel_basis(p)
        cols = []
        for j in range(b.cols):
            c = list(lift.a.col(j))
            for r in range(ker.rows):
                t = rng.randint(-2, 2)
                c = [x + t * y for x, y in zip(c, ker.row(r))]
            cols.append(c)
        other = WeakLifting(p, b, IntMat.from_columns(cols, p.cols), lift.m)
        doubled = WeakLifting(p, b, IntMat.from_columns([[2 * x for x in c] for c in cols], p.cols),
                              tuple(2 * m for m in lift.m))
        g2 = transfer_with(g, lift)
        assert transfer_with(g, other) == g2
        assert transfer_with(g, doubled) == g2


# -- shifted row sums ----------------------------------------------------------


def test_eta_reference():
    lift = WeakLifting(REFERENCE, B1, IntMat.from_columns([(2, 0, 1, 0, 0, 0, 0)]), (1,))
    eta = eta_rows(lift, 6, "even")
    assert eta.eta == {0: (2,), 2: (1,), 4: (0,), 6: (0,)} and eta.mu == (0,)
    assert EtaData.from_json(eta.to_json()) == eta


def test_eta_zero_and_negative():
    p = IntMat.from_rows(REFERENCE_P)
    zero = WeakLifting(p, IntMat.zeros(5, 1), IntMat.zeros(7, 1), (1,))
    eta = eta_rows(zero, 6)
    assert all(v == (0,) for v in eta.eta.values()) and eta.mu == (0,)
    a = (-3, 1, 0, 2, 0, 0, 1)
    lift = WeakLifting(p, column(*(p @ a)), column(*a), (1,))
    eta = eta_rows(lift, 6)
    raw = {0: -2, 2: 2, 4: 0, 6: 2}
    assert eta.mu == (2,)
    assert eta.eta == {i: (v + 2,) for i, v in raw.items()}
    assert min(v[0] for v in eta.eta.values()) == 0
    with pytest.raises(ValueError):
        eta_rows(lift, 6, "odd")


# -- certificates ----------------------------------------------------------------


def test_prime_certificate_examples():
    g2 = LaurentPoly.parse("T0*T1*S1^2 + T2*T3*S1 + T4*T5 + T6^2",
                           [f"T{i}" for i in range(7)] + ["S1"])
    assert prime_certificate_quadric(g2, 6, "even").certified
    bad = LaurentPoly.parse("T0*T1*S1 + T2*T3*S1", ["T0", "T1", "T2", "T3", "S1"])
    res = prime_certificate_quadric(bad, 3, "odd")
    assert not res.certified and res.status == "Uncertified"
    good = LaurentPoly.parse("T0*T1 + T2*T3 + T4*T5*S1", [f"T{i}" for i in range(6)] + ["S1"])
    assert prime_certificate_quadric(good, 5).certified


def test_prime_certificate_shape_errors():
    names = ["T0", "T1", "T2", "T3", "S1"]
    with pytest.raises(ShapeMismatch):
        prime_certificate_quadric(LaurentPoly.parse("T0*T2 + T1*T3", names), 3)
    with pytest.raises(ShapeMismatch):
        prime_certificate_quadric(LaurentPoly.parse("T0*T1*S1^-1 + T2*T3", names), 3)
    with pytest.raises(ShapeMismatch):
        prime_certificate_quadric(LaurentPoly.parse("T0*T1 + T0*T1*S1 + T2*T3", names), 3)


def test_simplex_coordinates():
    assert simplex_coordinates((0, -1, -1), 3) == (1, 1, 0, 0)
    assert simplex_coordinates((2, 0, 1), 3) == (0, 2, 0, 1)


def test_common_cone_certificate_examples():
    assert common_cone_certificate(column(0, -1, -1), 3).certified
    assert common_cone_certificate(column(1, 1, 0), 3).certified
    with pytest.raises(NotOnTropical):
        common_cone_certificate(column(1, 1), 2)
    with pytest.raises(NotOnTropical):
        common_cone_certificate(column(1, 0, 0), 3)
    # supports {1,2}, {0,1}, {2,3} cover every index: no common maximal cone
    three = IntMat.from_columns([(1, 1, 0), (0, -1, -1), (0, 1, 1)])
    assert not common_cone_certificate(three, 3).certified


def test_lift_h1_examples():
    h1 = LaurentPoly.parse("T0 + T1 + T2 + T3", ["T0", "T1", "T2", "T3"])
    assert lift_h1(IntMat(3, 0, ((), (), ())), 3) == h1
    h2 = lift_h1(column(0, -1, -1), 3)
    assert h2 == LaurentPoly.parse("T0*S1 + T1*S1 + T2 + T3", ["T0", "T1", "T2", "T3", "S1"])
    assert h2.set_to_one([4]) == h1
    with pytest.raises(NotOnTropical):
        lift_h1(column(1, 1), 2)
