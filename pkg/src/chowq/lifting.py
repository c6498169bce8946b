"""Weak liftings, the monomial shift, and transfer of principal ideals.

Given P (n x (r+1)) and new ray generators B (n x l), a weak lifting is an
integer matrix A with P A_j = m_j b_j.  A polynomial g in T_0..T_r is moved
to T_0..T_r, S_1..S_l by T^nu -> T^nu S^(A^t nu), made monomial-free, and
finally each S_j exponent is divided by m_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CertificateFailed, DimensionMismatch, NoSolution, NotHomogeneous, NotInSpan, NotOnTropical, ShapeMismatch
from .lattice import IntMat, as_intmat, kernel_basis, rational_solve, smith_invariants, solve_diophantine
from .laurent import LaurentPoly


@dataclass(frozen=True)
class WeakLifting:
    p: IntMat
    b: IntMat
    a: IntMat
    m: tuple

    def __post_init__(self):
        if self.a.rows != self.p.cols or self.a.cols != self.b.cols or self.b.rows != self.p.rows:
            raise DimensionMismatch("lifting matrices have incompatible shapes")
        if len(self.m) != self.b.cols or any(x <= 0 for x in self.m):
            raise ValueError("multipliers must be positive, one per column of b")
        for j in range(self.b.cols):
            pa = self.p @ self.a.col(j)
            if pa != tuple(self.m[j] * x for x in self.b.col(j)):
                raise ValueError(f"column {j}: p.a_j is not m_j.b_j")

    @property
    def l(self) -> int:
        return self.b.cols

    def to_json(self) -> dict:
        return {"p": self.p.to_json(), "b": self.b.to_json(), "a": self.a.to_json(),
                "m": [str(x) for x in self.m]}

    @classmethod
    def from_json(cls, obj: dict) -> WeakLifting:
        return cls(IntMat.from_json(obj["p"]), IntMat.from_json(obj["b"]),
                   IntMat.from_json(obj["a"]), tuple(int(x) for x in obj["m"]))


def _empty(rows: int) -> IntMat:
    return IntMat(rows, 0, tuple(() for _ in range(rows)))


def weak_b_lifting(p, b) -> WeakLifting:
    """Lifting with the smallest multiplier for every column of b."""
    p, b = as_intmat(p), as_intmat(b)
    if b.rows != p.rows:
        raise DimensionMismatch("p and b need the same number of rows")
    bound = max(smith_invariants(p) or [1])
    cols, ms = [], []
    for j in range(b.cols):
        bj = b.col(j)
        if rational_solve(p, bj) is None:
            raise NotInSpan(f"column {j} of b is not in the rational span of p")
        for m in range(1, bound + 1):
            try:
                x = solve_diophantine(p, [m * v for v in bj])
            except NoSolution:
                continue
            cols.append(x)
            ms.append(m)
            break
        else:  # pragma: no cover - the last invariant factor always works
            raise NotInSpan(f"column {j} of b has no integral multiple in the column lattice")
    a = IntMat.from_columns(cols, p.cols) if cols else _empty(p.cols)
    return WeakLifting(p, b, a, tuple(ms))


def lifting_from_columns(p, b, columns) -> WeakLifting:
    """Weak lifting from given columns a_j, with m_j read off from P a_j = m_j b_j."""
    p, b = as_intmat(p), as_intmat(b)
    ms = []
    for j, aj in enumerate(columns):
        pa = p @ aj
        bj = b.col(j)
        k = next(i for i, x in enumerate(bj) if x)
        if pa[k] % bj[k] or pa[k] // bj[k] <= 0:
            raise NotInSpan(f"column {j}: p.a_j is not a positive multiple of b_j")
        ms.append(pa[k] // bj[k])
    a = IntMat.from_columns(columns, p.cols) if columns else _empty(p.cols)
    return WeakLifting(p, b, a, tuple(ms))


def _check_homogeneous(g: LaurentPoly, p: IntMat) -> None:
    """All exponent differences must lie in the row lattice of p."""
    exps = g.exponents()
    if not exps:
        return
    pt = p.transpose()
    base = exps[0]
    for e in exps[1:]:
        d = [x - y for x, y in zip(e, base)]
        try:
            solve_diophantine(pt, d)
        except NoSolution:
            raise NotHomogeneous(f"terms {base} and {e} have different degrees") from None


def default_new_names(variables, l: int) -> list:
    return [f"S{j + 1}" for j in range(l)]


def shift_polynomial(g: LaurentPoly, lift: WeakLifting, names=None) -> LaurentPoly:
    """Monomial-free normalization of psi_A(g), before dividing by the multipliers."""
    if g.num_vars != lift.p.cols:
        raise DimensionMismatch("polynomial variables do not match the columns of p")
    _check_homogeneous(g, lift.p)
    names = list(names) if names is not None else default_new_names(g.vars, lift.l)
    at = lift.a.transpose()
    terms = [(tuple(e) + (at @ e if lift.l else ()), c) for e, c in g.items()]
    return LaurentPoly(g.vars + tuple(names), terms).monomial_free()[0]


def divide_multipliers(g2p: LaurentPoly, m, offset: int) -> LaurentPoly:
    """Undo S_j -> S_j^(m_j) on the variables from ``offset`` on."""
    terms = []
    for e, c in g2p.items():
        head, tail = e[:offset], e[offset:]
        if any(x % mj for x, mj in zip(tail, m)):
            raise CertificateFailed("S-exponents are not divisible by the multipliers")
        terms.append((head + tuple(x // mj for x, mj in zip(tail, m)), c))
    return LaurentPoly(g2p.vars, terms)


def transfer_with(g: LaurentPoly, lift: WeakLifting, names=None) -> LaurentPoly:
    return divide_multipliers(shift_polynomial(g, lift, names), lift.m, g.num_vars)


def _continue_names(variables, l: int) -> list:
    """T9, T10, ... after T1..T8; S1.. otherwise."""
    idx = []
    for v in variables:
        if v.startswith("T") and v[1:].isdigit():
            idx.append(int(v[1:]))
        else:
            return default_new_names(variables, l)
    top = max(idx, default=-1)
    return [f"T{top + 1 + j}" for j in range(l)]


def transfer_principal_ideal(g: LaurentPoly, p1, b, names=None) -> LaurentPoly:
    """Generator g_2 of the transferred ideal of <g>.

    The result is recomputed with a second lifting that differs by a kernel
    vector of p and both must agree.
    """
    p1, b = as_intmat(p1), as_intmat(b)
    if names is None:
        names = _continue_names(g.vars, b.cols)
    lift = weak_b_lifting(p1, b)
    g2 = transfer_with(g, lift, names)
    ker = kernel_basis(p1)
    if ker.rows and lift.l:
        k = ker.row(0)
        cols = [tuple(x + (j + 1) * y for x, y in zip(lift.a.col(j), k)) for j in range(lift.l)]
        other = WeakLifting(p1, b, IntMat.from_columns(cols, p1.cols), lift.m)
        if transfer_with(g, other, names) != g2:
            raise CertificateFailed("transferred generator depends on the chosen lifting")
    return g2


# ---------------------------------------------------------------------------
# shifted row sums


@dataclass(frozen=True)
class EtaData:
    eta: dict
    mu: tuple

    def to_json(self) -> dict:
        return {"eta": {str(i): [str(x) for x in v] for i, v in sorted(self.eta.items())},
                "mu": [str(x) for x in self.mu]}

    @classmethod
    def from_json(cls, obj: dict) -> EtaData:
        return cls({int(i): tuple(int(x) for x in v) for i, v in obj["eta"].items()},
                   tuple(int(x) for x in obj["mu"]))


def term_indices(r: int) -> list:
    """Leading indices of the quadric terms: pairs 0,2,... and r itself for even r."""
    if r % 2:
        return list(range(0, r, 2))
    return list(range(0, r - 1, 2)) + [r]


def quadric_exponents(r: int) -> list:
    out = []
    for i in term_indices(r):
        e = [0] * (r + 1)
        if i == r and r % 2 == 0:
            e[r] = 2
        else:
            e[i] = e[i + 1] = 1
        out.append(tuple(e))
    return out


def quadric(r: int, names=None) -> LaurentPoly:
    """T0T1 + T2T3 + ... with T_r^2 closing the sum for even r."""
    names = names or [f"T{i}" for i in range(r + 1)]
    return LaurentPoly(names, [(e, 1) for e in quadric_exponents(r)])


def eta_rows(lift: WeakLifting, r: int, parity: str | None = None) -> EtaData:
    """Shifted row sums of A over the quadric terms, in units of S_j."""
    if lift.a.rows != r + 1:
        raise DimensionMismatch("lifting has the wrong number of rows")
    expected = "odd" if r % 2 else "even"
    if parity is not None and parity != expected:
        raise ValueError(f"parity {parity} does not match r = {r}")
    a = lift.a
    raw = {}
    for i in term_indices(r):
        if i == r and r % 2 == 0:
            raw[i] = tuple(2 * x for x in a.row(r))
        else:
            raw[i] = tuple(x + y for x, y in zip(a.row(i), a.row(i + 1)))
    l = lift.l
    mu = tuple(-min(v[j] for v in raw.values()) for j in range(l))
    eta = {}
    for i, v in raw.items():
        shifted = [x + s for x, s in zip(v, mu)]
        if any(x % m for x, m in zip(shifted, lift.m)):
            raise CertificateFailed("row sums are not divisible by the multipliers")
        eta[i] = tuple(x // m for x, m in zip(shifted, lift.m))
    return EtaData(eta, mu)


def relation_from_eta(eta: EtaData, r: int, names) -> LaurentPoly:
    """sum over terms of T-part * S^eta_i."""
    terms = [(e + eta.eta[i], 1) for i, e in zip(term_indices(r), quadric_exponents(r))]
    return LaurentPoly(names, terms)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CertificateResult:
    certified: bool
    reason: str
    witnesses: tuple = ()
    violations: tuple = ()
    notes: tuple = field(default=())

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "Uncertified"

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason,
                "witnesses": [_item_json(w) for w in self.witnesses],
                "violations": [_item_json(v) for v in self.violations],
                "notes": list(self.notes)}

    @classmethod
    def from_json(cls, obj: dict) -> CertificateResult:
        return cls(obj["status"] == "Certified", obj["reason"],
                   tuple(_item_from_json(w) for w in obj["witnesses"]),
                   tuple(_item_from_json(v) for v in obj["violations"]), tuple(obj["notes"]))


def _item_json(x):
    return [str(y) for y in x] if isinstance(x, tuple) else str(x)


def _item_from_json(x):
    return tuple(int(y) for y in x) if isinstance(x, list) else int(x)


_PROP_FLAGS = ("variables S_j define primes in the transferred ring: decided by this certificate",
               "factoriality of the graded rings: not decided, carried by the structural certificate")


def prime_certificate_quadric(g2: LaurentPoly, r: int, parity: str | None = None) -> CertificateResult:
    """Sufficient condition for the S_j to be prime in K[T,S]/<g2>.

    g2 must be a sum of terms T_iT_(i+1) S^.. (and T_r^2 S^.. for even r).
    Certified when, for odd r, two pair terms carry no S, and for even r
    the square term and one pair term carry no S.  Setting any S_j to zero
    then leaves T_aT_b + T_cT_d + h (or T_aT_b + T_r^2 + h) with h free of
    those variables, which is irreducible.
    """
    expected = "odd" if r % 2 else "even"
    if parity is not None and parity != expected:
        raise ValueError(f"parity {parity} does not match r = {r}")
    nt = r + 1
    if g2.num_vars < nt:
        raise ShapeMismatch("fewer variables than T_0..T_r")
    if not g2.is_polynomial():
        raise ShapeMismatch("relation has negative exponents")
    if any(g2.min_exponent()):
        common = tuple(i for i, x in enumerate(g2.min_exponent()) if x)
        return CertificateResult(False, "a variable divides every term of the relation", (), (common,),
                                 _PROP_FLAGS)
    shapes = {e: i for i, e in zip(term_indices(r), quadric_exponents(r))}
    pair_free, square_free, seen = [], [], set()
    for e, _ in g2.items():
        t = e[:nt]
        if t not in shapes:
            raise ShapeMismatch(f"term with T-exponent {t} is not a quadric pair or square")
        i = shapes[t]
        if i in seen:
            raise ShapeMismatch(f"quadric term {i} occurs twice")
        seen.add(i)
        if not any(e[nt:]):
            (square_free if (r % 2 == 0 and i == r) else pair_free).append(t)
    if r % 2:
        ok = len(pair_free) >= 2
        witnesses = tuple(pair_free[-2:]) if ok else ()
    else:
        ok = bool(square_free) and len(pair_free) >= 1
        witnesses = (pair_free[-1], square_free[0]) if ok else ()
    if ok:
        return CertificateResult(True, "S-free terms in disjoint variables", witnesses, (), _PROP_FLAGS)
    bad = tuple(e[:nt] for e, _ in g2.items() if any(e[nt:]))
    need = "two S-free pair terms" if r % 2 else "an S-free square term and an S-free pair term"
    return CertificateResult(False, f"relation lacks {need}", (), bad, _PROP_FLAGS)


def simplex_coordinates(b, n: int) -> tuple:
    """Coefficients a_0..a_n >= 0 with min 0 and sum a_i e_i = b, where e_0 = -(e_1+...+e_n)."""
    b = tuple(int(x) for x in b)
    if len(b) != n:
        raise DimensionMismatch(f"vector of length {len(b)} in dimension {n}")
    a0 = max(0, -min(b)) if b else 0
    return (a0,) + tuple(x + a0 for x in b)


def _checked_coordinates(b: IntMat, n: int) -> list:
    out = []
    for j in range(b.cols):
        a = simplex_coordinates(b.col(j), n)
        s = sum(1 for x in a if x)
        if s < 2:
            raise NotOnTropical(f"column {j} is zero or lies on a ray")
        if s > n - 1:
            raise NotOnTropical(f"column {j} is off the codimension-one skeleton")
        out.append(a)
    return out


def common_cone_certificate(b, n: int) -> CertificateResult:
    """Whether the columns of b lie in one maximal cone of the complete simplex fan."""
    b = as_intmat(b)
    coords = _checked_coordinates(b, n)
    for i0 in range(n + 1):
        if all(a[i0] == 0 for a in coords):
            return CertificateResult(True, f"all columns lie in the cone omitting e{i0}", (i0,))
    return CertificateResult(False, "no maximal cone contains every column", (),
                             tuple(tuple(a) for a in coords))


def lift_h1(b, n: int, names=None) -> LaurentPoly:
    """h2 = sum T_i S^(A_i) for h1 = T_0 + ... + T_n, A from the minimal-cone expansion."""
    b = as_intmat(b)
    coords = _checked_coordinates(b, n)
    names = names or [f"T{i}" for i in range(n + 1)] + [f"S{j + 1}" for j in range(b.cols)]
    terms = []
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = 1
        terms.append((tuple(e) + tuple(a[i] for a in coords), 1))
    return LaurentPoly(names, terms)
