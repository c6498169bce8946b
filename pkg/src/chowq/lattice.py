"""Exact integer linear algebra.

Matrices are :class:`IntMat` values (immutable, row-major, Python ints);
vectors are plain tuples of ints.  Rational helpers work over
:class:`fractions.Fraction` and are used wherever a computation only needs
the rational span.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import NoSolution, RankDeficient, ZeroVector

IntVec = tuple


@dataclass(frozen=True)
class IntMat:
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("IntMat data does not match its shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> IntMat:
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], rows: int | None = None) -> IntMat:
        cols = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("row count required for an empty column list")
            rows = len(cols[0])
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMat:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMat:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> IntVec:
        return self.data[i]

    def col(self, j: int) -> IntVec:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMat:
        return self.transpose()

    def transpose(self) -> IntMat:
        if self.rows == 0:
            return IntMat(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntMat(self.cols, self.rows, tuple(tuple(c) for c in zip(*self.data)))

    def __matmul__(self, other):
        if isinstance(other, IntMat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            oc = other.columns()
            return IntMat(self.rows, other.cols,
                          tuple(tuple(dot(r, c) for c in oc) for r in self.data))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(dot(r, v) for r in self.data)

    def hstack(self, other: IntMat) -> IntMat:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMat(self.rows, self.cols + other.cols,
                      tuple(a + b for a, b in zip(self.data, other.data)))

    def vstack(self, other: IntMat) -> IntMat:
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMat(self.rows + other.rows, self.cols, self.data + other.data)

    def select_columns(self, idx: Sequence[int]) -> IntMat:
        return IntMat(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "data": [[str(x) for x in r] for r in self.data]}

    @classmethod
    def from_json(cls, obj: dict) -> IntMat:
        data = tuple(tuple(int(x) for x in r) for r in obj["data"])
        return cls(int(obj["rows"]), int(obj["cols"]), data)

    def __repr__(self):
        return f"IntMat({[list(r) for r in self.data]})"


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def as_intmat(m) -> IntMat:
    return m if isinstance(m, IntMat) else IntMat.from_rows(m)


# ---------------------------------------------------------------------------
# normal forms


def hermite_normal_form(m) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m``, ``u`` unimodular, ``h`` in row
    echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows are kept at the bottom.
    """
    m = as_intmat(m)
    a = [list(r) for r in m.data]
    u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    nrows, ncols = m.rows, m.cols

    def sub(i, k, q):
        if q:
            ai, ak = a[i], a[k]
            for j in range(ncols):
                ai[j] -= q * ak[j]
            ui, uk = u[i], u[k]
            for j in range(nrows):
                ui[j] -= q * uk[j]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    sub(i, r, a[i][c] // a[r][c])
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            sub(i, r, a[i][c] // a[r][c])
        r += 1
    return IntMat.from_rows(a, ncols), IntMat.from_rows(u, nrows)


def hnf_rows(m) -> list:
    """Nonzero rows of the Hermite normal form: a canonical row-lattice basis."""
    h, _ = hermite_normal_form(m)
    return [r for r in h.data if any(r)]


def rank(m) -> int:
    m = as_intmat(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(hnf_rows(m))


def smith_invariants(m) -> list:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = as_intmat(m)
    a = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    out = []
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                # pull the offending row in to restore divisibility
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest entry of row/column t onto the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def is_unimodular(u) -> bool:
    u = as_intmat(u)
    return u.rows == u.cols and smith_invariants(u) == [1] * u.rows


def determinant(m) -> int:
    m = as_intmat(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in r] for r in m.data]
    n, det = m.rows, Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det)


# ---------------------------------------------------------------------------
# kernels, Gale duals, Diophantine systems


def kernel_basis(m) -> IntMat:
    """Saturated integer basis (as rows) of ``{v : m v = 0}``, in HNF."""
    m = as_intmat(m)
    h, u = hermite_normal_form(m.transpose())
    zero_rows = [u.row(i) for i in range(h.rows) if not any(h.row(i))]
    if not zero_rows:
        return IntMat.zeros(0, m.cols)
    return IntMat.from_rows(hnf_rows(IntMat.from_rows(zero_rows)), m.cols)


def gale_dual(q) -> IntMat:
    """Integral Gale dual: rows span the saturated kernel of ``q``."""
    q = as_intmat(q)
    if rank(q) != q.rows:
        raise RankDeficient(f"matrix of shape {q.rows}x{q.cols} has rank {rank(q)} < {q.rows}")
    return kernel_basis(q)


def solve_diophantine(m, b) -> IntVec:
    """Integer solution of ``m x = b`` (free coordinates set to zero)."""
    m = as_intmat(m)
    b = tuple(int(x) for x in b)
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    h, u = hermite_normal_form(m.transpose())
    pivots = []
    for i in range(h.rows):
        row = h.row(i)
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        pivots.append(c)
    y = [0] * h.rows
    for k, c in enumerate(pivots):
        rest = b[c] - sum(h[i, c] * y[i] for i in range(k))
        if rest % h[k, c]:
            raise NoSolution(f"no integer solution (coordinate {c})")
        y[k] = rest // h[k, c]
    for j in range(m.rows):
        if sum(h[i, j] * y[i] for i in range(len(pivots))) != b[j]:
            raise NoSolution("right-hand side is not in the rational column span")
    return u.transpose() @ y


def primitive_part(v) -> IntVec:
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("primitive part of the zero vector")
    return tuple(x // g for x in v)


def columns_generate_lattice(m, subset=None) -> bool:
    """True iff the selected columns generate all of Z^rows."""
    m = as_intmat(m)
    if subset is not None:
        m = m.select_columns(list(subset))
    if m.rows == 0:
        return True
    return smith_invariants(m) == [1] * m.rows


def failing_column_subsets(m, size: int) -> list:
    """All column subsets of the given size that do not generate Z^rows."""
    m = as_intmat(m)
    return [s for s in combinations(range(m.cols), size)
            if not columns_generate_lattice(m, s)]


def row_lattices_equal(a, b) -> bool:
    """Unimodular row-equivalence, i.e. equality of the row lattices."""
    a, b = as_intmat(a), as_intmat(b)
    return a.cols == b.cols and hnf_rows(a) == hnf_rows(b)


# ---------------------------------------------------------------------------
# rational helpers


def rref(rows, ncols: int) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    red, piv = _int_rref(rows, ncols)
    out = []
    for r, c in zip(red, piv):
        p = r[c]
        out.append([Fraction(x, p) for x in r])
    return out, piv


def _int_rref(rows, ncols: int) -> tuple[list, list]:
    """Fraction-free reduced echelon form.

    Rows are primitive integer vectors with positive pivots and zeros in
    every other row's pivot column; dividing a row by its pivot gives the
    rational RREF row.
    """
    a = []
    for r in rows:
        r = list(r)
        if not all(type(x) is int for x in r):
            den = 1
            for x in r:
                d = Fraction(x).denominator
                den = den * d // gcd(den, d)
            r = [int(Fraction(x) * den) for x in r]
        if any(r):
            a.append(r)
    piv = []
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        pr = a[rk]
        if pr[c] < 0:
            pr = [-x for x in pr]
        pr = _primitive_list(pr)
        a[rk] = pr
        pc = pr[c]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                f = a[i][c]
                g = gcd(f, pc)
                m1, m2 = pc // g, f // g
                row = [m1 * x - m2 * y for x, y in zip(a[i], pr)]
                a[i] = _primitive_list(row) if any(row) else row
        piv.append(c)
        rk += 1
        if rk == len(a):
            break
    red = []
    for r, c in zip(a[:rk], piv):
        if r[c] < 0:
            r = [-x for x in r]
        red.append(_primitive_list(r))
    return red, piv


def _primitive_list(r):
    g = 0
    for x in r:
        g = gcd(g, x)
        if g == 1:
            return r
    return [x // g for x in r] if g > 1 else r


def integral(v) -> IntVec:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    if not any(w):
        return tuple(w)
    return primitive_part(w)


def rational_nullspace(rows, ncols: int) -> list:
    """Integer vectors spanning ``{x : r.x = 0 for r in rows}`` over Q."""
    red, piv = _int_rref(rows, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    lcm = 1
    for row, p in zip(red, piv):
        lcm = lcm * row[p] // gcd(lcm, row[p])
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = lcm
        for row, p in zip(red, piv):
            v[p] = -row[f] * (lcm // row[p])
        basis.append(primitive_part(v))
    return basis


def span_basis(vectors, ncols: int) -> list:
    """Canonical integer basis of the rational span (primitive RREF rows)."""
    return [tuple(r) for r in _int_rref(vectors, ncols)[0]]


def qrank(vectors, ncols: int) -> int:
    return len(_int_rref(vectors, ncols)[0]) if vectors else 0


def rational_solve(m, b):
    """One rational solution of ``m x = b`` or None."""
    m = as_intmat(m)
    aug = [list(r) + [bi] for r, bi in zip(m.data, b)]
    red, piv = rref(aug, m.cols + 1)
    if m.cols in piv:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return x
