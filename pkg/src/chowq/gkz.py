"""GKZ decompositions of a vector configuration and its Gale dual.

A :class:`VectorConfig` holds the columns p_0..p_r (an n x (r+1) matrix) and
a Gale dual q (k x (r+1)).  For k = 2 the rays of the GKZ fan are given in
closed form by :func:`gkz_rays_corank2`; :func:`gkz_fan_bruteforce` builds
the whole fan from the P-cones and serves as the general path and as an
oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .errors import DimensionMismatch, HypothesisViolated, NotAHyperplane, OutsideSupport, ScaleExceeded, ZeroVector
from .lattice import IntMat, as_intmat, dot, gale_dual, primitive_part, qrank, rank
from .polyhedral import Cone, Fan, chamber_complex


@dataclass(frozen=True)
class VectorConfig:
    p: IntMat
    q: IntMat

    def __post_init__(self):
        if self.p.cols != self.q.cols:
            raise DimensionMismatch("p and q must have the same number of columns")
        if not (self.p @ self.q.transpose()).is_zero():
            raise DimensionMismatch("q is not orthogonal to the rows of p")

    @classmethod
    def from_q(cls, q) -> VectorConfig:
        q = as_intmat(q)
        return cls(gale_dual(q), q)

    @property
    def n(self) -> int:
        return self.p.rows

    @property
    def k(self) -> int:
        return self.q.rows

    @property
    def size(self) -> int:
        return self.p.cols

    def columns(self) -> list:
        return self.p.columns()

    def check_hypotheses(self) -> None:
        """Nonzero, pairwise independent columns of p whose cone is all of Q^n."""
        cols = self.p.columns()
        for i, c in enumerate(cols):
            if not any(c):
                raise HypothesisViolated("nonzero columns", f"p_{i} = 0")
        for i, j in combinations(range(len(cols)), 2):
            if qrank([cols[i], cols[j]], self.n) < 2:
                raise HypothesisViolated("pairwise independent columns", f"p_{i} and p_{j} are parallel")
        if not _spans_as_cone(self.p):
            raise HypothesisViolated("columns generate Q^n as a cone", "cone(p) is a proper cone")


def _spans_as_cone(p: IntMat) -> bool:
    c = Cone(p.columns(), dim=p.rows) if p.cols else Cone.zero(p.rows)
    return len(c.lineality) == p.rows


@dataclass(frozen=True)
class GkzRay:
    generator: tuple
    origin: tuple  # ("column", i) or ("hyperplane", i); i may be None for a bare rho(u)
    coefficients: tuple = field(compare=False)

    @property
    def origin_tag(self) -> str:
        kind, i = self.origin
        return kind if i is None else f"{kind}:{i}"

    def to_json(self) -> dict:
        return {"gen": [str(x) for x in self.generator],
                "origin": self.origin_tag,
                "coeffs": [str(x) for x in self.coefficients]}

    @classmethod
    def from_json(cls, obj: dict) -> GkzRay:
        kind, _, idx = obj["origin"].partition(":")
        return cls(tuple(int(x) for x in obj["gen"]), (kind, int(idx) if idx else None),
                   tuple(int(x) for x in obj["coeffs"]))


# ---------------------------------------------------------------------------
# P-cones


@lru_cache(maxsize=64)
def _all_p_cones(p: IntMat) -> tuple:
    cols = p.columns()
    out = {}
    for size in range(len(cols) + 1):
        for idx in combinations(range(len(cols)), size):
            out.setdefault(Cone([cols[i] for i in idx], dim=p.rows), None)
    return tuple(sorted(out, key=lambda c: (c.dim, c.key())))


@lru_cache(maxsize=64)
def _basis_cones(p: IntMat) -> tuple:
    cols = p.columns()
    out = {}
    for idx in combinations(range(len(cols)), p.rows):
        sub = [cols[i] for i in idx]
        if qrank(sub, p.rows) == p.rows:
            out.setdefault(Cone(sub), None)
    return tuple(sorted(out, key=Cone.key))


def p_cones(cfg: VectorConfig, full_only: bool = False) -> list:
    """Distinct cones generated by subsets of the columns of p."""
    cones = _all_p_cones(cfg.p)
    if full_only:
        return [c for c in cones if c.dim == cfg.n]
    return list(cones)


def gkz_cone_at(cfg: VectorConfig, v) -> Cone:
    """Intersection of all P-cones whose relative interior contains v."""
    v = tuple(int(x) for x in v)
    if len(v) != cfg.n:
        raise DimensionMismatch("point has the wrong length")
    members = [c for c in _all_p_cones(cfg.p) if c.relative_interior_contains(v)]
    if not members:
        raise OutsideSupport(f"{v} is not in the cone of the columns")
    return Cone.intersection_of(members)


# ---------------------------------------------------------------------------
# the Gale dual side


def movable_cone(cfg: VectorConfig) -> Cone:
    """Intersection over j of cone(q_l : l != j)."""
    cols = cfg.q.columns()
    out = None
    for j in range(len(cols)):
        c = Cone([q for l, q in enumerate(cols) if l != j], dim=cfg.k)
        out = c if out is None else out.intersect(c)
    return out


def extremal_columns(cfg: VectorConfig) -> set:
    mov = movable_cone(cfg)
    return {i for i, q in enumerate(cfg.q.columns()) if not mov.relative_interior_contains(q)}


def rho(cfg: VectorConfig, u, index: int | None = None) -> GkzRay:
    """Ray attached to the Q-hyperplane u-perp: cone(sum of u(q_i) p_i over u(q_i) > 0)."""
    u = tuple(int(x) for x in u)
    if len(u) != cfg.k:
        raise DimensionMismatch("linear form has the wrong length")
    if not any(u):
        raise NotAHyperplane("zero linear form")
    qcols = cfg.q.columns()
    on = [q for q in qcols if dot(u, q) == 0]
    if qrank(on, cfg.k) != cfg.k - 1:
        raise NotAHyperplane(f"the columns of q in the kernel of {u} do not span a hyperplane")
    alpha = tuple(max(0, dot(u, q)) for q in qcols)
    s = cfg.p @ alpha
    if not any(s):
        raise ZeroVector("rho(u) degenerates to the origin")
    return GkzRay(primitive_part(s), ("hyperplane", index), alpha)


def perpendicular(q) -> tuple:
    """Primitive (-b, a) for q = (a, b)."""
    a, b = q
    return primitive_part((-b, a))


def gkz_rays_corank2(cfg: VectorConfig) -> list:
    """Rays of the GKZ fan for a Gale dual with two rows.

    Column rays cone(p_i) come first in index order, followed by the rays
    rho(u_i) for the non-extremal q_i in lexicographic generator order.
    """
    if cfg.k != 2:
        raise HypothesisViolated("corank two", f"q has {cfg.k} rows")
    cfg.check_hypotheses()
    cols = cfg.p.columns()
    column_rays = []
    seen = {}
    for i, c in enumerate(cols):
        g = primitive_part(c)
        if g in seen:
            continue
        ray = GkzRay(g, ("column", i), tuple(int(j == i) for j in range(len(cols))))
        seen[g] = ray
        column_rays.append(ray)
    new = {}
    for i in sorted(set(range(len(cols))) - extremal_columns(cfg)):
        q = cfg.q.col(i)
        if not any(q):
            continue
        ray = rho(cfg, perpendicular(q), i)
        if ray.generator in seen or ray.generator in new:
            continue
        new[ray.generator] = ray
    return column_rays + [new[g] for g in sorted(new)]


# ---------------------------------------------------------------------------
# brute force


def gkz_fan_bruteforce(cfg: VectorConfig, *, max_columns: int = 10, max_dim: int = 6,
                       validate: bool = True) -> Fan:
    """The GKZ fan from the P-cones, with every maximal cone re-checked."""
    if cfg.size > max_columns or cfg.n > max_dim:
        raise ScaleExceeded(f"{cfg.size} columns in dimension {cfg.n} exceeds the limit "
                            f"({max_columns} columns, dimension {max_dim})")
    if rank(cfg.p) == 0:
        return Fan([Cone.zero(cfg.n)], dim=cfg.n)
    chambers = chamber_complex(_basis_cones(cfg.p))
    fan = Fan(chambers, dim=cfg.n)
    if validate:
        for c in fan.maximal_cones:
            if gkz_cone_at(cfg, c.interior_point()) != c:
                raise HypothesisViolated("GKZ cone formula", f"chamber {c.rays} not reproduced")
    return fan


def bruteforce_rays(cfg: VectorConfig, **kw) -> list:
    return gkz_fan_bruteforce(cfg, **kw).rays()
