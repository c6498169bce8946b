"""Weak tropical resolutions of quadric Chow quotients.

For g1 with Newton vertices mu_0..mu_n, P_gr has rows mu_i - mu_0 and Pi is
the unique map with Pi P = P_gr.  The tropical variety of the quotient is
Pi^-1 of the codimension-one skeleton of the complete simplex fan Delta(n);
refining the GKZ fan with it and projecting the rays along Pi gives the
rays of the //0 quotient.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InconsistentDiagram, InvalidWeights, NoSolution, NotSurjective
from .gkz import VectorConfig, gkz_fan_bruteforce
from .lattice import IntMat, columns_generate_lattice, dot, gale_dual, kernel_basis, primitive_part, qrank, rank, solve_diophantine
from .laurent import LaurentPoly
from .lifting import CertificateResult, common_cone_certificate, lift_h1, quadric
from .polyhedral import Cone, Fan, common_refinement
from .quadric import WeightSystem, pair_order


def delta_rays(n: int) -> list:
    """e_0 = -(e_1 + ... + e_n), e_1, ..., e_n."""
    if n < 1:
        raise ValueError("n must be positive")
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [tuple(-1 for _ in range(n))] + unit


def delta_fan(n: int) -> Fan:
    rays = delta_rays(n)
    return Fan([Cone([rays[i] for i in s], dim=n) for s in combinations(range(n + 1), n)], dim=n)


def delta_prime_fan(n: int) -> Fan:
    """Cones of the simplex fan of dimension at most n - 1."""
    rays = delta_rays(n)
    return Fan([Cone([rays[i] for i in s], dim=n) for s in combinations(range(n + 1), n - 1)], dim=n)


def in_delta_prime(v, n: int) -> bool:
    """Membership in the codimension-one skeleton: the minimum of (0, v) is attained twice."""
    vals = (0,) + tuple(v)
    m = min(vals)
    return sum(1 for x in vals if x == m) >= 2


@dataclass(frozen=True)
class TropicalSetup:
    g1: LaurentPoly
    p: IntMat
    n: int
    vertices: tuple
    p_gr: IntMat
    pi: IntMat
    sigma: Fan | None = field(default=None, compare=False)

    @property
    def lineality_dim(self) -> int:
        return self.p.rows - self.n

    def with_sigma(self, sigma: Fan) -> TropicalSetup:
        return TropicalSetup(self.g1, self.p, self.n, self.vertices, self.p_gr, self.pi, sigma)


def newton_setup(g1: LaurentPoly, p, *, sigma: Fan | None = None, compute_sigma: bool = True) -> TropicalSetup:
    """Newton data of g1 and the projection Pi with Pi P = P_gr.

    The vertices are the exponents of g1 in descending lexicographic order,
    so mu_0 is the T0T1 term of the quadric normal form.
    """
    p = p if isinstance(p, IntMat) else IntMat.from_rows(p)
    if g1.num_vars != p.cols:
        raise InconsistentDiagram("polynomial variables do not match the columns of P")
    verts = tuple(g1.exponents())
    n = len(verts) - 1
    if n < 1:
        raise InconsistentDiagram("a single term has no tropical content")
    diffs = [tuple(a - b for a, b in zip(v, verts[0])) for v in verts[1:]]
    if qrank(diffs, p.cols) != n:
        raise InconsistentDiagram("the exponents are not affinely independent")
    p_gr = IntMat.from_rows(diffs)
    pt = p.transpose()
    rows = []
    for d in diffs:
        try:
            rows.append(solve_diophantine(pt, d))
        except NoSolution:
            raise InconsistentDiagram("P_gr does not factor through P") from None
    pi = IntMat.from_rows(rows, p.rows)
    if pi @ p != p_gr:
        raise InconsistentDiagram("Pi P differs from P_gr")
    if sigma is None and compute_sigma:
        sigma = gkz_fan_bruteforce(VectorConfig(p, kernel_basis(p)))
    return TropicalSetup(g1, p, n, verts, p_gr, pi, sigma)


def lifted_tropical_fan(setup: TropicalSetup) -> Fan:
    """Cones Pi^-1(delta) for the maximal cones delta of the skeleton."""
    return Fan([d.preimage(setup.pi) for d in delta_prime_fan(setup.n).maximal_cones],
               dim=setup.p.rows)


def weak_tropical_resolution(setup: TropicalSetup) -> Fan:
    if setup.sigma is None:
        raise ValueError("setup carries no GKZ fan")
    return common_refinement(setup.sigma, lifted_tropical_fan(setup))


@dataclass(frozen=True)
class ZeroQuotientData:
    projected_rays: tuple
    delta0: Fan

    def to_json(self) -> dict:
        return {"projected_rays": [[str(x) for x in r] for r in self.projected_rays],
                "delta0": self.delta0.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> ZeroQuotientData:
        return cls(_rays(obj["projected_rays"]), Fan.from_json(obj["delta0"]))


def _rays(obj) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in obj)


def zero_quotient(sigma_prime: Fan, pi) -> ZeroQuotientData:
    """Images of the rays of sigma_prime that survive the projection."""
    pi = pi if isinstance(pi, IntMat) else IntMat.from_rows(pi)
    if rank(pi) != pi.rows or not columns_generate_lattice(pi):
        raise NotSurjective("projection is not surjective")
    out = set()
    for ray in sigma_prime.rays():
        img = pi @ ray
        if any(img):
            out.add(primitive_part(img))
    rays = tuple(sorted(out))
    cones = [Cone([r]) for r in rays] or [Cone.zero(pi.rows)]
    return ZeroQuotientData(rays, Fan(cones, dim=pi.rows))


def stellar_subdivision(fan: Fan, v) -> Fan:
    """Star subdivision of a fan at the ray through v."""
    v = tuple(v)
    out = []
    for c in fan.maximal_cones:
        if not c.contains(v):
            out.append(c)
            continue
        for a in c.facets:
            f = c.face([a])
            if not f.contains(v):
                out.append(Cone(list(f.rays) + [v], f.lineality, dim=fan.ambient_dim))
    return Fan(out, dim=fan.ambient_dim)


@dataclass(frozen=True)
class MdsReport:
    weights: tuple
    order: tuple
    n: int
    projected_rays: tuple
    new_rays: tuple
    facet_membership: tuple
    common_cone: CertificateResult
    delta0: Fan
    subdivision: Fan
    h2: LaurentPoly | None
    sigma_new_rays: tuple

    @property
    def certified(self) -> bool:
        return all(f["in_facet"] for f in self.facet_membership) and self.common_cone.certified

    @property
    def verdict(self) -> str:
        return "Certified" if self.certified else "Uncertified"

    def description(self) -> str:
        if not self.new_rays:
            return f"Δ({self.n}) without subdivision" if self.n else "Δ₀ = {0}"
        pts = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.new_rays)
        return f"Δ({self.n}) subdivided at {pts}"

    def to_json(self) -> dict:
        return {"weights": [str(z) for z in self.weights],
                "order": list(self.order),
                "n": self.n,
                "projected_rays": [[str(x) for x in r] for r in self.projected_rays],
                "new_rays": [[str(x) for x in r] for r in self.new_rays],
                "facet_membership": [{"ray": [str(x) for x in f["ray"]], "in_facet": f["in_facet"],
                                 "facet_omits": f["facet_omits"], "exempt": f["exempt"]}
                                for f in self.facet_membership],
                "common_cone": self.common_cone.certified,
                "common_cone_detail": self.common_cone.to_json(),
                "delta0": self.delta0.to_json(),
                "subdivision": self.subdivision.to_json(),
                "description": self.description(),
                "h2": self.h2.to_json() if self.h2 is not None else None,
                "sigma_new_rays": [[str(x) for x in r] for r in self.sigma_new_rays],
                "verdict": self.verdict}

    @classmethod
    def from_json(cls, obj: dict) -> MdsReport:
        membership = tuple({"ray": tuple(int(x) for x in f["ray"]), "exempt": f["exempt"],
                       "in_facet": f["in_facet"], "facet_omits": f["facet_omits"]}
                      for f in obj["facet_membership"])
        h2 = LaurentPoly.from_json(obj["h2"]) if obj["h2"] is not None else None
        return cls(tuple(int(z) for z in obj["weights"]), tuple(obj["order"]), obj["n"],
                   _rays(obj["projected_rays"]), _rays(obj["new_rays"]), membership,
                   CertificateResult.from_json(obj["common_cone_detail"]),
                   Fan.from_json(obj["delta0"]), Fan.from_json(obj["subdivision"]), h2,
                   _rays(obj["sigma_new_rays"]))

    def to_text(self) -> str:
        lines = [f"weights: {', '.join(str(z) for z in self.weights)} (order {list(self.order)})",
                 f"n = {self.n}",
                 f"projected rays: {[list(r) for r in self.projected_rays]}",
                 f"quotient fan: {self.description()}"]
        for f in self.facet_membership:
            status = "exempt" if f["exempt"] else ("in facet" if f["in_facet"] else "NOT in a facet")
            lines.append(f"  {list(f['ray'])}: {status}")
        lines.append(f"common cone: {self.common_cone.status}")
        if self.h2 is not None:
            lines.append(f"h2 = {self.h2.to_text()}")
        lines.append(f"verdict: MoriDream={self.verdict}")
        return "\n".join(lines)


def _facet_check(b, n: int, facets) -> dict:
    """Which facet of cone(e_0..e_(n-1)) contains b, if any."""
    rays = delta_rays(n)
    for a in facets:
        if dot(a, b) == 0:
            omitted = [i for i in range(n) if dot(a, rays[i]) != 0]
            return {"in_facet": True, "facet_omits": omitted[0] if omitted else None}
    return {"in_facet": False, "facet_omits": None}


def mds_certificate(w: WeightSystem, *, sigma: Fan | None = None) -> MdsReport:
    """Run the tropical pipeline and check the facet and common-cone conditions.

    The pairs are renumbered first so that the pair of minimal |zeta| comes
    last; its image e_n is the only ray exempt from the facet condition.
    """
    w.require_degree_zero()
    if len(set(w.zeta)) < 2:
        raise InvalidWeights("constant weights give a trivial action")
    perm = pair_order(w)
    w2 = WeightSystem(tuple(w.zeta[i] for i in perm))
    r = w2.r
    q = w2.extended_weight_matrix()
    # columns of the original Gale dual, permuted, keep ray coordinates comparable
    p = gale_dual(w.extended_weight_matrix()).select_columns(perm)
    g1 = quadric(r)
    cfg = VectorConfig(p, q)
    if sigma is None:
        sigma = gkz_fan_bruteforce(cfg)
    setup = newton_setup(g1, p, sigma=sigma)
    n = setup.n
    columns = {primitive_part(c) for c in p.columns() if any(c)}
    sigma_new = tuple(sorted(set(sigma.rays()) - columns))
    sprime = weak_tropical_resolution(setup)
    zq = zero_quotient(sprime, setup.pi)
    drays = delta_rays(n)
    new = tuple(b for b in zq.projected_rays if b not in drays)

    simplex = Cone(drays[:n], dim=n)
    facets = simplex.facets
    membership = []
    for b in zq.projected_rays:
        exempt = b == drays[n]
        entry = {"ray": b, "exempt": exempt}
        if exempt:
            entry.update({"in_facet": True, "facet_omits": None})
        elif not simplex.contains(b):
            entry.update({"in_facet": False, "facet_omits": None})
        else:
            entry.update(_facet_check(b, n, facets))
        membership.append(entry)

    bmat = IntMat.from_columns(new, n) if new else IntMat(n, 0, tuple(() for _ in range(n)))
    cc = common_cone_certificate(bmat, n)
    sub = delta_fan(n)
    for b in new:
        sub = stellar_subdivision(sub, b)
    h2 = lift_h1(bmat, n) if (all(c["in_facet"] for c in membership) and cc.certified) else None
    return MdsReport(w.zeta, tuple(perm), n, zq.projected_rays, new, tuple(membership), cc,
                     zq.delta0, sub, h2, sigma_new)
