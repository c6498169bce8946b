"""Cox rings of Chow quotients of K*-actions on smooth quadrics.

The quadric is V(T0T1 + T2T3 + ...) in P_r (closing with T_r^2 for even r)
and K* acts diagonally with weights zeta.  The pipeline goes through the
Gale dual P of the extended weight matrix, the corank-two GKZ rays, a weak
lifting built from the rho(u) coefficients, and the shifted row sums.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import CertificateFailed, ChowqError, HypothesisViolated, InvalidWeights
from .gkz import GkzRay, VectorConfig, gkz_fan_bruteforce, gkz_rays_corank2, perpendicular, rho
from .lattice import IntMat, columns_generate_lattice, dot, gale_dual, primitive_part, solve_diophantine
from .laurent import LaurentPoly
from .lifting import (EtaData, WeakLifting, eta_rows, lifting_from_columns, prime_certificate_quadric,
                      quadric, relation_from_eta, transfer_principal_ideal, transfer_with, weak_b_lifting)


@dataclass(frozen=True)
class WeightSystem:
    zeta: tuple

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(int(z) for z in self.zeta))
        if len(self.zeta) < 2:
            raise InvalidWeights("need at least two weights")

    @classmethod
    def parse(cls, text: str) -> WeightSystem:
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))
        except ValueError as exc:
            raise InvalidWeights(f"cannot read weights {text!r}") from exc

    @property
    def r(self) -> int:
        return len(self.zeta) - 1

    @property
    def parity(self) -> str:
        return "odd" if self.r % 2 else "even"

    def pairs(self) -> list:
        return [(i, i + 1) for i in range(0, self.r - (self.r % 2 == 0), 2)]

    def extended_weight_matrix(self) -> IntMat:
        return IntMat.from_rows([self.zeta, [1] * len(self.zeta)])

    def g1(self) -> LaurentPoly:
        return quadric(self.r)

    def degree_zero(self) -> bool:
        ok = all(self.zeta[i] + self.zeta[j] == 0 for i, j in self.pairs())
        if self.r % 2 == 0:
            ok = ok and self.zeta[self.r] == 0
        return ok

    def require_degree_zero(self) -> None:
        if not self.degree_zero():
            raise InvalidWeights(f"weights {self.zeta} do not make the quadric of degree zero "
                                 "(pair sums and twice the square weight must all vanish)")


@dataclass(frozen=True)
class HypothesisReport:
    flags: dict
    witnesses: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return all(self.flags[k] for k in GATING)

    def failures(self) -> list:
        return [k for k in GATING if not self.flags[k]]

    def to_json(self) -> dict:
        return {"passed": self.passed, "flags": dict(self.flags),
                "witnesses": {k: v for k, v in self.witnesses.items()},
                "notes": list(self.notes)}

    @classmethod
    def from_json(cls, obj: dict) -> HypothesisReport:
        return cls(dict(obj["flags"]), dict(obj["witnesses"]), tuple(obj["notes"]))


GATING = ("degree_zero", "columns_generate", "r_columns_generate", "minimal_weight_count")


def _minimal_count(zeta) -> int:
    m = min(abs(z) for z in zeta)
    return sum(1 for z in zeta if abs(z) == m)


def validate_hypotheses(w: WeightSystem) -> HypothesisReport:
    """All hypothesis checks, each reported separately."""
    r = w.r
    q = w.extended_weight_matrix()
    flags, wit, notes = {}, {}, []
    flags["degree_zero"] = w.degree_zero()
    if not flags["degree_zero"]:
        wit["degree_zero"] = [[i, j] for i, j in w.pairs() if w.zeta[i] + w.zeta[j]]
        if r % 2 == 0 and w.zeta[r]:
            wit["degree_zero"].append([r])
    flags["columns_generate"] = columns_generate_lattice(q)
    bad = [sorted(set(range(r + 1)) - set(s)) for s in combinations(range(r + 1), r)
           if not columns_generate_lattice(q, s)]
    flags["r_columns_generate"] = not bad
    if bad:
        wit["r_columns_generate"] = [{"dropped": d} for d in bad]
    need = 4 if r % 2 else 3
    count = _minimal_count(w.zeta)
    flags["minimal_weight_count"] = count >= need
    wit["minimal_weight_count"] = {"count": count, "required": need,
                                   "minimal_abs": min(abs(z) for z in w.zeta)}
    # the literal even-r normal form asks for three zeros besides the square position
    if r % 2 == 0:
        zeros = sum(1 for z in w.zeta[:r] if z == 0)
        flags["even_normal_form_three_zeros"] = zeros >= 3
        if flags["minimal_weight_count"] and not flags["even_normal_form_three_zeros"]:
            notes.append("three minimal weights are present, but fewer than three zero weights "
                         "sit outside the square position; the gating rule uses the former")
    return HypothesisReport(flags, wit, tuple(notes))


def pair_order(w: WeightSystem) -> list:
    """Permutation: pairs by |zeta| descending (stable), the square index last."""
    pairs = sorted(w.pairs(), key=lambda ij: -abs(w.zeta[ij[0]]))
    perm = [i for ij in pairs for i in ij]
    if w.r % 2 == 0:
        perm.append(w.r)
    return perm


def reorder_weights(w: WeightSystem) -> tuple[WeightSystem, list]:
    """Renumber so the last four (three) weights have minimal absolute value.

    ``perm[i]`` is the old index of the new variable i.  Only the pair
    structure is required; the other hypotheses are left to the caller.
    """
    if not w.degree_zero():
        raise HypothesisViolated("degree_zero", f"weights {w.zeta} break the pair structure")
    perm = pair_order(w)
    return WeightSystem(tuple(w.zeta[i] for i in perm)), perm


def designated_indices(w: WeightSystem, perm) -> list:
    """Old indices of the trailing minimal-weight variables."""
    return sorted(perm[-4:] if w.r % 2 else perm[-3:])


@dataclass(frozen=True)
class CoxPresentation:
    variables: tuple
    relation: LaurentPoly
    grading: IntMat
    provenance: dict

    def to_json(self) -> dict:
        return {"variables": list(self.variables),
                "relation": self.relation.to_json(),
                "grading": self.grading.to_json(),
                "provenance": self.provenance}

    @classmethod
    def from_json(cls, obj: dict) -> CoxPresentation:
        return cls(tuple(obj["variables"]), LaurentPoly.from_json(obj["relation"]),
                   IntMat.from_json(obj["grading"]), obj["provenance"])

    def to_text(self) -> str:
        lines = [f"R = K[{', '.join(self.variables)}] / <g2>",
                 f"g2 = {self.relation.to_text()}",
                 "grading (column i is the degree of variable i):"]
        width = max((len(str(x)) for row in self.grading.data for x in row), default=1)
        lines.append("  " + " ".join(v.rjust(max(width, len(v))) for v in self.variables))
        for row in self.grading.data:
            lines.append("  " + " ".join(str(x).rjust(max(width, len(v)))
                                         for x, v in zip(row, self.variables)))
        return "\n".join(lines)


def _homogeneous_under(g: LaurentPoly, grading: IntMat) -> bool:
    exps = g.exponents()
    degs = {grading @ e for e in exps}
    return len(degs) <= 1


def _recovers(g2: LaurentPoly, g1: LaurentPoly) -> bool:
    """Setting every S to one gives g1 up to a monomial factor."""
    nt = g1.num_vars
    back = g2.set_to_one(range(nt, g2.num_vars)).monomial_free()[0]
    return back == g1.monomial_free()[0]


def certificate_lifting(cfg: VectorConfig, b_rays, designated) -> WeakLifting:
    """Lifting A' with A'_j = max(0, u_j(q_i)), u_j nonpositive on the designated columns."""
    cols = []
    for ray in b_rays:
        _, i = ray.origin
        u = perpendicular(cfg.q.col(i))
        for cand in (u, tuple(-x for x in u)):
            if all(dot(cand, cfg.q.col(d)) <= 0 for d in designated):
                u = cand
                break
        else:
            raise CertificateFailed(f"no sign of u_{i} is nonpositive on the trailing weights")
        cols.append(tuple(max(0, dot(u, q)) for q in cfg.q.columns()))
    b = IntMat.from_columns([r.generator for r in b_rays], cfg.n) if b_rays else IntMat(cfg.n, 0, tuple(() for _ in range(cfg.n)))
    return lifting_from_columns(cfg.p, b, cols)


def new_rays(cfg: VectorConfig) -> tuple[list, str]:
    """GKZ rays that are not columns of p, each tagged with a hyperplane when one is found.

    The closed form is used when its hypotheses hold; otherwise the rays
    are read off the brute-force fan and matched against the rho(u_i).
    """
    try:
        rays = gkz_rays_corank2(cfg)
        out = [ray for ray in rays if ray.origin[0] == "hyperplane"]
        return sorted(out, key=lambda ray: ray.generator), "closed form"
    except HypothesisViolated:
        pass
    fan = gkz_fan_bruteforce(cfg)
    cols = {primitive_part(c) for c in cfg.p.columns() if any(c)}
    candidates = {}
    for i, q in enumerate(cfg.q.columns()):
        if not any(q):
            continue
        try:
            ray = rho(cfg, perpendicular(q), i)
        except ChowqError:
            continue
        candidates.setdefault(ray.generator, ray)
    out = []
    for g in fan.rays():
        if g in cols:
            continue
        if g in candidates:
            out.append(candidates[g])
        else:
            out.append(GkzRay(g, ("fan", None), solve_diophantine(cfg.p, g)))
    return sorted(out, key=lambda ray: ray.generator), "fan"


def cox_ring_of_chow_quotient(w: WeightSystem) -> CoxPresentation:
    """Cox ring presentation of the normalized Chow quotient.

    Raises :class:`HypothesisViolated` when a gating hypothesis fails and
    :class:`CertificateFailed` if an internal consistency check does not hold.
    """
    report = validate_hypotheses(w)
    if not report.passed:
        raise HypothesisViolated(", ".join(report.failures()), str(report.witnesses))
    r = w.r
    perm = pair_order(w)
    designated = designated_indices(w, perm)
    q = w.extended_weight_matrix()
    p = gale_dual(q)
    cfg = VectorConfig(p, q)
    new, source = new_rays(cfg)
    l = len(new)
    t_names = [f"T{i}" for i in range(r + 1)]
    s_names = [f"S{j + 1}" for j in range(l)]
    names = t_names + s_names
    g1 = quadric(r, t_names)

    b = (IntMat.from_columns([ray.generator for ray in new], p.rows) if new
         else IntMat(p.rows, 0, tuple(() for _ in range(p.rows))))
    lift = weak_b_lifting(p, b)
    if any(m != 1 for m in lift.m):
        raise CertificateFailed("columns of P do not generate the lattice")
    eta = eta_rows(lift, r, w.parity)
    g2 = relation_from_eta(eta, r, names)
    if transfer_principal_ideal(g1, p, b, s_names) != g2:
        raise CertificateFailed("transfer disagrees with the shifted row sums")
    a_cert = None
    if all(ray.origin[0] == "hyperplane" for ray in new):
        a_cert = certificate_lifting(cfg, new, designated)
        if transfer_with(g1, a_cert, s_names) != g2:
            raise CertificateFailed("the hyperplane lifting gives a different relation")
        if any(a_cert.a.row(d)[j] for d in designated for j in range(l)):
            raise CertificateFailed("certificate lifting does not vanish on the trailing rows")

    cert = prime_certificate_quadric(g2, r, w.parity)
    if not cert.certified:
        raise CertificateFailed(f"prime certificate failed: {cert.reason}")

    pb = p.hstack(b)
    grading = gale_dual(pb)
    if not (grading @ pb.transpose()).is_zero():
        raise CertificateFailed("grading is not orthogonal to [P, B]")
    if not _homogeneous_under(g2, grading):
        raise CertificateFailed("relation is not homogeneous for the grading")
    if not g2.is_monomial_free() or not _recovers(g2, g1):
        raise CertificateFailed("relation does not specialize back to the quadric")

    provenance = {
        "weights": [str(z) for z in w.zeta],
        "q": q.to_json(),
        "p": p.to_json(),
        "b": b.to_json(),
        "a": lift.a.to_json(),
        "a_certificate": a_cert.a.to_json() if a_cert is not None else None,
        "multipliers": [str(m) for m in a_cert.m] if a_cert is not None else None,
        "ray_source": source,
        "rays": [ray.to_json() for ray in new],
        "eta": eta.to_json()["eta"],
        "mu": eta.to_json()["mu"],
        "order": perm,
        "designated": designated,
        "certificate": cert.to_json(),
        "hypotheses": report.to_json(),
    }
    return CoxPresentation(tuple(names), g2, grading, provenance)
