"""Exact rational polyhedral cones and fans.

Cones are converted between generator and inequality form with an exact
double description (incremental Fourier-Motzkin in the dual) over Python
integers.  Non-pointed cones carry an explicit lineality basis and every
predicate works modulo it.
"""
from __future__ import annotations

import threading
from collections import deque
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotAFan, NotSurjective
from .lattice import IntMat, as_intmat, columns_generate_lattice, dot, integral, qrank, rank, rational_nullspace, span_basis


def _prim(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _dedupe(vectors):
    seen = {}
    for v in vectors:
        v = _prim(tuple(int(x) for x in v))
        if any(v):
            seen.setdefault(v, None)
    return list(seen)


def extreme_rays(ineqs: Sequence, eqs: Sequence, dim: int) -> tuple[list, list]:
    """V-representation of ``{x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}``.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    (which lives in the orthogonal complement of the lineality space) and a
    canonical integer basis of the lineality space.
    """
    ineqs = _dedupe(ineqs)
    eqs = _dedupe(eqs)
    lin = rational_nullspace(ineqs + eqs, dim)
    lin = span_basis(lin, dim) if lin else []
    # restrict to W = {x : E x = 0, x orthogonal to the lineality space}
    basis = rational_nullspace(eqs + lin, dim) if (eqs or lin) else [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    cur_lin = [tuple(b) for b in basis]
    rays: list = []
    zsets: list = []  # bitmask of processed inequalities tight at each ray
    for k, a in enumerate(ineqs):
        bit = 1 << k
        pivot = next((l for l in cur_lin if dot(a, l) != 0), None)
        if pivot is not None:
            s = dot(a, pivot)
            if s < 0:
                pivot = tuple(-x for x in pivot)
                s = -s
            new_lin = []
            for l in cur_lin:
                if l is pivot or l == tuple(-x for x in pivot):
                    continue
                t = dot(a, l)
                w = _prim(tuple(s * x - t * y for x, y in zip(l, pivot))) if t else l
                if any(w):
                    new_lin.append(w)
            new_rays = []
            for r in rays:
                t = dot(a, r)
                new_rays.append(_prim(tuple(s * x - t * y for x, y in zip(r, pivot))) if t else r)
            zsets = [z | bit for z in zsets]
            rays = new_rays + [_prim(pivot)]
            # the pivot ray is tight on every earlier inequality
            zsets.append(bit - 1)
            cur_lin = new_lin
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            zsets = [z | bit if v == 0 else z for z, v in zip(zsets, vals)]
            continue
        keep = pos + zero
        out_rays = [rays[i] for i in keep]
        out_z = [zsets[i] | (bit if vals[i] == 0 else 0) for i in keep]
        all_z = zsets
        for i in pos:
            zi = zsets[i]
            for j in neg:
                common = zi & zsets[j]
                adjacent = True
                for t in range(len(rays)):
                    if t != i and t != j and (all_z[t] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], -vals[j]
                new = _prim(tuple(vi * y + vj * x for x, y in zip(rays[i], rays[j])))
                if any(new):
                    out_rays.append(new)
                    out_z.append(common | bit)
        rays, zsets = out_rays, out_z
    # lineality left over here is orthogonal to every inequality and lies in
    # W, so it is zero; anything remaining means the input had no inequality
    # touching it, which the nullspace step already removed
    if cur_lin:
        lin = span_basis(lin + cur_lin, dim)
    rays = sorted(set(rays))
    return rays, lin


class Cone:
    """Rational polyhedral cone ``cone(rays) + span(lineality)``.

    Construct from generators with ``Cone(rays, lineality)`` or from an
    inequality system with :meth:`from_inequalities`.  Both representations
    are canonicalized lazily; instances are immutable and hashable.
    """

    __slots__ = ("ambient_dim", "_gen", "_ineq", "_v", "_h", "_lock", "_key")

    def __init__(self, rays: Iterable = (), lineality: Iterable = (), *, dim: int | None = None):
        rays = [tuple(int(x) for x in r) for r in rays]
        lineality = [tuple(int(x) for x in l) for l in lineality]
        if dim is None:
            if rays:
                dim = len(rays[0])
            elif lineality:
                dim = len(lineality[0])
            else:
                raise ValueError("ambient dimension required for an empty generator list")
        if any(len(v) != dim for v in rays + lineality):
            raise DimensionMismatch("generator length differs from the ambient dimension")
        self.ambient_dim = dim
        self._gen = (rays, lineality)
        self._ineq = None
        self._v = None
        self._h = None
        self._key = None
        self._lock = threading.Lock()

    @classmethod
    def from_inequalities(cls, ineqs: Iterable = (), equations: Iterable = (), *,
                          dim: int) -> Cone:
        c = cls.__new__(cls)
        c.ambient_dim = dim
        c._gen = None
        c._ineq = ([tuple(int(x) for x in a) for a in ineqs],
                   [tuple(int(x) for x in e) for e in equations])
        c._v = None
        c._h = None
        c._key = None
        c._lock = threading.Lock()
        return c

    @classmethod
    def zero(cls, dim: int) -> Cone:
        return cls((), (), dim=dim)

    @classmethod
    def full(cls, dim: int) -> Cone:
        return cls((), [tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim=dim)

    # -- representations -------------------------------------------------

    def _vrep(self):
        if self._v is None:
            with self._lock:
                if self._v is None:
                    if self._gen is not None:
                        facets, eqs = self._hrep_unlocked()
                    else:
                        facets, eqs = self._ineq
                    self._v = extreme_rays(facets, eqs, self.ambient_dim)
        return self._v

    def _hrep_unlocked(self):
        if self._h is None:
            if self._gen is not None:
                rays, lin = self._gen
            else:
                rays, lin = self._v if self._v is not None else extreme_rays(
                    *self._ineq, self.ambient_dim)
                self._v = (rays, lin)
            facets, eqs = extreme_rays(rays, lin, self.ambient_dim)
            self._h = (facets, eqs)
        return self._h

    def _hrep(self):
        if self._h is None:
            with self._lock:
                self._hrep_unlocked()
        return self._h

    @property
    def rays(self) -> list:
        """Canonical primitive extreme rays (of the part orthogonal to the lineality)."""
        return self._vrep()[0]

    @property
    def lineality(self) -> list:
        return self._vrep()[1]

    @property
    def facets(self) -> list:
        """Primitive inner facet normals, inside the linear span of the cone."""
        return self._hrep()[0]

    @property
    def equations(self) -> list:
        """Basis of the orthogonal complement of the linear span."""
        return self._hrep()[1]

    @property
    def inequalities(self) -> list:
        return self.facets

    @property
    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def key(self):
        if self._key is None:
            self._key = (self.ambient_dim, tuple(self.rays), tuple(self.lineality))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={self.rays}, lineality={self.lineality})"
        return f"Cone(rays={self.rays})"

    # -- predicates ------------------------------------------------------

    def _check(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")

    def contains(self, v) -> bool:
        self._check(v)
        facets, eqs = self._hrep()
        return all(dot(e, v) == 0 for e in eqs) and all(dot(a, v) >= 0 for a in facets)

    def __contains__(self, v):
        return self.contains(v)

    def relative_interior_contains(self, v) -> bool:
        self._check(v)
        facets, eqs = self._hrep()
        return all(dot(e, v) == 0 for e in eqs) and all(dot(a, v) > 0 for a in facets)

    def on_boundary(self, v) -> bool:
        """In the cone but not in its relative interior."""
        return self.contains(v) and not self.relative_interior_contains(v)

    def contains_cone(self, other: Cone) -> bool:
        return (all(self.contains(r) for r in other.rays)
                and all(self.contains(l) and self.contains(tuple(-x for x in l))
                        for l in other.lineality))

    def interior_point(self):
        """A point of the relative interior: the sum of the extreme rays."""
        pt = [0] * self.ambient_dim
        for r in self.rays:
            for i, x in enumerate(r):
                pt[i] += x
        return tuple(pt)

    def intersect(self, other: Cone) -> Cone:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("cones live in different ambient spaces")
        return Cone.from_inequalities(self.facets + other.facets,
                                      self.equations + other.equations,
                                      dim=self.ambient_dim)

    @classmethod
    def intersection_of(cls, cones: Sequence[Cone], *, dim: int | None = None) -> Cone:
        """Intersection of several cones, computed in one conversion."""
        cones = list(cones)
        if not cones:
            if dim is None:
                raise ValueError("ambient dimension required for an empty intersection")
            return cls.full(dim)
        if len(cones) == 1:
            return cones[0]
        dim = cones[0].ambient_dim
        if any(c.ambient_dim != dim for c in cones):
            raise DimensionMismatch("cones live in different ambient spaces")
        facets, eqs = [], []
        for c in cones:
            facets += c.facets
            eqs += c.equations
        return cls.from_inequalities(facets, eqs, dim=dim)

    def dual(self) -> Cone:
        return Cone(self.facets, self.equations, dim=self.ambient_dim)

    def image(self, p) -> Cone:
        p = as_intmat(p)
        if p.cols != self.ambient_dim:
            raise DimensionMismatch("matrix does not act on the cone's ambient space")
        return Cone([p @ r for r in self.rays], [p @ l for l in self.lineality], dim=p.rows)

    def preimage(self, p) -> Cone:
        """``{x : p x in self}``."""
        p = as_intmat(p)
        if p.rows != self.ambient_dim:
            raise DimensionMismatch("matrix does not map into the cone's ambient space")
        pt = p.transpose()
        return Cone.from_inequalities([pt @ a for a in self.facets],
                                      [pt @ e for e in self.equations], dim=p.cols)

    def face(self, normals: Iterable) -> Cone:
        """Face cut out by making the given valid inequalities tight."""
        normals = list(normals)
        return Cone.from_inequalities(self.facets, self.equations + normals, dim=self.ambient_dim)

    def is_face_of(self, other: Cone) -> bool:
        if not other.contains_cone(self):
            return False
        tight = [a for a in other.facets
                 if all(dot(a, r) == 0 for r in self.rays)
                 and all(dot(a, l) == 0 for l in self.lineality)]
        return other.face(tight) == self

    def faces(self) -> list:
        """All faces, from the cone itself down to its lineality space."""
        facets = self.facets
        rays = self.rays
        seen = {}

        def tight(mask_rays):
            return frozenset(k for k, a in enumerate(facets)
                             if all(dot(a, rays[i]) == 0 for i in mask_rays))

        def closure(fset):
            return frozenset(i for i, r in enumerate(rays)
                             if all(dot(facets[k], r) == 0 for k in fset))

        top = frozenset(range(len(rays)))
        stack = [top]
        seen[top] = None
        while stack:
            f = stack.pop()
            tf = tight(f)
            for k in range(len(facets)):
                if k in tf:
                    continue
                g = closure(tf | {k})
                if g not in seen and g != f:
                    seen[g] = None
                    stack.append(g)
        out = [Cone([rays[i] for i in sorted(f)], self.lineality, dim=self.ambient_dim)
               for f in seen]
        return sorted(set(out), key=lambda c: (-c.dim, c.key()))

    def to_json(self) -> dict:
        return {"dim": self.ambient_dim,
                "rays": [[str(x) for x in r] for r in self.rays],
                "lineality": [[str(x) for x in l] for l in self.lineality]}

    @classmethod
    def from_json(cls, obj: dict) -> Cone:
        return cls([[int(x) for x in r] for r in obj.get("rays", [])],
                   [[int(x) for x in l] for l in obj.get("lineality", [])],
                   dim=int(obj["dim"]))


def dualize(c: Cone) -> Cone:
    return c.dual()


def intersect(a: Cone, b: Cone) -> Cone:
    return a.intersect(b)


def relative_interior_contains(c: Cone, v) -> bool:
    return c.relative_interior_contains(v)


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A fan stored through its maximal cones; faces are produced on demand."""

    def __init__(self, cones: Iterable[Cone], *, dim: int | None = None, labels=None):
        cones = list(cones)
        if dim is None:
            if not cones:
                raise ValueError("ambient dimension required for an empty fan")
            dim = cones[0].ambient_dim
        if any(c.ambient_dim != dim for c in cones):
            raise DimensionMismatch("cones of a fan must share the ambient space")
        uniq = list(dict.fromkeys(cones))
        maximal = [c for c in uniq
                   if not any(d is not c and d.contains_cone(c) and d != c for d in uniq)]
        self.ambient_dim = dim
        self.maximal_cones = sorted(maximal, key=lambda c: (-c.dim, c.key()))
        self.labels = labels

    @property
    def cones(self) -> list:
        return self.maximal_cones

    def all_cones(self) -> list:
        out = {}
        for c in self.maximal_cones:
            for f in c.faces():
                out.setdefault(f, None)
        return sorted(out, key=lambda c: (-c.dim, c.key()))

    @property
    def lineality(self) -> list:
        if not self.maximal_cones:
            return []
        lin = self.maximal_cones[0].lineality
        for c in self.maximal_cones[1:]:
            if c.lineality != lin:
                common = rational_nullspace(
                    [tuple(x) for x in rational_nullspace(lin, self.ambient_dim)]
                    + rational_nullspace(c.lineality, self.ambient_dim), self.ambient_dim)
                lin = span_basis(common, self.ambient_dim) if common else []
        return lin

    def rays(self) -> list:
        """Primitive generators of the rays (one-dimensional cones modulo lineality)."""
        out = set()
        for c in self.maximal_cones:
            out.update(c.rays)
        return sorted(out)

    def contains(self, v) -> bool:
        return any(c.contains(v) for c in self.maximal_cones)

    def __contains__(self, v):
        return self.contains(v)

    def cone_containing(self, v) -> Cone | None:
        """Smallest cone of the fan containing v."""
        best = None
        for c in self.maximal_cones:
            if c.contains(v):
                for f in c.faces():
                    if f.contains(v) and (best is None or f.dim < best.dim):
                        best = f
        return best

    def is_fan(self) -> bool:
        cs = self.maximal_cones
        for a, b in combinations(cs, 2):
            m = a.intersect(b)
            if not (m.is_face_of(a) and m.is_face_of(b)):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Fan) and self.ambient_dim == other.ambient_dim
                and set(self.maximal_cones) == set(other.maximal_cones))

    def __hash__(self):
        return hash(frozenset(self.maximal_cones))

    def __len__(self):
        return len(self.maximal_cones)

    def __repr__(self):
        return f"Fan(dim={self.ambient_dim}, maximal_cones={len(self.maximal_cones)})"

    def to_json(self) -> dict:
        lin = self.lineality
        for c in self.maximal_cones:
            if len(c.lineality) != len(lin):
                raise ValueError("fan JSON needs a lineality space common to all cones")
        rays = self.rays()
        index = {r: i for i, r in enumerate(rays)}
        cones = sorted(sorted(index[r] for r in c.rays) for c in self.maximal_cones)
        return {"dim": self.ambient_dim,
                "rays": [[str(x) for x in r] for r in rays],
                "lineality": [[str(x) for x in l] for l in lin],
                "cones": cones}

    @classmethod
    def from_json(cls, obj: dict) -> Fan:
        dim = int(obj["dim"])
        rays = [tuple(int(x) for x in r) for r in obj.get("rays", [])]
        lin = [tuple(int(x) for x in l) for l in obj.get("lineality", [])]
        cones = [Cone([rays[i] for i in idx], lin, dim=dim) for idx in obj["cones"]]
        if not cones:
            cones = [Cone((), lin, dim=dim)]
        return cls(cones, dim=dim)


def common_refinement(f1: Fan, f2: Fan) -> Fan:
    """Fan of all intersections of a cone of f1 with a cone of f2."""
    if f1.ambient_dim != f2.ambient_dim:
        raise DimensionMismatch("fans live in different ambient spaces")
    pieces = {}
    for a in f1.maximal_cones:
        for b in f2.maximal_cones:
            pieces.setdefault(a.intersect(b), None)
    return Fan(pieces, dim=f1.ambient_dim)


def refines(f1: Fan, f2: Fan) -> bool:
    """True iff the supports agree and every cone of f1 sits in a cone of f2."""
    if f1.ambient_dim != f2.ambient_dim:
        raise DimensionMismatch("fans live in different ambient spaces")
    for c in f1.maximal_cones:
        if not any(d.contains_cone(c) for d in f2.maximal_cones):
            return False
    return _support_covered(f2, f1)


def _support_covered(big: Fan, small: Fan) -> bool:
    """|big| is contained in |small|, given that small is a fan.

    Each maximal cone c of big is cut by the cones of small; c is covered iff
    every facet of a full piece that is interior to c is shared by another
    full piece.
    """
    for c in big.maximal_cones:
        pieces = [c.intersect(d) for d in small.maximal_cones]
        pieces = [p for p in dict.fromkeys(pieces) if p.dim == c.dim]
        if not pieces:
            return False
        for a in pieces:
            for n in a.facets:
                pt = a.face([n]).interior_point()
                if c.on_boundary(pt):
                    continue
                if not any(b is not a and b.contains(pt) for b in pieces):
                    return False
    return True


# ---------------------------------------------------------------------------
# chamber complexes


def _moment_vector(dim: int, t: int):
    return tuple(t ** k for k in range(dim))


def _generic(v, full) -> bool:
    """v avoids the boundary of every full-dimensional member."""
    return not any(c.on_boundary(v) for c in full)


def _scaled_step(f, d, k):
    """The point f + 2^-k d, scaled by 2^k to stay integral."""
    s = 1 << k
    return tuple(s * x + y for x, y in zip(f, d))


def _facet_points(face, fpt, d):
    """fpt and generic nearby points of the facet, each with a matching outward step."""
    yield fpt, d
    for t in range(2, 12):
        w = [0] * len(fpt)
        for coeff, g in zip(_moment_vector(len(face.rays), t), face.rays):
            for i, x in enumerate(g):
                w[i] += coeff * x
        scale = 1 + sum(abs(x) for x in w)
        yield tuple(scale * x + y for x, y in zip(fpt, w)), tuple(scale * x for x in d)


def _step_across(face, fpt, d, full, chamber_at, dim, max_halvings):
    """The chamber on the far side of a facet, or None if the support ends there."""
    for q, dq in _facet_points(face, fpt, d):
        for k in range(1, max_halvings):
            v = _scaled_step(q, dq, k)
            if not _generic(v, full):
                continue
            nb = chamber_at(v)
            if nb is not None and nb.contains(q) and nb.dim == dim:
                return nb
            if nb is None and not any(c.contains(_scaled_step(q, dq, max_halvings)) for c in full):
                # a member may touch the facet only from its boundary: the
                # support is not convex and ends at this facet
                return None
    raise NotAFan("could not step across a chamber facet")


def chamber_complex(family: Sequence[Cone], *, max_halvings: int = 80) -> list:
    """Maximal cones of the fan ``v -> intersection of the cones containing v``.

    Only cones of full dimension inside the span of the family matter for
    generic points.  The chambers are found by a walk across facets,
    seeded from a generic interior point of every full-dimensional member.
    Raises :class:`NotAFan` if the walk meets inconsistent chambers.
    """
    family = list(dict.fromkeys(family))
    if not family:
        return []
    dim = family[0].ambient_dim
    span_dim = qrank([v for c in family for v in c.rays + c.lineality], dim)
    full = [c for c in family if c.dim == span_dim]

    def chamber_at(v):
        members = [c for c in full if c.contains(v)]
        if not members:
            return None
        return Cone.intersection_of(members)

    chambers: dict = {}
    queue = deque()

    def seed(c):
        base = c.interior_point()
        if _generic(base, full):
            return base
        lin_dirs = c.rays + c.lineality
        for t in range(2, 40):
            d = [0] * dim
            w = _moment_vector(len(lin_dirs), t)
            for coeff, g in zip(w, lin_dirs):
                for i, x in enumerate(g):
                    d[i] += coeff * x
            for k in range(1, max_halvings):
                v = _scaled_step(base, d, k)
                if c.relative_interior_contains(v) and _generic(v, full):
                    return v
        raise NotAFan("no generic seed point found")

    for c in full:
        if any(ch.contains_cone(c) for ch in chambers):
            continue
        v = seed(c)
        if any(ch.relative_interior_contains(v) for ch in chambers):
            continue
        ch = chamber_at(v)
        if ch not in chambers:
            chambers[ch] = None
            queue.append(ch)
        while queue:
            cur = queue.popleft()
            center = cur.interior_point()
            for a in cur.facets:
                fpt = cur.face([a]).interior_point()
                d = tuple(x - y for x, y in zip(fpt, center))
                crossing = [c2 for c2 in full if c2.contains(fpt)
                            and (any(dot(a, r) < 0 for r in c2.rays)
                                 or any(dot(a, l) != 0 for l in c2.lineality))]
                if not crossing:
                    continue
                found = _step_across(cur.face([a]), fpt, d, full, chamber_at, cur.dim, max_halvings)
                if found is None:
                    continue
                if found not in chambers:
                    chambers[found] = None
                    queue.append(found)
    out = sorted(chambers, key=Cone.key)
    for a, b in combinations(out, 2):
        m = a.intersect(b)
        if m.dim == a.dim:
            raise NotAFan("two chambers overlap in their interiors")
    return out


# ---------------------------------------------------------------------------
# quotient fans


def quotient_fan(f: Fan, p) -> Fan:
    """Fan of the cones ``tau(v) = intersection of P(sigma) over v in P(sigma)``."""
    p = as_intmat(p)
    if p.cols != f.ambient_dim:
        raise DimensionMismatch("projection does not act on the fan's ambient space")
    if rank(p) != p.rows:
        raise NotSurjective("projection is not surjective over Q")
    if not columns_generate_lattice(p):
        raise NotSurjective("projection is not surjective as a lattice map")
    images = list(dict.fromkeys(c.image(p) for c in f.all_cones()))
    chambers = chamber_complex(images)
    covered = list(chambers)
    # maximal cones of lower dimension that no chamber reaches
    for img in sorted(images, key=lambda c: (-c.dim, c.key())):
        pt = img.interior_point()
        if any(c.contains(pt) for c in covered):
            continue
        tau = tau_at(images, pt)
        covered.append(tau)
    result = Fan(covered, dim=p.rows)
    for c in result.maximal_cones:
        if tau_at(images, c.interior_point()) != c:
            raise NotAFan("quotient cone does not satisfy the defining intersection formula")
    return result


def tau_at(images: Sequence[Cone], v) -> Cone:
    """Intersection of all cones in ``images`` that contain v."""
    members = [c for c in images if c.contains(v)]
    if not members:
        raise ValueError("point outside the support")
    return Cone.intersection_of(members)
