"""Poset-building constructions, each paired with its point map and a verifier.

Covers products, G-delta subspaces on the maximal- and unbounded-filter
sides, open subspaces, formal-ball posets over exact rational metrics, and
the precompact-open poset of a finite topological space.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .poset_core import FinitePoset, GeneratedPoset, PosetError, check_element_id
from .filters import ChainFilter, Filter, enumerate_filters, upward_closure
from .topology import PosetSpace


class EmptyFactorList(PosetError):
    pass


class NotDescending(PosetError):
    pass


class NotOpen(PosetError):
    pass


class MetricAxiomViolation(PosetError):
    pass


class TopologyInvalid(PosetError):
    pass


INF = float("inf")


# ---------------------------------------------------------------------------
# finite topological spaces


class FiniteTopSpace:
    """A finite topological space with a designated basis.

    Opens are frozensets of point indices.  The family is validated to
    contain the empty set and the whole space and to be closed under
    union and intersection; the basis must generate it by unions.
    """

    def __init__(self, points, opens, basis, name="space"):
        self.name = name
        self.points = tuple(points)
        for p in self.points:
            check_element_id(p)
        if len(set(self.points)) != len(self.points):
            raise TopologyInvalid("duplicate point")
        self._index = {p: i for i, p in enumerate(self.points)}
        self.opens = tuple(sorted(opens, key=lambda s: (len(s), sorted(s))))
        self.basis = tuple(sorted(basis, key=lambda s: (len(s), sorted(s))))
        self._open_set = frozenset(self.opens)
        whole = frozenset(range(len(self.points)))
        if frozenset() not in self._open_set or whole not in self._open_set:
            raise TopologyInvalid("opens must contain the empty set and the whole space")
        for a in self.opens:
            for b in self.opens:
                if a | b not in self._open_set or a & b not in self._open_set:
                    raise TopologyInvalid("opens are not closed under union/intersection")
        union_closure = {frozenset()}
        grew = True
        while grew:
            grew = False
            for b in self.basis:
                for u in list(union_closure):
                    if u | b not in union_closure:
                        union_closure.add(u | b)
                        grew = True
        if union_closure != set(self._open_set):
            raise TopologyInvalid("designated basis does not generate the opens by unions")

    @classmethod
    def from_basis(cls, points, basis_sets, name="space"):
        points = tuple(points)
        index = {p: i for i, p in enumerate(points)}
        basis = []
        for s in basis_sets:
            basis.append(frozenset(index[p] for p in s))
        opens = {frozenset()}
        grew = True
        while grew:
            grew = False
            for b in basis:
                for u in list(opens):
                    if u | b not in opens:
                        opens.add(u | b)
                        grew = True
        whole = frozenset(range(len(points)))
        if whole not in opens:
            raise TopologyInvalid("basis does not cover the space")
        return cls(points, opens, basis, name)

    @classmethod
    def discrete(cls, points, name="discrete"):
        points = tuple(points)
        whole = frozenset(range(len(points)))
        basis = [frozenset([i]) for i in range(len(points))]
        if len(points) > 1:
            basis.append(whole)
        opens = [frozenset(s) for r in range(len(points) + 1) for s in itertools.combinations(range(len(points)), r)]
        return cls(points, opens, basis, name)

    @classmethod
    def sierpinski(cls, open_point="x", closed_point="y"):
        points = (open_point, closed_point)
        return cls(points, [frozenset(), frozenset([0]), frozenset([0, 1])],
                   [frozenset([0]), frozenset([0, 1])], "sierpinski")

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"FiniteTopSpace({self.name!r}, {len(self)} points, {len(self.opens)} opens)"

    def index(self, point) -> int:
        return self._index[point]

    @property
    def whole(self) -> frozenset:
        return frozenset(range(len(self.points)))

    def is_open(self, s) -> bool:
        return frozenset(s) in self._open_set

    def interior(self, s) -> frozenset:
        s = frozenset(s)
        out = frozenset()
        for o in self.opens:
            if o <= s:
                out |= o
        return out

    def closure(self, s) -> frozenset:
        return self.whole - self.interior(self.whole - frozenset(s))

    def is_discrete(self) -> bool:
        return all(self.is_open(frozenset([i])) for i in range(len(self.points)))

    def is_t1(self) -> bool:
        return all(self.closure(frozenset([i])) == frozenset([i]) for i in range(len(self.points)))

    def least_basic_containing(self, point_idx, within) -> frozenset | None:
        within = frozenset(within)
        for b in self.basis:  # basis is sorted by (size, contents)
            if point_idx in b and b <= within:
                return b
        return None

    def set_str(self, s) -> str:
        return "{" + ", ".join(self.points[i] for i in sorted(s)) + "}"


# ---------------------------------------------------------------------------
# products


@dataclass(frozen=True)
class ProductResult:
    poset: FinitePoset
    factors: tuple  # factor posets with a greatest element adjoined where needed
    adjoined_tops: tuple  # names of fresh tops, or None per factor
    coords: dict  # product element id -> tuple of factor element names
    phi: dict  # tuple of factor point indices -> product point index
    phi_inv: dict
    factor_spaces: tuple
    space: PosetSpace
    ok: bool
    failure: str = ""


def _with_top(poset: FinitePoset):
    if poset.greatest() is not None:
        return poset, None
    top = "top"
    while top in poset:
        top += "_"
    elems = poset.elements + (top,)
    t = len(poset)
    masks = [poset.up_mask(i) | (1 << t) for i in range(len(poset))]
    masks.append(1 << t)
    return FinitePoset(elems, masks, f"{poset.name}+top"), top


def product_poset(factors) -> ProductResult:
    """The product order on tuples, with its point maps.

    A fresh greatest element is adjoined to any factor lacking one.  The
    maps phi (tuples of factor points to product points) and its inverse
    are built as tables and verified mutually inverse; the verification
    also checks that membership in a basic open of the product matches
    coordinatewise basic-open membership.
    """
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("at least one factor is required")
    topped = []
    tops = []
    for f in factors:
        g, t = _with_top(f)
        topped.append(g)
        tops.append(t)

    sizes = [len(f) for f in topped]
    tuples = list(itertools.product(*[range(s) for s in sizes]))
    tuple_pos = {t: i for i, t in enumerate(tuples)}
    names = []
    coords = {}
    for t in tuples:
        name = "(" + ",".join(topped[k].elements[t[k]] for k in range(len(topped))) + ")"
        names.append(name)
        coords[name] = tuple(topped[k].elements[t[k]] for k in range(len(topped)))

    masks = []
    for t in tuples:
        m = 0
        for s in tuples:
            if all(topped[k].leq_idx(t[k], s[k]) for k in range(len(topped))):
                m |= 1 << tuple_pos[s]
        masks.append(m)
    prod = FinitePoset(names, masks, " x ".join(f.name for f in factors))

    fspaces = tuple(PosetSpace(f, "mf") for f in topped)
    pspace = PosetSpace(prod, "mf")
    point_sets = {f.members: i for i, f in enumerate(pspace.points)}

    ok = True
    failure = ""
    phi = {}
    for combo in itertools.product(*[range(len(s)) for s in fspaces]):
        members = frozenset(
            name
            for name, cs in coords.items()
            if all(cs[k] in fspaces[k].points[combo[k]].members for k in range(len(fspaces)))
        )
        if members not in point_sets:
            ok, failure = False, f"phi image of {combo} is not a maximal filter"
            break
        phi[combo] = point_sets[members]
    phi_inv = {}
    if ok:
        fsets = [{f.members: i for i, f in enumerate(sp.points)} for sp in fspaces]
        for i, point in enumerate(pspace.points):
            cs = []
            for k in range(len(fspaces)):
                ck = frozenset(coords[name][k] for name in point.members)
                if ck not in fsets[k]:
                    ok, failure = False, f"coordinate {k} of {point} is not a maximal filter"
                    break
                cs.append(fsets[k][ck])
            if not ok:
                break
            phi_inv[i] = tuple(cs)
    if ok:
        for combo, i in phi.items():
            if phi_inv.get(i) != combo:
                ok, failure = False, f"phi and its inverse disagree at {combo}"
                break
        if ok and len(set(phi.values())) != len(phi):
            ok, failure = False, "phi is not injective"
        if ok and set(phi.values()) != set(range(len(pspace.points))):
            ok, failure = False, "phi is not surjective"
    if ok:
        for name in prod.elements:
            np = pspace.basic_open(name)
            for combo, i in phi.items():
                coordwise = all(
                    combo[k] in fspaces[k].basic_open(coords[name][k])
                    for k in range(len(fspaces))
                )
                if (i in np) != coordwise:
                    ok = False
                    failure = f"basic open of {name} does not match the coordinatewise opens"
                    break
            if not ok:
                break

    return ProductResult(
        poset=prod,
        factors=tuple(topped),
        adjoined_tops=tuple(tops),
        coords=coords,
        phi=phi,
        phi_inv=phi_inv,
        factor_spaces=fspaces,
        space=pspace,
        ok=ok,
        failure=failure,
    )


# ---------------------------------------------------------------------------
# G-delta subspaces, maximal-filter side


@dataclass(frozen=True)
class GdeltaMfResult:
    poset: FinitePoset  # the stage poset Q
    stage_cap: int
    open_points: tuple  # the opens as point sets of MF(P)
    intersection: frozenset
    empty_intersection: bool
    carrier: tuple  # elements of P kept (those lying in a point of the intersection)
    phi: dict  # MF(P)-in-intersection point index -> MF(Q) point index
    psi: dict
    space: PosetSpace  # MF(P)
    stage_space: PosetSpace  # MF(Q)
    ok: bool
    failure: str = ""


def gdelta_mf_poset(poset: FinitePoset, opens, stage_cap=None) -> GdeltaMfResult:
    """Stage poset for a countable intersection of opens of the MF space.

    Each open is an element set denoting the union of its basic opens.
    The finite list is read as an eventually constant sequence, so stages
    beyond ``len(opens) + 1`` add no constraints and the stage component
    is capped there.  An element of the stage poset is a pair (n, p) with
    the basic open of p inside the first n - 1 opens; pairs descend as
    the stage grows and p descends.  Two finite-scale refinements keep
    the stage poset faithful: only elements of P that lie in some maximal
    filter inside the intersection are used, and the top stage carries
    the order of P, standing in for the common tail of all deeper stages.
    The maximal filters of the stage poset are then in verified bijection
    with the maximal filters of P inside the intersection.
    """
    space = PosetSpace(poset, "mf")
    open_points = tuple(space.open_from_elements(u) for u in opens)
    k = len(open_points)
    cap = (k + 1) if stage_cap is None else stage_cap
    inter = space.whole
    for u in open_points:
        inter &= u

    carrier_mask = 0
    for i in inter:
        carrier_mask |= space.points[i].mask()
    carrier = tuple(poset.names_of(carrier_mask))

    def constraint(n):
        c = space.whole
        for u in open_points[: max(0, min(n - 1, k))]:
            c &= u
        return c

    stages = []
    for n in range(cap + 1):
        cn = constraint(n)
        for p in carrier:
            if space.basic_open(p) <= cn:
                stages.append((n, p))
    ids = [f"{n}:{p}" for n, p in stages]
    pos = {s: i for i, s in enumerate(stages)}
    masks = []
    for n, p in stages:
        m = 0
        for s, (n2, p2) in enumerate(stages):
            if (n, p) == (n2, p2):
                m |= 1 << s
            elif n > n2 and poset.leq(p, p2):
                m |= 1 << s
            elif n == n2 == cap and poset.lt(p, p2):
                m |= 1 << s
        masks.append(m)
    q_poset = FinitePoset(ids, masks, f"{poset.name}|gdelta-mf")
    q_space = PosetSpace(q_poset, "mf")

    ok = True
    failure = ""
    q_sets = {f.members: i for i, f in enumerate(q_space.points)}
    phi = {}
    for i in sorted(inter):
        f = space.points[i]
        img = frozenset(f"{n}:{p}" for (n, p) in stages if p in f.members)
        if img not in q_sets:
            ok, failure = False, f"phi image of {f} is not maximal in the stage poset"
            break
        phi[i] = q_sets[img]
    psi = {}
    if ok:
        inter_sets = {space.points[i].members: i for i in inter}
        for j, g in enumerate(q_space.points):
            back = upward_closure(poset, {sid.split(":", 1)[1] for sid in g.members})
            if back not in inter_sets:
                ok, failure = False, f"psi image of stage filter {g} is not a point of the intersection"
                break
            psi[j] = inter_sets[back]
    if ok:
        if sorted(phi.values()) != sorted(range(len(q_space.points))):
            ok, failure = False, "phi is not a bijection onto the stage space"
        elif any(psi.get(j) is None or phi.get(psi[j]) != j for j in psi):
            ok, failure = False, "phi and psi are not mutually inverse"
    if ok:
        for (n, p) in stages:
            nq = q_space.basic_open(f"{n}:{p}")
            for i, j in phi.items():
                if (j in nq) != (p in space.points[i].members):
                    ok, failure = False, f"basic open of stage element {n}:{p} mismatch"
                    break
            if not ok:
                break

    return GdeltaMfResult(
        poset=q_poset,
        stage_cap=cap,
        open_points=open_points,
        intersection=inter,
        empty_intersection=not inter,
        carrier=carrier,
        phi=phi,
        psi=psi,
        space=space,
        stage_space=q_space,
        ok=ok,
        failure=failure,
    )


# ---------------------------------------------------------------------------
# open subspaces and G-delta subspaces, unbounded-filter side


@dataclass(frozen=True)
class OpenSubspaceResult:
    subposet: FinitePoset
    kept: tuple
    space: PosetSpace
    sub_space: PosetSpace
    mapping: dict  # UF(P)-point index inside U -> UF(R) point index
    ok: bool
    failure: str = ""


def open_subspace_uf(poset: FinitePoset, open_points) -> OpenSubspaceResult:
    """Subposet of the elements whose basic open sits inside an open set.

    ``open_points`` is a set of UF(P) point indices and must be open.
    The restriction map x -> x intersect R is verified to be a bijection
    from the points inside the open set onto UF(R), matching basic opens
    for every kept element.
    """
    space = PosetSpace(poset, "uf")
    u = frozenset(open_points)
    if not u <= space.whole:
        raise NotOpen(f"{sorted(u)} is not a point set of {space!r}")
    if not space.is_open(u):
        raise NotOpen(f"{space.set_str(u)} is not open in {space!r}")
    kept = tuple(p for p in poset.elements if space.basic_open(p) <= u)
    sub = poset.restrict(kept, name=f"{poset.name}|open")
    sub_space = PosetSpace(sub, "uf")
    sub_sets = {f.members: j for j, f in enumerate(sub_space.points)}

    ok = True
    failure = ""
    mapping = {}
    for i in sorted(u):
        img = space.points[i].members & frozenset(kept)
        if img not in sub_sets:
            ok, failure = False, f"restriction of {space.points[i]} is not an unbounded filter"
            break
        mapping[i] = sub_sets[img]
    if ok and sorted(mapping.values()) != sorted(range(len(sub_space.points))):
        ok, failure = False, "restriction map is not a bijection"
    if ok:
        for r in kept:
            nr = sub_space.basic_open(r)
            for i, j in mapping.items():
                if (j in nr) != (r in space.points[i].members):
                    ok, failure = False, f"basic open of {r} mismatch"
                    break
            if not ok:
                break
    return OpenSubspaceResult(sub, kept, space, sub_space, mapping, ok, failure)


@dataclass(frozen=True)
class GdeltaUfResult:
    subposet: FinitePoset  # (R, with the rank-refined order)
    carrier: tuple
    ranks: dict  # element -> int rank, or INF
    open_points: tuple
    intersection: frozenset
    claims: dict  # claim number -> bool
    claim_details: dict
    space: PosetSpace
    sub_space: PosetSpace
    ok: bool
    failure: str = ""


def _is_filter_under(poset_members, leq, universe):
    """Directedness and upward closure of a member set inside ``universe``."""
    members = set(poset_members)
    for p in members:
        for q in members:
            if not any(r in members and leq(r, p) and leq(r, q) for r in members):
                return False
    for p in members:
        for q in universe:
            if leq(p, q) and q not in members:
                return False
    return True


def gdelta_uf_poset(poset: FinitePoset, opens) -> GdeltaUfResult:
    """Rank-refined subposet for a descending intersection of UF opens.

    Opens are element sets whose point sets must be descending.  The
    carrier keeps the elements lying in some unbounded filter inside the
    intersection; each carrier element gets the rank counting how many of
    the opens contain its basic open, with rank infinity when the basic
    open sits inside the whole intersection (the finite list is read as
    eventually constant).  The refined strict order descends in P while
    the rank strictly rises, except between two elements of infinite
    rank, which keep the order of P.  The report checks, by enumeration:

    1. every unbounded filter of P inside the intersection is an
       unbounded filter of the refined subposet;
    2. every filter of the subposet either has unbounded rank or a
       strict lower bound there;
    3. every bounded filter of P that is a filter of the subposet is
       bounded there;
    4. every unbounded filter of the subposet is an unbounded filter of
       P lying inside the intersection;

    together with the identity bijection and basic-open matching.
    """
    space = PosetSpace(poset, "uf")
    open_points = tuple(space.open_from_elements(u) for u in opens)
    for a, b in zip(open_points, open_points[1:]):
        if not b <= a:
            raise NotDescending("opens are not descending as point sets")
    k = len(open_points)
    inter = space.whole
    for u in open_points:
        inter &= u

    carrier_mask = 0
    for i in inter:
        carrier_mask |= space.points[i].mask()
    carrier = tuple(poset.names_of(carrier_mask))

    ranks = {}
    for p in carrier:
        np = space.basic_open(p)
        if k == 0 or np <= open_points[-1]:
            ranks[p] = INF
        else:
            g = 0
            for n, u in enumerate(open_points, start=1):
                if np <= u:
                    g = n
                else:
                    break
            ranks[p] = g

    def lt_r(p, q):
        if not poset.lt(p, q):
            return False
        gp, gq = ranks[p], ranks[q]
        return gq < gp or (gp == INF and gq == INF)

    idx = {p: i for i, p in enumerate(carrier)}
    masks = []
    for p in carrier:
        m = 1 << idx[p]
        for q in carrier:
            if lt_r(p, q):
                m |= 1 << idx[q]
        masks.append(m)
    sub = FinitePoset(carrier, masks, f"{poset.name}|gdelta-uf")
    sub_space = PosetSpace(sub, "uf")

    uf_in_g = [space.points[i] for i in sorted(inter)]
    claims = {}
    details = {}

    def bounded_in_sub(members):
        return any(
            all(sub.lt(r, q) for q in members) for r in carrier if r not in members
        )

    bad = [f for f in uf_in_g
           if not (set(f.members) <= set(carrier)
                   and _is_filter_under(f.members, sub.leq, carrier)
                   and not bounded_in_sub(f.members))]
    claims[1] = not bad
    details[1] = [str(f) for f in bad]

    bad2 = []
    for f in enumerate_filters(sub, "all"):
        sup = max(ranks[p] for p in f.members)
        if sup != INF and not bounded_in_sub(f.members):
            bad2.append(str(f))
    claims[2] = not bad2
    details[2] = bad2

    bad3 = []
    for f in enumerate_filters(poset, "all"):
        bounded_in_p = any(
            all(poset.lt(r, q) for q in f.members) for r in poset.elements
        )
        if not bounded_in_p:
            continue
        if set(f.members) <= set(carrier) and _is_filter_under(f.members, sub.leq, carrier):
            if not bounded_in_sub(f.members):
                bad3.append(str(f))
    claims[3] = not bad3
    details[3] = bad3

    inter_sets = {space.points[i].members for i in inter}
    bad4 = []
    for f in sub_space.points:
        in_p = _is_filter_under(f.members, poset.leq, poset.elements)
        unbounded_in_p = not any(
            all(poset.lt(r, q) for q in f.members) for r in poset.elements
        )
        if not (in_p and unbounded_in_p and f.members in inter_sets):
            bad4.append(str(f))
    claims[4] = not bad4
    details[4] = bad4

    ok = all(claims.values())
    failure = ""
    if ok:
        if {f.members for f in sub_space.points} != inter_sets:
            ok, failure = False, "point sets differ"
        else:
            for r in carrier:
                nr = sub_space.basic_open(r)
                sub_sets = {f.members: j for j, f in enumerate(sub_space.points)}
                for i in inter:
                    j = sub_sets[space.points[i].members]
                    if (j in nr) != (r in space.points[i].members):
                        ok, failure = False, f"basic open of {r} mismatch"
                        break
                if not ok:
                    break
    else:
        failure = "claims " + ", ".join(str(c) for c, v in sorted(claims.items()) if not v) + " failed"

    return GdeltaUfResult(
        subposet=sub,
        carrier=carrier,
        ranks=ranks,
        open_points=open_points,
        intersection=inter,
        claims=claims,
        claim_details=details,
        space=space,
        sub_space=sub_space,
        ok=ok,
        failure=failure,
    )


# ---------------------------------------------------------------------------
# formal balls over exact rational metrics


class RationalMetric:
    """A finite metric space with exact rational distances."""

    def __init__(self, points, dist, name="metric"):
        self.name = name
        self.points = tuple(points)
        for p in self.points:
            check_element_id(p)
        if len(set(self.points)) != len(self.points):
            raise MetricAxiomViolation("duplicate point")
        d = {}
        for (a, b), v in dist.items():
            v = Fraction(v)
            for x in (a, b):
                if x not in self.points:
                    raise MetricAxiomViolation(f"distance given for unknown point {x!r}")
            if (b, a) in d and d[(b, a)] != v:
                raise MetricAxiomViolation(f"asymmetric distance between {a!r} and {b!r}")
            d[(a, b)] = v
            d[(b, a)] = v
        for p in self.points:
            d.setdefault((p, p), Fraction(0))
            if d[(p, p)] != 0:
                raise MetricAxiomViolation(f"nonzero self-distance at {p!r}")
        for a in self.points:
            for b in self.points:
                if (a, b) not in d:
                    raise MetricAxiomViolation(f"missing distance between {a!r} and {b!r}")
                if a != b and d[(a, b)] <= 0:
                    raise MetricAxiomViolation(f"non-positive distance between {a!r} and {b!r}")
        for a in self.points:
            for b in self.points:
                for c in self.points:
                    if d[(a, c)] > d[(a, b)] + d[(b, c)]:
                        raise MetricAxiomViolation(
                            f"triangle inequality fails on {a!r}, {b!r}, {c!r}"
                        )
        self._d = d

    def d(self, a, b) -> Fraction:
        return self._d[(a, b)]

    def min_positive_distance(self) -> Fraction:
        vals = [v for k, v in self._d.items() if v > 0]
        return min(vals) if vals else Fraction(0)


_BALL_RE = re.compile(r"^B\(([^,()]+),([0-9]+)(?:/([0-9]+))?\)$")


class FormalBallPoset(GeneratedPoset):
    """Formal balls B(a, r) on a rational metric, ordered by strict containment.

    Radii live on the dyadic grid k / max_denom with 0 < r <= max_radius;
    max_denom must be a power of two.  A ball lies strictly below another
    when the distance between the centers plus the smaller radius is less
    than the larger radius.  Budgets cap the radius denominator at 2 to
    the budget, so refinement lists grow monotonically toward the whole
    grid below a ball.
    """

    def __init__(self, metric: RationalMetric, max_denom: int = 8, max_radius=2):
        if max_denom < 1 or max_denom & (max_denom - 1):
            raise ValueError("max_denom must be a positive power of two")
        self.metric = metric
        self.max_denom = max_denom
        self.max_radius = Fraction(max_radius)
        if self.max_radius <= 0:
            raise ValueError("max_radius must be positive")

    def encode(self, center, radius) -> str:
        return f"B({center},{Fraction(radius)})"

    def decode(self, code: str):
        m = _BALL_RE.match(code)
        if not m:
            raise PosetError(f"bad formal-ball code {code!r}")
        center = m.group(1)
        radius = Fraction(int(m.group(2)), int(m.group(3) or 1))
        if center not in self.metric.points:
            raise PosetError(f"unknown center in {code!r}")
        if not self._on_grid(radius):
            raise PosetError(f"radius off the grid in {code!r}")
        return center, radius

    def _on_grid(self, r: Fraction) -> bool:
        return 0 < r <= self.max_radius and (r.denominator <= self.max_denom) and (
            self.max_denom % r.denominator == 0
        )

    def roots(self):
        return [self.encode(a, self.max_radius) for a in sorted(self.metric.points)]

    def leq(self, x, y) -> bool:
        if x == y:
            return True
        a, r = self.decode(x)
        b, s = self.decode(y)
        return self.metric.d(a, b) + r < s

    def refinements(self, x, budget: int):
        a, r = self.decode(x)
        denom = min(self.max_denom, 2 ** max(0, budget))
        out = []
        for b in sorted(self.metric.points):
            base = self.metric.d(a, b)
            for num in range(1, int(self.max_radius * denom) + 1):
                s = Fraction(num, denom)
                if base + s < r:
                    out.append(self.encode(b, s))
        return out

    def incompatible(self, x, y):
        a, r = self.decode(x)
        b, s = self.decode(y)
        tiny = Fraction(1, self.max_denom)
        for c in self.metric.points:
            if self.metric.d(a, c) + tiny < r and self.metric.d(b, c) + tiny < s:
                return False
        return True

    def contains_point(self, code, point) -> bool:
        a, r = self.decode(code)
        return self.metric.d(a, point) < r


def formal_ball_poset(metric: RationalMetric, max_denom: int = 8, max_radius=2) -> FormalBallPoset:
    return FormalBallPoset(metric, max_denom, max_radius)


def point_chain(balls: FormalBallPoset, point, length: int) -> ChainFilter:
    """The halving chain of balls around a point, as a chain filter.

    The chain starts at the maximal radius and halves it ``length``
    times; the grid must be fine enough.  Deep enough entries contain
    only the given point, so the generated filter separates it from
    every other point of the metric.
    """
    if point not in balls.metric.points:
        raise PosetError(f"unknown point {point!r}")
    radii = [balls.max_radius / 2**j for j in range(length + 1)]
    if any(not balls._on_grid(r) for r in radii):
        raise PosetError("grid too coarse for the requested chain length")
    return ChainFilter.make(balls, [balls.encode(point, r) for r in radii])


# ---------------------------------------------------------------------------
# precompact-open poset of a finite space


@dataclass(frozen=True)
class PrecompactResult:
    poset: FinitePoset
    open_of: dict  # poset element id -> open (frozenset of point indices)
    hausdorff: bool
    bijective: bool
    opens_correspond: bool
    point_of: dict  # MF point index -> space point index, when bijective
    space: PosetSpace
    failure: str = ""


def precompact_open_poset(x: FiniteTopSpace) -> PrecompactResult:
    """Order the nonempty opens by closure containment and read points back.

    In a finite space every subset is precompact, so the poset carries
    all nonempty opens, with U below V when U equals V or the closure of
    U sits inside V.  For a Hausdorff finite space (that is, a discrete
    one) the map sending a maximal filter to the intersection of its
    members is a verified bijection onto the space with basic opens
    corresponding; on non-Hausdorff input the failure is reported rather
    than raised.
    """
    opens = [o for o in x.opens if o]
    ids = [x.set_str(o).replace(" ", "") for o in opens]
    open_of = dict(zip(ids, opens))
    pos = {i: k for k, i in enumerate(ids)}
    masks = []
    for i, o in zip(ids, opens):
        m = 1 << pos[i]
        cl = x.closure(o)
        for j, o2 in zip(ids, opens):
            if i != j and cl <= o2:
                m |= 1 << pos[j]
        masks.append(m)
    poset = FinitePoset(ids, masks, f"{x.name}|opens")
    space = PosetSpace(poset, "mf")

    hausdorff = x.is_discrete()
    point_of = {}
    bijective = True
    failure = ""
    for k, f in enumerate(space.points):
        inter = x.whole
        for member in f.members:
            inter &= open_of[member]
        if len(inter) != 1:
            bijective = False
            failure = f"intersection of {f} has {len(inter)} points"
            continue
        point_of[k] = next(iter(inter))
    if bijective and len(set(point_of.values())) != len(space.points):
        bijective, failure = False, "point map is not injective"
    if bijective and set(point_of.values()) != set(range(len(x.points))):
        bijective, failure = False, "point map is not surjective"

    opens_correspond = bijective
    if bijective:
        for i, o in zip(ids, opens):
            image = {point_of[k] for k in space.basic_open(i)}
            if image != set(o):
                opens_correspond = False
                failure = f"basic open of {i} does not map onto the open"
                break

    return PrecompactResult(
        poset=poset,
        open_of=open_of,
        hausdorff=hausdorff,
        bijective=bijective,
        opens_correspond=opens_correspond,
        point_of=point_of,
        space=space,
        failure=failure,
    )
