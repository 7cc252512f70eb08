"""Spaces of maximal/unbounded filters, separation checks, and subposet reduction."""

from __future__ import annotations

from dataclasses import dataclass

from .poset_core import FinitePoset, PosetError
from .filters import Filter, enumerate_filters


class NotABasis(PosetError):
    def __init__(self, element, point):
        super().__init__(
            f"seed basis has no member around point {point} inside the basic open of {element!r}"
        )
        self.element = element
        self.point = point


class PosetSpace:
    """The space of maximal (mode "mf") or unbounded (mode "uf") filters.

    Points are the enumerated filters in generator order; opens are
    handled as frozensets of point indices.  The basic open of an element
    p collects the points whose filter contains p.
    """

    def __init__(self, poset: FinitePoset, mode: str):
        if mode not in ("mf", "uf"):
            raise ValueError(f"mode must be 'mf' or 'uf', got {mode!r}")
        self.poset = poset
        self.mode = mode
        kind = "maximal" if mode == "mf" else "unbounded"
        self.points = tuple(enumerate_filters(poset, kind))
        self._basic = {
            p: frozenset(i for i, f in enumerate(self.points) if p in f.members)
            for p in poset.elements
        }
        assert all(f.members for f in self.points)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"PosetSpace({self.mode}({self.poset.name}), {len(self)} points)"

    @property
    def whole(self) -> frozenset:
        return frozenset(range(len(self.points)))

    def basic_open(self, element) -> frozenset:
        self.poset.index(element)
        return self._basic[element]

    def open_from_elements(self, elements) -> frozenset:
        out = frozenset()
        for e in elements:
            out |= self.basic_open(e)
        return out

    def is_open(self, point_set) -> bool:
        """Open means a union of basic opens."""
        point_set = frozenset(point_set)
        for i in point_set:
            if not any(
                self._basic[p] <= point_set for p in self.points[i].members
            ):
                return False
        return True

    def point_index(self, filt: Filter) -> int:
        for i, f in enumerate(self.points):
            if f.members == filt.members:
                return i
        raise KeyError(f"{filt} is not a point of {self!r}")

    def set_str(self, point_set) -> str:
        return "{" + ", ".join(str(self.points[i]) for i in sorted(point_set)) + "}"


def basic_open(space: PosetSpace, element) -> frozenset:
    return space.basic_open(element)


@dataclass(frozen=True)
class SeparationReport:
    t0: bool
    t1: bool
    uf_equals_mf: bool


def separation_check(space: PosetSpace) -> SeparationReport:
    """Evaluate T0, T1 and whether the UF and MF point sets coincide."""
    pts = space.points
    t0 = all(
        pts[i].members != pts[j].members
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )
    t1 = True
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i == j:
                continue
            if not (pts[i].members - pts[j].members):
                t1 = False
    uf = {f.members for f in enumerate_filters(space.poset, "unbounded")}
    mf = {f.members for f in enumerate_filters(space.poset, "maximal")}
    return SeparationReport(t0=t0, t1=t1, uf_equals_mf=uf == mf)


def _check_seed_is_basis(space: PosetSpace, seed) -> None:
    seed_opens = {q: space.basic_open(q) for q in seed}
    for p in space.poset.elements:
        np = space.basic_open(p)
        for i in np:
            if not any(i in nq and nq <= np for nq in seed_opens.values()):
                raise NotABasis(p, str(space.points[i]))


@dataclass(frozen=True)
class ReduceResult:
    subposet: FinitePoset
    kept: tuple
    stages: int
    mapping: tuple  # pairs (filter on P, its restriction to the subposet)


def reduce_countable_subposet(poset: FinitePoset, seed_basis, stage_cap=None) -> ReduceResult:
    """Saturate a basis into a subposet carrying the same MF space.

    Starting from the seed, each stage adds, for every finite subset D of
    the current set that lies in some maximal filter, enough common lower
    bounds of D to cover the basic-open intersection of D.  The cover is
    chosen greedily in element order, so the result is deterministic.
    For a finite poset the stages stabilize; ``stage_cap`` merely stops
    the iteration early for instrumentation.

    The restriction map F -> F intersect R is returned as a table; it is
    a bijection onto the maximal filters of the subposet (see
    restriction_homeomorphism_check).  Runtime is exponential in the size
    of the saturated set, which is fine at desk scale.
    """
    space = PosetSpace(poset, "mf")
    seed = [q for q in poset.elements if q in set(seed_basis)]
    for q in seed_basis:
        poset.index(q)
    _check_seed_is_basis(space, seed)

    current = list(seed)
    stages = 0
    while True:
        added = []
        subsets = [[]]
        for q in current:
            subsets += [s + [q] for s in subsets]
        for d in subsets:
            if not d:
                continue
            target = space.whole
            for q in d:
                target &= space.basic_open(q)
            if not target:
                continue
            lower = (1 << len(poset)) - 1
            for q in d:
                lower &= poset.down_mask(poset.index(q))
            covered = frozenset()
            for e in poset.names_of(lower):
                if covered >= target:
                    break
                gain = space.basic_open(e) & target
                if gain - covered:
                    covered |= gain
                    if e not in current and e not in added:
                        added.append(e)
        stages += 1
        if not added or (stage_cap is not None and stages >= stage_cap):
            current += added
            break
        current += added

    kept = tuple(e for e in poset.elements if e in set(current))
    sub = poset.restrict(kept, name=f"{poset.name}|reduced")
    mapping = tuple(
        (f, Filter(sub, frozenset(f.members) & frozenset(kept))) for f in space.points
    )
    return ReduceResult(subposet=sub, kept=kept, stages=stages, mapping=mapping)


@dataclass(frozen=True)
class HomeoReport:
    ok: bool
    reason: str = ""
    counterexample: object = None


def restriction_homeomorphism_check(poset: FinitePoset, sub) -> HomeoReport:
    """Decide whether F -> F intersect R is a homeomorphism onto MF(R).

    ``sub`` may be a FinitePoset on a subset of the elements or an
    iterable of element names.  The check enumerates both point sets,
    verifies the restriction map is a bijection, and verifies that images
    and preimages of basic opens are open.
    """
    if isinstance(sub, FinitePoset):
        r_poset = sub
    else:
        r_poset = poset.restrict(tuple(sub))
    r_names = frozenset(r_poset.elements)

    big = PosetSpace(poset, "mf")
    small = PosetSpace(r_poset, "mf")
    small_sets = {f.members: i for i, f in enumerate(small.points)}

    images = []
    for f in big.points:
        img = f.members & r_names
        if img not in small_sets:
            return HomeoReport(False, "restriction of a point is not a maximal filter", str(f))
        images.append(small_sets[img])
    if len(set(images)) != len(images):
        dup = [str(big.points[i]) for i in range(len(images)) if images.count(images[i]) > 1]
        return HomeoReport(False, "restriction map is not injective", tuple(dup))
    if set(images) != set(range(len(small.points))):
        missing = [str(small.points[i]) for i in range(len(small.points)) if i not in images]
        return HomeoReport(False, "restriction map is not surjective", tuple(missing))

    for p in poset.elements:
        image_open = frozenset(images[i] for i in big.basic_open(p))
        if not small.is_open(image_open):
            return HomeoReport(False, "image of a basic open is not open", p)
    for r in r_poset.elements:
        pre = frozenset(i for i in range(len(big.points)) if images[i] in small.basic_open(r))
        if pre != big.basic_open(r):
            return HomeoReport(False, "preimage of a basic open differs from the basic open", r)
    return HomeoReport(True)
