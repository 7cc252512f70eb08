"""Filters on posets: representation, classification, enumeration, extension."""

from __future__ import annotations

from dataclasses import dataclass

from .poset_core import FinitePoset, PosetError, _bits


class NotAFilter(PosetError):
    def __init__(self, members, reason):
        super().__init__(f"{sorted(members)} is not a filter: {reason}")
        self.members = frozenset(members)
        self.reason = reason


@dataclass(frozen=True)
class Filter:
    """A directed, upward-closed, nonempty subset of a finite poset."""

    poset: FinitePoset
    members: frozenset

    def __str__(self):
        names = sorted(self.members, key=self.poset.index)
        return "{" + ", ".join(names) + "}"

    def __contains__(self, element):
        return element in self.members

    def mask(self) -> int:
        return self.poset.mask_of(self.members)

    def minimum(self):
        """The least member. Every filter on a finite poset has one."""
        m = self.mask()
        for i in _bits(m):
            if self.poset.up_mask(i) & m == m:
                return self.poset.elements[i]
        raise NotAFilter(self.members, "no least member")


def principal(poset: FinitePoset, element) -> Filter:
    """The upset of a single element."""
    i = poset.index(element)
    return Filter(poset, frozenset(poset.names_of(poset.up_mask(i))))


def upward_closure(poset: FinitePoset, members) -> frozenset:
    """Smallest upward-closed superset of the given element set."""
    m = 0
    for name in members:
        m |= poset.up_mask(poset.index(name))
    return frozenset(poset.names_of(m))


def is_directed(poset: FinitePoset, mask: int) -> bool:
    for i in _bits(mask):
        for j in _bits(mask):
            if j < i:
                continue
            if poset.down_mask(i) & poset.down_mask(j) & mask == 0:
                return False
    return True


def is_upward_closed(poset: FinitePoset, mask: int) -> bool:
    up = 0
    for i in _bits(mask):
        up |= poset.up_mask(i)
    return up == mask


@dataclass(frozen=True)
class FilterClassification:
    is_filter: bool
    is_unbounded: bool
    is_maximal: bool


def classify_filter(poset: FinitePoset, members) -> FilterClassification:
    """Classify an element set as filter / unbounded / maximal.

    Unboundedness is checked on the raw set: no element of the poset lies
    strictly below every member.  Maximality uses the least-generator
    criterion (the upset of a minimal element), which on finite posets
    agrees with a brute-force scan over filter supersets.
    """
    mask = poset.mask_of(members)
    filt = mask != 0 and is_directed(poset, mask) and is_upward_closed(poset, mask)
    unbounded = True
    n = len(poset)
    for r in range(n):
        if mask >> r & 1:
            continue
        if all(poset.leq_idx(r, q) and r != q for q in _bits(mask)):
            unbounded = False
            break
    if mask == 0:
        unbounded = len(poset) == 0
    maximal = False
    if filt:
        gen = Filter(poset, frozenset(poset.names_of(mask))).minimum()
        maximal = poset.index(gen) in poset.minimal_indices()
    return FilterClassification(filt, unbounded, maximal)


def enumerate_filters(poset: FinitePoset, kind: str = "all") -> list:
    """All filters of the given kind, sorted by generating element.

    On a finite poset every filter is the upset of its least member, so
    the result is {upset(m)} with m ranging over all elements (kind
    "all") or over the minimal elements (kinds "maximal"/"unbounded",
    which coincide for finite posets).
    """
    if kind not in ("all", "maximal", "unbounded"):
        raise ValueError(f"unknown filter kind {kind!r}")
    gens = range(len(poset)) if kind == "all" else poset.minimal_indices()
    return [Filter(poset, frozenset(poset.names_of(poset.up_mask(i)))) for i in gens]


def extend_to_maximal(poset: FinitePoset, filt: Filter) -> Filter:
    """A maximal filter containing ``filt``.

    Deterministic: among the minimal elements whose upset contains the
    filter, the first in element order is chosen.
    """
    cls = classify_filter(poset, filt.members)
    if not cls.is_filter:
        raise NotAFilter(filt.members, "directedness or upward closure fails")
    gen = poset.index(filt.minimum())
    for i in poset.minimal_indices():
        if poset.leq_idx(i, gen):
            return Filter(poset, frozenset(poset.names_of(poset.up_mask(i))))
    raise AssertionError("finite poset without a minimal element below a member")


@dataclass(frozen=True)
class ChainFilter:
    """A filter on a generated poset, represented by a descending chain.

    The chain lists generators from shallow to deep; the filter it
    generates contains every element lying above some chain entry.
    Consecutive duplicates are dropped on construction.
    """

    over: object
    chain: tuple

    @classmethod
    def make(cls, over, items) -> "ChainFilter":
        cleaned = []
        for x in items:
            if cleaned:
                if x == cleaned[-1]:
                    continue
                if not over.leq(x, cleaned[-1]):
                    raise PosetError(f"chain is not descending at {x!r}")
            cleaned.append(x)
        return cls(over, tuple(cleaned))

    def last(self):
        return self.chain[-1]

    def extended(self, element) -> "ChainFilter":
        return ChainFilter.make(self.over, self.chain + (element,))

    def generates(self, code) -> bool:
        """Membership of ``code`` in the generated filter."""
        return any(self.over.leq(c, code) for c in self.chain)
