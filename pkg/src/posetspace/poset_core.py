"""Finite and lazily generated partial orders: validation and order queries."""

from __future__ import annotations

from abc import ABC, abstractmethod


class PosetError(Exception):
    """Base class for every error raised by this package."""


class InvalidElementId(PosetError):
    pass


class DuplicateElement(PosetError):
    def __init__(self, element):
        super().__init__(f"duplicate element {element!r}")
        self.element = element


class UnknownElement(PosetError):
    def __init__(self, element):
        super().__init__(f"unknown element {element!r}")
        self.element = element


class UnknownElementInPair(PosetError):
    def __init__(self, element, pair):
        super().__init__(f"relation pair {pair!r} mentions undeclared element {element!r}")
        self.element = element
        self.pair = pair


class AntisymmetryViolation(PosetError):
    def __init__(self, p, q):
        super().__init__(f"elements {p!r} and {q!r} lie below each other but are distinct")
        self.pair = (p, q)


class IrreflexivityViolation(PosetError):
    def __init__(self, p, derived=False):
        where = "transitive closure of the strict input" if derived else "strict input"
        super().__init__(f"{where} relates {p!r} to itself")
        self.element = p
        self.derived = derived


def check_element_id(token) -> str:
    """Element ids are nonempty strings without whitespace."""
    if not isinstance(token, str) or not token or any(ch.isspace() for ch in token):
        raise InvalidElementId(f"bad element id {token!r}: ids are nonempty and whitespace-free")
    return token


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class FinitePoset:
    """An explicit finite partial order.

    The relation is stored as one upset bitmask per element: bit j of
    ``up_mask(i)`` says element i lies below element j.  Element order is
    the construction order; every enumeration in the package iterates in
    that order so results are deterministic.

    Instances are immutable.  Use :func:`validate_poset` to build one from
    raw input; the constructor trusts its arguments.
    """

    __slots__ = ("name", "elements", "_index", "_up", "_down", "_hash")

    def __init__(self, elements, up_masks, name="poset"):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._up = tuple(up_masks)
        n = len(self.elements)
        down = [0] * n
        for i in range(n):
            m = self._up[i]
            for j in _bits(m):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._hash = hash((self.elements, self._up))

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FinitePoset({self.name!r}, {len(self)} elements)"

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    def __hash__(self):
        return self._hash

    def index(self, element) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(element) from None

    def __contains__(self, element):
        return element in self._index

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def leq(self, a, b) -> bool:
        """True when a lies below b (non-strict)."""
        return (self._up[self.index(a)] >> self.index(b)) & 1 == 1

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def leq_idx(self, i: int, j: int) -> bool:
        return (self._up[i] >> j) & 1 == 1

    def pairs(self):
        """The full non-strict relation as sorted (a, b) pairs."""
        out = []
        for i, a in enumerate(self.elements):
            for j in _bits(self._up[i]):
                out.append((a, self.elements[j]))
        return out

    def minimal_indices(self):
        return tuple(i for i in range(len(self)) if self._down[i] == 1 << i)

    def minimals(self):
        return tuple(self.elements[i] for i in self.minimal_indices())

    def greatest(self):
        """The greatest element, or None when there is none."""
        full = (1 << len(self)) - 1
        for i in range(len(self)):
            if self._down[i] == full:
                return self.elements[i]
        return None

    def mask_of(self, names) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names_of(self, mask) -> tuple:
        return tuple(self.elements[i] for i in _bits(mask))

    def restrict(self, names, name=None) -> "FinitePoset":
        """The subposet on ``names`` with the restricted order."""
        keep = [e for e in self.elements if e in set(names)]
        for x in names:
            self.index(x)
        sub_index = {e: i for i, e in enumerate(keep)}
        masks = []
        for e in keep:
            m = 0
            for f in keep:
                if self.leq(e, f):
                    m |= 1 << sub_index[f]
            masks.append(m)
        return FinitePoset(keep, masks, name or f"{self.name}|sub")

    def dual(self) -> "FinitePoset":
        """The order-reversed poset on the same elements."""
        return FinitePoset(self.elements, self._down, f"{self.name}^op")


def _transitive_close(masks):
    n = len(masks)
    masks = list(masks)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = masks[i]
            new = m
            for j in _bits(m):
                new |= masks[j]
            if new != m:
                masks[i] = new
                changed = True
    return masks


def validate_poset(elements, pairs, name="poset") -> FinitePoset:
    """Build a poset from raw elements and relation pairs.

    The input pairs are closed reflexively and transitively, so Hasse
    style minimal input is accepted.  Raises AntisymmetryViolation when
    the closure relates two distinct elements both ways.
    """
    elems = []
    seen = set()
    for e in elements:
        check_element_id(e)
        if e in seen:
            raise DuplicateElement(e)
        seen.add(e)
        elems.append(e)
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    masks = [1 << i for i in range(n)]
    for a, b in pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElementInPair(x, (a, b))
        masks[index[a]] |= 1 << index[b]
    masks = _transitive_close(masks)
    for i in range(n):
        for j in _bits(masks[i]):
            if j != i and (masks[j] >> i) & 1:
                raise AntisymmetryViolation(elems[min(i, j)], elems[max(i, j)])
    return FinitePoset(elems, masks, name)


def incompatible(poset: FinitePoset, p, q) -> bool:
    """True when no element lies below both p and q."""
    return poset.down_mask(poset.index(p)) & poset.down_mask(poset.index(q)) == 0


def strict_to_poset(elements, strict_pairs, name="poset") -> FinitePoset:
    """Adjoin the diagonal to a strict (irreflexive, transitive) relation."""
    elems = list(elements)
    probe = validate_poset(elems, [], name)  # id/duplicate checks
    index = {e: i for i, e in enumerate(probe.elements)}
    masks = [0] * len(elems)
    for a, b in strict_pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElementInPair(x, (a, b))
        if a == b:
            raise IrreflexivityViolation(a)
        masks[index[a]] |= 1 << index[b]
    masks = _transitive_close(masks)
    for i in range(len(elems)):
        if (masks[i] >> i) & 1:
            raise IrreflexivityViolation(probe.elements[i], derived=True)
    masks = [m | (1 << i) for i, m in enumerate(masks)]
    return FinitePoset(probe.elements, masks, name)


def poset_to_strict(poset: FinitePoset):
    """The strict part of the order, as sorted pairs. Inverse of strict_to_poset."""
    return [(a, b) for a, b in poset.pairs() if a != b]


class GeneratedPoset(ABC):
    """A lazily enumerable, possibly infinite partial order.

    Elements are string codes.  Providers promise that ``leq`` decides a
    partial order on the codes, that every element returned by
    ``refinements(a, budget)`` is strictly below ``a``, and that raising
    the budget only ever extends the returned list.
    """

    @abstractmethod
    def roots(self) -> list:
        """A finite seed set of elements."""

    @abstractmethod
    def leq(self, a: str, b: str) -> bool:
        ...

    @abstractmethod
    def refinements(self, a: str, budget: int) -> list:
        """Elements strictly below ``a``, complete in the limit of the budget."""

    def incompatible(self, a: str, b: str):
        """Exact incompatibility when the provider can decide it, else None."""
        return None


class BinaryTreePoset(GeneratedPoset):
    """Finite 0/1 strings ordered by reverse prefix: longer strings lie lower.

    The root (empty string) is encoded as "e"; every other element is its
    bit string.
    """

    ROOT = "e"

    @staticmethod
    def bits(code: str) -> str:
        return "" if code == BinaryTreePoset.ROOT else code

    @staticmethod
    def encode(bits: str) -> str:
        return bits if bits else BinaryTreePoset.ROOT

    def roots(self):
        return [self.ROOT]

    def leq(self, a, b):
        x, y = self.bits(a), self.bits(b)
        return x.startswith(y)

    def refinements(self, a, budget):
        base = self.bits(a)
        out = []
        for extra in range(1, max(0, budget) + 1):
            for k in range(2 ** extra):
                out.append(base + format(k, f"0{extra}b"))
        return out

    def incompatible(self, a, b):
        x, y = self.bits(a), self.bits(b)
        return not (x.startswith(y) or y.startswith(x))


def spot_check_generated(provider: GeneratedPoset, budget: int = 3) -> None:
    """Check the provider contract on the elements reachable within budget.

    Raises PosetError on any violation: non-strict refinements, budget
    monotonicity failures, nondeterminism, or order-axiom failures on the
    sampled elements.
    """
    seen = list(provider.roots())
    if not seen:
        raise PosetError("provider has no roots")
    frontier = list(seen)
    for _ in range(2):
        nxt = []
        for a in frontier:
            for b in range(budget + 1):
                refs = provider.refinements(a, b)
                if refs != provider.refinements(a, b):
                    raise PosetError(f"refinements({a!r}, {b}) is not deterministic")
                if b > 0 and not set(provider.refinements(a, b - 1)) <= set(refs):
                    raise PosetError(f"refinements({a!r}) shrank when the budget grew")
                for r in refs:
                    if not provider.leq(r, a) or provider.leq(a, r):
                        raise PosetError(f"refinement {r!r} is not strictly below {a!r}")
            for r in provider.refinements(a, 1):
                if r not in seen:
                    seen.append(r)
                    nxt.append(r)
        frontier = nxt
    for a in seen:
        if not provider.leq(a, a):
            raise PosetError(f"leq not reflexive at {a!r}")
        for b in seen:
            if a != b and provider.leq(a, b) and provider.leq(b, a):
                raise PosetError(f"leq not antisymmetric on {a!r}, {b!r}")
            for c in seen:
                if provider.leq(a, b) and provider.leq(b, c) and not provider.leq(a, c):
                    raise PosetError(f"leq not transitive on {a!r}, {b!r}, {c!r}")
