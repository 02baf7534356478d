"""Finite variable universes, variable sets as bitmasks, independence triples,
and extensional independency models.

Variable sets are plain ``int`` bitmasks: bit ``i`` stands for the ``i``-th
label of the owning :class:`Universe`. All types are immutable after
construction and every operation is pure, so values may be shared freely
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_UNIVERSE_SIZE = 16


def bits_of(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Universe:
    """An ordered list of distinct variable labels.

    The position of a label is its bit index in every mask interpreted
    against this universe.
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not 1 <= len(names) <= MAX_UNIVERSE_SIZE:
            raise ValueError(
                f"universe must have between 1 and {MAX_UNIVERSE_SIZE} labels, got {len(names)}"
            )
        if any(not isinstance(n, str) or not n for n in names):
            raise ValueError("labels must be nonempty strings")
        if len(set(names)) != len(names):
            raise ValueError("labels must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise ValueError(f"unknown label {label!r}") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        self.check_mask(mask)
        return tuple(self.names[i] for i in bits_of(mask))

    def check_mask(self, mask: int) -> None:
        """Raise unless ``mask`` only uses bits below this universe's size."""
        if mask < 0 or mask & ~self.full_mask:
            raise ValueError(f"mask {mask:#x} has bits outside the {self.n}-label universe")

    def subuniverse(self, mask: int) -> "Universe":
        """The universe of the labels selected by ``mask``, order preserved."""
        self.check_mask(mask)
        if mask == 0:
            raise ValueError("a universe needs at least one label")
        return Universe(tuple(self.names[i] for i in bits_of(mask)))


@dataclass(frozen=True, slots=True)
class Triple:
    """One independence statement: an ordered triple of pairwise-disjoint sets.

    ``a`` and ``b`` are the two related sets, ``c`` the conditioning set.
    """

    a: int
    c: int
    b: int

    def __post_init__(self) -> None:
        if self.a & self.c or self.a & self.b or self.c & self.b:
            raise ValueError(
                f"triple sets must be pairwise disjoint: {self.a:#x}, {self.c:#x}, {self.b:#x}"
            )

    @property
    def span(self) -> int:
        """Union of the three member sets."""
        return self.a | self.c | self.b

    def reverse(self) -> "Triple":
        """The same statement with the two related sets swapped."""
        return Triple(self.b, self.c, self.a)


def check_disjoint(a: int, c: int, b: int) -> None:
    if a & c or a & b or c & b:
        raise ValueError(f"sets must be pairwise disjoint: {a:#x}, {c:#x}, {b:#x}")


def enumerate_disjoint_triples(universe: Universe) -> Iterator[Triple]:
    """Yield every ordered triple of pairwise-disjoint sets exactly once.

    Order: triple ``k`` (for ``k`` in ``0 .. 4**n - 1``) places variable ``i``
    according to base-4 digit ``i`` of ``k``: 0 = unused, 1 = first set,
    2 = conditioning set, 3 = second set. There are exactly ``4**n`` triples.
    """
    n = universe.n
    for code in range(4**n):
        a = c = b = 0
        rest = code
        for i in range(n):
            digit = rest & 3
            rest >>= 2
            if digit == 1:
                a |= 1 << i
            elif digit == 2:
                c |= 1 << i
            elif digit == 3:
                b |= 1 << i
        yield Triple(a, c, b)


def compact_mask(mask: int, within: int) -> int:
    """Re-index ``mask`` (a subset of ``within``) against the bits of ``within``.

    Bit ``j`` of the result is set iff the ``j``-th lowest set bit of
    ``within`` is in ``mask``.
    """
    if mask & ~within:
        raise ValueError("mask is not contained in the restriction set")
    out = 0
    for new_i, old_i in enumerate(bits_of(within)):
        if (mask >> old_i) & 1:
            out |= 1 << new_i
    return out


@dataclass(frozen=True)
class IndependencyModel:
    """An extensional set of independence triples over a universe.

    No symmetry or axiom closure is applied: the model holds exactly the
    triples it was given. Membership of ``(A, C, B)`` does not imply
    membership of ``(B, C, A)`` unless both were added.
    """

    universe: Universe
    triples: frozenset[Triple]

    def __post_init__(self) -> None:
        triples = frozenset(self.triples)
        object.__setattr__(self, "triples", triples)
        full = self.universe.full_mask
        for t in triples:
            if t.span & ~full:
                raise ValueError(f"triple {t} uses bits outside the universe")

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def is_symmetric(self) -> bool:
        """True iff membership is invariant under swapping the two related sets."""
        return all(t.reverse() in self.triples for t in self.triples)

    def restrict(self, v_mask: int) -> "IndependencyModel":
        """The sub-model of the triples whose three sets all lie inside ``v_mask``.

        The result lives on the sub-universe selected by ``v_mask``; labels are
        preserved and bit indices are recompacted, so cross-universe
        comparisons go by label.
        """
        self.universe.check_mask(v_mask)
        if v_mask == 0:
            raise ValueError("cannot restrict to the empty set of variables")
        sub = self.universe.subuniverse(v_mask)
        kept = frozenset(
            Triple(
                compact_mask(t.a, v_mask),
                compact_mask(t.c, v_mask),
                compact_mask(t.b, v_mask),
            )
            for t in self.triples
            if not t.span & ~v_mask
        )
        return IndependencyModel(sub, kept)


def model_equals(first: IndependencyModel, second: IndependencyModel) -> bool:
    """True iff the two models have identical triple sets.

    The models must share the same label list; comparing models over
    different universes is an error rather than ``False``.
    """
    if first.universe.names != second.universe.names:
        raise ValueError(
            f"universe mismatch: {first.universe.names} vs {second.universe.names}"
        )
    return first.triples == second.triples
