"""Subsets of a finite group as integer bitmasks, and products of subsets.

A subset of a group of order n is a mask with bit i set iff element i is a
member.  All operations are pure; masks are immutable.  The product of a
family of subsets is tracked as a multiset of group elements so that
injectivity of the multiplication map (a1, ..., ak) -> a1*...*ak can be
decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

# Multiplicities above this value are clamped; injectivity only needs 0/1/many.
COUNT_SATURATION = 255


@dataclass(frozen=True)
class SubsetMask:
    """Membership mask over element indices plus its cached cardinality."""

    bits: int
    card: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("mask bits must be non-negative")
        if self.card != self.bits.bit_count():
            raise ValueError("cardinality does not match mask popcount")

    @classmethod
    def from_bits(cls, bits: int) -> "SubsetMask":
        return cls(bits, bits.bit_count())

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "SubsetMask":
        bits = 0
        for x in elements:
            if x < 0:
                raise ValueError(f"negative element index {x}")
            bits |= 1 << x
        return cls.from_bits(bits)

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __contains__(self, x: int) -> bool:
        return x >= 0 and (self.bits >> x) & 1 == 1

    def __len__(self) -> int:
        return self.card

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask.from_bits(self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        return SubsetMask.from_bits(self.bits & other.bits)


EMPTY = SubsetMask(0, 0)


def _check_subset(G, A: SubsetMask, *, allow_empty: bool = False) -> None:
    if A.bits >> G.order:
        raise ValueError(f"mask has bits outside 0..{G.order - 1}")
    if not allow_empty and A.card == 0:
        raise ValueError("empty subset not allowed here")


@dataclass(frozen=True)
class ProductMultiset:
    """Multiplicity of each group element in a product of subsets.

    ``counts[x]`` is the number of tuples multiplying to x, clamped at
    COUNT_SATURATION; ``total`` is the exact number of tuples, i.e. the
    product of the factor cardinalities.
    """

    counts: tuple[int, ...]
    total: int

    @property
    def injective(self) -> bool:
        return all(c <= 1 for c in self.counts)

    @property
    def support(self) -> SubsetMask:
        return SubsetMask.from_elements(x for x, c in enumerate(self.counts) if c)


def translate_left(G, g: int, A: SubsetMask) -> SubsetMask:
    """The set {g*a : a in A}."""
    _check_subset(G, A, allow_empty=True)
    row = G.rows[g]
    return SubsetMask.from_elements(row[a] for a in A)


def translate_right(G, A: SubsetMask, g: int) -> SubsetMask:
    """The set {a*g : a in A}."""
    _check_subset(G, A, allow_empty=True)
    rows = G.rows
    return SubsetMask.from_elements(rows[a][g] for a in A)


def inverse_set(G, A: SubsetMask) -> SubsetMask:
    """The set {a^-1 : a in A}."""
    _check_subset(G, A, allow_empty=True)
    inv = G.inverse_list
    return SubsetMask.from_elements(inv[a] for a in A)


def quotient_set_left(G, A: SubsetMask) -> SubsetMask:
    """The set A^-1 A = {g^-1 h : g, h in A}; always contains the identity."""
    _check_subset(G, A)
    rows, inv = G.rows, G.inverse_list
    bits = 0
    for g in A:
        row = rows[inv[g]]
        for h in A:
            bits |= 1 << row[h]
    return SubsetMask.from_bits(bits)


def quotient_set_right(G, A: SubsetMask) -> SubsetMask:
    """The set A A^-1 = {g h^-1 : g, h in A}; always contains the identity."""
    _check_subset(G, A)
    rows, inv = G.rows, G.inverse_list
    bits = 0
    for g in A:
        row = rows[g]
        for h in A:
            bits |= 1 << row[inv[h]]
    return SubsetMask.from_bits(bits)


def product_multiset(G, factors: Iterable[SubsetMask]) -> ProductMultiset:
    """Multiset of all products a1*...*ak with ai drawn from the i-th factor.

    Computed by folding a count vector through each factor:
    counts'[y*b] += counts[y].  After every fold the total mass must equal
    the running product of cardinalities (conservation check).
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    n = G.order
    rows = G.rows
    counts = [0] * n
    counts[0] = 1  # empty product is the identity
    total = 1
    for A in factors:
        _check_subset(G, A)
        elems = A.elements()
        nxt = [0] * n
        for y, c in enumerate(counts):
            if c:
                row = rows[y]
                for b in elems:
                    nxt[row[b]] += c
        counts = nxt
        total *= A.card
        if sum(counts) != total:
            raise AssertionError("product mass not conserved (engine bug)")
    return ProductMultiset(
        counts=tuple(min(c, COUNT_SATURATION) for c in counts), total=total
    )


def is_factorization(G, factors: Iterable[SubsetMask]) -> bool:
    """True iff the multiplication map of the factors is a bijection onto G.

    Equivalently: the cardinalities multiply to |G| and every element is hit
    exactly once.
    """
    factors = list(factors)
    if math.prod(A.card for A in factors) != G.order:
        return False
    pm = product_multiset(G, factors)
    return all(c == 1 for c in pm.counts)
