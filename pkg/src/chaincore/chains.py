"""Totally ordered families of subsets (chains) over a carrier set.

A chain runs from the empty set up to its carrier, strictly increasing
under inclusion.  A maximal chain adds one point per step; on a finite
carrier that is exactly the condition under which the chain's sets
generate the full power set of the carrier, which is what makes the
telescoped measure of a set function along the chain well defined per
point.

Includes the insertion construction (force a subset B to be a member of
a chain on A), the generated-algebra closure used as an oracle for the
maximality shortcut, and the canonical representation of algebra members
as disjoint unions of chain intervals C minus D.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .setfun import GroundSet, members


@dataclass(frozen=True)
class Chain:
    """Strictly increasing subsets from the empty set to ``carrier``."""

    carrier: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets or self.sets[0] != 0 or self.sets[-1] != self.carrier:
            raise ValueError("chain must run from the empty set to its carrier")
        prev = self.sets[0]
        for cur in self.sets[1:]:
            if cur & ~self.carrier:
                raise ValueError(f"chain member {cur} is not within carrier {self.carrier}")
            if prev & ~cur or prev == cur:
                raise ValueError("chain members must strictly increase under inclusion")
            prev = cur

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.sets

    @property
    def is_maximal(self) -> bool:
        """Every step adds exactly one point."""
        return all(
            (cur ^ prev).bit_count() == 1 for prev, cur in zip(self.sets, self.sets[1:])
        )

    def steps(self) -> Iterator[tuple[int, int, int]]:
        """Consecutive (previous, current, added) triples."""
        for prev, cur in zip(self.sets, self.sets[1:]):
            yield prev, cur, cur ^ prev

    def point_order(self) -> tuple[int, ...]:
        """Points in the order the chain adds them (maximal chains only)."""
        if not self.is_maximal:
            raise ValueError("point order is defined only for maximal chains")
        return tuple((cur ^ prev).bit_length() - 1 for prev, cur, _ in self.steps())

    def restrict(self, carrier: int) -> "Chain":
        """Intersect every member with ``carrier`` and deduplicate."""
        if carrier & ~self.carrier:
            raise ValueError("restriction carrier must lie within the chain carrier")
        seen: list[int] = []
        for s in self.sets:
            cut = s & carrier
            if not seen or cut != seen[-1]:
                seen.append(cut)
        return Chain(carrier, tuple(seen))

    def complement(self) -> "Chain":
        """Complements within the carrier, reversed back into a chain."""
        return Chain(self.carrier, tuple(self.carrier ^ s for s in reversed(self.sets)))

    def refined(self) -> "Chain":
        """Maximal completion: multi-point steps are split one point at a
        time in ascending point index."""
        out = [0]
        for _, cur, added in self.steps():
            acc = out[-1]
            for p in members(added):
                acc |= 1 << p
                out.append(acc)
            assert acc == cur
        return Chain(self.carrier, tuple(out))


def chain_from_order(order: Sequence[int], carrier: int | None = None) -> Chain:
    """Cumulative chain adding the given points one at a time."""
    mask = 0
    sets = [0]
    for p in order:
        if mask >> p & 1:
            raise ValueError(f"duplicate point {p} in order")
        mask |= 1 << p
        sets.append(mask)
    if carrier is None:
        carrier = mask
    elif carrier != mask:
        raise ValueError("order does not enumerate the carrier")
    return Chain(carrier, tuple(sets))


def maximal_chain(ground: GroundSet, order: Sequence[int]) -> Chain:
    """The maximal chain on the whole ground set following a permutation."""
    order = tuple(order)
    if sorted(order) != list(range(ground.n)):
        raise ValueError(f"order {order} is not a permutation of {ground.n} points")
    return chain_from_order(order, ground.full)


def insert_chain(base: Chain, a: int, b: int) -> Chain:
    """Chain on carrier ``a`` containing ``b`` as a member.

    Built as the union of ``b & r`` and ``b | r`` over the restriction
    ``r`` of the base chain to ``a``, deduplicated and sorted by
    inclusion.  Always contains the empty set, ``b`` and ``a``; it is
    maximal in ``a`` whenever the base chain is maximal.
    """
    if a & ~base.carrier:
        raise ValueError("a must lie within the base chain carrier")
    if b & ~a:
        raise ValueError("b must lie within a")
    restricted = base.restrict(a)
    merged = {b & r for r in restricted} | {b | r for r in restricted}
    return Chain(a, tuple(sorted(merged, key=lambda m: (m.bit_count(), m))))


def generated_algebra(sets: Iterable[int], carrier: int) -> frozenset[int]:
    """Closure of a family under complement-within-carrier and union.

    The oracle behind :func:`chain_generates`; exponential in the carrier
    size, intended for small carriers.
    """
    family = {s & carrier for s in sets}
    family.update((0, carrier))
    while True:
        fresh = {carrier ^ s for s in family} - family
        for s in family:
            for t in family:
                u = s | t
                if u not in family:
                    fresh.add(u)
        if not fresh:
            return frozenset(family)
        family.update(fresh)


def chain_generates(chain: Chain, method: str = "maximal") -> bool:
    """Whether the chain's sets generate the full power set of the carrier.

    ``method="maximal"`` is the O(length) shortcut (on a finite carrier,
    generation is equivalent to the chain being maximal); ``"closure"``
    computes the generated algebra outright.
    """
    if method == "maximal":
        return chain.is_maximal
    if method == "closure":
        return len(generated_algebra(chain.sets, chain.carrier)) == 1 << chain.carrier.bit_count()
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ChainIntervalUnion:
    """Disjoint union of chain intervals in canonical nested form.

    ``pairs`` lists (C_i, D_i) with C_1 > D_1 > C_2 > ... > D_k strictly
    decreasing under inclusion; the represented set is the union of the
    differences C_i minus D_i.  An empty pair list represents the empty set.
    """

    carrier: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((c, d) for c, d in self.pairs))
        prev: int | None = None
        for c, d in self.pairs:
            if c & ~self.carrier:
                raise ValueError("interval endpoint outside carrier")
            if d & ~c or d == c:
                raise ValueError("each interval needs D strictly inside C")
            if prev is not None and (c & ~prev or c == prev):
                raise ValueError("intervals must be strictly nested")
            prev = d

    def as_mask(self) -> int:
        mask = 0
        for c, d in self.pairs:
            mask |= c & ~d
        return mask


def interval_union_normalize(
    chain: Chain,
    sets: Sequence[int] = (),
    intervals: Sequence[tuple[int, int]] = (),
    complement_within: int | None = None,
) -> ChainIntervalUnion:
    """Canonical chain-interval form of a union/complement expression.

    The expression is the union of the given chain members and interval
    differences; when ``complement_within`` is given (the carrier or any
    chain member), the result is its complement within that set.  All
    inputs must be members of ``chain``.
    """
    chain_sets = set(chain.sets)

    def _member(m: int) -> int:
        if m not in chain_sets:
            raise ValueError(f"subset {m} is not a member of the chain")
        return m

    mask = 0
    for s in sets:
        mask |= _member(s)
    for c, d in intervals:
        _member(c), _member(d)
        if d & ~c:
            raise ValueError("interval needs D within C")
        mask |= c & ~d
    if complement_within is not None:
        mask = _member(complement_within) & ~mask

    # Decompose into the chain's elementary gaps, then merge adjacent runs.
    runs: list[tuple[int, int]] = []  # (top set, bottom set) per maximal run
    for prev, cur, gap in chain.steps():
        picked = mask & gap
        if picked == 0:
            continue
        if picked != gap:
            raise ValueError("expression is not a union of chain intervals")
        if runs and runs[-1][0] == prev:
            runs[-1] = (cur, runs[-1][1])
        else:
            runs.append((cur, prev))
    runs.reverse()
    return ChainIntervalUnion(chain.carrier, tuple(runs))
