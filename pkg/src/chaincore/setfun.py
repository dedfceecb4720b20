"""Finite ground sets, bitmask subsets, and set functions.

A subset of an n-point ground set is a plain int used as a characteristic
bit-vector: bit i set means point i belongs to the subset.  A set function
is a dense table of 2**n scalars indexed by bitmask, which keeps every
structural predicate an explicit finite enumeration.

The monotone-sequence continuity axioms are vacuous on a finite lattice:
every increasing or decreasing sequence of subsets is eventually constant,
so no operation here represents them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .scalar import (
    Scalar,
    is_finite,
    parse_scalar,
    format_scalar,
    scalar_eq,
    scalar_le,
    scalar_ge,
)

#: Hard cap on ground-set size; dense tables are 2**n entries.
MAX_POINTS = 24


def members(mask: int) -> tuple[int, ...]:
    """Points of a subset, ascending."""
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class GroundSet:
    """A finite universe of ``n`` points with optional display labels."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_POINTS:
            raise ValueError(f"ground set size must be in [1, {MAX_POINTS}], got {self.n}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.n:
                raise ValueError(f"expected {self.n} labels, got {len(labels)}")
            if len(set(labels)) != self.n:
                raise ValueError("labels must be unique")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def subsets(self) -> range:
        return range(1 << self.n)

    def check_subset(self, mask: int) -> int:
        if not 0 <= mask <= self.full:
            raise ValueError(f"subset bitmask {mask} outside ground set of {self.n} points")
        return mask

    def label(self, point: int) -> str:
        if self.labels is not None:
            return self.labels[point]
        return str(point)

    def format_subset(self, mask: int) -> str:
        self.check_subset(mask)
        return "{" + ",".join(self.label(i) for i in members(mask)) + "}"

    def parse_subset(self, spec: object) -> int:
        """Read a subset given as a bitmask int, a digits-only bitmask string,
        a comma-separated list of labels/indices, or a sequence of them."""
        if isinstance(spec, bool):
            raise ValueError(f"not a subset: {spec!r}")
        if isinstance(spec, int):
            return self.check_subset(spec)
        if isinstance(spec, str):
            text = spec.strip()
            if text in ("", "{}"):
                return 0
            if text.isdigit():
                return self.check_subset(int(text))
            tokens = [t.strip() for t in text.strip("{}").split(",") if t.strip()]
            return self._mask_from_tokens(tokens)
        if isinstance(spec, Sequence):
            return self._mask_from_tokens(list(spec))
        raise ValueError(f"not a subset: {spec!r}")

    def _mask_from_tokens(self, tokens: Iterable[object]) -> int:
        mask = 0
        for tok in tokens:
            if isinstance(tok, int) and not isinstance(tok, bool):
                idx = tok
            elif isinstance(tok, str) and self.labels is not None and tok in self.labels:
                idx = self.labels.index(tok)
            elif isinstance(tok, str) and tok.isdigit():
                idx = int(tok)
            else:
                raise ValueError(f"unknown point {tok!r}")
            if not 0 <= idx < self.n:
                raise ValueError(f"point index {idx} outside ground set of {self.n} points")
            mask |= 1 << idx
        return mask


@dataclass(frozen=True)
class SetFunction:
    """A total map from subsets of a ground set to scalars."""

    ground: GroundSet
    table: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        size = 1 << self.ground.n
        if len(self.table) != size:
            raise ValueError(f"table must have {size} entries, got {len(self.table)}")
        has_float = any(isinstance(x, float) for x in self.table)
        has_exact = any(isinstance(x, Fraction) for x in self.table)
        if has_float and has_exact:
            raise ValueError("table mixes exact and float scalars")
        for mask, x in enumerate(self.table):
            if not is_finite(x):
                raise ValueError(f"non-finite value at bitmask {mask}")
        # Predicate memo for the default-tolerance path; the table is
        # immutable, so results never go stale.
        object.__setattr__(self, "_memo", {})

    @property
    def exact(self) -> bool:
        return not any(isinstance(x, float) for x in self.table)

    def __call__(self, mask: int) -> Scalar:
        self.ground.check_subset(mask)
        return self.table[mask]

    @classmethod
    def from_callable(
        cls,
        ground: GroundSet,
        fn: Callable[[int], object],
        exact: bool = True,
    ) -> "SetFunction":
        return cls(ground, tuple(parse_scalar(fn(m), exact) for m in ground.subsets()))

    @classmethod
    def from_json_dict(cls, obj: dict, exact: bool = True) -> "SetFunction":
        """Build from ``{"n": int, "labels"?: [...], "values": {subset: scalar}}``.

        Every one of the 2**n subsets must be present.
        """
        ground = GroundSet(int(obj["n"]), tuple(obj["labels"]) if obj.get("labels") else None)
        raw = obj.get("values")
        if not isinstance(raw, dict):
            raise ValueError('instance is missing a "values" table')
        table: list[Scalar | None] = [None] * (1 << ground.n)
        for key, value in raw.items():
            mask = ground.parse_subset(key)
            if table[mask] is not None:
                raise ValueError(f"duplicate value for subset bitmask {mask}")
            table[mask] = parse_scalar(value, exact)
        for mask, entry in enumerate(table):
            if entry is None:
                raise ValueError(f"missing value for subset bitmask {mask}")
        return cls(ground, tuple(table))  # type: ignore[arg-type]

    def to_json_dict(self) -> dict:
        values = {str(mask): format_scalar(x) for mask, x in enumerate(self.table)}
        out: dict = {"n": self.ground.n, "values": values}
        if self.ground.labels is not None:
            out["labels"] = list(self.ground.labels)
        return out

    def normalized(self) -> "SetFunction":
        """Grounded version: subtract the value at the empty set everywhere."""
        base = self.table[0]
        return SetFunction(self.ground, tuple(x - base for x in self.table))

    # -- structural predicates ------------------------------------------------

    def _memoized(self, key: str, compute) -> bool:
        memo = self._memo  # type: ignore[attr-defined]
        if key not in memo:
            memo[key] = compute()
        return memo[key]

    def is_grounded(self, eps: float | None = None) -> bool:
        return scalar_eq(self.table[0], 0, eps)

    def is_monotone(self, eps: float | None = None) -> bool:
        """Non-decreasing along single-point insertions (sufficient by
        transitivity on the finite subset lattice)."""
        if eps is None:
            return self._memoized("monotone", lambda: self._monotone(None))
        return self._monotone(eps)

    def _monotone(self, eps: float | None) -> bool:
        full = self.ground.full
        table = self.table
        for mask in self.ground.subsets():
            rest = full & ~mask
            while rest:
                bit = rest & -rest
                if not scalar_le(table[mask], table[mask | bit], eps):
                    return False
                rest ^= bit
        return True

    def is_submodular(self, eps: float | None = None, exhaustive: bool = False) -> bool:
        """v(A) + v(B) >= v(A|B) + v(A&B) for all pairs.

        The default checks the equivalent pairwise-increment form over
        (S, i, j); ``exhaustive=True`` scans all 4**n ordered pairs.
        """
        if eps is None and not exhaustive:
            return self._memoized(
                "submodular", lambda: self._modularity(lower=False, eps=None, exhaustive=False)
            )
        return self._modularity(lower=False, eps=eps, exhaustive=exhaustive)

    def is_supermodular(self, eps: float | None = None, exhaustive: bool = False) -> bool:
        """Mirror of :meth:`is_submodular` with the inequality reversed."""
        if eps is None and not exhaustive:
            return self._memoized(
                "supermodular", lambda: self._modularity(lower=True, eps=None, exhaustive=False)
            )
        return self._modularity(lower=True, eps=eps, exhaustive=exhaustive)

    def _modularity(self, lower: bool, eps: float | None, exhaustive: bool) -> bool:
        table = self.table
        cmp = scalar_le if lower else scalar_ge
        if exhaustive:
            for a in self.ground.subsets():
                for b in self.ground.subsets():
                    if not cmp(table[a] + table[b], table[a | b] + table[a & b], eps):
                        return False
            return True
        n = self.ground.n
        full = self.ground.full
        for mask in self.ground.subsets():
            outside = members(full & ~mask)
            for x, i in enumerate(outside):
                for j in outside[x + 1 :]:
                    lhs = table[mask | 1 << i] + table[mask | 1 << j]
                    rhs = table[mask | 1 << i | 1 << j] + table[mask]
                    if not cmp(lhs, rhs, eps):
                        return False
        return True

    def is_additive(self, eps: float | None = None) -> bool:
        """Modular: both submodular and supermodular (equality throughout)."""
        return self.is_submodular(eps) and self.is_supermodular(eps)

    # -- transforms -----------------------------------------------------------

    def dual(self) -> "SetFunction":
        return dual_transform(self)

    def restrict(self, carrier: int) -> tuple["SetFunction", tuple[int, ...]]:
        """Restriction to a nonempty carrier as a set function on its own
        ground set.  Returns the restricted function and the tuple mapping
        local point index to original point."""
        self.ground.check_subset(carrier)
        pts = members(carrier)
        if not pts:
            raise ValueError("cannot restrict to the empty carrier")
        labels = None
        if self.ground.labels is not None:
            labels = tuple(self.ground.labels[p] for p in pts)
        sub_ground = GroundSet(len(pts), labels)
        table = []
        for local in sub_ground.subsets():
            mask = 0
            for i, p in enumerate(pts):
                if local >> i & 1:
                    mask |= 1 << p
            table.append(self.table[mask])
        return SetFunction(sub_ground, tuple(table)), pts


def dual_transform(v: SetFunction) -> SetFunction:
    """Complement dual: w(A) = v(full) - v(full minus A) + v(empty).

    An involution that swaps submodularity and supermodularity while
    preserving monotonicity and the values at the empty and full sets.
    """
    full = v.ground.full
    top, bottom = v.table[full], v.table[0]
    return SetFunction(v.ground, tuple(top - v.table[full ^ m] + bottom for m in v.ground.subsets()))
