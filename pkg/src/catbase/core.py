"""Ground-set and set-family algebra over bitmasks.

Points are integer indices 0..n-1. A subset of the ground set is a bitmask
(bit i set iff point i is in the set), so all set algebra is exact bitwise
arithmetic. Everything here is immutable and pure; values can be shared
freely across worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from . import _kernels as K
from .errors import CapacityError, InputError

# Enumeration over 2^n subsets is inherent to classification, so the library
# refuses ground sets where that is plainly hopeless.
N_CAP = 24


def check_cap(n: int) -> None:
    if n > N_CAP:
        raise CapacityError(f"ground-set size {n} exceeds cap {N_CAP} (work is 2^n)")


@dataclass(frozen=True, slots=True)
class PointSet:
    """A subset of the ground set {0, ..., n-1}, encoded as a bitmask."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"ground-set size must be >= 0, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise InputError(f"bitmask {self.bits} out of range for n={self.n}")

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def of(cls, n: int, *elements: int) -> "PointSet":
        return cls.from_elements(n, elements)

    @classmethod
    def from_elements(cls, n: int, elements) -> "PointSet":
        bits = 0
        for e in elements:
            if not 0 <= e < n:
                raise InputError(f"element {e} out of range for n={n}")
            bits |= 1 << e
        return cls(n, bits)

    def _check_peer(self, other: "PointSet") -> None:
        if self.n != other.n:
            raise InputError(f"ground-set size mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check_peer(other)
        return PointSet(self.n, self.bits | other.bits)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check_peer(other)
        return PointSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check_peer(other)
        return PointSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "PointSet") -> "PointSet":
        self._check_peer(other)
        return PointSet(self.n, self.bits ^ other.bits)

    def complement(self) -> "PointSet":
        return PointSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def issubset(self, other: "PointSet") -> bool:
        self._check_peer(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "PointSet") -> bool:
        self._check_peer(other)
        return self.bits & other.bits == 0

    def __contains__(self, element: int) -> bool:
        return 0 <= element < self.n and self.bits >> element & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self) + "}"

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, {self})"


@dataclass(frozen=True, slots=True)
class SetFamily:
    """A duplicate-free family of subsets, ordered ascending by bitmask.

    The ordering invariant makes every downstream report and witness
    deterministic; construct through the factories, which canonicalize.
    """

    n: int
    members: tuple[PointSet, ...]

    def __post_init__(self) -> None:
        prev = -1
        for m in self.members:
            if m.n != self.n:
                raise InputError(f"member {m!r} has n={m.n}, family has n={self.n}")
            if m.bits <= prev:
                raise InputError("family members must be strictly ascending by bitmask")
            prev = m.bits

    @classmethod
    def from_point_sets(cls, n: int, members) -> "SetFamily":
        return cls.from_masks(n, (m.bits for m in members))

    @classmethod
    def from_masks(cls, n: int, masks) -> "SetFamily":
        ordered = sorted(set(masks))
        return cls(n, tuple(PointSet(n, b) for b in ordered))

    def masks(self) -> tuple[int, ...]:
        return tuple(m.bits for m in self.members)

    def __iter__(self) -> Iterator[PointSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, s: PointSet) -> bool:
        return s.n == self.n and any(m.bits == s.bits for m in self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.members) + "}"


@dataclass(frozen=True, slots=True)
class CategoryBase:
    """A ground set together with its family of regions.

    Structural invariants only (non-empty members, matching sizes) are
    enforced here; the axioms live in :mod:`catbase.axioms` and are checked,
    not assumed, by ``validate_base``. Operations documented as requiring a
    validated base trust the caller.
    """

    n: int
    regions: SetFamily

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError("a category base needs a non-empty ground set")
        if self.regions.n != self.n:
            raise InputError("region family size does not match ground-set size")
        for r in self.regions:
            if not r:
                raise InputError("regions must be non-empty")

    @classmethod
    def from_masks(cls, n: int, masks) -> "CategoryBase":
        return cls(n, SetFamily.from_masks(n, masks))

    def region_masks(self) -> tuple[int, ...]:
        return self.regions.masks()

    def universe(self) -> PointSet:
        return PointSet.full(self.n)

    def __str__(self) -> str:
        return f"(X={{0..{self.n - 1}}}, C={self.regions})"


def power_set_iter(n: int) -> Iterator[PointSet]:
    """Yield all 2^n subsets of the ground set, ascending by bitmask."""
    if n < 0:
        raise InputError(f"ground-set size must be >= 0, got {n}")
    check_cap(n)
    for bits in range(1 << n):
        yield PointSet(n, bits)


def contains_region(base: CategoryBase, s: PointSet) -> bool:
    """True iff some region of the base is contained in ``s``."""
    if s.n != base.n:
        raise InputError(f"ground-set size mismatch: {s.n} vs {base.n}")
    return K.covers(base.region_masks(), s.bits)


def subregions(base: CategoryBase, a: PointSet) -> SetFamily:
    """All regions contained in the region ``a`` (including ``a`` itself)."""
    if a.n != base.n or a not in base.regions:
        raise InputError(f"{a} is not a region of the base")
    return SetFamily.from_masks(
        base.n, (r for r in base.region_masks() if r & ~a.bits == 0)
    )
