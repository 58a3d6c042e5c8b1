"""Singular, meager and Baire classification over a validated base.

Meagerness on a finite ground set reduces to a mask test. A set is meager
when it is a countable union of singular sets; singularity is hereditary
(shrinking a set only makes avoiding it easier), so any such cover refines
to the cover by singletons, and conversely the singleton cover of a finite
set is itself a finite, hence countable, union. Therefore

    S is meager  <=>  every singleton {x} with x in S is singular
                 <=>  S is contained in the union of singular singletons.

That union is the ``meager_mask`` computed once per base; every meagerness
query afterwards is a single bitwise test. The reduction is cross-checked
in the test suite against a direct cover-search oracle.

All operations here assume a base accepted by axioms.validate_base; the
paper-level guarantees (dichotomy of region intersections, existence of the
fundamental witness, comeager regions for abundant Baire sets) are surfaced
as TheoremViolation errors when they fail, because on a validated base such
a failure is either a counterexample or a bug, never business as usual.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import _kernels as K
from .core import CategoryBase, PointSet, SetFamily, check_cap
from .errors import InputError, TheoremViolation


@lru_cache(maxsize=256)
def meager_mask(base: CategoryBase) -> int:
    """Union of all singular singletons; subsets of it are exactly the meager sets."""
    return K.singleton_singular_mask(base.region_masks(), base.n)


@dataclass(frozen=True, slots=True)
class SetClass:
    """Complete classification tables for all 2^n subsets of the ground set.

    ``singular`` and ``baire`` hold one 0/1 byte per subset mask;
    meagerness is the mask test ``s & ~meager_mask == 0``.
    """

    n: int
    singular: bytes
    meager_mask: int
    baire: bytes

    def is_singular_mask(self, s: int) -> bool:
        return self.singular[s] == 1

    def is_meager_mask(self, s: int) -> bool:
        return s & ~self.meager_mask == 0

    def is_abundant_mask(self, s: int) -> bool:
        return s & ~self.meager_mask != 0

    def is_baire_mask(self, s: int) -> bool:
        return self.baire[s] == 1

    def meager_table(self) -> bytes:
        return bytes(
            1 if self.is_meager_mask(s) else 0 for s in range(1 << self.n)
        )

    def singular_family(self) -> SetFamily:
        return SetFamily.from_masks(
            self.n, (s for s in range(1 << self.n) if self.singular[s])
        )

    def meager_family(self) -> SetFamily:
        return SetFamily.from_masks(
            self.n, (s for s in range(1 << self.n) if self.is_meager_mask(s))
        )

    def baire_family(self) -> SetFamily:
        return SetFamily.from_masks(
            self.n, (s for s in range(1 << self.n) if self.baire[s])
        )


def _check_set(base: CategoryBase, s: PointSet) -> None:
    if s.n != base.n:
        raise InputError(f"ground-set size mismatch: {s.n} vs {base.n}")


def is_singular(base: CategoryBase, s: PointSet) -> bool:
    """True iff every region has a subregion disjoint from ``s``."""
    _check_set(base, s)
    return K.is_singular(base.region_masks(), s.bits)


def is_meager(base: CategoryBase, s: PointSet) -> bool:
    """True iff ``s`` is a union of singular sets (see module docstring)."""
    _check_set(base, s)
    return s.bits & ~meager_mask(base) == 0


def is_abundant(base: CategoryBase, s: PointSet) -> bool:
    return not is_meager(base, s)


def is_abundant_everywhere_in(base: CategoryBase, s: PointSet, c: PointSet) -> bool:
    """True iff ``s`` meets every subregion of the region ``c`` abundantly."""
    _check_set(base, s)
    if c.n != base.n or c not in base.regions:
        raise InputError(f"{c} is not a region of the base")
    mm = meager_mask(base)
    return all(
        s.bits & d & ~mm != 0
        for d in base.region_masks()
        if d & ~c.bits == 0
    )


def fundamental_witness(base: CategoryBase, s: PointSet) -> Optional[PointSet]:
    """First region in which an abundant ``s`` is abundant everywhere.

    Returns None for meager ``s``. For abundant ``s`` a witness region is
    guaranteed on any validated base; its absence raises TheoremViolation
    ("fundamental_witness"), the signal that the base is broken or there is
    a bug worth keeping.
    """
    _check_set(base, s)
    mm = meager_mask(base)
    if s.bits & ~mm == 0:
        return None
    for c in base.region_masks():
        if all(
            s.bits & d & ~mm != 0 for d in base.region_masks() if d & ~c == 0
        ):
            return PointSet(base.n, c)
    raise TheoremViolation(
        "fundamental_witness",
        f"abundant set {s} is abundant everywhere in no region of {base}",
    )


def is_baire(base: CategoryBase, s: PointSet) -> bool:
    """True iff every region has a subregion where ``s`` or its complement is meager."""
    _check_set(base, s)
    return K.is_baire(base.region_masks(), base.n, meager_mask(base), s.bits)


def comeager_region(base: CategoryBase, b: PointSet) -> PointSet:
    """First region c with c - b meager, for abundant Baire ``b``.

    Preconditions are enforced (InputError otherwise); absence of a witness
    on a validated base raises TheoremViolation ("comeager_region").
    """
    _check_set(base, b)
    if is_meager(base, b):
        raise InputError(f"{b} is meager, not an abundant Baire set")
    if not is_baire(base, b):
        raise InputError(f"{b} is not a Baire set")
    mm = meager_mask(base)
    for c in base.region_masks():
        if c & ~b.bits & ~mm == 0:
            return PointSet(base.n, c)
    raise TheoremViolation(
        "comeager_region",
        f"no region is almost inside the abundant Baire set {b} of {base}",
    )


def classify_all(base: CategoryBase) -> SetClass:
    """Classify every subset of the ground set in one pass."""
    check_cap(base.n)
    singular, mm, baire = K.classify_tables(base.region_masks(), base.n)
    return SetClass(n=base.n, singular=singular, meager_mask=mm, baire=baire)
