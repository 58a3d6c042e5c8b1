"""Finite-topology machinery: interior, closure, category, Baire property.

First category reduces to a mask test on finite ground sets by the same
hereditary-refinement argument as meagerness in catbase.classify: nowhere
density is hereditary, so a countable cover of S by nowhere-dense sets
refines to the singleton cover, which is finite. ``first_category_mask``
holds the union of nowhere-dense singletons and the cover-search oracle in
the tests cross-checks the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from . import _kernels as K
from .core import PointSet, SetFamily, check_cap
from .errors import InputError

MISSING_EMPTY = "missing_empty"
MISSING_UNIVERSE = "missing_universe"
UNION = "union"
INTERSECTION = "intersection"


@dataclass(frozen=True, slots=True)
class Topology:
    """A family of open sets containing the empty set and the universe and
    closed under pairwise union and intersection (which on a finite ground
    set gives closure under arbitrary unions). Construct via
    validate_topology unless the family is known closed."""

    n: int
    opens: SetFamily

    def __post_init__(self) -> None:
        if self.opens.n != self.n:
            raise InputError("open family size does not match ground-set size")

    @classmethod
    def discrete(cls, n: int) -> "Topology":
        check_cap(n)
        return cls(n, SetFamily.from_masks(n, range(1 << n)))

    @classmethod
    def indiscrete(cls, n: int) -> "Topology":
        return cls(n, SetFamily.from_masks(n, (0, (1 << n) - 1)))

    def open_masks(self) -> tuple[int, ...]:
        return self.opens.masks()

    def __contains__(self, s: PointSet) -> bool:
        return s in self.opens


@dataclass(frozen=True, slots=True)
class TopologyViolation:
    kind: str
    a: Optional[PointSet] = None
    b: Optional[PointSet] = None

    def describe(self) -> str:
        if self.kind == MISSING_EMPTY:
            return "the empty set is not open"
        if self.kind == MISSING_UNIVERSE:
            return "the universe is not open"
        op = "union" if self.kind == UNION else "intersection"
        return f"{op} of opens {self.a} and {self.b} is not open"


@dataclass(frozen=True, slots=True)
class TopologyValidation:
    topology: Optional[Topology]
    violation: Optional[TopologyViolation]

    @property
    def ok(self) -> bool:
        return self.topology is not None


def validate_topology(
    n: int, opens: Union[SetFamily, Sequence[PointSet]]
) -> TopologyValidation:
    """Check the topology axioms, returning the first failing pair as witness."""
    if not isinstance(opens, SetFamily):
        opens = SetFamily.from_point_sets(n, opens)
    if opens.n != n:
        raise InputError("open family size does not match ground-set size")
    masks = opens.masks()
    present = set(masks)
    if 0 not in present:
        return TopologyValidation(None, TopologyViolation(MISSING_EMPTY))
    if (1 << n) - 1 not in present:
        return TopologyValidation(None, TopologyViolation(MISSING_UNIVERSE))
    witness = K.topology_closure_witness(masks)
    if witness is not None:
        kind, a, b = witness
        return TopologyValidation(
            None,
            TopologyViolation(
                UNION if kind == 0 else INTERSECTION,
                a=PointSet(n, a),
                b=PointSet(n, b),
            ),
        )
    return TopologyValidation(Topology(n, opens), None)


def _check_set(t: Topology, s: PointSet) -> None:
    if s.n != t.n:
        raise InputError(f"ground-set size mismatch: {s.n} vs {t.n}")


def interior(t: Topology, s: PointSet) -> PointSet:
    """Largest open set contained in ``s``."""
    _check_set(t, s)
    return PointSet(t.n, K.interior_of(t.open_masks(), s.bits))


def closure(t: Topology, s: PointSet) -> PointSet:
    """Smallest closed set containing ``s``."""
    _check_set(t, s)
    full = (1 << t.n) - 1
    return PointSet(t.n, full & ~K.interior_of(t.open_masks(), full & ~s.bits))


def is_nowhere_dense(t: Topology, s: PointSet) -> bool:
    _check_set(t, s)
    return K.interior_of(t.open_masks(), closure(t, s).bits) == 0


@lru_cache(maxsize=256)
def first_category_mask(t: Topology) -> int:
    """Union of nowhere-dense singletons; subsets of it are the first-category sets."""
    return K.nwd_singleton_mask(t.open_masks(), t.n)


def is_first_category(t: Topology, s: PointSet) -> bool:
    """True iff ``s`` is a union of nowhere-dense sets (see module docstring)."""
    _check_set(t, s)
    return s.bits & ~first_category_mask(t) == 0


@dataclass(frozen=True, slots=True)
class BaireDecomposition:
    """A set with the Baire property written as (h - q) | r.

    ``h`` is open and ``q``, ``r`` are first category. ``degenerate`` marks
    the h = empty form, which is how first-category sets themselves come
    out; for abundant sets h is a genuine non-empty open.
    """

    h: PointSet
    q: PointSet
    r: PointSet

    @property
    def degenerate(self) -> bool:
        return not self.h

    def reconstruct(self) -> PointSet:
        return (self.h - self.q) | self.r


def has_baire_property(t: Topology, s: PointSet) -> Optional[BaireDecomposition]:
    """Decompose ``s`` over an open set it differs from by first category.

    Opens are scanned in descending bitmask order, so the universe (always a
    valid witness for itself) is preferred and first-category sets fall
    through to the degenerate h = empty decomposition. Returns None when no
    open works.
    """
    _check_set(t, s)
    fc = first_category_mask(t)
    for u in reversed(t.open_masks()):
        if (s.bits ^ u) & ~fc == 0:
            h = PointSet(t.n, u)
            return BaireDecomposition(h=h, q=h - s, r=s - h)
    return None


def meager_class(t: Topology) -> SetFamily:
    """All first-category subsets."""
    check_cap(t.n)
    fc = first_category_mask(t)
    return SetFamily.from_masks(
        t.n, (s for s in range(1 << t.n) if s & ~fc == 0)
    )


def baire_class(t: Topology) -> SetFamily:
    """All subsets with the Baire property."""
    check_cap(t.n)
    table = K.topo_baire_table(t.open_masks(), t.n, first_category_mask(t))
    return SetFamily.from_masks(
        t.n, (s for s in range(1 << t.n) if table[s])
    )
