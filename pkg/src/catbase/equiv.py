"""Executable forms of the equivalence checks between a base and a D-topology.

The headline check compares the meager class of the base with the
first-category class of the operator-induced topology, and the Baire class
of the base with the Baire-property class of the topology, set by set over
all 2^n subsets. Whenever every region contains a non-empty open of the
topology (the hypothesis), both comparisons must come out equal on a
validated base with the cluster operator; a mismatch under the hypothesis
is the single most interesting thing this package can report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import _kernels as K
from . import topo as topo_mod
from .classify import SetClass, classify_all
from .core import CategoryBase, PointSet, SetFamily
from .doperator import OperatorTable, cluster_operator, d_topology
from .errors import CapacityError, InputError

MEAGER_BASE_ONLY = "meager_base_only"
MEAGER_TOPOLOGY_ONLY = "meager_topology_only"
BAIRE_BASE_ONLY = "baire_base_only"
BAIRE_TOPOLOGY_ONLY = "baire_topology_only"
DIRECTIONS = (
    MEAGER_BASE_ONLY,
    MEAGER_TOPOLOGY_ONLY,
    BAIRE_BASE_ONLY,
    BAIRE_TOPOLOGY_ONLY,
)

MINIMAL_UNION_CAP = 1 << 20


def _check_pair(base: CategoryBase, t: topo_mod.Topology) -> None:
    if base.n != t.n:
        raise InputError(f"base over n={base.n}, topology over n={t.n}")


def hypothesis_holds(base: CategoryBase, t: topo_mod.Topology) -> bool:
    """True iff every region contains a non-empty open set of ``t``."""
    _check_pair(base, t)
    opens = t.open_masks()
    return all(
        any(o != 0 and o & ~r == 0 for o in opens) for r in base.region_masks()
    )


def check_opens_abundant_baire(
    base: CategoryBase,
    t: topo_mod.Topology,
    classes: Optional[SetClass] = None,
) -> Optional[PointSet]:
    """Verify every non-empty open of ``t`` is an abundant Baire set in the base.

    Returns None when the property holds, else the first failing open set
    in ascending order. Guaranteed to hold for the basic topology of a
    validated base; for arbitrary admissible operators it is a property to
    test, not a theorem, so the outcome is data.
    """
    _check_pair(base, t)
    if classes is None:
        classes = classify_all(base)
    for o in t.open_masks():
        if o == 0:
            continue
        if not classes.is_abundant_mask(o) or not classes.is_baire_mask(o):
            return PointSet(base.n, o)
    return None


def minimal_regions(base: CategoryBase) -> SetFamily:
    """Regions with no proper subregion."""
    masks = base.region_masks()
    return SetFamily.from_masks(
        base.n,
        (r for r in masks if not any(b != r and b & ~r == 0 for b in masks)),
    )


def minimal_region_condition(base: CategoryBase) -> bool:
    """True iff every region contains a minimal region.

    On a finite base this always holds (descending chains of regions
    terminate); it is still computed, not assumed, because it doubles as a
    soundness canary.
    """
    minimal = minimal_regions(base).masks()
    return all(
        any(m & ~r == 0 for m in minimal) for r in base.region_masks()
    )


def minimal_union_open_check(base: CategoryBase) -> Optional[PointSet]:
    """Verify every union of minimal regions is open in the basic topology.

    Exhausts all 2^k unions of the k minimal regions (CapacityError beyond
    2^20); returns None when all are open, else the first failing union.
    """
    from .doperator import basic_topology

    minimal = minimal_regions(base).masks()
    k = len(minimal)
    if 1 << k > MINIMAL_UNION_CAP:
        raise CapacityError(f"2^{k} unions of minimal regions exceed the cap")
    opens = set(basic_topology(base).open_masks())
    unions = sorted(
        {
            _union_of(minimal, pick)
            for pick in range(1 << k)
        }
    )
    for u in unions:
        if u not in opens:
            return PointSet(base.n, u)
    return None


def _union_of(masks: tuple[int, ...], pick: int) -> int:
    out = 0
    i = 0
    while pick:
        if pick & 1:
            out |= masks[i]
        pick >>= 1
        i += 1
    return out


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    """Outcome of comparing base classes against topology classes.

    ``witnesses`` maps each mismatch direction to up to ``witness_cap``
    subsets found in that direction, ascending; all four keys are always
    present (empty tuples when the inclusion holds). On a validated base,
    hypothesis implies meager_equal and baire_equal for the cluster
    operator; check_equivalence reports, the sweep enforces.
    """

    n: int
    meager_equal: bool
    baire_equal: bool
    hypothesis: bool
    minimal_region_condition: bool
    opens_abundant_baire: bool
    witnesses: Mapping[str, tuple[PointSet, ...]]

    @property
    def equivalent(self) -> bool:
        return self.meager_equal and self.baire_equal


def compare_classes_raw(
    classes: SetClass,
    fc_mask: int,
    topo_baire: bytes,
    witness_cap: Optional[int],
) -> dict[str, list[int]]:
    """Set-by-set comparison over all subsets; raw mask witnesses per direction."""
    out: dict[str, list[int]] = {d: [] for d in DIRECTIONS}

    def note(direction: str, s: int) -> None:
        if witness_cap is None or len(out[direction]) < witness_cap:
            out[direction].append(s)

    for s in range(1 << classes.n):
        in_mc = classes.is_meager_mask(s)
        in_mt = s & ~fc_mask == 0
        if in_mc and not in_mt:
            note(MEAGER_BASE_ONLY, s)
        elif in_mt and not in_mc:
            note(MEAGER_TOPOLOGY_ONLY, s)
        in_bc = classes.is_baire_mask(s)
        in_bt = topo_baire[s] == 1
        if in_bc and not in_bt:
            note(BAIRE_BASE_ONLY, s)
        elif in_bt and not in_bc:
            note(BAIRE_TOPOLOGY_ONLY, s)
    return out


def check_equivalence(
    base: CategoryBase,
    d: Optional[OperatorTable] = None,
    witness_cap: Optional[int] = 8,
    classes: Optional[SetClass] = None,
) -> EquivalenceReport:
    """Full equivalence report for a base and an admissible operator.

    ``d`` defaults to the cluster operator. Both inclusions of both class
    comparisons are always computed, even after a failure, so reports carry
    the full mismatch geometry; ``witness_cap`` limits listed witnesses per
    direction (None lists everything).
    """
    if d is None:
        d = cluster_operator(base)
    t = d_topology(base, d)
    if classes is None:
        classes = classify_all(base)
    fc = topo_mod.first_category_mask(t)
    tb = K.topo_baire_table(t.open_masks(), t.n, fc)
    raw = compare_classes_raw(classes, fc, tb, witness_cap)
    # Equality is decided by full scan, not by the (possibly capped) lists.
    meager_equal = classes.meager_mask == fc
    baire_equal = classes.baire == tb
    return EquivalenceReport(
        n=base.n,
        meager_equal=meager_equal,
        baire_equal=baire_equal,
        hypothesis=hypothesis_holds(base, t),
        minimal_region_condition=minimal_region_condition(base),
        opens_abundant_baire=check_opens_abundant_baire(base, t, classes) is None,
        witnesses={
            k: tuple(PointSet(base.n, s) for s in v) for k, v in raw.items()
        },
    )
