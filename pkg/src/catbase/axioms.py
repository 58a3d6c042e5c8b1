"""Validation of the category-base axioms, with witnesses for every failure.

A family of non-empty subsets is a category base when (1) the regions cover
the ground set, and (2) for every region A and every non-empty family D of
pairwise-disjoint regions with |D| < |C|: if A meets the union of D in a set
that contains a region, some single member of D already does so; otherwise
some region inside A avoids the whole union. Violations come back as data
(kind + minimal witnesses), because counterexample mining needs witnesses,
not booleans.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import _kernels as K
from .core import CategoryBase, PointSet, SetFamily
from .errors import CapacityError, InputError

AXIOM1 = "axiom1"
AXIOM2I = "axiom2i"
AXIOM2II = "axiom2ii"
EMPTY_REGION = "empty_region"
DUPLICATE_REGION = "duplicate_region"

_KINDS = (AXIOM1, AXIOM2I, AXIOM2II, EMPTY_REGION, DUPLICATE_REGION)


def default_budget() -> int:
    """Budget on axiom-2 clause evaluations; overridable via CATBASE_BUDGET."""
    raw = os.environ.get("CATBASE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise InputError(f"CATBASE_BUDGET must be an integer, got {raw!r}") from exc
    return 10_000_000


@dataclass(frozen=True, slots=True)
class AxiomViolation:
    """One axiom failure. Witness fields are populated per kind:

    axiom1 carries witness_point (an uncovered point); axiom2i/axiom2ii
    carry witness_region (the A) and witness_family (the D); the structural
    kinds carry witness_region.
    """

    kind: str
    witness_region: Optional[PointSet] = None
    witness_family: Optional[tuple[PointSet, ...]] = None
    witness_point: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise InputError(f"unknown violation kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == AXIOM1:
            return f"axiom 1: point {self.witness_point} belongs to no region"
        if self.kind == EMPTY_REGION:
            return "structural: empty set listed as a region"
        if self.kind == DUPLICATE_REGION:
            return f"structural: region {self.witness_region} listed twice"
        fam = "{" + ", ".join(str(d) for d in (self.witness_family or ())) + "}"
        if self.kind == AXIOM2I:
            return (
                f"axiom 2(i): A={self.witness_region} meets union of D={fam} in a set "
                "containing a region, but no single member of D does"
            )
        return (
            f"axiom 2(ii): A={self.witness_region} meets union of D={fam} in no region, "
            "yet no subregion of A is disjoint from D"
        )


@dataclass(frozen=True, slots=True)
class ValidationResult:
    """Outcome of validate_base: either a base or the full violation list."""

    n: int
    base: Optional[CategoryBase]
    violations: tuple[AxiomViolation, ...]
    evaluations: int
    degenerate_single_region: bool

    @property
    def ok(self) -> bool:
        return self.base is not None


def disjoint_subfamilies(regions: SetFamily, max_size: int) -> Iterator[SetFamily]:
    """Stream every non-empty family of pairwise-disjoint regions, |D| <= max_size.

    Families are built by ordered recursive extension: a region may join only
    if its index is above every chosen member and it meets none of them, so
    each family appears exactly once, in lexicographic order of index
    sequences. For axiom checking max_size is |regions| - 1.
    """
    masks = regions.masks()
    m = len(masks)
    n = regions.n

    def extend(chosen: list[int], union: int, start: int) -> Iterator[SetFamily]:
        for j in range(start, m):
            if masks[j] & union:
                continue
            chosen.append(j)
            if len(chosen) <= max_size:
                yield SetFamily(n, tuple(PointSet(n, masks[i]) for i in chosen))
                if len(chosen) < max_size:
                    yield from extend(chosen, union | masks[j], j + 1)
            chosen.pop()

    yield from extend([], 0, 0)


def validate_base(
    n: int,
    regions: Sequence[PointSet],
    budget: Optional[int] = None,
) -> ValidationResult:
    """Check both axioms over a raw region list, collecting all violations.

    Structural problems (empty or duplicate members) are reported rather than
    assumed away; the axiom scan then runs on the cleaned family so a single
    call yields the complete picture. Axiom-2 witnesses are minimal: the
    lexicographically first region A, then the first family D in enumeration
    order. Raises CapacityError when the scan would exceed ``budget`` clause
    evaluations (default from CATBASE_BUDGET or 10^7).
    """
    if n < 1:
        raise InputError("a category base needs a non-empty ground set")
    if budget is None:
        budget = default_budget()
    violations: list[AxiomViolation] = []
    seen: set[int] = set()
    cleaned: list[int] = []
    for r in regions:
        if r.n != n:
            raise InputError(f"region {r!r} has n={r.n}, expected {n}")
        if r.bits == 0:
            violations.append(AxiomViolation(EMPTY_REGION, witness_region=r))
            continue
        if r.bits in seen:
            violations.append(AxiomViolation(DUPLICATE_REGION, witness_region=r))
            continue
        seen.add(r.bits)
        cleaned.append(r.bits)
    cleaned.sort()

    union = 0
    for b in cleaned:
        union |= b
    for x in range(n):
        if not union >> x & 1:
            violations.append(AxiomViolation(AXIOM1, witness_point=x))

    raw, evaluations, truncated = K.axiom2_scan(tuple(cleaned), n, budget, True)
    if truncated:
        raise CapacityError(
            f"axiom check exceeded budget of {budget} clause evaluations"
        )
    for kind, a, d in raw:
        violations.append(
            AxiomViolation(
                AXIOM2I if kind == 1 else AXIOM2II,
                witness_region=PointSet(n, a),
                witness_family=tuple(PointSet(n, x) for x in d),
            )
        )

    base = None
    if not violations:
        base = CategoryBase(n, SetFamily.from_masks(n, cleaned))
    return ValidationResult(
        n=n,
        base=base,
        violations=tuple(violations),
        evaluations=evaluations,
        degenerate_single_region=base is not None and len(cleaned) == 1,
    )
