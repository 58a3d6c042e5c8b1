"""Subset operators: the extensional table form and the cluster-point operator.

An admissible operator D maps subsets to subsets with D(X) = X, D(S) empty
for every singular S, and D(S | T) = D(S) | D(T). Finite additivity makes D
determined by its singleton values, and it also closes the gap between
"singular" and "meager" in condition (1): a meager set is the union of its
(singular) singletons, so additivity forces D(meager) = empty as well. The
same decomposition gives monotonicity. Operators are stored as full tables
over all 2^n subsets so arbitrary operators, not just the built-in cluster
operator, can be validated and explored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import _kernels as K
from . import topo
from .classify import SetClass, classify_all, meager_mask
from .core import CategoryBase, PointSet, check_cap
from .errors import InputError, TheoremViolation

UNIVERSE = "universe"
SINGULAR = "singular"
ADDITIVITY = "additivity"


@dataclass(frozen=True, slots=True)
class OperatorTable:
    """An extensional operator: entry s holds the image of subset mask s."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        size = 1 << self.n
        if len(self.table) != size:
            raise InputError(
                f"operator table has {len(self.table)} entries, expected {size}"
            )
        for s, v in enumerate(self.table):
            if not 0 <= v < size:
                raise InputError(f"operator value {v} for subset {s} out of range")

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> "OperatorTable":
        size = 1 << n
        if len(mapping) != size or set(mapping) != set(range(size)):
            raise InputError("operator mapping must be total over all subsets")
        return cls(n, tuple(mapping[s] for s in range(size)))

    @classmethod
    def from_singletons(cls, n: int, singleton_values: Sequence[int]) -> "OperatorTable":
        """Close singleton values under finite additivity."""
        if len(singleton_values) != n:
            raise InputError(f"need {n} singleton values, got {len(singleton_values)}")
        return cls(n, additive_closure(n, tuple(singleton_values)))

    def of(self, s: PointSet) -> PointSet:
        if s.n != self.n:
            raise InputError(f"ground-set size mismatch: {s.n} vs {self.n}")
        return PointSet(self.n, self.table[s.bits])

    def singleton_values(self) -> tuple[int, ...]:
        return tuple(self.table[1 << x] for x in range(self.n))


def additive_closure(n: int, singleton_values: tuple[int, ...]) -> tuple[int, ...]:
    """Table with entry s = union of singleton values over the points of s."""
    size = 1 << n
    table = [0] * size
    for s in range(1, size):
        low = s & -s
        table[s] = table[s ^ low] | singleton_values[low.bit_length() - 1]
    return tuple(table)


@dataclass(frozen=True, slots=True)
class OperatorViolation:
    """One failed operator condition, with the offending subsets."""

    kind: str
    s: Optional[PointSet] = None
    t: Optional[PointSet] = None
    value: Optional[PointSet] = None

    def describe(self) -> str:
        if self.kind == UNIVERSE:
            return f"D(X) = {self.value}, expected X"
        if self.kind == SINGULAR:
            return f"D({self.s}) = {self.value}, expected empty ({self.s} is singular)"
        return f"D({self.s} | {self.t}) = {self.value}, not D({self.s}) | D({self.t})"


def operator_violations_raw(
    table: Sequence[int],
    n: int,
    singular_table: bytes,
    paranoid: bool = False,
) -> list[tuple[str, int, int, int]]:
    """Violation records as raw masks: (kind, s, t, value); t is -1 when unused.

    Additivity is checked against the singleton decomposition: a table is
    finitely additive iff every entry equals the entry of the set minus its
    lowest point joined with the lowest singleton, which covers all pairs at
    linear cost. ``paranoid`` re-checks every pair of subsets directly.
    """
    size = 1 << n
    full = size - 1
    out: list[tuple[str, int, int, int]] = []
    if table[full] != full:
        out.append((UNIVERSE, full, -1, table[full]))
    for s in range(size):
        if singular_table[s] and table[s] != 0:
            out.append((SINGULAR, s, -1, table[s]))
    for s in range(size):
        if s.bit_count() < 2:
            continue
        low = s & -s
        rest = s ^ low
        if table[s] != table[rest] | table[low]:
            out.append((ADDITIVITY, rest, low, table[s]))
    if paranoid:
        for s in range(size):
            for t in range(size):
                if table[s | t] != table[s] | table[t]:
                    out.append((ADDITIVITY, s, t, table[s | t]))
    return out


def validate_operator(
    base: CategoryBase,
    d: OperatorTable,
    paranoid: bool = False,
    classes: Optional[SetClass] = None,
) -> tuple[OperatorViolation, ...]:
    """Check the operator conditions against the base; violations are data."""
    if d.n != base.n:
        raise InputError(f"operator is over n={d.n}, base over n={base.n}")
    if classes is None:
        classes = classify_all(base)
    raw = operator_violations_raw(d.table, base.n, classes.singular, paranoid)

    def wrap(m: int) -> Optional[PointSet]:
        return None if m < 0 else PointSet(base.n, m)

    return tuple(
        OperatorViolation(kind, s=wrap(s), t=wrap(t), value=wrap(v))
        for kind, s, t, v in raw
    )


def cluster_points(base: CategoryBase, s: PointSet) -> PointSet:
    """Points at which ``s`` is locally abundant.

    x qualifies iff some region A containing x has s abundant in every
    subregion of A that still contains x.
    """
    if s.n != base.n:
        raise InputError(f"ground-set size mismatch: {s.n} vs {base.n}")
    return PointSet(
        base.n,
        K.cluster_points(base.region_masks(), base.n, meager_mask(base), s.bits),
    )


def cluster_operator(base: CategoryBase) -> OperatorTable:
    """The cluster-point operator as a table; admissibility is re-verified.

    On a validated base the cluster operator always satisfies the operator
    conditions, so a failed self-check is reported as TheoremViolation.
    """
    check_cap(base.n)
    table = OperatorTable(base.n, K.cluster_table(base.region_masks(), base.n))
    bad = validate_operator(base, table)
    if bad:
        raise TheoremViolation(
            "cluster_operator_axioms",
            f"cluster operator of {base} fails: {bad[0].describe()}",
        )
    return table


def d_topology(base: CategoryBase, d: OperatorTable) -> topo.Topology:
    """Topology induced by an admissible operator: s open iff D(X - s) stays in X - s.

    For an admissible table the result is always a topology; the axioms are
    re-checked anyway and a failure (possible only for inadmissible input)
    raises TheoremViolation.
    """
    if d.n != base.n:
        raise InputError(f"operator is over n={d.n}, base over n={base.n}")
    check_cap(base.n)
    opens = K.tau_opens(d.table, base.n)
    result = topo.validate_topology(
        base.n, tuple(PointSet(base.n, o) for o in opens)
    )
    if not result.ok:
        raise TheoremViolation(
            "d_topology_axioms",
            f"operator-induced family is not a topology: {result.violation.describe()}",
        )
    return result.topology


def basic_topology(base: CategoryBase) -> topo.Topology:
    """The topology induced by the cluster operator."""
    return d_topology(base, cluster_operator(base))
