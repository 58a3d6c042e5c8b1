"""Exhaustive and randomized sweeps over bases, topologies and operators.

Every theorem-level guarantee in the package is run here over generated
inputs: all candidate region families at small n (or seeded random samples),
the cluster operator plus seeded random admissible operators per base, with
every failure recorded as a violation with full witnesses. Sweeps are
deterministic functions of their config: job seeds derive from (config seed,
candidate index), jobs are merged in candidate order, so reports are
byte-identical regardless of worker count.

Random operators refine the cluster operator by default (each non-singular
singleton value is a random superset of the cluster value, singular
singletons are forced empty); under that constraint the equivalence theorem
is provable whenever the hypothesis holds, so a sweep violation always means
a bug or a genuine counterexample. Unconstrained tables (refine_cluster
False) are admissible too but can fail the equivalence even under the
hypothesis; they are available for exploration and are not swept.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Optional

from . import _kernels as K
from . import topo as topo_mod
from .axioms import default_budget, validate_base
from .classify import classify_all, meager_mask
from .core import CategoryBase, PointSet, SetFamily
from .doperator import (
    OperatorTable,
    additive_closure,
    cluster_operator,
    operator_violations_raw,
)
from .errors import CapacityError, InputError

EXHAUSTIVE = "exhaustive"
RANDOM = "random"

EXHAUSTIVE_BASE_CAP = 3  # 2^(2^n - 1) candidate families
EXTENDED_BASE_CAP = 4
RANDOM_BASE_CAP = 12
TOPOLOGY_CAP = 4


@dataclass(frozen=True, slots=True)
class SweepConfig:
    n: int
    mode: str = EXHAUSTIVE
    sample_count: int = 0
    seed: int = 0
    canonicalize: bool = False
    budget: int = field(default_factory=default_budget)
    random_operators: int = 0
    paranoid: bool = False
    extended: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError("sweep needs a non-empty ground set")
        if self.mode not in (EXHAUSTIVE, RANDOM):
            raise InputError(f"unknown sweep mode {self.mode!r}")
        if self.mode == EXHAUSTIVE:
            cap = EXTENDED_BASE_CAP if self.extended else EXHAUSTIVE_BASE_CAP
            if self.n > cap:
                raise CapacityError(
                    f"exhaustive sweep capped at n={cap}"
                    + ("" if self.extended else " (n=4 needs extended=True)")
                )
        else:
            if self.n > RANDOM_BASE_CAP:
                raise CapacityError(f"random sweep capped at n={RANDOM_BASE_CAP}")
            if self.sample_count < 1:
                raise InputError("random mode needs sample_count >= 1")
        if self.random_operators < 0 or self.budget < 1:
            raise InputError("budgets and operator counts must be positive")


@dataclass(frozen=True, slots=True)
class SweepCounts:
    candidates: int
    valid_bases: int
    hypothesis_true: int
    equivalence_true: int
    minimal_condition_true: int
    operators_checked: int
    operators_hypothesis_true: int
    capacity_skipped: int


@dataclass(frozen=True, slots=True)
class SweepViolation:
    index: int
    regions: tuple[int, ...]
    check: str
    operator: str
    detail: str


@dataclass(frozen=True, slots=True)
class SweepReport:
    config: SweepConfig
    counts: SweepCounts
    violations: tuple[SweepViolation, ...]
    truncated: bool
    elapsed_s: float
    backend: str
    workers: int

    def canonical_dict(self) -> dict:
        """Deterministic report content; excludes timing/backend/workers."""
        cfg = self.config
        return {
            "config": {
                "n": cfg.n,
                "mode": cfg.mode,
                "sample_count": cfg.sample_count,
                "seed": cfg.seed,
                "canonicalize": cfg.canonicalize,
                "budget": cfg.budget,
                "random_operators": cfg.random_operators,
                "paranoid": cfg.paranoid,
                "extended": cfg.extended,
            },
            "counts": {
                "candidates": self.counts.candidates,
                "valid_bases": self.counts.valid_bases,
                "hypothesis_true": self.counts.hypothesis_true,
                "equivalence_true": self.counts.equivalence_true,
                "minimal_condition_true": self.counts.minimal_condition_true,
                "operators_checked": self.counts.operators_checked,
                "operators_hypothesis_true": self.counts.operators_hypothesis_true,
                "capacity_skipped": self.counts.capacity_skipped,
            },
            "violations": [
                {
                    "index": v.index,
                    "regions": [_mask_elements(r) for r in v.regions],
                    "check": v.check,
                    "operator": v.operator,
                    "detail": v.detail,
                }
                for v in self.violations
            ],
            "truncated": self.truncated,
        }


def _mask_elements(mask: int) -> list[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def _fmt_mask(mask: int) -> str:
    return "{" + ",".join(str(x) for x in _mask_elements(mask)) + "}"


# ---------------------------------------------------------------------------
# point permutations, canonical forms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _subset_permutation_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation of the points, the induced map on subset masks."""
    tables = []
    for perm in permutations(range(n)):
        table = []
        for mask in range(1 << n):
            out = 0
            for i in range(n):
                if mask >> i & 1:
                    out |= 1 << perm[i]
            table.append(out)
        tables.append(tuple(table))
    return tuple(tables)


def permute_mask(n: int, mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << perm[i]
    return out


def canonical_form(n: int, masks: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least sorted mask tuple over all point permutations."""
    best = None
    for table in _subset_permutation_tables(n):
        image = tuple(sorted(table[m] for m in masks))
        if best is None or image < best:
            best = image
    return best if best is not None else tuple(sorted(masks))


def is_canonical(n: int, masks: tuple[int, ...]) -> bool:
    return tuple(sorted(masks)) == canonical_form(n, masks)


def orbit_size(n: int, masks: tuple[int, ...]) -> int:
    """Number of distinct relabelings of a family under point permutations."""
    images = {
        tuple(sorted(table[m] for m in masks))
        for table in _subset_permutation_tables(n)
    }
    return len(images)


# ---------------------------------------------------------------------------
# candidate generation
# ---------------------------------------------------------------------------

def _decode_family(n: int, code: int) -> tuple[int, ...]:
    """Family code: bit j set means the non-empty subset mask j+1 is a member."""
    return tuple(j + 1 for j in range((1 << n) - 1) if code >> j & 1)


def _candidates(cfg: SweepConfig) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (index, region masks) for every candidate family of the sweep.

    Exhaustive indices are the family codes themselves (stable whether or
    not canonicalization filters the stream); random indices are sample
    ordinals.
    """
    n = cfg.n
    top = 1 << ((1 << n) - 1)
    if cfg.mode == EXHAUSTIVE:
        for code in range(1, top):
            masks = _decode_family(n, code)
            if cfg.canonicalize and not is_canonical(n, masks):
                continue
            yield code, masks
    else:
        rng = random.Random(cfg.seed)
        for i in range(cfg.sample_count):
            code = rng.randrange(1, top)
            masks = _decode_family(n, code)
            if cfg.canonicalize and not is_canonical(n, masks):
                continue
            yield i, masks


def enumerate_bases(cfg: SweepConfig) -> Iterator[CategoryBase]:
    """Stream the validated bases among the sweep's candidate families."""
    for _, masks in _candidates(cfg):
        result = validate_base(
            cfg.n, [PointSet(cfg.n, m) for m in masks], budget=cfg.budget
        )
        if result.ok:
            yield result.base


def enumerate_topologies(n: int) -> Iterator[topo_mod.Topology]:
    """All topologies on n points, ascending by family code.

    Only families containing the empty set and the universe are worth
    testing (everything else fails the axioms outright), so the scan covers
    the 2^(2^n - 2) remaining choices and filters by closure.
    """
    if n < 1:
        raise InputError("topologies need a non-empty ground set")
    if n > TOPOLOGY_CAP:
        raise CapacityError(f"topology enumeration capped at n={TOPOLOGY_CAP}")
    full = (1 << n) - 1
    middles = tuple(range(1, full))
    for code in range(1 << len(middles)):
        fam = (0,) + tuple(
            middles[i] for i in range(len(middles)) if code >> i & 1
        ) + (full,)
        if K.topology_closure_witness(fam) is None:
            yield topo_mod.Topology(n, SetFamily.from_masks(n, fam))


# ---------------------------------------------------------------------------
# random operators
# ---------------------------------------------------------------------------

def _refining_singletons(
    rng: random.Random, n: int, mm: int, cluster_singletons: tuple[int, ...]
) -> tuple[int, ...]:
    full = (1 << n) - 1
    return tuple(
        0 if mm >> x & 1 else cluster_singletons[x] | rng.randrange(full + 1)
        for x in range(n)
    )


def random_operator(
    base: CategoryBase,
    seed: int,
    refine_cluster: bool = True,
    max_retries: int = 32,
) -> OperatorTable:
    """Seeded random admissible operator table.

    Singular singletons are forced to the empty value. With refine_cluster
    (the default, and what sweeps use) the other singleton values are random
    supersets of the cluster operator's, which makes D(X) = X automatic and
    keeps the equivalence theorem in force under the hypothesis. Without it,
    singleton values are arbitrary, retried up to max_retries until their
    union covers the ground set, falling back to the cluster operator; such
    tables are admissible but carry no equivalence guarantee.
    """
    rng = random.Random(seed)
    n = base.n
    mm = meager_mask(base)
    if refine_cluster:
        ctab = cluster_operator(base)
        return OperatorTable.from_singletons(
            n, _refining_singletons(rng, n, mm, ctab.singleton_values())
        )
    full = (1 << n) - 1
    for _ in range(max_retries):
        vals = tuple(
            0 if mm >> x & 1 else rng.randrange(full + 1) for x in range(n)
        )
        union = 0
        for v in vals:
            union |= v
        if union == full:
            return OperatorTable.from_singletons(n, vals)
    return cluster_operator(base)


# ---------------------------------------------------------------------------
# per-base job and the sweep driver
# ---------------------------------------------------------------------------

MINIMAL_UNION_JOB_CAP = 20


def _job_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def _op_violation_detail(kind: str, s: int, t: int, value: int) -> str:
    where = s | t if t >= 0 else s
    return f"{kind} at {_fmt_mask(where)} -> {_fmt_mask(value)}"


def _base_job(payload: tuple) -> dict:
    """Validate one candidate family and run the whole theorem battery on it.

    Works on raw masks and kernel tables throughout; the verdicts coincide
    with the public per-operation API because both sides consume the same
    kernels. Returns a picklable dict of counters and violation triples.
    """
    index, n, masks, budget, rand_ops, op_seed, paranoid = payload
    res = {
        "index": index,
        "masks": masks,
        "valid": 0,
        "hypothesis": 0,
        "equivalence": 0,
        "minimal": 0,
        "ops_checked": 0,
        "ops_hyp": 0,
        "skipped": 0,
        "violations": [],
    }

    def bad(check: str, operator: str, detail: str) -> None:
        res["violations"].append((check, operator, detail))

    full = (1 << n) - 1
    union = 0
    for m in masks:
        union |= m
    ax2, _, truncated = K.axiom2_scan(masks, n, budget, False)
    if truncated:
        res["skipped"] = 1
        return res
    if union != full or ax2:
        return res
    res["valid"] = 1

    sing, mm, baire = K.classify_tables(masks, n)

    # Region intersections either contain a region or are singular.
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            inter = masks[i] & masks[j]
            if not K.covers(masks, inter) and not sing[inter]:
                bad(
                    "region_intersection_dichotomy",
                    "-",
                    f"A={_fmt_mask(masks[i])} B={_fmt_mask(masks[j])}",
                )

    # Every abundant set is abundant everywhere in some region.
    ftab = K.fundamental_table(masks, n, mm)
    for s in range(1 << n):
        if s & ~mm and ftab[s] == 0:
            bad("fundamental_witness", "-", f"abundant set {_fmt_mask(s)}")

    # Every abundant Baire set has a region meager outside it.
    for s in range(1 << n):
        if s & ~mm and baire[s]:
            if not any(c & ~s & ~mm == 0 for c in masks):
                bad("comeager_region", "-", f"abundant Baire set {_fmt_mask(s)}")

    # Cluster operator, its topology, and the equivalence under the hypothesis.
    ctab = K.cluster_table(masks, n)
    for kind, s, t, v in operator_violations_raw(ctab, n, sing, paranoid):
        bad("operator_axioms", "cluster", _op_violation_detail(kind, s, t, v))
    opens = K.tau_opens(ctab, n)
    hyp, m_eq, b_eq = _operator_checks(res, masks, n, mm, baire, opens, "cluster")
    if hyp:
        res["hypothesis"] = 1
    if m_eq and b_eq:
        res["equivalence"] = 1

    # Minimal regions and their unions.
    minimal = [
        r for r in masks if not any(b != r and b & ~r == 0 for b in masks)
    ]
    if all(any(mr & ~r == 0 for mr in minimal) for r in masks):
        res["minimal"] = 1
    else:
        bad("minimal_region_condition", "-", "some region contains no minimal region")
    open_set = set(opens)
    if len(minimal) <= MINIMAL_UNION_JOB_CAP:
        seen = set()
        for pick in range(1 << len(minimal)):
            u = 0
            p = pick
            i = 0
            while p:
                if p & 1:
                    u |= minimal[i]
                p >>= 1
                i += 1
            if u in seen:
                continue
            seen.add(u)
            if u not in open_set:
                bad("minimal_union_open", "-", f"union {_fmt_mask(u)} not basic-open")
    else:
        res["skipped"] = 1

    # Random admissible operators, re-checked whenever the hypothesis holds.
    if rand_ops:
        rng = random.Random(op_seed)
        csing = tuple(ctab[1 << x] for x in range(n))
        for k in range(rand_ops):
            label = f"random[{k}]"
            vals = _refining_singletons(rng, n, mm, csing)
            tab = additive_closure(n, vals)
            for kind, s, t, v in operator_violations_raw(tab, n, sing, False):
                bad("operator_axioms", label, _op_violation_detail(kind, s, t, v))
            ropens = K.tau_opens(tab, n)
            res["ops_checked"] += 1
            rhyp, _, _ = _operator_checks(
                res, masks, n, mm, baire, ropens, label
            )
            if rhyp:
                res["ops_hyp"] += 1
    return res


def _operator_checks(res, masks, n, mm, baire, opens, label):
    """Topology axioms, open-set quality, hypothesis and class comparison
    for one operator's induced topology; appends violations to res."""

    def bad(check: str, detail: str) -> None:
        res["violations"].append((check, label, detail))

    full = (1 << n) - 1
    if opens[0] != 0 or opens[-1] != full:
        bad("topology_axioms", "empty set or universe not open")
    witness = K.topology_closure_witness(opens)
    if witness is not None:
        kind, a, b = witness
        op = "union" if kind == 0 else "intersection"
        bad("topology_axioms", f"{op} of {_fmt_mask(a)},{_fmt_mask(b)} not open")
    hyp = all(any(o and o & ~r == 0 for o in opens) for r in masks)
    fc = K.nwd_singleton_mask(opens, n)
    tb = K.topo_baire_table(opens, n, fc)
    m_eq = fc == mm
    b_eq = tb == baire
    # Non-empty opens must be abundant Baire sets. For the cluster operator
    # and its refinements this is a theorem (no hypothesis needed), so it is
    # enforced for every operator the sweep generates.
    for o in opens:
        if o and (o & ~mm == 0 or not baire[o]):
            bad(
                "opens_abundant_baire",
                f"non-empty open {_fmt_mask(o)} not abundant Baire",
            )
            break
    if hyp and not (m_eq and b_eq):
        detail = _first_mismatch(n, mm, fc, baire, tb)
        bad("equivalence", detail)
    return hyp, m_eq, b_eq


def _first_mismatch(n, mm, fc, baire, tb):
    for s in range(1 << n):
        c_meager = s & ~mm == 0
        t_meager = s & ~fc == 0
        if c_meager != t_meager:
            side = "base" if c_meager else "topology"
            return f"meager classes differ at {_fmt_mask(s)} ({side} only)"
        if (baire[s] == 1) != (tb[s] == 1):
            side = "base" if baire[s] else "topology"
            return f"Baire classes differ at {_fmt_mask(s)} ({side} only)"
    return "classes differ"


def sweep(cfg: SweepConfig, workers: int = 1) -> SweepReport:
    """Run the full theorem battery over every candidate of the config.

    ``workers`` only changes wall time: jobs are seeded and merged by
    candidate index, so the report content is identical for any count.
    """
    if workers < 1:
        raise InputError("workers must be >= 1")
    start = time.perf_counter()
    jobs = [
        (idx, cfg.n, masks, cfg.budget, cfg.random_operators,
         _job_seed(cfg.seed, idx), cfg.paranoid)
        for idx, masks in _candidates(cfg)
    ]
    if workers > 1 and len(jobs) > 1:
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:
            ctx = multiprocessing.get_context()
        # Job costs are wildly uneven (invalid candidates return instantly),
        # so favor fine-grained chunks; IPC stays negligible per job.
        chunk = max(1, min(32, len(jobs) // (workers * 8)))
        with ctx.Pool(processes=workers) as pool:
            results = pool.map(_base_job, jobs, chunksize=chunk)
    else:
        results = [_base_job(j) for j in jobs]

    counts = {
        "candidates": len(jobs),
        "valid_bases": 0,
        "hypothesis_true": 0,
        "equivalence_true": 0,
        "minimal_condition_true": 0,
        "operators_checked": 0,
        "operators_hypothesis_true": 0,
        "capacity_skipped": 0,
    }
    violations: list[SweepViolation] = []
    for res in results:
        counts["valid_bases"] += res["valid"]
        counts["hypothesis_true"] += res["hypothesis"]
        counts["equivalence_true"] += res["equivalence"]
        counts["minimal_condition_true"] += res["minimal"]
        counts["operators_checked"] += res["ops_checked"]
        counts["operators_hypothesis_true"] += res["ops_hyp"]
        counts["capacity_skipped"] += res["skipped"]
        for check, operator, detail in res["violations"]:
            violations.append(
                SweepViolation(
                    index=res["index"],
                    regions=res["masks"],
                    check=check,
                    operator=operator,
                    detail=detail,
                )
            )
    return SweepReport(
        config=cfg,
        counts=SweepCounts(**counts),
        violations=tuple(violations),
        truncated=counts["capacity_skipped"] > 0,
        elapsed_s=time.perf_counter() - start,
        backend=K.BACKEND,
        workers=workers,
    )


def find_nonequivalent_bases(n: int, budget: Optional[int] = None) -> list[CategoryBase]:
    """Hunt for a validated base whose classes match no topology on n points.

    A soundness canary, not a discovery channel: at finite size every
    validated base matches its own basic topology, so a non-empty result
    means a bug in the machinery, and the acceptance suite fails on it.
    """
    if n > EXHAUSTIVE_BASE_CAP:
        raise CapacityError(f"the hunt is exhaustive and capped at n={EXHAUSTIVE_BASE_CAP}")
    tables = []
    for t in enumerate_topologies(n):
        fc = topo_mod.first_category_mask(t)
        tables.append((fc, K.topo_baire_table(t.open_masks(), n, fc)))
    cfg = SweepConfig(n=n, budget=budget if budget is not None else default_budget())
    out = []
    for base in enumerate_bases(cfg):
        cls = classify_all(base)
        if not any(
            cls.meager_mask == fc and cls.baire == tb for fc, tb in tables
        ):
            out.append(base)
    return out
