"""Pure-Python kernels over raw bitmasks.

This module is the reference semantics for the compiled backend: every
function takes plain ints (subset masks) and tuples of ints (sorted region
or open-set masks) and returns plain Python values. No domain objects, no
I/O, no randomness; results depend only on the arguments.

Conventions used throughout:
  mask a is a subset of mask b        <=>  a & ~b == 0
  s is meager (given meager_mask mm)  <=>  s & ~mm == 0
where ``mm`` is the union of all singular singletons; see catbase.classify
for why that reduction is sound on a finite ground set.
"""

from __future__ import annotations

BACKEND = "pure"


def covers(regions, s):
    """True iff some region is contained in subset mask ``s``."""
    for r in regions:
        if r & ~s == 0:
            return True
    return False


def is_singular(regions, s):
    """True iff every region has a subregion disjoint from ``s``."""
    for a in regions:
        for b in regions:
            if b & ~a == 0 and b & s == 0:
                break
        else:
            return False
    return True


def singleton_singular_mask(regions, n):
    """Mask of points whose singleton set is singular."""
    mm = 0
    for x in range(n):
        if is_singular(regions, 1 << x):
            mm |= 1 << x
    return mm


def is_baire(regions, n, mm, s):
    """True iff every region has a subregion where ``s`` or its complement is meager."""
    comp = (1 << n) - 1 & ~s
    for a in regions:
        for b in regions:
            if b & ~a:
                continue
            if s & b & ~mm == 0 or comp & b & ~mm == 0:
                break
        else:
            return False
    return True


def classify_tables(regions, n):
    """Classify all 2^n subsets at once.

    Returns ``(singular, meager_mask, baire)`` where the two tables are
    bytes of length 2^n holding 0/1 verdicts per subset mask.
    """
    size = 1 << n
    mm = singleton_singular_mask(regions, n)
    singular = bytearray(size)
    baire = bytearray(size)
    for s in range(size):
        if is_singular(regions, s):
            singular[s] = 1
        if is_baire(regions, n, mm, s):
            baire[s] = 1
    return bytes(singular), mm, bytes(baire)


def cluster_points(regions, n, mm, s):
    """Mask of points at which ``s`` is locally abundant.

    x qualifies iff some region A containing x has ``s`` abundant in every
    subregion of A that still contains x.
    """
    out = 0
    for x in range(n):
        xbit = 1 << x
        for a in regions:
            if not a & xbit:
                continue
            for b in regions:
                if b & ~a or not b & xbit:
                    continue
                if s & b & ~mm == 0:
                    break
            else:
                out |= xbit
                break
    return out


def cluster_table(regions, n):
    """The cluster-point operator as a full table over all 2^n subsets."""
    mm = singleton_singular_mask(regions, n)
    return tuple(cluster_points(regions, n, mm, s) for s in range(1 << n))


def fundamental_table(regions, n, mm):
    """Per subset: the first region in which it is abundant everywhere.

    Entries are 0 for meager subsets and for abundant subsets with no
    witness region (the latter cannot happen on a validated base).
    """
    out = []
    for s in range(1 << n):
        if s & ~mm == 0:
            out.append(0)
            continue
        w = 0
        for c in regions:
            for d in regions:
                if d & ~c:
                    continue
                if s & d & ~mm == 0:
                    break
            else:
                w = c
                break
        out.append(w)
    return tuple(out)


def axiom2_scan(regions, n, budget, collect_all):
    """Check the disjoint-family axiom over every (region, family) pair.

    Enumerates every non-empty pairwise-disjoint subfamily D with
    |D| < len(regions) by ordered recursive extension (members are added in
    ascending index order, so families appear in lexicographic order), and
    evaluates both clauses for every region A:

      * if A & union(D) covers a region, some single member D1 must have
        A & D1 cover a region (kind 1 violation otherwise);
      * if it covers none, some region B inside A must be disjoint from
        union(D) (kind 2 violation otherwise).

    ``budget`` caps the number of (A, D) clause evaluations, i.e. roughly
    len(regions) x number-of-families. Returns (violations, evaluations,
    truncated); violations are (kind, a_mask, d_masks) sorted so the first
    entry has the lexicographically least A, then least D. With
    ``collect_all`` false the scan stops at the first violation found.
    """
    m = len(regions)
    if m <= 1:
        return [], 0, False
    max_size = m - 1
    found = []  # (a_index, family_ordinal, kind, a_mask, d_masks)
    evals = 0
    fam_ord = 0
    truncated = False
    stop = False

    def check_family(d_indices, union):
        nonlocal evals, fam_ord, truncated, stop
        ordinal = fam_ord
        fam_ord += 1
        d_masks = tuple(regions[i] for i in d_indices)
        for ai in range(m):
            if evals >= budget:
                truncated = True
                stop = True
                return
            evals += 1
            a = regions[ai]
            inter = a & union
            if covers(regions, inter):
                kind = 1
                ok = any(covers(regions, a & d1) for d1 in d_masks)
            else:
                kind = 2
                ok = any(b & ~a == 0 and b & union == 0 for b in regions)
            if not ok:
                found.append((ai, ordinal, kind, a, d_masks))
                if not collect_all:
                    stop = True
                    return

    def extend(d_indices, union, start):
        for j in range(start, m):
            if stop:
                return
            rj = regions[j]
            if rj & union:
                continue
            d_indices.append(j)
            check_family(d_indices, union | rj)
            if not stop and len(d_indices) < max_size:
                extend(d_indices, union | rj, j + 1)
            d_indices.pop()

    extend([], 0, 0)
    found.sort(key=lambda v: (v[0], v[1]))
    return [(kind, a, d) for (_, _, kind, a, d) in found], evals, truncated


def topology_closure_witness(opens):
    """First pair of opens whose union/intersection is missing, else None.

    ``opens`` must be sorted ascending; presence of the empty set and the
    universe is the caller's concern. Returns (kind, a, b) with kind 0 for a
    missing union and 1 for a missing intersection.
    """
    present = set(opens)
    k = len(opens)
    for i in range(k):
        a = opens[i]
        for j in range(i + 1, k):
            b = opens[j]
            if a | b not in present:
                return (0, a, b)
            if a & b not in present:
                return (1, a, b)
    return None


def interior_of(opens, s):
    """Union of all opens contained in subset mask ``s``."""
    out = 0
    for o in opens:
        if o & ~s == 0:
            out |= o
    return out


def nwd_singleton_mask(opens, n):
    """Mask of points whose singleton is nowhere dense in the topology."""
    full = (1 << n) - 1
    mask = 0
    for x in range(n):
        cl = full & ~interior_of(opens, full & ~(1 << x))
        if interior_of(opens, cl) == 0:
            mask |= 1 << x
    return mask


def topo_baire_table(opens, n, fc_mask):
    """Per subset: 1 iff it differs from some open set by a first-category set."""
    size = 1 << n
    out = bytearray(size)
    for s in range(size):
        for u in opens:
            if (s ^ u) & ~fc_mask == 0:
                out[s] = 1
                break
    return bytes(out)


def tau_opens(table, n):
    """Open masks of the topology induced by an operator table.

    A subset s is open iff the operator value of its complement stays inside
    the complement.
    """
    full = (1 << n) - 1
    return tuple(s for s in range(1 << n) if table[full & ~s] & s == 0)
