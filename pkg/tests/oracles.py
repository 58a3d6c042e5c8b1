"""Independent brute-force oracles for the test suite.

Deliberately naive re-implementations straight from the definitions: meager
and first-category verdicts come from explicit cover searches (not the
singleton-mask reduction the library uses), axiom 2 filters all 2^m
subfamilies (not the pruned disjoint recursion), and topologies are found by
scanning every family of subsets. Slow, but independent of every code path
they check; keep them that way.
"""

from __future__ import annotations

from itertools import combinations, permutations


def covers_direct(regions, s):
    return any(r & ~s == 0 for r in regions)


def singular_direct(regions, s):
    return all(
        any(b & ~a == 0 and b & s == 0 for b in regions) for a in regions
    )


def meager_cover_oracle(regions, n, s):
    """Meager iff s is a union of singular subsets of itself."""
    covered = 0
    for t in range(1 << n):
        if t & ~s == 0 and singular_direct(regions, t):
            covered |= t
    return covered == s


def abundant_direct(regions, n, s):
    return not meager_cover_oracle(regions, n, s)


def abundant_everywhere_direct(regions, n, s, c):
    return all(
        abundant_direct(regions, n, s & d)
        for d in regions
        if d & ~c == 0
    )


def baire_direct(regions, n, s):
    comp = (1 << n) - 1 & ~s
    return all(
        any(
            b & ~a == 0
            and (
                meager_cover_oracle(regions, n, s & b)
                or meager_cover_oracle(regions, n, comp & b)
            )
            for b in regions
        )
        for a in regions
    )


def cluster_points_direct(regions, n, s):
    out = 0
    for x in range(n):
        xbit = 1 << x
        for a in regions:
            if not a & xbit:
                continue
            if all(
                abundant_direct(regions, n, s & b)
                for b in regions
                if b & ~a == 0 and b & xbit
            ):
                out |= xbit
                break
    return out


def fundamental_witness_direct(regions, n, s):
    for c in regions:
        if abundant_everywhere_direct(regions, n, s, c):
            return c
    return None


def axiom1_holds_direct(regions, n):
    union = 0
    for r in regions:
        union |= r
    return union == (1 << n) - 1


def axiom2_violations_direct(regions, n):
    """All (kind, A, frozenset(D)) violations, by scanning every subfamily."""
    m = len(regions)
    out = []
    for size in range(1, m):
        for combo in combinations(range(m), size):
            ds = [regions[i] for i in combo]
            if any(ds[i] & ds[j] for i in range(size) for j in range(i + 1, size)):
                continue
            union = 0
            for d in ds:
                union |= d
            for a in regions:
                inter = a & union
                if covers_direct(regions, inter):
                    if not any(covers_direct(regions, a & d) for d in ds):
                        out.append(("axiom2i", a, frozenset(ds)))
                else:
                    if not any(b & ~a == 0 and b & union == 0 for b in regions):
                        out.append(("axiom2ii", a, frozenset(ds)))
    return out


def base_valid_direct(regions, n):
    return (
        axiom1_holds_direct(regions, n)
        and not axiom2_violations_direct(regions, n)
    )


def interior_direct(opens, s):
    out = 0
    for o in opens:
        if o & ~s == 0:
            out |= o
    return out


def closure_direct(opens, n, s):
    full = (1 << n) - 1
    return full & ~interior_direct(opens, full & ~s)


def nwd_direct(opens, n, s):
    return interior_direct(opens, closure_direct(opens, n, s)) == 0


def first_category_cover_oracle(opens, n, s):
    """First category iff s is a union of nowhere-dense subsets of itself."""
    covered = 0
    for t in range(1 << n):
        if t & ~s == 0 and nwd_direct(opens, n, t):
            covered |= t
    return covered == s


def baire_property_direct(opens, n, s):
    return any(
        first_category_cover_oracle(opens, n, s ^ u) for u in opens
    )


def topology_axioms_direct(n, fam):
    masks = set(fam)
    full = (1 << n) - 1
    if 0 not in masks or full not in masks:
        return False
    return all(
        a | b in masks and a & b in masks for a in masks for b in masks
    )


def all_topologies_direct(n):
    """Every topology on n points by scanning all 2^(2^n) subset families."""
    size = 1 << n
    out = []
    for code in range(1 << size):
        fam = tuple(s for s in range(size) if code >> s & 1)
        if topology_axioms_direct(n, fam):
            out.append(fam)
    return out


def tau_direct(table, n):
    full = (1 << n) - 1
    return tuple(s for s in range(1 << n) if table[full & ~s] & s == 0)


def relabel_mask(n, mask, perm):
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << perm[i]
    return out


def all_relabelings(n, masks):
    return [
        tuple(sorted(relabel_mask(n, m, perm) for m in masks))
        for perm in permutations(range(n))
    ]
