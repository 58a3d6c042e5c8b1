# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels.

Bit-for-bit the same semantics as catbase._kernels.pure; that module is the
readable reference, this one is the fast path. Masks fit in 64 bits (the
library caps ground sets at 24 points).
"""

from libc.stdlib cimport free, malloc

BACKEND = "c"

ctypedef unsigned long long u64


cdef u64* _to_arr(object masks, Py_ssize_t* out_m) except NULL:
    cdef Py_ssize_t m = len(masks)
    cdef u64* arr = <u64*> malloc((m if m > 0 else 1) * sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(m):
        arr[i] = masks[i]
    out_m[0] = m
    return arr


cdef inline bint _covers(u64* regions, Py_ssize_t m, u64 s) noexcept:
    cdef Py_ssize_t i
    for i in range(m):
        if regions[i] & ~s == 0:
            return 1
    return 0


cdef inline bint _is_singular(u64* regions, Py_ssize_t m, u64 s) noexcept:
    cdef Py_ssize_t i, j
    cdef bint ok
    for i in range(m):
        ok = 0
        for j in range(m):
            if regions[j] & ~regions[i] == 0 and regions[j] & s == 0:
                ok = 1
                break
        if not ok:
            return 0
    return 1


cdef inline bint _is_baire(u64* regions, Py_ssize_t m, u64 full, u64 mm, u64 s) noexcept:
    cdef Py_ssize_t i, j
    cdef u64 comp = full & ~s
    cdef bint ok
    for i in range(m):
        ok = 0
        for j in range(m):
            if regions[j] & ~regions[i]:
                continue
            if s & regions[j] & ~mm == 0 or comp & regions[j] & ~mm == 0:
                ok = 1
                break
        if not ok:
            return 0
    return 1


cdef inline u64 _singleton_singular_mask(u64* regions, Py_ssize_t m, int n) noexcept:
    cdef u64 mm = 0
    cdef int x
    for x in range(n):
        if _is_singular(regions, m, (<u64> 1) << x):
            mm |= (<u64> 1) << x
    return mm


cdef inline u64 _cluster_points(u64* regions, Py_ssize_t m, int n, u64 mm, u64 s) noexcept:
    cdef u64 out = 0
    cdef u64 xbit
    cdef Py_ssize_t ia, ib
    cdef int x
    cdef bint good
    for x in range(n):
        xbit = (<u64> 1) << x
        for ia in range(m):
            if not regions[ia] & xbit:
                continue
            good = 1
            for ib in range(m):
                if regions[ib] & ~regions[ia] or not regions[ib] & xbit:
                    continue
                if s & regions[ib] & ~mm == 0:
                    good = 0
                    break
            if good:
                out |= xbit
                break
    return out


cdef inline u64 _interior(u64* opens, Py_ssize_t k, u64 s) noexcept:
    cdef u64 out = 0
    cdef Py_ssize_t i
    for i in range(k):
        if opens[i] & ~s == 0:
            out |= opens[i]
    return out


def covers(regions, s):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    try:
        return bool(_covers(arr, m, <u64> s))
    finally:
        free(arr)


def is_singular(regions, s):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    try:
        return bool(_is_singular(arr, m, <u64> s))
    finally:
        free(arr)


def singleton_singular_mask(regions, n):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    try:
        return int(_singleton_singular_mask(arr, m, <int> n))
    finally:
        free(arr)


def is_baire(regions, n, mm, s):
    cdef Py_ssize_t m
    cdef u64 full = ((<u64> 1) << <int> n) - 1
    cdef u64* arr = _to_arr(regions, &m)
    try:
        return bool(_is_baire(arr, m, full, <u64> mm, <u64> s))
    finally:
        free(arr)


def classify_tables(regions, n):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    cdef int nn = n
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nn
    cdef u64 full = (<u64> size) - 1
    cdef bytearray sing_b = bytearray(size)
    cdef bytearray baire_b = bytearray(size)
    cdef unsigned char[::1] sing = sing_b
    cdef unsigned char[::1] baire = baire_b
    cdef u64 mm
    cdef Py_ssize_t s
    try:
        mm = _singleton_singular_mask(arr, m, nn)
        for s in range(size):
            if _is_singular(arr, m, <u64> s):
                sing[s] = 1
            if _is_baire(arr, m, full, mm, <u64> s):
                baire[s] = 1
    finally:
        free(arr)
    return bytes(sing_b), int(mm), bytes(baire_b)


def cluster_points(regions, n, mm, s):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    try:
        return int(_cluster_points(arr, m, <int> n, <u64> mm, <u64> s))
    finally:
        free(arr)


def cluster_table(regions, n):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    cdef int nn = n
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nn
    cdef u64 mm
    cdef Py_ssize_t s
    cdef list out = []
    try:
        mm = _singleton_singular_mask(arr, m, nn)
        for s in range(size):
            out.append(int(_cluster_points(arr, m, nn, mm, <u64> s)))
    finally:
        free(arr)
    return tuple(out)


def fundamental_table(regions, n, mm):
    cdef Py_ssize_t m, ic, idd
    cdef u64* arr = _to_arr(regions, &m)
    cdef int nn = n
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nn
    cdef u64 cmm = mm
    cdef u64 w
    cdef bint ok
    cdef Py_ssize_t s
    cdef list out = []
    try:
        for s in range(size):
            if (<u64> s) & ~cmm == 0:
                out.append(0)
                continue
            w = 0
            for ic in range(m):
                ok = 1
                for idd in range(m):
                    if arr[idd] & ~arr[ic]:
                        continue
                    if (<u64> s) & arr[idd] & ~cmm == 0:
                        ok = 0
                        break
                if ok:
                    w = arr[ic]
                    break
            out.append(int(w))
    finally:
        free(arr)
    return tuple(out)


cdef int _check_family(u64* regions, Py_ssize_t m, Py_ssize_t* chosen, Py_ssize_t dsize,
                       u64 uni, long long* evals, long long budget, bint collect_all,
                       Py_ssize_t ordinal, list found) except -1:
    # 0 = continue, 1 = stop (first violation and collect_all false), 2 = budget hit
    cdef Py_ssize_t ai, k
    cdef u64 a, inter
    cdef bint ok
    cdef int kind
    for ai in range(m):
        if evals[0] >= budget:
            return 2
        evals[0] += 1
        a = regions[ai]
        inter = a & uni
        if _covers(regions, m, inter):
            kind = 1
            ok = 0
            for k in range(dsize):
                if _covers(regions, m, a & regions[chosen[k]]):
                    ok = 1
                    break
        else:
            kind = 2
            ok = 0
            for k in range(m):
                if regions[k] & ~a == 0 and regions[k] & uni == 0:
                    ok = 1
                    break
        if not ok:
            found.append((int(ai), int(ordinal), kind, int(a),
                          tuple([int(regions[chosen[k]]) for k in range(dsize)])))
            if not collect_all:
                return 1
    return 0


def axiom2_scan(regions, n, budget, collect_all):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(regions, &m)
    cdef int nn = n
    if m <= 1:
        free(arr)
        return [], 0, False
    cdef Py_ssize_t max_size = m - 1
    # A pairwise-disjoint family of non-empty masks has at most n members.
    cdef Py_ssize_t cap = nn + 2
    cdef Py_ssize_t* chosen = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    cdef Py_ssize_t* nxt = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    cdef u64* unions = <u64*> malloc(cap * sizeof(u64))
    if chosen == NULL or nxt == NULL or unions == NULL:
        free(arr)
        if chosen != NULL:
            free(chosen)
        if nxt != NULL:
            free(nxt)
        if unions != NULL:
            free(unions)
        raise MemoryError()
    cdef list found = []
    cdef long long evals = 0
    cdef long long cbudget = budget
    cdef bint ccollect = collect_all
    cdef bint truncated = 0
    cdef Py_ssize_t ordinal = 0
    cdef Py_ssize_t depth = 0
    cdef Py_ssize_t j, pick
    cdef u64 newu
    cdef int rc
    nxt[0] = 0
    unions[0] = 0
    try:
        while depth >= 0:
            pick = -1
            j = nxt[depth]
            while j < m:
                if arr[j] & unions[depth] == 0:
                    pick = j
                    break
                j += 1
            if pick < 0:
                depth -= 1
                continue
            nxt[depth] = pick + 1
            chosen[depth] = pick
            newu = unions[depth] | arr[pick]
            rc = _check_family(arr, m, chosen, depth + 1, newu,
                               &evals, cbudget, ccollect, ordinal, found)
            ordinal += 1
            if rc == 2:
                truncated = 1
                break
            if rc == 1:
                break
            if depth + 1 < max_size:
                depth += 1
                unions[depth] = newu
                nxt[depth] = pick + 1
    finally:
        free(arr)
        free(chosen)
        free(nxt)
        free(unions)
    found.sort(key=_violation_key)
    return [(kind, a, d) for (_, _, kind, a, d) in found], int(evals), bool(truncated)


def _violation_key(v):
    return (v[0], v[1])


def topology_closure_witness(opens):
    cdef Py_ssize_t k
    cdef u64* arr = _to_arr(opens, &k)
    cdef set present = set(opens)
    cdef Py_ssize_t i, j
    cdef u64 a, b
    try:
        for i in range(k):
            a = arr[i]
            for j in range(i + 1, k):
                b = arr[j]
                if int(a | b) not in present:
                    return (0, int(a), int(b))
                if int(a & b) not in present:
                    return (1, int(a), int(b))
    finally:
        free(arr)
    return None


def interior_of(opens, s):
    cdef Py_ssize_t k
    cdef u64* arr = _to_arr(opens, &k)
    try:
        return int(_interior(arr, k, <u64> s))
    finally:
        free(arr)


def nwd_singleton_mask(opens, n):
    cdef Py_ssize_t k
    cdef u64* arr = _to_arr(opens, &k)
    cdef int nn = n
    cdef u64 full = ((<u64> 1) << nn) - 1
    cdef u64 mask = 0
    cdef u64 cl
    cdef int x
    try:
        for x in range(nn):
            cl = full & ~_interior(arr, k, full & ~((<u64> 1) << x))
            if _interior(arr, k, cl) == 0:
                mask |= (<u64> 1) << x
    finally:
        free(arr)
    return int(mask)


def topo_baire_table(opens, n, fc_mask):
    cdef Py_ssize_t k
    cdef u64* arr = _to_arr(opens, &k)
    cdef int nn = n
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nn
    cdef u64 fc = fc_mask
    cdef bytearray out_b = bytearray(size)
    cdef unsigned char[::1] out = out_b
    cdef Py_ssize_t s, i
    try:
        for s in range(size):
            for i in range(k):
                if ((<u64> s) ^ arr[i]) & ~fc == 0:
                    out[s] = 1
                    break
    finally:
        free(arr)
    return bytes(out_b)


def tau_opens(table, n):
    cdef Py_ssize_t m
    cdef u64* arr = _to_arr(table, &m)
    cdef int nn = n
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << nn
    cdef u64 full = (<u64> size) - 1
    cdef Py_ssize_t s
    cdef list out = []
    try:
        for s in range(size):
            if arr[full & ~(<u64> s)] & (<u64> s) == 0:
                out.append(s)
    finally:
        free(arr)
    return tuple(out)
