# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; the hot twin of ``_pykernel``.

Both kernels implement the identical algorithm (same enumeration order,
same prune placement, same counters); the test suite asserts bit-for-bit
equal results.  See ``_pykernel`` for the algorithm description.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memset

BACKEND_NAME = "compiled"

DEF MAXN = 128

ctypedef unsigned long long u64
ctypedef long long i64


cdef struct Ctx:
    int n
    int k
    const int* tab
    const int* inv
    int* sizes
    int* level        # prefix products, one segment per level
    int* level_off    # k+1 segment offsets
    int* level_cap    # k+1 segment lengths (product of sizes so far)
    int* chosen       # current candidate subsets, one segment per position
    int* chosen_off
    u64* used0        # per-position product masks (elements 0..63)
    u64* used1        # per-position product masks (elements 64..127)
    bint normalize
    bint prune_prefix
    bint prune_div2
    bint collect
    i64 nodes
    i64 collisions
    i64 pruned_prefix
    i64 pruned_div2
    int found
    int oom
    int wit_size      # ints per recorded witness (sum of sizes)
    int* wit_buf
    i64 wit_count
    i64 wit_cap


cdef int closure_order(Ctx* c, const int* seed, int nseed, int conjugate) noexcept nogil:
    cdef unsigned char mem[MAXN]
    cdef int queue[MAXN]
    cdef int cnt, qi, j, x, y, v, g, n
    n = c.n
    memset(mem, 0, n)
    mem[0] = 1
    queue[0] = 0
    cnt = 1
    for j in range(nseed):
        v = seed[j]
        if not mem[v]:
            mem[v] = 1
            queue[cnt] = v
            cnt += 1
    qi = 0
    while qi < cnt:
        x = queue[qi]
        qi += 1
        v = c.inv[x]
        if not mem[v]:
            mem[v] = 1
            queue[cnt] = v
            cnt += 1
        if conjugate:
            for g in range(n):
                v = c.tab[c.tab[g * n + x] * n + c.inv[g]]
                if not mem[v]:
                    mem[v] = 1
                    queue[cnt] = v
                    cnt += 1
        j = 0
        while j < cnt:
            y = queue[j]
            j += 1
            v = c.tab[x * n + y]
            if not mem[v]:
                mem[v] = 1
                queue[cnt] = v
                cnt += 1
            v = c.tab[y * n + x]
            if not mem[v]:
                mem[v] = 1
                queue[cnt] = v
                cnt += 1
    return cnt


cdef int div2_bound(Ctx* c, int pos) noexcept nogil:
    cdef unsigned char qmem[MAXN]
    cdef int qset[MAXN]
    cdef int qcnt, gi, hj, v, n, row
    cdef const int* elems = c.chosen + c.chosen_off[pos]
    cdef int sz = c.sizes[pos]
    n = c.n
    memset(qmem, 0, n)
    qcnt = 0
    for gi in range(sz):
        row = c.inv[elems[gi]] * n
        for hj in range(sz):
            v = c.tab[row + elems[hj]]
            if not qmem[v]:
                qmem[v] = 1
                qset[qcnt] = v
                qcnt += 1
    return closure_order(c, qset, qcnt, pos > 0)


cdef void record_witness(Ctx* c) noexcept nogil:
    cdef int* grown
    cdef int p, s, off
    cdef i64 need
    if c.wit_count == c.wit_cap:
        need = c.wit_cap * 2 if c.wit_cap else 16
        grown = <int*>realloc(c.wit_buf, need * c.wit_size * sizeof(int))
        if grown == NULL:
            c.oom = 1
            return
        c.wit_buf = grown
        c.wit_cap = need
    off = <int>(c.wit_count * c.wit_size)
    for p in range(c.k):
        for s in range(c.sizes[p]):
            c.wit_buf[off] = c.chosen[c.chosen_off[p] + s]
            off += 1
    c.wit_count += 1


cdef int extend(Ctx* c, int pos, int slot, int start) noexcept nogil

cdef int complete(Ctx* c, int pos) noexcept nogil:
    cdef int lnext, bound
    c.nodes += 1
    if pos == c.k - 1:
        record_witness(c)
        c.found = 1
        if c.oom:
            return 1
        return 0 if c.collect else 1
    if c.prune_div2:
        if div2_bound(c, pos) % c.sizes[pos] != 0:
            c.pruned_div2 += 1
            return 0
    if c.prune_prefix:
        lnext = c.level_cap[pos + 1]
        bound = closure_order(c, c.level + c.level_off[pos + 1], lnext, 0)
        if bound % lnext != 0:
            c.pruned_prefix += 1
            return 0
    return extend(c, pos + 1, 0, 0)


cdef int extend(Ctx* c, int pos, int slot, int start) noexcept nogil:
    cdef int size = c.sizes[pos]
    cdef int lp, hi, b, j, v, n
    cdef const int* prefix
    cdef int* nxt
    cdef u64 ch0, ch1, u0, u1
    if slot == size:
        return complete(c, pos)
    if slot == 0:
        c.used0[pos] = 0
        c.used1[pos] = 0
    n = c.n
    lp = c.level_cap[pos]
    prefix = c.level + c.level_off[pos]
    nxt = c.level + c.level_off[pos + 1] + slot * lp
    hi = n - size + slot + 1
    for b in range(start, hi):
        if c.normalize and slot == 0 and b > 0:
            break
        ch0 = 0
        ch1 = 0
        for j in range(lp):
            v = c.tab[prefix[j] * n + b]
            if v < 64:
                ch0 |= (<u64>1) << v
            else:
                ch1 |= (<u64>1) << (v - 64)
            nxt[j] = v
        u0 = c.used0[pos]
        u1 = c.used1[pos]
        if (ch0 & u0) | (ch1 & u1):
            c.collisions += 1
            continue
        c.used0[pos] = u0 | ch0
        c.used1[pos] = u1 | ch1
        c.chosen[c.chosen_off[pos] + slot] = b
        if extend(c, pos, slot + 1, b + 1):
            return 1
        c.used0[pos] = u0
        c.used1[pos] = u1
    return 0


def run_search(const int[:, ::1] table, const int[::1] inverse, sizes,
               bint normalize, bint prune_prefix, bint prune_div2,
               bint collect, first_sets=None):
    cdef int n = table.shape[0]
    cdef int k = len(sizes)
    if n > MAXN:
        raise ValueError(f"group order {n} exceeds kernel limit {MAXN}")
    if k < 1:
        raise ValueError("need at least one factor size")

    cdef Ctx c
    memset(&c, 0, sizeof(Ctx))
    c.n = n
    c.k = k
    c.tab = &table[0, 0]
    c.inv = &inverse[0]
    c.normalize = normalize
    c.prune_prefix = prune_prefix
    c.prune_div2 = prune_div2
    c.collect = collect

    cdef int i, j, total_chosen, total_level, cap, stop
    c.sizes = <int*>malloc(k * sizeof(int))
    c.level_off = <int*>malloc((k + 1) * sizeof(int))
    c.level_cap = <int*>malloc((k + 1) * sizeof(int))
    c.chosen_off = <int*>malloc(k * sizeof(int))
    c.used0 = <u64*>malloc(k * sizeof(u64))
    c.used1 = <u64*>malloc(k * sizeof(u64))
    try:
        total_chosen = 0
        for i in range(k):
            c.sizes[i] = sizes[i]
            if c.sizes[i] < 1 or c.sizes[i] > n:
                raise ValueError(f"factor size {sizes[i]} out of range 1..{n}")
            c.chosen_off[i] = total_chosen
            total_chosen += c.sizes[i]
        cap = 1
        total_level = 0
        for i in range(k + 1):
            c.level_off[i] = total_level
            c.level_cap[i] = cap
            total_level += cap
            if i < k:
                cap *= c.sizes[i]
        c.level = <int*>malloc(total_level * sizeof(int))
        c.chosen = <int*>malloc(total_chosen * sizeof(int))
        c.wit_size = total_chosen
        c.level[0] = 0  # empty prefix product is the identity

        if first_sets is None:
            with nogil:
                extend(&c, 0, 0, 0)
        else:
            for fs in first_sets:
                if len(fs) != c.sizes[0]:
                    raise ValueError("first-factor candidate has wrong size")
                c.used0[0] = 0
                c.used1[0] = 0
                for j in range(c.sizes[0]):
                    v = fs[j]
                    c.chosen[j] = v
                    c.level[c.level_off[1] + j] = v
                    if v < 64:
                        c.used0[0] |= (<u64>1) << v
                    else:
                        c.used1[0] |= (<u64>1) << (v - 64)
                with nogil:
                    stop = complete(&c, 0)
                if stop:
                    break
        if c.oom:
            raise MemoryError("witness buffer allocation failed")

        witnesses = []
        for wi in range(c.wit_count):
            off = wi * c.wit_size
            fac = []
            for i in range(k):
                fac.append(tuple(c.wit_buf[off + c.chosen_off[i] + j]
                                 for j in range(c.sizes[i])))
            witnesses.append(tuple(fac))
        return {
            "found": c.found != 0,
            "witnesses": witnesses,
            "nodes": c.nodes,
            "collisions": c.collisions,
            "pruned_prefix": c.pruned_prefix,
            "pruned_div2": c.pruned_div2,
        }
    finally:
        free(c.sizes)
        free(c.level_off)
        free(c.level_cap)
        free(c.chosen_off)
        free(c.used0)
        free(c.used1)
        free(c.level)
        free(c.chosen)
        free(c.wit_buf)


# ---------------------------------------------------------------------------
# brute-force oracle (kept independent of the search code above)


cdef struct BCtx:
    int n
    int k
    const int* tab
    int* sizes
    int* combo
    int* combo_off
    i64 checked


cdef int tuple_is_factorization(BCtx* c) noexcept nogil:
    cdef int cur[MAXN]
    cdef int nxt[MAXN]
    cdef unsigned char seen[MAXN]
    cdef int* curp = cur
    cdef int* nxtp = nxt
    cdef int* swap
    cdef int clen = 1, nlen, i, j, s, v, row
    curp[0] = 0
    for i in range(c.k):
        memset(seen, 0, c.n)
        nlen = 0
        for j in range(clen):
            row = curp[j] * c.n
            for s in range(c.sizes[i]):
                v = c.tab[row + c.combo[c.combo_off[i] + s]]
                if seen[v]:
                    return 0
                seen[v] = 1
                nxtp[nlen] = v
                nlen += 1
        swap = curp
        curp = nxtp
        nxtp = swap
        clen = nlen
    return clen == c.n


cdef int bf_rec(BCtx* c, int pos) noexcept nogil:
    cdef int size, i, j
    cdef int* combo
    if pos == c.k:
        c.checked += 1
        return tuple_is_factorization(c)
    size = c.sizes[pos]
    if size > c.n:
        return 0
    combo = c.combo + c.combo_off[pos]
    for i in range(size):
        combo[i] = i
    while True:
        if bf_rec(c, pos + 1):
            return 1
        i = size - 1
        while i >= 0 and combo[i] == c.n - size + i:
            i -= 1
        if i < 0:
            return 0
        combo[i] += 1
        for j in range(i + 1, size):
            combo[j] = combo[j - 1] + 1


def brute_force(const int[:, ::1] table, sizes):
    """Plain enumeration over all subset tuples; caller checks the budget."""
    cdef int n = table.shape[0]
    cdef int k = len(sizes)
    cdef int prod = 1
    cdef int i, total
    if n > MAXN:
        raise ValueError(f"group order {n} exceeds kernel limit {MAXN}")
    for i in range(k):
        prod *= sizes[i]
    if prod != n:
        raise ValueError("product of sizes must equal the group order")

    cdef BCtx c
    memset(&c, 0, sizeof(BCtx))
    c.n = n
    c.k = k
    c.tab = &table[0, 0]
    c.sizes = <int*>malloc(k * sizeof(int))
    c.combo_off = <int*>malloc(k * sizeof(int))
    cdef int exists
    try:
        total = 0
        for i in range(k):
            c.sizes[i] = sizes[i]
            c.combo_off[i] = total
            total += c.sizes[i]
        c.combo = <int*>malloc(total * sizeof(int))
        with nogil:
            exists = bf_rec(&c, 0)
        return exists != 0, c.checked
    finally:
        free(c.sizes)
        free(c.combo_off)
        free(c.combo)
