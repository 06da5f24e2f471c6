"""Pure-Python search kernels (fallback when the compiled extension is absent).

Contract shared with ``_kernel`` (the Cython twin):

``run_search(rows, inverse, sizes, normalize, prune_prefix, prune_div2,
collect, first_sets=None)``
    Depth-first search over factor positions.  At each position, candidate
    subsets of the prescribed size are built element by element in ascending
    order (so complete candidates appear in lexicographic order), keeping
    the running product of the chosen prefix injective at all times.  Subset
    masks are Python ints; the product-so-far is a bitmask because every
    partial product is kept duplicate-free.  Returns a stats dict; the two
    kernels must agree on every counter, not just on the answer.

``brute_force(rows, sizes)``
    Plain enumeration of all subset tuples (no normalization, no pruning,
    no incremental state): every complete tuple is checked from scratch.
    Kept deliberately independent of ``run_search`` so it can serve as an
    oracle for it.
"""

from __future__ import annotations

from itertools import combinations

BACKEND_NAME = "pure"


def run_search(rows, inverse, sizes, normalize, prune_prefix, prune_div2,
               collect, first_sets=None):
    n = len(rows)
    k = len(sizes)
    nodes = 0
    collisions = 0
    pruned_prefix = 0
    pruned_div2 = 0
    witnesses = []

    # level[p] holds the injective product set A1*...*Ap as an element list.
    level = [None] * (k + 1)
    level[0] = [0]
    used = [0] * k
    chosen = [[] for _ in range(k)]

    def closure_order(seed, conjugate):
        mem = bytearray(n)
        queue = []
        mem[0] = 1
        queue.append(0)
        for s in seed:
            if not mem[s]:
                mem[s] = 1
                queue.append(s)
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            v = inverse[x]
            if not mem[v]:
                mem[v] = 1
                queue.append(v)
            if conjugate:
                for g in range(n):
                    v = rows[rows[g][x]][inverse[g]]
                    if not mem[v]:
                        mem[v] = 1
                        queue.append(v)
            j = 0
            while j < len(queue):
                y = queue[j]
                j += 1
                v = rows[x][y]
                if not mem[v]:
                    mem[v] = 1
                    queue.append(v)
                v = rows[y][x]
                if not mem[v]:
                    mem[v] = 1
                    queue.append(v)
        return len(queue)

    def div2_bound(elems, pos):
        # Left quotient set A^-1 A; its normal closure at interior positions.
        qbits = 0
        qset = []
        for g in elems:
            row = rows[inverse[g]]
            for h in elems:
                v = row[h]
                if not (qbits >> v) & 1:
                    qbits |= 1 << v
                    qset.append(v)
        return closure_order(qset, conjugate=(pos > 0))

    def complete(pos):
        # A full candidate subset is in place at `pos`.
        nonlocal nodes, pruned_prefix, pruned_div2
        nodes += 1
        if pos == k - 1:
            witnesses.append(tuple(tuple(chosen[p]) for p in range(k)))
            return not collect
        if prune_div2:
            if div2_bound(chosen[pos], pos) % sizes[pos] != 0:
                pruned_div2 += 1
                return False
        if prune_prefix:
            pc = len(level[pos + 1])
            if closure_order(level[pos + 1], False) % pc != 0:
                pruned_prefix += 1
                return False
        return extend(pos + 1, 0, 0)

    def extend(pos, slot, start):
        nonlocal collisions
        size = sizes[pos]
        if slot == size:
            return complete(pos)
        if slot == 0:
            used[pos] = 0
            level[pos + 1] = []
        prefix = level[pos]
        nxt = level[pos + 1]
        hi = n - size + slot + 1
        for b in range(start, hi):
            if normalize and slot == 0 and b > 0:
                break
            chunk = 0
            for p in prefix:
                chunk |= 1 << rows[p][b]
            u = used[pos]
            if chunk & u:
                collisions += 1
                continue
            used[pos] = u | chunk
            chosen[pos].append(b)
            base = len(nxt)
            for p in prefix:
                nxt.append(rows[p][b])
            if extend(pos, slot + 1, b + 1):
                return True
            del nxt[base:]
            chosen[pos].pop()
            used[pos] = u
        return False

    if first_sets is None:
        extend(0, 0, 0)
    else:
        for fs in first_sets:
            chosen[0] = list(fs)
            level[1] = list(fs)  # products e*b; distinct by construction
            used[0] = 0
            for b in fs:
                used[0] |= 1 << b
            if complete(0):
                break
            chosen[0] = []

    return {
        "found": bool(witnesses),
        "witnesses": witnesses,
        "nodes": nodes,
        "collisions": collisions,
        "pruned_prefix": pruned_prefix,
        "pruned_div2": pruned_div2,
    }


def brute_force(rows, sizes):
    """Exhaustive oracle: try every tuple of subsets of the given sizes."""
    n = len(rows)
    k = len(sizes)
    checked = 0

    def tuple_is_factorization(sets):
        prod = (0,)
        for A in sets:
            seen = 0
            nxt = []
            for p in prod:
                row = rows[p]
                for a in A:
                    v = row[a]
                    bit = 1 << v
                    if seen & bit:
                        return False
                    seen |= bit
                    nxt.append(v)
            prod = nxt
        return len(prod) == n

    def rec(pos, sets):
        nonlocal checked
        if pos == k:
            checked += 1
            return tuple_is_factorization(sets)
        for c in combinations(range(n), sizes[pos]):
            if rec(pos + 1, sets + (c,)):
                return True
        return False

    exists = rec(0, ())
    return exists, checked
