"""Finite groups as validated Cayley tables over element indices 0..n-1.

The identity element is always index 0 (inputs with the identity elsewhere
are relabeled at construction).  Construction validates the full set of
group axioms, including an exhaustive associativity scan, so everything
downstream can trust the table blindly.

Built-in catalog mini-language: ``C{n}`` (cyclic), ``D{n}`` (dihedral of
order 2n), ``S{n}`` / ``A{n}`` for n <= 5 (elements are permutations in
lexicographic one-line-notation order, even ones only for A), ``Q8``, and
direct products joined with ``x`` (e.g. ``C2xC2xC3``).
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import BadShape, NotAGroup, TooLarge, UnknownSpec
from .subsets import SubsetMask

DEFAULT_MAX_ORDER = 120


class GroupTable:
    """Immutable finite group: order, n-by-n multiplication table, inverses.

    ``table[a][b]`` is the index of a*b.  ``rows`` exposes the table as
    nested tuples for fast scalar indexing from pure Python.
    """

    __slots__ = ("order", "name", "table", "inverse", "rows", "inverse_list")

    def __init__(self, order: int, table: np.ndarray, inverse: np.ndarray, name: str):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "name", name)
        table = np.ascontiguousarray(table, dtype=np.intc)
        inverse = np.ascontiguousarray(inverse, dtype=np.intc)
        table.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in r) for r in table))
        object.__setattr__(self, "inverse_list", tuple(int(v) for v in inverse))

    def __setattr__(self, *_):
        raise AttributeError("GroupTable is immutable")

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_list[a]

    @property
    def all_elements(self) -> SubsetMask:
        return SubsetMask.from_bits((1 << self.order) - 1)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its membership mask and its order."""

    members: SubsetMask
    order: int

    def __post_init__(self):
        if self.order != self.members.card:
            raise ValueError("subgroup order must equal member count")
        if 0 not in self.members:
            raise ValueError("subgroup must contain the identity")


def multiply(G: GroupTable, a: int, b: int) -> int:
    """Table lookup for a*b."""
    return G.rows[a][b]


def element_order(G: GroupTable, a: int) -> int:
    """Least m >= 1 with a^m equal to the identity."""
    x = a
    m = 1
    while x != 0:
        x = G.rows[x][a]
        m += 1
    return m


# ---------------------------------------------------------------------------
# construction and validation


def from_cayley_table(order: int, rows, name: str = "group") -> GroupTable:
    """Validate a multiplication table and return the group it defines.

    The identity may sit at any index in the input; it is relabeled to 0.
    Raises BadShape for malformed input and NotAGroup (naming a witness
    element or triple) for axiom violations.
    """
    try:
        arr = np.array(rows, dtype=np.intc)
    except (ValueError, TypeError) as exc:
        raise BadShape(f"table is not a rectangular integer matrix: {exc}") from None
    if arr.ndim != 2 or arr.shape != (order, order):
        raise BadShape(f"expected a {order}x{order} table, got shape {arr.shape}")
    if order < 1:
        raise BadShape("order must be positive")
    if arr.min() < 0 or arr.max() >= order:
        raise BadShape(f"entries must lie in 0..{order - 1}")

    idx = np.arange(order)

    # Latin square: every row and every column is a permutation.
    if not (np.sort(arr, axis=1) == idx).all():
        bad = int(np.nonzero((np.sort(arr, axis=1) != idx).any(axis=1))[0][0])
        raise NotAGroup(f"row {bad} is not a permutation of 0..{order - 1}")
    if not (np.sort(arr, axis=0) == idx[:, None]).all():
        bad = int(np.nonzero((np.sort(arr, axis=0) != idx[:, None]).any(axis=0))[0][0])
        raise NotAGroup(f"column {bad} is not a permutation of 0..{order - 1}")

    # Locate the two-sided identity and relabel it to index 0.
    ident = [e for e in range(order) if (arr[e] == idx).all() and (arr[:, e] == idx).all()]
    if not ident:
        raise NotAGroup("no two-sided identity element")
    e = ident[0]
    if e != 0:
        p = idx.copy()
        p[0], p[e] = e, 0
        arr = p[arr[np.ix_(p, p)]]

    # Two-sided inverses.
    inverse = np.empty(order, dtype=np.intc)
    for a in range(order):
        b = int(np.nonzero(arr[a] == 0)[0][0])
        if arr[b, a] != 0:
            raise NotAGroup(f"element {a} has no two-sided inverse")
        inverse[a] = b

    # Exhaustive associativity scan, one defining row at a time:
    # (a*b)*c must equal a*(b*c) for all b, c.
    for a in range(order):
        left = arr[arr[a]]  # left[b, c] = (a*b)*c
        right = arr[a][arr]  # right[b, c] = a*(b*c)
        if not (left == right).all():
            b, c = (int(v) for v in np.argwhere(left != right)[0])
            raise NotAGroup(
                f"associativity fails at ({a}, {b}, {c}): "
                f"({a}*{b})*{c} = {int(left[b, c])} but {a}*({b}*{c}) = {int(right[b, c])}"
            )

    return GroupTable(order, arr, inverse, name)


def load_cayley_table(path: str) -> GroupTable:
    """Load a group from the text format: first line n, then n rows of n ints."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise BadShape(f"{path}: empty file")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise BadShape(f"{path}: {exc}") from None
    n = values[0]
    if n < 1 or len(values) != 1 + n * n:
        raise BadShape(f"{path}: expected {n}*{n} entries after the order line")
    rows = [values[1 + i * n : 1 + (i + 1) * n] for i in range(n)]
    return from_cayley_table(n, rows, name=f"file:{path}")


# ---------------------------------------------------------------------------
# catalog constructors


def _cyclic_rows(n: int):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def _dihedral_rows(n: int):
    # Order 2n: indices 0..n-1 are rotations r^i, n..2n-1 are reflections s*r^i.
    # r^i * r^j = r^(i+j); r^i * s r^j = s r^(j-i);
    # s r^i * r^j = s r^(i+j); s r^i * s r^j = r^(j-i).
    m = 2 * n
    rows = [[0] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = (i + j) % n
            rows[i][n + j] = n + (j - i) % n
            rows[n + i][j] = n + (i + j) % n
            rows[n + i][n + j] = (j - i) % n
    return rows


def _perm_parity(p) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


def permutation_elements(n: int, even_only: bool) -> list[tuple[int, ...]]:
    """Elements of S_n (or A_n) in lexicographic one-line-notation order.

    This fixed enumeration is the element numbering of the S{n}/A{n}
    catalog groups, so certificates are reproducible.
    """
    perms = itertools.permutations(range(n))
    if even_only:
        return [p for p in perms if _perm_parity(p) == 0]
    return list(perms)


def _perm_rows(perms):
    index = {p: i for i, p in enumerate(perms)}
    # sigma*tau acts as the composite x -> sigma(tau(x)).
    return [[index[tuple(p[q[x]] for x in range(len(q)))] for q in perms] for p in perms]


def _quaternion_rows():
    # Units 1, i, j, k with signs; index = 2*axis + (1 if negative).
    units = {
        ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
        ("i", "e"): (1, "i"), ("i", "i"): (-1, "e"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "e"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "e"), ("j", "k"): (1, "i"),
        ("k", "e"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "e"),
    }
    axes = ["e", "i", "j", "k"]
    elems = [(s, a) for a in axes for s in (1, -1)]
    index = {x: i for i, x in enumerate(elems)}
    rows = []
    for s1, a1 in elems:
        row = []
        for s2, a2 in elems:
            s, a = units[(a1, a2)]
            row.append(index[(s1 * s2 * s, a)])
        rows.append(row)
    return rows


_SPEC_TOKEN = re.compile(r"^(C|D|S|A)(\d+)$|^Q8$")


def _atom_rows(token: str, offset: int):
    m = _SPEC_TOKEN.match(token)
    if m is None:
        raise UnknownSpec(f"unrecognized group spec {token!r} at position {offset}")
    if token == "Q8":
        return _quaternion_rows()
    kind, num = m.group(1), int(m.group(2))
    if kind == "C":
        if num < 1:
            raise UnknownSpec(f"C{num} at position {offset}: order must be >= 1")
        return _cyclic_rows(num)
    if kind == "D":
        if num < 1:
            raise UnknownSpec(f"D{num} at position {offset}: order must be >= 1")
        return _dihedral_rows(num)
    if num < 1 or num > 5:
        raise UnknownSpec(f"{token} at position {offset}: only n <= 5 supported")
    return _perm_rows(permutation_elements(num, even_only=(kind == "A")))


def canonical_spec(spec: str) -> str:
    return "x".join(tok.strip().upper() for tok in spec.strip().split("x"))


@functools.lru_cache(maxsize=None)
def make_catalog_group(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Build a group from the mini-language; element 0 is the identity."""
    text = canonical_spec(spec)
    tokens = text.split("x")
    offset = 0
    parts = []
    for tok in tokens:
        parts.append(_atom_rows(tok, offset))
        offset += len(tok) + 1
    order = 1
    for rows in parts:
        order *= len(rows)
        if order > max_order:
            raise TooLarge(f"{text}: order {order}+ exceeds limit {max_order}")
    G = from_cayley_table(len(parts[0]), parts[0], name=tokens[0])
    for tok, rows in zip(tokens[1:], parts[1:]):
        H = from_cayley_table(len(rows), rows, name=tok)
        G = direct_product(G, H, max_order=max_order)
    return GroupTable(G.order, G.table, G.inverse, text)


def resolve_group_spec(spec: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Resolve a mini-language spec or a ``file:<path>`` reference."""
    text = spec.strip()
    if text.startswith("file:"):
        return load_cayley_table(text[len("file:"):])
    return make_catalog_group(text, max_order)


def direct_product(G1: GroupTable, G2: GroupTable, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Componentwise product; element (a, b) sits at index a*|G2| + b."""
    n1, n2 = G1.order, G2.order
    if n1 * n2 > max_order:
        raise TooLarge(f"product order {n1 * n2} exceeds limit {max_order}")
    t1, t2 = G1.table, G2.table
    table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    inverse = (G1.inverse[:, None] * n2 + G2.inverse[None, :]).reshape(n1 * n2)
    return GroupTable(n1 * n2, table, inverse, f"{G1.name}x{G2.name}")


# ---------------------------------------------------------------------------
# subgroup closures


def _close(G: GroupTable, seed: SubsetMask, conjugate: bool) -> SubsetMask:
    rows, inv = G.rows, G.inverse_list
    n = G.order
    mem = bytearray(n)
    queue: list[int] = []

    def add(v: int) -> None:
        if not mem[v]:
            mem[v] = 1
            queue.append(v)

    add(0)
    for s in seed:
        add(s)
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        add(inv[x])
        if conjugate:
            for g in range(n):
                add(rows[rows[g][x]][inv[g]])
        j = 0
        while j < len(queue):
            y = queue[j]
            j += 1
            add(rows[x][y])
            add(rows[y][x])
    return SubsetMask.from_elements(queue)


def _as_subgroup(G: GroupTable, members: SubsetMask) -> Subgroup:
    assert G.order % members.card == 0, "closure violates Lagrange (engine bug)"
    return Subgroup(members=members, order=members.card)


def subgroup_closure(G: GroupTable, seed: SubsetMask) -> Subgroup:
    """Least subgroup containing ``seed`` (worklist closure under * and inverse)."""
    if seed.card == 0:
        raise ValueError("seed must be non-empty")
    return _as_subgroup(G, _close(G, seed, conjugate=False))


def normal_closure(G: GroupTable, seed: SubsetMask) -> Subgroup:
    """Least normal subgroup containing ``seed`` (also closed under conjugation)."""
    if seed.card == 0:
        raise ValueError("seed must be non-empty")
    return _as_subgroup(G, _close(G, seed, conjugate=True))


def conjugate_closure_by_subgroup(G: GroupTable, H: Subgroup, K: Subgroup) -> Subgroup:
    """Least subgroup containing k*h*k^-1 for all h in H, k in K.

    Contains H itself (take k = identity).  With K the whole group this is
    the normal closure of H.
    """
    rows, inv = G.rows, G.inverse_list
    bits = 0
    for k in K.members:
        row_k = rows[k]
        ik = inv[k]
        for h in H.members:
            bits |= 1 << rows[row_k[h]][ik]
    return _as_subgroup(G, _close(G, SubsetMask.from_bits(bits), conjugate=False))


def coset_transversal(G: GroupTable, H: Subgroup) -> SubsetMask:
    """Greedy representatives t, one per coset H*t, so that H * T = G bijectively."""
    covered = 0
    reps = []
    rows = G.rows
    for g in range(G.order):
        if not (covered >> g) & 1:
            reps.append(g)
            for h in H.members:
                covered |= 1 << rows[h][g]
    return SubsetMask.from_elements(reps)
