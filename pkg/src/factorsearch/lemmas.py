"""Divisibility oracles for factorizations, used two ways:

* as verification predicates that every claimed factorization must pass
  (a failure here means an engine bug, never a math event), and
* as sound pruning rules consumed by the backtracking search.

The underlying facts, for a factorization G = A1 * ... * Ak:

* DIV: in any 2-fold split G = A*B, card(A) divides |<A>| and card(B)
  divides |<B>|.
* DIV2_I / DIV2_II: card(A1) divides |<A1^-1 A1>| (which equals
  |<A1 A1^-1>|); symmetrically card(Ak) divides |<Ak Ak^-1>|.
* DIV2_III: for interior positions, card(Ai) divides the order of the
  normal closure of Ai^-1 Ai.
* DIV3: for interior positions, with K = <A1...A(i-1)>, H = <Ai>,
  K' = <A(i+1)...Ak>, card(Ai) divides the order of the subgroup generated
  by the K-conjugates of H, and likewise for the K'-conjugates.
* PREFIX_DIV: DIV applied to the split (A1...Aj) * (A(j+1)...Ak).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAFactorization, PositionOutOfRange
from .groups import (
    GroupTable,
    conjugate_closure_by_subgroup,
    normal_closure,
    subgroup_closure,
)
from .subsets import (
    ProductMultiset,
    SubsetMask,
    is_factorization,
    product_multiset,
    quotient_set_left,
    quotient_set_right,
    translate_left,
    translate_right,
)

DIV = "DIV"
DIV2_I = "DIV2_I"
DIV2_II = "DIV2_II"
DIV2_III = "DIV2_III"
DIV3 = "DIV3"
PREFIX_DIV = "PREFIX_DIV"

PRUNE_NAMES = (PREFIX_DIV, "DIV2")


@dataclass(frozen=True)
class LemmaReport:
    """Outcome of one divisibility check: does ``divisor`` divide ``bound``?"""

    lemma: str
    position: int
    divisor: int
    bound: int
    holds: bool

    def __post_init__(self):
        if self.holds != (self.bound % self.divisor == 0):
            raise ValueError("holds flag inconsistent with divisor/bound")

    @classmethod
    def make(cls, lemma: str, position: int, divisor: int, bound: int) -> "LemmaReport":
        return cls(lemma, position, divisor, bound, bound % divisor == 0)

    def to_json_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "position": self.position,
            "divisor": self.divisor,
            "bound": self.bound,
            "holds": self.holds,
        }


def check_div(G: GroupTable, A: SubsetMask, position: int = 1) -> LemmaReport:
    """card(A) against |<A>|, for A one side of a 2-fold split."""
    bound = subgroup_closure(G, A).order
    return LemmaReport.make(DIV, position, A.card, bound)


def check_div2(G: GroupTable, factors, i: int) -> LemmaReport:
    """Quotient-set divisibility bound for factor i (1-based).

    First factor: |<A^-1 A>|; last factor: |<A A^-1>|; interior factors:
    the order of the normal closure of A^-1 A.
    """
    factors = list(factors)
    k = len(factors)
    if not 1 <= i <= k:
        raise PositionOutOfRange(f"position {i} outside 1..{k}")
    A = factors[i - 1]
    if i == 1:
        lemma, bound = DIV2_I, subgroup_closure(G, quotient_set_left(G, A)).order
    elif i == k:
        lemma, bound = DIV2_II, subgroup_closure(G, quotient_set_right(G, A)).order
    else:
        lemma, bound = DIV2_III, normal_closure(G, quotient_set_left(G, A)).order
    return LemmaReport.make(lemma, i, A.card, bound)


def check_div3(G: GroupTable, factors, i: int) -> tuple[LemmaReport, LemmaReport]:
    """Conjugate-closure bounds for an interior factor (1 < i < k).

    K is generated by the product set A1...A(i-1), K' by A(i+1)...Ak, and
    H by Ai; the bounds are the orders of the subgroups generated by the
    K- and K'-conjugates of H.
    """
    factors = list(factors)
    k = len(factors)
    if not 1 < i < k:
        raise PositionOutOfRange(f"position {i} is not interior to 1..{k}")
    A = factors[i - 1]
    H = subgroup_closure(G, A)
    K = subgroup_closure(G, product_multiset(G, factors[: i - 1]).support)
    K2 = subgroup_closure(G, product_multiset(G, factors[i:]).support)
    m = conjugate_closure_by_subgroup(G, H, K).order
    m2 = conjugate_closure_by_subgroup(G, H, K2).order
    return (
        LemmaReport.make(DIV3, i, A.card, m),
        LemmaReport.make(DIV3, i, A.card, m2),
    )


def normalize_factorization(G: GroupTable, factors) -> tuple[SubsetMask, ...]:
    """Translate a factorization so every factor contains the identity.

    Uses the unique tuple (a1, ..., ak) with a1*...*ak = e: replacing Ai by
    g(i-1)^-1 * Ai * g(i) with g(i) the inverse of the running product
    a1*...*ai (and g0 = gk = e) keeps the factorization property and puts e
    in every factor.
    """
    factors = list(factors)
    if not is_factorization(G, factors):
        raise NotAFactorization("input is not a factorization")
    k = len(factors)

    # Locate the unique tuple multiplying to the identity.
    def find_tuple(pos: int, acc: int):
        if pos == k:
            return [] if acc == 0 else None
        row = G.rows[acc]
        for a in factors[pos]:
            rest = find_tuple(pos + 1, row[a])
            if rest is not None:
                return [a, *rest]
        return None

    reps = find_tuple(0, 0)
    assert reps is not None, "factorization has no tuple with product e (engine bug)"

    gs = [0]  # g0 = e
    acc = 0
    for a in reps[:-1]:
        acc = G.rows[acc][a]
        gs.append(G.inverse_list[acc])
    gs.append(0)  # gk = e

    out = []
    for i, A in enumerate(factors):
        B = translate_left(G, G.inverse_list[gs[i]], A)
        out.append(translate_right(G, B, gs[i + 1]))
    result = tuple(out)
    assert all(0 in A for A in result), "normalization missed the identity (engine bug)"
    assert is_factorization(G, result), "normalization broke the factorization (engine bug)"
    return result


def prefix_divisibility_prune(
    G: GroupTable, prefix_product: ProductMultiset, remaining_sizes=()
) -> bool:
    """True iff a partial assignment is hopeless by the 2-fold split bound.

    For an injective prefix product P = A1...Aj, any completed factorization
    would make G = P * (rest) a 2-fold factorization, so card(P) must divide
    |<P>|.  ``remaining_sizes`` is accepted for interface symmetry; the rule
    does not depend on it.
    """
    if not prefix_product.injective:
        raise ValueError("prefix product must be injective")
    support = prefix_product.support
    bound = subgroup_closure(G, support).order
    return bound % prefix_product.total != 0
