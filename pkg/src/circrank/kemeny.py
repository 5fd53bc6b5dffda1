"""Kemeny consensus by exhaustive search, and its hinge-loss relaxation.

Relax-KEM minimizes ``sum q_ij * max(y_j - y_i + 1, 0)`` over scores
``y`` (higher is better). Its optimum equals the maximum circulation
value, and the optimal potentials of the circulation problem solve it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from circrank import kernels
from circrank.graph import SizeLimitExceeded, VoteGraph
from circrank.mcnf import max_circulation

__all__ = [
    "KemenyResult",
    "RelaxKemResult",
    "kemeny_exact",
    "relax_kem",
    "relax_kem_objective",
    "kemeny_lower_bound_check",
    "order_cost",
]

DEFAULT_MAX_N = 9


@dataclass(frozen=True)
class KemenyResult:
    removed_weight: Fraction
    # label tuples, most preferred first, in lexicographic index order
    best_orders: tuple


@dataclass(frozen=True)
class RelaxKemResult:
    scores: dict
    objective: Fraction


def order_cost(g: VoteGraph, order) -> Fraction:
    """Vote weight pointing backwards in ``order`` (labels, best first)."""
    pos = {lab: k for k, lab in enumerate(order)}
    return sum(
        (q for (i, j), q in g.caps.items() if pos[g.label(i)] > pos[g.label(j)]),
        Fraction(0),
    )


def kemeny_exact(g: VoteGraph, max_n: int = DEFAULT_MAX_N) -> KemenyResult:
    """Minimum backward vote weight over all linear orders, with every argmin."""
    if g.n > max_n:
        raise SizeLimitExceeded(f"kemeny: {g.n} alternatives exceeds the limit of {max_n}")
    lcd = g.lcd()
    W = [[0] * g.n for _ in range(g.n)]
    for (i, j), q in g.caps.items():
        W[i][j] = int(q * lcd)
    best, orders = kernels.kemeny_orders(g.n, W)
    labelled = tuple(tuple(g.label(v) for v in p) for p in orders)
    return KemenyResult(Fraction(best, lcd), labelled)


def relax_kem_objective(g: VoteGraph, y) -> Fraction:
    """Hinge loss ``sum q_ij * max(y_j - y_i + 1, 0)``; ``y`` indexed by node."""
    return sum((q * max(Fraction(y[j]) - Fraction(y[i]) + 1, 0) for (i, j), q in g.caps.items()), Fraction(0))


def relax_kem(g: VoteGraph) -> RelaxKemResult:
    """Relax-KEM scores from the optimal circulation potentials.

    Scores are shifted so the smallest is 0. The objective is checked
    against the maximum circulation value (strong duality).
    """
    circ = max_circulation(g, with_duals=True)
    y = list(circ.potentials)
    low = min(y, default=0)
    y = [Fraction(v - low) for v in y]
    obj = relax_kem_objective(g, y)
    if obj != circ.value:
        raise AssertionError(f"dual objective {obj} differs from circulation value {circ.value}")
    return RelaxKemResult({g.label(v): y[v] for v in range(g.n)}, obj)


def kemeny_lower_bound_check(g: VoteGraph, max_n: int = DEFAULT_MAX_N, budget: int | None = None):
    """``(kemeny_weight, minmax_weight, kemeny_weight <= minmax_weight)``."""
    from circrank.minmax import DEFAULT_BUDGET, minmax_exact

    kem = kemeny_exact(g, max_n=max_n)
    mm = minmax_exact(g, budget=budget or DEFAULT_BUDGET)
    return kem.removed_weight, mm.weight, kem.removed_weight <= mm.weight
