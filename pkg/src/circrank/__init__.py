"""Exact preference aggregation by strong maximum circulation removal."""

from circrank.graph import (
    InputError,
    SizeLimitExceeded,
    VoteGraph,
    from_pairwise,
    from_ranked_ballots,
    is_acyclic,
    is_eulerian,
    read_ballots,
    read_pairwise_csv,
    write_pairwise_csv,
)
from circrank.kemeny import kemeny_exact, kemeny_lower_bound_check, relax_kem
from circrank.mcnf import max_circulation, max_circulation_with_cap, solve_min_cost
from circrank.minmax import demonstrate_conflict, minmax_exact, reduce_fas
from circrank.order import PartialOrder, conflicts, strong_partial_order, transitive_closure
from circrank.strong import algorithm1, check_strong_cs, perturbation

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "SizeLimitExceeded",
    "VoteGraph",
    "from_pairwise",
    "from_ranked_ballots",
    "is_acyclic",
    "is_eulerian",
    "read_ballots",
    "read_pairwise_csv",
    "write_pairwise_csv",
    "kemeny_exact",
    "kemeny_lower_bound_check",
    "relax_kem",
    "max_circulation",
    "max_circulation_with_cap",
    "solve_min_cost",
    "demonstrate_conflict",
    "minmax_exact",
    "reduce_fas",
    "PartialOrder",
    "conflicts",
    "strong_partial_order",
    "transitive_closure",
    "algorithm1",
    "check_strong_cs",
    "perturbation",
]
