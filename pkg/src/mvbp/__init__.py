"""Approximation algorithms for multiple-choice vector bin packing and knapsack."""

from .appr import appr_pack, compute_selectors, first_fit, load_duals
from .cover import Column, CoverLpSolution, separate, solve_cover_lp
from .errors import (
    BudgetExceeded,
    EmptySupport,
    InfeasibleItem,
    ItemTooLarge,
    IterationLimit,
    NumericalInstability,
)
from .mmk import enumerate_guesses, solve_mmk
from .model import (
    Bin,
    BinType,
    Incarnation,
    Instance,
    Item,
    KnapsackSelection,
    Packing,
    check_packing,
    packing_cost,
    validate_instance,
)
from .oracle import exact_cover_lp, exact_mmk, exact_mvbp
from .solver import solve_unweighted, solve_weighted, solve_weighted_wrapped

__version__ = "0.1.0"

__all__ = [
    "appr_pack",
    "compute_selectors",
    "first_fit",
    "load_duals",
    "Column",
    "CoverLpSolution",
    "separate",
    "solve_cover_lp",
    "BudgetExceeded",
    "EmptySupport",
    "InfeasibleItem",
    "ItemTooLarge",
    "IterationLimit",
    "NumericalInstability",
    "enumerate_guesses",
    "solve_mmk",
    "Bin",
    "BinType",
    "Incarnation",
    "Instance",
    "Item",
    "KnapsackSelection",
    "Packing",
    "check_packing",
    "packing_cost",
    "validate_instance",
    "exact_cover_lp",
    "exact_mmk",
    "exact_mvbp",
    "solve_unweighted",
    "solve_weighted",
    "solve_weighted_wrapped",
]
