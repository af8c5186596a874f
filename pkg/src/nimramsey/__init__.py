"""NIM-edges, the Ramsey variant r*, and small exact Turán numbers.

Graphs are bitmask adjacency tuples; colourings list the colours of the pairs
of ``[n]`` in lexicographic order.  See :mod:`nimramsey.cli` for the command line.
"""

from .colouring import EdgeColouring, TemplateColouring, blow_up, is_feasible
from .errors import BudgetExceeded, ConstructionError, NimError, ParameterError, ParseError
from .graph import Graph, build, edit_distance, parse_graph_list, turan_number
from .hom import copy_through_edge, homomorphism_exists, is_homomorphism_critical, minimal_homomorphic_images
from .nim import (
    NimReport,
    blowup_lower_bound,
    nim_max_exact,
    nim_set,
    overlay_construction,
    peel_min_degree,
    star_packing_colouring,
)
from .ramsey import KnownRamseyTable, RamseyStarResult, gf16_witness, is_nice, r_hom, r_star
from .turan import ExResult, ex_exact, ex_exact_family

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConstructionError",
    "EdgeColouring",
    "ExResult",
    "Graph",
    "KnownRamseyTable",
    "NimError",
    "NimReport",
    "ParameterError",
    "ParseError",
    "RamseyStarResult",
    "TemplateColouring",
    "blow_up",
    "blowup_lower_bound",
    "build",
    "copy_through_edge",
    "edit_distance",
    "ex_exact",
    "ex_exact_family",
    "gf16_witness",
    "homomorphism_exists",
    "is_feasible",
    "is_homomorphism_critical",
    "is_nice",
    "minimal_homomorphic_images",
    "nim_max_exact",
    "nim_set",
    "overlay_construction",
    "parse_graph_list",
    "peel_min_degree",
    "r_hom",
    "r_star",
    "star_packing_colouring",
    "turan_number",
]
