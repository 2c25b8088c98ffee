"""Kempe chains, Kempe backbones and Kempe cliques of graph colorings."""

from .chains import (
    AllEliminated,
    Backbone,
    BackboneFound,
    ColorPair,
    CriticalSet,
    KempeChain,
    critical_vertices,
    eliminate_critical_color,
    find_backbone,
    kempe_chains,
    kempe_swap,
)
from .clique import (
    ImmersionReport,
    KempeClique,
    SearchOutcome,
    find_kempe_clique,
    iter_correct_colorings,
    search_correct_coloring,
    verify_strong_immersion,
)
from .coloring import (
    BudgetExceeded,
    Coloring,
    ColoringError,
    ColoringStream,
    chromatic_number,
    enumerate_proper_colorings,
    is_proper,
    remove_color_class,
)
from .graph import Graph, GraphError, GraphSource, generate, lexicographic_product, load_graph
from .minor import MinorModel, MinorReport, grow_minor_from_clique, verify_minor_model

__version__ = "0.1.0"
