"""Markov multi-maps of the interval and their shifts of finite type."""

from .dynamics import (
    certify_class_F,
    check_codes_for_points,
    check_uniformly_expanding,
    find_avoiding_word,
    find_coding_certificate,
    interval_of_word,
)
from .errors import MultimapError
from .graph import check_no_crossing, check_properly_parametrized, graph_primitives, reparametrize
from .model import BranchMap, MarkovMultiMap, Partition, Symbol, normalize_to_unit, validate
from .numbers import IntervalQ, format_rational, parse_rational
from .realization import realize, verify_realization
from .render import RenderOptions, render_svg
from .symbolic import (
    AdjacencyMatrix,
    build_matrix,
    decompose,
    entropy,
    enumerate_words,
    is_irreducible,
    positive_entropy,
)
from .trajectory import check_labeled, label_special, sample_trajectory, step_options

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix", "BranchMap", "IntervalQ", "MarkovMultiMap", "MultimapError", "Partition", "RenderOptions",
    "Symbol", "build_matrix", "certify_class_F", "check_codes_for_points", "check_labeled", "check_no_crossing",
    "check_properly_parametrized", "check_uniformly_expanding", "decompose", "entropy", "enumerate_words",
    "find_avoiding_word", "find_coding_certificate", "format_rational", "graph_primitives", "interval_of_word",
    "is_irreducible", "label_special", "normalize_to_unit", "parse_rational", "positive_entropy", "realize",
    "render_svg", "reparametrize", "sample_trajectory", "step_options", "validate", "verify_realization",
]
