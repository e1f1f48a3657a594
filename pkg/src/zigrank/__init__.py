"""Generalized rank invariants and interval decompositions of 2-parameter persistence modules."""

from .decomp import (
    DecompositionOutput,
    barcode_ensemble,
    dim_all,
    ensemble_rank,
    full_support_sections,
    interval_decompose,
    is_indecomposable,
    is_interval_decomposable,
    is_interval_module,
    test_interval,
    true_interval,
)
from .estimators import GeneralizedPersistenceDiagram, GeneralizedRankTransformer, IntervalDecomposer
from .exceptions import FieldMismatchError, GuardError, ParseError, ValidationError, ZigrankError
from .filtration import Bifiltration, load_bifiltration, parse_bifiltration
from .grank import RankFunction, dgm_all, dgm_via_neighborhood, generalized_rank
from .grid import GridInterval, GridPoint, boundary_cap, nbd, parse_interval
from .io import load_input, load_module, save_module
from .module import ExplicitModule, direct_sum, from_bifiltration, interval_module
from .zigzag import ZigzagModule, barcode, full_bar_multiplicity, zigzag_along_cap

__all__ = [
    "Bifiltration",
    "DecompositionOutput",
    "ExplicitModule",
    "FieldMismatchError",
    "GeneralizedPersistenceDiagram",
    "GeneralizedRankTransformer",
    "GridInterval",
    "GridPoint",
    "GuardError",
    "IntervalDecomposer",
    "ParseError",
    "RankFunction",
    "ValidationError",
    "ZigrankError",
    "ZigzagModule",
    "barcode",
    "barcode_ensemble",
    "boundary_cap",
    "dgm_all",
    "dgm_via_neighborhood",
    "dim_all",
    "direct_sum",
    "ensemble_rank",
    "from_bifiltration",
    "full_bar_multiplicity",
    "full_support_sections",
    "generalized_rank",
    "interval_decompose",
    "interval_module",
    "is_indecomposable",
    "is_interval_decomposable",
    "is_interval_module",
    "load_bifiltration",
    "load_input",
    "load_module",
    "nbd",
    "parse_bifiltration",
    "parse_interval",
    "save_module",
    "test_interval",
    "true_interval",
    "zigzag_along_cap",
]
