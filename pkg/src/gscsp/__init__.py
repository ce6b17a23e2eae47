"""Binary constraint networks over generalized staircase constraints.

Classification, closure algebra, ACiDS arc consistency and the DSCSP Solver,
with brute-force and AC-3 oracles for cross-checking.
"""

from .acids import AcResult, AcidsEngine, extract_bound_solutions, run_acids
from .algebra import compose, intersect, transpose
from .backend import compiled_available
from .classify import ClassReport, classify, classify_dense, crc, is_ds, is_gs, is_us
from .core import (
    CspInstance,
    Domain,
    RowConvexConstraint,
    SupportInterval,
    difference_constraint,
    from_dense,
    image,
    to_dense,
)
from .errors import GscspError
from .fileformat import dump, load, parse, serialize
from .solver import SolveResult, solve_dscsp

__version__ = "0.1.0"

__all__ = [
    "AcResult",
    "AcidsEngine",
    "ClassReport",
    "CspInstance",
    "Domain",
    "GscspError",
    "RowConvexConstraint",
    "SolveResult",
    "SupportInterval",
    "classify",
    "classify_dense",
    "compiled_available",
    "compose",
    "crc",
    "difference_constraint",
    "extract_bound_solutions",
    "from_dense",
    "image",
    "intersect",
    "is_ds",
    "is_gs",
    "is_us",
    "dump",
    "load",
    "parse",
    "run_acids",
    "serialize",
    "solve_dscsp",
    "to_dense",
    "transpose",
]
