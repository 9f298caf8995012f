"""Maximal consistent subsets and minimal corrections for answer set programs."""

from .correction import Correction, CorrectionSpec, instrument, min_correct
from .errors import AspFixError
from .grounder import ground
from .maxcon import MaxConResult, maxcon
from .parser import parse_atom, parse_atoms, parse_file, parse_program, parse_rule
from .program import Atom, Program, Rule, render
from .solver import Backend, SolverConfig, SolveResult, enumerate_models, is_answer_set, solve

__version__ = "0.1.0"

__all__ = [
    "AspFixError", "Atom", "Backend", "Correction", "CorrectionSpec", "MaxConResult", "Program",
    "Rule", "SolveResult", "SolverConfig", "enumerate_models", "ground", "instrument",
    "is_answer_set", "maxcon", "min_correct", "parse_atom", "parse_atoms", "parse_file",
    "parse_program", "parse_rule", "render", "solve",
]
