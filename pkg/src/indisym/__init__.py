"""Lex-leader symmetry breaking for unnamed types in a small modelling language."""

from .action import transform, transform_dp
from .engine import SolveResult, enumerate_solutions
from .order import cmp, leq, sort_key
from .perm import DirectProductElem, GeneratorFlag, Mode, Permutation, compose, parse_cycles
from .symbreak import BreakConfig, NO_BREAKING, all_configs, compile_lex_leader

__all__ = [
    "BreakConfig", "DirectProductElem", "GeneratorFlag", "Mode", "NO_BREAKING", "Permutation",
    "SolveResult", "all_configs", "cmp", "compile_lex_leader", "compose", "enumerate_solutions",
    "leq", "parse_cycles", "sort_key", "transform", "transform_dp",
]
