"""A small Essence-like modelling language."""

from .ast import Model
from .evaluate import EvalError, Lazy, eval_expr
from .parser import ModelSyntaxError, parse_expr, parse_model
from .printer import format_domain, format_expr, format_model
from .typecheck import Diagnostic, typecheck

__all__ = [
    "Diagnostic", "EvalError", "Lazy", "Model", "ModelSyntaxError", "eval_expr",
    "format_domain", "format_expr", "format_model", "parse_expr", "parse_model", "typecheck",
]
