"""Exact Chevalley group arithmetic, opposition and domesticity checks, kangaroo
predicates on small polar spaces, composition algebras and thin E6/E7 models."""

from .errors import BudgetError, ChevkitError, FieldError, GroupError, ParseError, RootError
from .exactfield import GF, QQ, GFq, RationalFunctions, field_from_spec, parse_scalar
from .rootsys import build_root_system
from .weyl import longest, weyl_from_word
from .chevalley import Chevalley, parse_element

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "ChevkitError", "FieldError", "GroupError", "ParseError", "RootError",
    "GF", "QQ", "GFq", "RationalFunctions", "field_from_spec", "parse_scalar",
    "build_root_system", "longest", "weyl_from_word", "Chevalley", "parse_element",
]
