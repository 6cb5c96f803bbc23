"""A small pure logic-programming engine with ``dif/2``, reified equality and ``if_/3``."""

from .engine import Answer, Database, Engine, SolveStats, run_query
from .goals import PrologError
from .parser import parse_program, parse_query, parse_term
from .stdlib import load_stdlib
from .terms import Atom, Compound, Int, Var, format_term

__all__ = [
    "Answer",
    "Atom",
    "Compound",
    "Database",
    "Engine",
    "Int",
    "PrologError",
    "SolveStats",
    "Var",
    "format_term",
    "load_stdlib",
    "parse_program",
    "parse_query",
    "parse_term",
    "run_query",
]
