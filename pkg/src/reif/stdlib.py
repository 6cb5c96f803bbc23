"""The shipped relation library (``reif_stdlib.pl``)."""

from __future__ import annotations

import functools
from importlib import resources
from pathlib import Path

from .engine import Database
from .goals import Clause
from .parser import parse_program

SOURCE_NAME = "reif_stdlib.pl"


def stdlib_source() -> str:
    return resources.files(__package__).joinpath(SOURCE_NAME).read_text(encoding="utf-8")


@functools.lru_cache(maxsize=None)
def _clauses() -> tuple[Clause, ...]:
    return tuple(parse_program(stdlib_source()))


def load_stdlib(expand: bool = False, extra: list[str | Path] = ()) -> Database:
    """A fresh database holding the library plus ``extra`` program files.

    With ``expand`` every ``if_(A = B, ...)`` is rewritten by ``specialize``
    after loading, as a compile-time goal expansion would.
    """
    db = Database(_clauses())
    for path in extra:
        db.consult(Path(path).read_text(encoding="utf-8"))
    return db.specialized() if expand else db
