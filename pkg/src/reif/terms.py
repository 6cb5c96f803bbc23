"""Logic terms, dereferencing, and the text writer.

Terms are immutable values.  A variable's binding lives outside the term in a
``Bindings`` map (see :mod:`reif.unify`), so the helpers here take any mapping
from variable id to term.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union


@dataclass(frozen=True, slots=True)
class Var:
    id: int
    name: str | None = field(default=None, compare=False, hash=False)

    def __repr__(self) -> str:
        return f"Var({self.name or '_'}#{self.id})"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Int:
    value: int

    def __repr__(self) -> str:
        return f"Int({self.value})"


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("compound terms need at least one argument; use Atom")

    def __repr__(self) -> str:
        return f"Compound({self.functor!r}, {list(self.args)!r})"


Term = Union[Var, Atom, Int, Compound]

NIL = Atom("[]")
TRUE = Atom("true")
FALSE = Atom("false")


# One counter for the whole process: ids stay unique within any engine and
# also across the reader and engines sharing terms.
_VAR_IDS = itertools.count()


def fresh_var(name: str | None = None) -> Var:
    return Var(next(_VAR_IDS), name)


def mk(functor: str, *args: Term) -> Term:
    return Compound(functor, tuple(args)) if args else Atom(functor)


def cons(head: Term, tail: Term) -> Compound:
    return Compound(".", (head, tail))


def make_list(items: Sequence[Term], tail: Term = NIL) -> Term:
    out = tail
    for item in reversed(items):
        out = Compound(".", (item, out))
    return out


def to_term(value) -> Term:
    """Convenience lifting of Python values: str -> Atom, int -> Int, list -> list."""
    if isinstance(value, (Var, Atom, Int, Compound)):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not terms")
    if isinstance(value, int):
        return Int(value)
    if isinstance(value, str):
        return Atom(value)
    if isinstance(value, (list, tuple)):
        return make_list([to_term(v) for v in value])
    raise TypeError(f"cannot lift {value!r} to a term")


def deref(t: Term, binding: Mapping[int, Term]) -> Term:
    while type(t) is Var:
        nxt = binding.get(t.id)
        if nxt is None:
            return t
        t = nxt
    return t


def walk_star(t: Term, binding: Mapping[int, Term]) -> Term:
    t = deref(t, binding)
    if type(t) is Compound:
        args = tuple(walk_star(a, binding) for a in t.args)
        if args != t.args:
            return Compound(t.functor, args)
    return t


def term_identical(t1: Term, t2: Term, binding: Mapping[int, Term]) -> bool:
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = deref(a, binding)
        b = deref(b, binding)
        if a is b:
            continue
        ta = type(a)
        if ta is not type(b):
            return False
        if ta is Compound:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return False
            stack.extend(zip(a.args, b.args))
        elif a != b:
            return False
    return True


def iter_vars(t: Term, binding: Mapping[int, Term] | None = None) -> Iterator[Var]:
    """Unbound variables of ``t`` in depth-first, left-to-right order (with repeats)."""
    binding = binding or {}
    stack = [t]
    while stack:
        x = deref(stack.pop(), binding)
        if type(x) is Var:
            yield x
        elif type(x) is Compound:
            stack.extend(reversed(x.args))


def term_variables(t: Term, binding: Mapping[int, Term] | None = None) -> list[Var]:
    seen: set[int] = set()
    out = []
    for v in iter_vars(t, binding):
        if v.id not in seen:
            seen.add(v.id)
            out.append(v)
    return out


def is_ground(t: Term, binding: Mapping[int, Term] | None = None) -> bool:
    return next(iter_vars(t, binding), None) is None


def list_items(t: Term) -> tuple[list[Term], Term]:
    """Split a (possibly partial) list into its elements and tail."""
    items = []
    while type(t) is Compound and t.functor == "." and len(t.args) == 2:
        items.append(t.args[0])
        t = t.args[1]
    return items, t


# --- writer -----------------------------------------------------------------

# name -> (priority, type); kept in sync with the reader's table
INFIX_OPS = {
    ":-": (1200, "xfx"),
    ";": (1100, "xfy"),
    ",": (1000, "xfy"),
    "=": (700, "xfx"),
    "-": (500, "yfx"),
}

_SOLO_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_SAFE_SYMBOL_ATOMS = {"=", "-", ":-", "?-"}


def atom_text(name: str) -> str:
    if _SOLO_RE.match(name) or name in ("[]", ";") or name in _SAFE_SYMBOL_ATOMS:
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'").replace("\n", "\\n")
    return f"'{escaped}'"


def format_term(
    t: Term,
    binding: Mapping[int, Term] | None = None,
    names: Mapping[int, str] | None = None,
) -> str:
    """Render a term in the reader's syntax.

    Compound arguments are separated by ``", "``, list elements by ``","`` and
    ``-`` pairs print without spaces, e.g. ``f(a, [1,2|T], k-1)``.
    """
    binding = binding or {}
    names = names or {}
    return _fmt(t, binding, names, 1200)


def _fmt(t: Term, binding, names, max_prec: int) -> str:
    t = deref(t, binding)
    if type(t) is Var:
        return names.get(t.id) or f"_G{t.id}"
    if type(t) is Atom:
        text = atom_text(t.name)
        if t.name in INFIX_OPS and max_prec < INFIX_OPS[t.name][0]:
            return f"({text})" if text == t.name else text
        return text
    if type(t) is Int:
        return str(t.value)
    f, args = t.functor, t.args
    if f == "." and len(args) == 2:
        items, tail = list_items(t)
        parts = [_fmt(x, binding, names, 999) for x in items]
        tail = deref(tail, binding)
        # the list walk above stops at bound variables; continue through them
        while type(tail) is Compound and tail.functor == "." and len(tail.args) == 2:
            more, tail = list_items(tail)
            parts.extend(_fmt(x, binding, names, 999) for x in more)
            tail = deref(tail, binding)
        body = ",".join(parts)
        if tail == NIL:
            return f"[{body}]"
        return f"[{body}|{_fmt(tail, binding, names, 999)}]"
    if len(args) == 2 and f in INFIX_OPS:
        prec, kind = INFIX_OPS[f]
        lp = prec if kind == "yfx" else prec - 1
        rp = prec if kind == "xfy" else prec - 1
        left = _fmt(args[0], binding, names, lp)
        right = _fmt(args[1], binding, names, rp)
        if f == "-":
            if right.startswith("-"):
                right = " " + right
            text = f"{left}-{right}"
        elif f == ",":
            text = f"{left}, {right}"
        else:
            text = f"{left} {atom_text(f)} {right}"
        return f"({text})" if prec > max_prec else text
    inner = ", ".join(_fmt(a, binding, names, 999) for a in args)
    return f"{atom_text(f)}({inner})"
