"""Reader for the pure surface language.

Fixed operator table (no ``op/3``)::

    :-  1200 xfx     ;  1100 xfy     ,  1000 xfy     =  700 xfx     -  500 yfx

Cut, ``->``, ``\\+``, arithmetic symbols, floats, strings and curly terms are
rejected with a located syntax error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .goals import Clause, Goal, PrologError, SyntaxErrorAt, body_goal
from .terms import NIL, Atom, Compound, Int, Term, Var, fresh_var, make_list
from .terms import INFIX_OPS

SYMBOL_CHARS = set("+-*/\\^<>=~:.?@#&$")
ALLOWED_SYMBOLS = {"=", "-", ":-", "?-"}
PUNCT = set("()[],|")


@dataclass
class Token:
    kind: str  # name | var | int | qatom | sym | punct | end | eof
    text: str
    line: int
    col: int
    layout_before: bool


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    line, line_start = 1, 0
    layout = True

    def err(msg, at=None):
        pos = i if at is None else at
        return SyntaxErrorAt(msg, line, pos - line_start + 1)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            line_start = i + 1
            i += 1
            layout = True
            continue
        if ch.isspace():
            i += 1
            layout = True
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            layout = True
            continue
        if text.startswith("/*", i):
            end = text.find("*/", i + 2)
            if end < 0:
                raise err("unterminated block comment")
            line += text.count("\n", i, end)
            if "\n" in text[i:end]:
                line_start = text.rfind("\n", i, end) + 1
            i = end + 2
            layout = True
            continue
        col = i - line_start + 1
        start = i
        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            if i + 1 < n and text[i] == "." and text[i + 1].isdigit():
                raise err("floating point numbers are not supported", start)
            toks.append(Token("int", text[start:i], line, col, layout))
        elif ch.isalpha() or ch == "_":
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            word = text[start:i]
            kind = "var" if (word[0].isupper() or word[0] == "_") else "name"
            toks.append(Token(kind, word, line, col, layout))
        elif ch == "'":
            i += 1
            buf = []
            while True:
                if i >= n:
                    raise err("unterminated quoted atom", start)
                c = text[i]
                if c == "'":
                    if i + 1 < n and text[i + 1] == "'":
                        buf.append("'")
                        i += 2
                        continue
                    i += 1
                    break
                if c == "\\":
                    esc = text[i + 1] if i + 1 < n else ""
                    if esc == "n":
                        buf.append("\n")
                    elif esc in ("\\", "'"):
                        buf.append(esc)
                    else:
                        raise err(f"unsupported escape \\{esc}", i)
                    i += 2
                    continue
                if c == "\n":
                    raise err("newline in quoted atom", i)
                buf.append(c)
                i += 1
            toks.append(Token("qatom", "".join(buf), line, col, layout))
        elif ch in PUNCT:
            i += 1
            toks.append(Token("punct", ch, line, col, layout))
        elif ch == ";":
            i += 1
            toks.append(Token("sym", ";", line, col, layout))
        elif ch in SYMBOL_CHARS:
            while i < n and text[i] in SYMBOL_CHARS:
                i += 1
            sym = text[start:i]
            if sym == "." and (i >= n or text[i].isspace() or text[i] == "%"):
                toks.append(Token("end", ".", line, col, layout))
            elif sym in ALLOWED_SYMBOLS:
                toks.append(Token("sym", sym, line, col, layout))
            else:
                raise err(f"unsupported symbol {sym!r}", start)
        elif ch == "!":
            raise err("cut is not part of the language")
        elif ch == '"':
            raise err("strings are not supported")
        elif ch in "{}":
            raise err("curly-bracket terms are not supported")
        else:
            raise err(f"unexpected character {ch!r}")
        layout = False
    toks.append(Token("eof", "", line, i - line_start + 1, True))
    return toks


class _Reader:
    def __init__(self, text: str) -> None:
        self.toks = tokenize(text)
        self.pos = 0
        self.varmap: dict[str, Var] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def fail(self, msg: str, expected: tuple = ()) -> SyntaxErrorAt:
        t = self.tok
        return SyntaxErrorAt(msg, t.line, t.col, expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise self.fail(f"unexpected {found}", (want,))
        self.pos += 1
        return t

    def at_end(self) -> bool:
        return self.tok.kind == "eof"

    def new_clause(self) -> None:
        self.varmap = {}

    def variable(self, name: str) -> Var:
        if name == "_":
            return fresh_var("_")
        v = self.varmap.get(name)
        if v is None:
            v = self.varmap[name] = fresh_var(name)
        return v

    # -- expressions -----------------------------------------------------------

    def _infix(self, t: Token):
        if t.kind == "sym" or t.kind == "name":
            op = t.text
        elif t.kind == "punct" and t.text == ",":
            op = ","
        else:
            return None
        return (op, *INFIX_OPS[op]) if op in INFIX_OPS else None

    def parse(self, max_prec: int) -> Term:
        left, left_prec = self.primary(max_prec)
        while True:
            info = self._infix(self.tok)
            if info is None:
                break
            op, prec, kind = info
            if prec > max_prec:
                break
            lmax = prec if kind == "yfx" else prec - 1
            if left_prec > lmax:
                break
            self.pos += 1
            right = self.parse(prec if kind == "xfy" else prec - 1)
            left, left_prec = Compound(op, (left, right)), prec
        return left

    def primary(self, max_prec: int) -> tuple[Term, int]:
        t = self.tok
        if t.kind == "int":
            self.pos += 1
            return Int(int(t.text)), 0
        if t.kind == "var":
            self.pos += 1
            return self.variable(t.text), 0
        if t.kind == "sym" and t.text == "-" and self.peek().kind == "int" and not self.peek().layout_before:
            self.pos += 2
            return Int(-int(self.toks[self.pos - 1].text)), 0
        if t.kind in ("name", "qatom", "sym"):
            self.pos += 1
            name = t.text
            nxt = self.tok
            if nxt.kind == "punct" and nxt.text == "(" and not nxt.layout_before:
                self.pos += 1
                args = [self.parse(999)]
                while self.tok.kind == "punct" and self.tok.text == ",":
                    self.pos += 1
                    args.append(self.parse(999))
                self.expect("punct", ")")
                return Compound(name, tuple(args)), 0
            prec = 0
            if t.kind != "qatom" and name in INFIX_OPS:
                prec = INFIX_OPS[name][0]
                if prec > max_prec:
                    raise SyntaxErrorAt(f"operator {name!r} as an operand needs parentheses", t.line, t.col)
            return Atom(name), prec
        if t.kind == "punct" and t.text == "(":
            self.pos += 1
            inner = self.parse(1200)
            self.expect("punct", ")")
            return inner, 0
        if t.kind == "punct" and t.text == "[":
            self.pos += 1
            if self.tok.kind == "punct" and self.tok.text == "]":
                self.pos += 1
                return NIL, 0
            items = [self.parse(999)]
            while self.tok.kind == "punct" and self.tok.text == ",":
                self.pos += 1
                items.append(self.parse(999))
            tail = NIL
            if self.tok.kind == "punct" and self.tok.text == "|":
                self.pos += 1
                tail = self.parse(999)
            self.expect("punct", "]")
            return make_list(items, tail), 0
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise self.fail(f"unexpected {found}", ("term",))


def _compile_body(t: Term, reader: _Reader, tok: Token) -> Goal:
    try:
        return body_goal(t)
    except PrologError as e:
        raise SyntaxErrorAt(
            f"not a callable goal or closure ({e.formal}); if_/3 needs a condition missing one argument",
            tok.line,
            tok.col,
        ) from None


def parse_term(text: str) -> Term:
    """Read one term; a trailing ``.`` is optional."""
    term, _ = parse_term_with_names(text)
    return term


def parse_term_with_names(text: str) -> tuple[Term, dict[str, Var]]:
    r = _Reader(text)
    term = r.parse(1200)
    if r.tok.kind == "end":
        r.pos += 1
    if not r.at_end():
        raise r.fail(f"unexpected {r.tok.text!r}", ("end of clause",))
    return term, dict(r.varmap)


def parse_program(text: str) -> list[Clause]:
    r = _Reader(text)
    clauses = []
    while not r.at_end():
        r.new_clause()
        start = r.tok
        term = r.parse(1200)
        r.expect("end")
        if type(term) is Compound and term.functor == ":-" and len(term.args) == 2:
            head, body = term.args
            goal = _compile_body(body, r, start)
        else:
            head, goal = term, body_goal(Atom("true"))
        if type(head) not in (Atom, Compound):
            raise SyntaxErrorAt("clause head must be an atom or compound term", start.line, start.col)
        clauses.append(Clause(head, goal, dict(r.varmap)))
    return clauses


def parse_query(text: str) -> tuple[Goal, dict[str, Var]]:
    """Read ``[?-] Goal.`` and return the goal and its named variables."""
    r = _Reader(text)
    if r.tok.kind == "sym" and r.tok.text == "?-":
        r.pos += 1
    start = r.tok
    term = r.parse(1200)
    r.expect("end")
    if not r.at_end():
        raise r.fail(f"unexpected {r.tok.text!r} after the query", ("end of input",))
    return _compile_body(term, r, start), dict(r.varmap)
