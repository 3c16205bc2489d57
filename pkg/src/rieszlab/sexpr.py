"""
Text format for terms.

    (gen i)  (unit)  (rat p q)
    (+ t t)  (scale (rat p q) t)  (join t t)  (meet t t)

Whitespace between tokens is free; ``format_term`` prints the canonical
single-space form, which ``parse_term`` reads back to an equal tree.
"""

from fractions import Fraction

from .pl import Add, Const, Generator, Join, Meet, Scale, Unit


class TermSyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch.isspace():
            col, i = col + 1, i + 1
        elif ch in "()":
            tokens.append((ch, line, col))
            col, i = col + 1, i + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], line, col))
            col, i = col + j - i, j
    tokens.append((None, line, col))
    return tokens


class _Parser:
    def __init__(self, text, n):
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.tokens[self.i]

    def take(self, expected=None):
        tok = self.tokens[self.i]
        if tok[0] is None:
            raise TermSyntaxError("unexpected end of input", tok[1], tok[2])
        if expected is not None and tok[0] != expected:
            raise TermSyntaxError(f"expected {expected!r}, got {tok[0]!r}", tok[1], tok[2])
        self.i += 1
        return tok

    def integer(self):
        tok = self.take()
        try:
            return int(tok[0])
        except ValueError:
            raise TermSyntaxError(f"expected an integer, got {tok[0]!r}", tok[1], tok[2]) from None

    def rat(self):
        p = self.integer()
        tok = self.peek()
        q = self.integer()
        if q == 0:
            raise TermSyntaxError("zero denominator", tok[1], tok[2])
        self.take(")")
        return Fraction(p, q)

    def term(self):
        self.take("(")
        head = self.take()
        op = head[0]
        if op == "gen":
            tok = self.peek()
            i = self.integer()
            if i < 0 or (self.n is not None and i >= self.n):
                raise TermSyntaxError(f"unknown generator index {i}", tok[1], tok[2])
            self.take(")")
            return Generator(i)
        if op == "unit":
            self.take(")")
            return Unit()
        if op == "rat":
            return Const(self.rat())
        if op == "scale":
            self.take("(")
            self.take("rat")
            q = self.rat()
            t = self.term()
            self.take(")")
            return Scale(q, t)
        if op in ("+", "join", "meet"):
            left = self.term()
            right = self.term()
            self.take(")")
            return {"+": Add, "join": Join, "meet": Meet}[op](left, right)
        raise TermSyntaxError(f"unknown form {op!r}", head[1], head[2])


def parse_term(text, n=None):
    """Parse one term.  ``n`` bounds the generator indices when given."""
    p = _Parser(text, n)
    t = p.term()
    tok = p.peek()
    if tok[0] is not None:
        raise TermSyntaxError(f"trailing input {tok[0]!r}", tok[1], tok[2])
    return t


def _rat(q):
    return f"(rat {q.numerator} {q.denominator})"


def format_term(t):
    if isinstance(t, Generator):
        return f"(gen {t.index})"
    if isinstance(t, Unit):
        return "(unit)"
    if isinstance(t, Const):
        return _rat(t.value)
    if isinstance(t, Scale):
        return f"(scale {_rat(t.coeff)} {format_term(t.term)})"
    if isinstance(t, Add):
        return f"(+ {format_term(t.left)} {format_term(t.right)})"
    if isinstance(t, Join):
        return f"(join {format_term(t.left)} {format_term(t.right)})"
    if isinstance(t, Meet):
        return f"(meet {format_term(t.left)} {format_term(t.right)})"
    raise TypeError(f"not a term: {t!r}")
