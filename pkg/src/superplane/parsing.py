"""Expression text format: tokenizer, parser, canonical renderer.

Grammar (whitespace-insensitive):

    expr   := term (("+" | "-") term)*
    term   := ("-" | "+")* power (("*" | "/") power | power)*
    power  := atom ("^" integer)?
    atom   := integer | identifier | "(" expr ")" | "inv" "(" identifier ")"

Juxtaposition multiplies.  The identifiers i, p and q are reserved scalar
atoms; every other identifier must name a generator of the presentation the
text is parsed against.  Division is only defined by scalar values.
"""

from __future__ import annotations

import hashlib
import re

from superplane.algebra import (
    Expression,
    GenClass,
    GeneratorDecl,
    Presentation,
    RewriteRule,
    RuleError,
)
from superplane.scalars import DivisionByZero, Scalar


class ExprSyntaxError(ValueError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownGenerator(ExprSyntaxError):
    """An identifier does not name a generator of the presentation."""

    def __init__(self, gid: str, pos: int):
        super().__init__(f"unknown generator {gid!r}", pos)
        self.gid = gid


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*/^()]))")

_RESERVED = {"i": Scalar.i, "p": Scalar.p, "q": Scalar.q}


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        else:
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, toks, pres: Presentation):
        self.toks = toks
        self.i = 0
        self.pres = pres

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse_expr(self) -> Expression:
        e = self.parse_term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.parse_term()
                e = e + t if val == "+" else e - t
            else:
                return e

    def parse_term(self) -> Expression:
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                if val == "-":
                    sign = -sign
            else:
                break
        e = self.parse_power()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                e = e * self.parse_power()
            elif kind == "op" and val == "/":
                self.next()
                e = e.scale(Scalar.one() / self._scalar_value(self.parse_power(), pos))
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                e = e * self.parse_power()
            else:
                break
        return e if sign == 1 else -e

    @staticmethod
    def _scalar_value(e: Expression, pos: int) -> Scalar:
        ts = e.terms()
        if not ts:
            raise DivisionByZero("division by zero in expression")
        if len(ts) == 1 and ts[0][0] == ():
            return ts[0][1]
        raise ExprSyntaxError("division is only defined by scalar values", pos)

    def parse_power(self) -> Expression:
        e = self.parse_atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k2, v2, p2 = self.next()
            if k2 != "num":
                raise ExprSyntaxError("exponent must be a nonnegative integer", p2)
            e = e ** int(v2)
        return e

    def parse_atom(self) -> Expression:
        kind, val, pos = self.next()
        if kind == "num":
            return Expression({(): int(val)})
        if kind == "name":
            maker = _RESERVED.get(val)
            if maker is not None:
                return Expression({(): maker()})
            if val == "inv":
                kind2, val2, _ = self.peek()
                if kind2 == "op" and val2 == "(":
                    self.next()
                    k3, v3, p3 = self.next()
                    if k3 != "name":
                        raise ExprSyntaxError("inv() wants a generator name", p3)
                    self.expect_op(")")
                    gid = v3 + "inv"
                    if gid not in self.pres.gens:
                        raise UnknownGenerator(gid, p3)
                    return Expression.from_gen(gid)
            if val not in self.pres.gens:
                raise UnknownGenerator(val, pos)
            return Expression.from_gen(val)
        if kind == "op" and val == "(":
            e = self.parse_expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_expression(text: str, pres: Presentation) -> Expression:
    """Parse text into an Expression over the presentation's generators."""
    parser = _Parser(_tokenize(text), pres)
    e = parser.parse_expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ExprSyntaxError(f"trailing input {val!r}", pos)
    return e


# ------------------------------------------------------------- rendering


def _word_text(word) -> str:
    bits = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        bits.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return "*".join(bits)


def _scalar_factor(c: Scalar) -> str:
    # a factor string that still binds correctly when "*word" is appended
    s = str(c)
    if c.den == 1 and len(c.num.items()) > 1:
        return f"({s})"
    return s


def _term_text(word, c: Scalar) -> str:
    if not word:
        return str(c)
    if c == Scalar.one():
        return _word_text(word)
    if c == -Scalar.one():
        return "-" + _word_text(word)
    return f"{_scalar_factor(c)}*{_word_text(word)}"


def render_expression(expr: Expression) -> str:
    """Deterministic canonical text; parses back to an equal Expression."""
    terms = expr.terms()
    if not terms:
        return "0"
    out = _term_text(*terms[0])
    for word, c in terms[1:]:
        t = _term_text(word, c)
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


# ---------------------------------------------------- presentation files


def render_presentation(pres: Presentation) -> str:
    """Stable one-file description: header, generators, sorted rules."""
    lines = [f"presentation {pres.name} complete={int(pres.require_complete)}"]
    for g in sorted(pres.gens.values(), key=lambda d: d.sort_key):
        lines.append(
            f"gen {g.id} parity={g.parity} class={g.klass.value} "
            f"key={g.sort_key} weight={g.weight}"
        )
    def lhs_key(r):
        return (len(r.lhs), tuple(pres.gens[x].sort_key for x in r.lhs))

    for r in sorted(pres.rules, key=lhs_key):
        lines.append(f"rule {' '.join(r.lhs)} -> {render_expression(r.rhs)}")
    return "\n".join(lines) + "\n"


_GEN_LINE = re.compile(
    r"^gen (?P<id>\S+) parity=(?P<parity>[01]) class=(?P<klass>\S+) "
    r"key=(?P<key>-?\d+) weight=(?P<weight>-?\d+)$"
)


def parse_presentation(text: str) -> Presentation:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or not lines[0].startswith("presentation "):
        raise RuleError("presentation file must start with a presentation line")
    head = lines[0].split()
    if len(head) != 3 or not head[2].startswith("complete="):
        raise RuleError(f"bad presentation header: {lines[0]!r}")
    name = head[1]
    complete = head[2] == "complete=1"
    decls = []
    rule_lines = []
    for line in lines[1:]:
        if line.startswith("gen "):
            m = _GEN_LINE.match(line)
            if m is None:
                raise RuleError(f"bad generator line: {line!r}")
            decls.append(
                GeneratorDecl(
                    m["id"],
                    int(m["parity"]),
                    GenClass(m["klass"]),
                    int(m["key"]),
                    int(m["weight"]),
                )
            )
        elif line.startswith("rule "):
            rule_lines.append(line)
        else:
            raise RuleError(f"unrecognized line: {line!r}")
    scaffold = Presentation(name, decls, [], require_complete=False)
    rules = []
    for line in rule_lines:
        body = line[len("rule "):]
        if "->" not in body:
            raise RuleError(f"rule line lacks an arrow: {line!r}")
        lhs_text, rhs_text = body.split("->", 1)
        lhs = tuple(lhs_text.split())
        rules.append(RewriteRule(lhs, parse_expression(rhs_text, scaffold)))
    return Presentation(name, decls, rules, require_complete=complete)


def fingerprint(pres: Presentation) -> str:
    """sha256 of the rendered presentation file."""
    return hashlib.sha256(render_presentation(pres).encode()).hexdigest()
