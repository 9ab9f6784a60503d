"""Recursive-descent parser for series expressions and descriptor text.

Grammar (exponents always parenthesised to keep lookahead trivial):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := 't' '^' '(' exponent ')'
              | 'inv' '(' expr (';' 'g0' '=' exponent)? ')'
              | 'trunc' '(' expr ',' exponent ')'
              | '(' expr ')'
              | coefficient
    exponent := integer | rational | '(' int (',' int)* ')'   per group

Coefficient literals follow the field: ``2/3`` and ``4`` for Q and F_p,
polynomial fractions like ``(x^2+1)/x`` for F_p(x); for the latter a
parenthesis is tried as a coefficient first and reparsed as a grouped
subexpression when that fails.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .fields import FieldDescriptor, FieldElement, poly_add, poly_mul, poly_neg
from .groups import GroupDescriptor, GroupElement, group_zero
from .series import Inverse, Monomial, Series, Truncation


# ---------------------------------------------------------------------------
# AST

class AstNode:
    pass


@dataclass(frozen=True)
class Coefficient(AstNode):
    value: FieldElement


@dataclass(frozen=True)
class TPower(AstNode):
    exponent: GroupElement


@dataclass(frozen=True)
class Add(AstNode):
    left: AstNode
    right: AstNode


@dataclass(frozen=True)
class Sub(AstNode):
    left: AstNode
    right: AstNode


@dataclass(frozen=True)
class Mul(AstNode):
    left: AstNode
    right: AstNode


@dataclass(frozen=True)
class Negate(AstNode):
    child: AstNode


@dataclass(frozen=True)
class Inv(AstNode):
    child: AstNode
    witness: GroupElement | None = None


@dataclass(frozen=True)
class Trunc(AstNode):
    child: AstNode
    cutoff: GroupElement


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM | NAME | OP | EOF
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m.group(1):
            tokens.append(Token("NUM", m.group(1), line, col))
        elif m.group(2):
            tokens.append(Token("NAME", m.group(2), line, col))
        else:
            tokens.append(Token("OP", m.group(3), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, group: GroupDescriptor, fld: FieldDescriptor):
        self.tokens = _tokenize(text)
        self.i = 0
        self.group = group
        self.field = fld

    # -- token plumbing ---------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            shown = tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def at(self, text: str) -> bool:
        return self.peek().text == text

    # -- expression grammar ----------------------------------------------

    def parse(self) -> AstNode:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "EOF":
            self.error(f"unexpected {tok.text!r} after expression")
        return node

    def expr(self) -> AstNode:
        if self.at("-"):
            self.advance()
            node: AstNode = Negate(self.term())
        else:
            node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> AstNode:
        node = self.factor()
        while self.at("*"):
            self.advance()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> AstNode:
        tok = self.peek()
        if tok.text == "t":
            self.advance()
            self.expect("^")
            self.expect("(")
            g = self.exponent()
            self.expect(")")
            return TPower(g)
        if tok.text == "inv":
            self.advance()
            self.expect("(")
            child = self.expr()
            witness = None
            if self.at(";"):
                self.advance()
                self.expect("g0")
                self.expect("=")
                witness = self.exponent()
            self.expect(")")
            return Inv(child, witness)
        if tok.text == "trunc":
            self.advance()
            self.expect("(")
            child = self.expr()
            self.expect(",")
            g = self.exponent()
            self.expect(")")
            return Trunc(child, g)
        if tok.text == "(":
            if self.field.kind == "Fp(x)":
                mark = self.i
                try:
                    return Coefficient(self.ratfunc())
                except ParseError:
                    self.i = mark
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        return Coefficient(self.coefficient())

    # -- exponents ---------------------------------------------------------

    def signed_int(self) -> int:
        negative = False
        if self.at("-"):
            self.advance()
            negative = True
        tok = self.peek()
        if tok.kind != "NUM":
            self.error("expected an integer")
        self.advance()
        value = int(tok.text)
        return -value if negative else value

    def exponent(self) -> GroupElement:
        kind = self.group.kind
        if kind == "Z^n":
            self.expect("(")
            coords = [self.signed_int()]
            while self.at(","):
                self.advance()
                coords.append(self.signed_int())
            self.expect(")")
            if len(coords) != self.group.rank:
                self.error(f"expected {self.group.rank} coordinates")
            return self.group.element(tuple(coords))
        if kind == "trivial":
            tok = self.peek()
            if self.signed_int() != 0:
                self.error("the trivial group has only the exponent 0", tok)
            return group_zero(self.group)
        n = self.signed_int()
        if kind == "Q":
            if self.at("/"):
                self.advance()
                tok = self.peek()
                d = self.signed_int()
                if d == 0:
                    self.error("zero denominator", tok)
                return self.group.element(Fraction(n, d))
            return self.group.element(Fraction(n))
        return self.group.element(n)

    # -- coefficients -------------------------------------------------------

    def coefficient(self) -> FieldElement:
        kind = self.field.kind
        if kind == "Fp(x)":
            return self.ratfunc()
        tok = self.peek()
        if tok.kind != "NUM":
            shown = tok.text or "end of input"
            self.error(f"expected a coefficient, found {shown!r}")
        self.advance()
        n = int(tok.text)
        if self.at("/"):
            self.advance()
            dtok = self.peek()
            if dtok.kind != "NUM":
                self.error("expected a denominator")
            self.advance()
            d = int(dtok.text)
            if kind == "Q":
                if d == 0:
                    self.error("zero denominator", dtok)
                return self.field.element(Fraction(n, d))
            den = self.field.element(d)
            if den.is_zero:
                self.error("zero denominator in the coefficient field", dtok)
            return self.field.element(n) * den.inverse()
        return self.field.element(n)

    def ratfunc(self) -> FieldElement:
        num = self.ppoly()
        if self.at("/"):
            self.advance()
            den = self.ppoly()
            if not any(den):
                self.error("zero denominator in rational function")
            return self.field.element((num, den))
        return self.field.element((num, (1,)))

    def ppoly(self) -> tuple[int, ...]:
        if self.at("("):
            self.advance()
            coeffs = self.poly()
            self.expect(")")
            return coeffs
        return self.mono()

    def poly(self) -> tuple[int, ...]:
        p = self.field.p
        total = self.mono()
        while self.peek().text in ("+", "-"):
            op = self.advance().text
            nxt = self.mono()
            if op == "-":
                nxt = poly_neg(nxt, p)
            total = poly_add(total, nxt, p)
        return total

    def mono(self) -> tuple[int, ...]:
        p = self.field.p
        tok = self.peek()
        coeff = 1
        have_num = False
        if tok.kind == "NUM":
            self.advance()
            coeff = int(tok.text) % p
            have_num = True
            if self.at("*"):
                nxt = self.tokens[self.i + 1]
                if nxt.text != "x":
                    return ((coeff,) if coeff else ())
                self.advance()
        if self.at("x"):
            self.advance()
            deg = 1
            if self.at("^"):
                self.advance()
                dtok = self.peek()
                if dtok.kind != "NUM":
                    self.error("expected a power of x")
                self.advance()
                deg = int(dtok.text)
            if coeff == 0:
                return ()
            return poly_mul((coeff,), (0,) * deg + (1,), p)
        if have_num:
            return ((coeff,) if coeff else ())
        shown = tok.text or "end of input"
        self.error(f"expected a polynomial term, found {shown!r}")


def parse_expression(text: str, group: GroupDescriptor,
                     fld: FieldDescriptor) -> AstNode:
    return _Parser(text, group, fld).parse()


def parse_exponent_text(text: str, group: GroupDescriptor) -> GroupElement:
    p = _Parser(text, group, FieldDescriptor("Q"))
    g = p.exponent()
    if p.peek().kind != "EOF":
        p.error("trailing input after exponent")
    return g


# ---------------------------------------------------------------------------
# rendering and series construction

def render_expression(node: AstNode) -> str:
    if isinstance(node, Coefficient):
        return str(node.value)
    if isinstance(node, TPower):
        return f"t^({node.exponent})"
    if isinstance(node, Add):
        return f"{render_expression(node.left)} + {_wrap_additive(node.right)}"
    if isinstance(node, Sub):
        return f"{render_expression(node.left)} - {_wrap_additive(node.right)}"
    if isinstance(node, Mul):
        right = _wrap_factor(node.right)
        if isinstance(node.right, Mul):
            right = f"({right})"
        return f"{_wrap_factor(node.left)}*{right}"
    if isinstance(node, Negate):
        return f"-{_wrap_factor(node.child)}"
    if isinstance(node, Inv):
        if node.witness is not None:
            return f"inv({render_expression(node.child)}; g0={node.witness})"
        return f"inv({render_expression(node.child)})"
    if isinstance(node, Trunc):
        return f"trunc({render_expression(node.child)}, {node.cutoff})"
    raise TypeError(f"unknown AST node {type(node).__name__}")


def _wrap_additive(node: AstNode) -> str:
    text = render_expression(node)
    if isinstance(node, (Add, Sub, Negate)):
        return f"({text})"
    return text


def _wrap_factor(node: AstNode) -> str:
    text = render_expression(node)
    if isinstance(node, (Add, Sub, Negate)):
        return f"({text})"
    return text


def ast_to_series(node: AstNode, group: GroupDescriptor,
                  fld: FieldDescriptor) -> Series:
    if isinstance(node, Coefficient):
        return Monomial(node.value, group_zero(group))
    if isinstance(node, TPower):
        return Monomial(fld.one, node.exponent)
    if isinstance(node, Add):
        return ast_to_series(node.left, group, fld) + ast_to_series(node.right, group, fld)
    if isinstance(node, Sub):
        return ast_to_series(node.left, group, fld) - ast_to_series(node.right, group, fld)
    if isinstance(node, Mul):
        return ast_to_series(node.left, group, fld) * ast_to_series(node.right, group, fld)
    if isinstance(node, Negate):
        return -ast_to_series(node.child, group, fld)
    if isinstance(node, Inv):
        return Inverse(ast_to_series(node.child, group, fld), node.witness)
    if isinstance(node, Trunc):
        return Truncation(ast_to_series(node.child, group, fld), node.cutoff)
    raise TypeError(f"unknown AST node {type(node).__name__}")


def contains_unwitnessed_inverse(node: AstNode) -> bool:
    if isinstance(node, Inv):
        return node.witness is None or contains_unwitnessed_inverse(node.child)
    if isinstance(node, (Add, Sub, Mul)):
        return contains_unwitnessed_inverse(node.left) or contains_unwitnessed_inverse(
            node.right
        )
    if isinstance(node, (Negate,)):
        return contains_unwitnessed_inverse(node.child)
    if isinstance(node, Trunc):
        return contains_unwitnessed_inverse(node.child)
    return False


def max_literal_exponent(node: AstNode, group: GroupDescriptor) -> GroupElement:
    """Largest exponent textually present; the default evaluation bound
    for expressions without unwitnessed inverses."""
    best = group_zero(group)
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, TPower) and best < n.exponent:
            best = n.exponent
        elif isinstance(n, (Add, Sub, Mul)):
            stack.extend((n.left, n.right))
        elif isinstance(n, Negate):
            stack.append(n.child)
        elif isinstance(n, Inv):
            stack.append(n.child)
            if n.witness is not None and best < -n.witness:
                best = -n.witness
        elif isinstance(n, Trunc):
            stack.append(n.child)
    return best
