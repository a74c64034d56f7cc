"""Text grammar shared by scalars and polynomials.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | factor
    factor := atom ("^" INT)?
    atom   := INT | INT "/" INT | "e" | "x" INT | "(" expr ")"

``e`` is the chosen primitive root of unity; ``e^k`` is its k-th power.
"""
from fractions import Fraction
from typing import Callable, List, Optional, Tuple
import re

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|(x\d+)|(e)|([-+*^()]))")


def tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        num, var, root, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif var is not None:
            tokens.append(("var", var))
        elif root is not None:
            tokens.append(("root", root))
        else:
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, number, root_power, variable):
        self.tokens = tokens
        self.i = 0
        self.number = number
        self.root_power = root_power
        self.variable = variable

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: str, value: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise ValueError(f"expected {value or kind}, found {tok[1] if tok else 'end of input'}")
        self.i += 1
        return tok[1]

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            op = self.take("op")
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.at_op("*"):
            self.take("op", "*")
            value = value * self.unary()
        return value

    def unary(self):
        if self.at_op("-"):
            self.take("op", "-")
            return -self.unary()
        return self.factor()

    def exponent(self) -> Optional[int]:
        if self.at_op("^"):
            self.take("op", "^")
            raw = self.take("num")
            if "/" in raw:
                raise ValueError(f"exponent must be an integer, got {raw}")
            return int(raw)
        return None

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of input")
        kind, raw = tok
        if kind == "root":
            self.i += 1
            k = self.exponent()
            return self.root_power(1 if k is None else k)
        value = self.atom()
        k = self.exponent()
        return value if k is None else value ** k

    def atom(self):
        kind, raw = self.peek()
        if kind == "num":
            self.i += 1
            return self.number(Fraction(raw))
        if kind == "var":
            self.i += 1
            if self.variable is None:
                raise ValueError(f"variable {raw} not allowed in a scalar")
            return self.variable(int(raw[1:]))
        if kind == "op" and raw == "(":
            self.i += 1
            value = self.expr()
            self.take("op", ")")
            return value
        raise ValueError(f"unexpected token {raw!r}")


def parse_expression(
    text: str,
    number: Callable,
    root_power: Callable,
    variable: Optional[Callable] = None,
):
    """Evaluate ``text`` bottom-up with the given atom constructors."""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty expression")
    parser = _Parser(tokenize(text), number, root_power, variable)
    value = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing input after position {parser.i}: {parser.peek()[1]!r}")
    return value
