"""Recursive descent parser for the problem-definition expression DSL.

Grammar (lower binds looser):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER
            | FUNC '(' expr ')'          # sqrt sin cos exp abs log
            | 'x' '[' (INT | IDENT) ']'
            | 'sum' '(' IDENT '=' INT '..' INT ',' expr ')'
            | '(' expr ')'

Errors carry the 1-based line/column and the expected-token set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import FUNCTIONS, RESERVED, BinOp, Call, Const, Neg, Sum, Var

_SYMBOLS = ("+", "-", "*", "/", "^", "(", ")", "[", "]", ",", "=")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        suffix = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{line}:{column}: {message}{suffix}")


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER IDENT SYMBOL DOTDOT EOF
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            # consume a decimal point only when a digit follows ('..' is a range)
            if j < n and src[j] == "." and j + 1 < n and src[j + 1].isdigit():
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    while k < n and src[k].isdigit():
                        k += 1
                    j = k
            text = src[i:j]
            tokens.append(Token("NUMBER", text, line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", src[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch == "." and i + 1 < n and src[i + 1] == ".":
            tokens.append(Token("DOTDOT", "..", line, start_col))
            i += 2
            col += 2
            continue
        if ch in _SYMBOLS:
            tokens.append(Token("SYMBOL", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        t = self.current
        found = t.text or "end of input"
        return ParseError(f"{message}, found {found!r}", t.line, t.column, expected)

    def expect_symbol(self, symbol: str) -> Token:
        t = self.current
        if t.kind != "SYMBOL" or t.text != symbol:
            raise self.error(f"expected '{symbol}'", (symbol,))
        return self.advance()

    def expect_int(self) -> int:
        t = self.current
        if t.kind != "NUMBER" or any(c in t.text for c in ".eE"):
            raise self.error("expected an integer", ("integer",))
        self.advance()
        return int(t.text)

    def parse_expr(self):
        node = self.parse_term()
        while self.current.kind == "SYMBOL" and self.current.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.current.kind == "SYMBOL" and self.current.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.current.kind == "SYMBOL" and self.current.text == "-":
            self.advance()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.current.kind == "SYMBOL" and self.current.text == "^":
            self.advance()
            return BinOp("^", base, self.parse_unary())
        return base

    def parse_atom(self):
        t = self.current
        if t.kind == "NUMBER":
            self.advance()
            return Const(float(t.text))
        if t.kind == "SYMBOL" and t.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect_symbol(")")
            return node
        if t.kind == "IDENT":
            if t.text == "x":
                self.advance()
                self.expect_symbol("[")
                index = self.parse_index()
                self.expect_symbol("]")
                return Var(index)
            if t.text == "sum":
                return self.parse_sum()
            if t.text in FUNCTIONS:
                self.advance()
                self.expect_symbol("(")
                arg = self.parse_expr()
                self.expect_symbol(")")
                return Call(t.text, arg)
            raise self.error(
                f"unknown identifier '{t.text}'",
                ("number", "x[i]", "sum(...)") + FUNCTIONS,
            )
        raise self.error(
            "expected an expression",
            ("number", "x[i]", "sum(...)", "(", "-") + FUNCTIONS,
        )

    def parse_index(self) -> int | str:
        t = self.current
        if t.kind == "NUMBER":
            return self.expect_int()
        if t.kind == "IDENT" and t.text not in RESERVED:
            self.advance()
            return t.text
        raise self.error("expected a variable index", ("integer", "loop identifier"))

    def parse_sum(self):
        self.advance()  # 'sum'
        self.expect_symbol("(")
        t = self.current
        if t.kind != "IDENT" or t.text in RESERVED:
            raise self.error("expected a loop variable name", ("identifier",))
        var = self.advance().text
        self.expect_symbol("=")
        lo = self.expect_int()
        if self.current.kind != "DOTDOT":
            raise self.error("expected '..'", ("..",))
        self.advance()
        hi = self.expect_int()
        self.expect_symbol(",")
        body = self.parse_expr()
        self.expect_symbol(")")
        return Sum(var, lo, hi, body)


def parse_expression(src: str):
    """Parse one expression, requiring the whole input to be consumed."""
    parser = _Parser(tokenize(src))
    node = parser.parse_expr()
    if parser.current.kind != "EOF":
        raise parser.error("unexpected trailing input", ("end of input",))
    return node
