"""Expression AST nodes and the precedence-aware pretty printer.

Node kinds: constants, variable references x[i] (literal or loop index),
binary arithmetic, power, unary negation, single-argument functions, and
the bounded reduction sum(i=a..b, body).
"""

from __future__ import annotations

from dataclasses import dataclass

FUNCTIONS = ("sqrt", "sin", "cos", "exp", "abs", "log")

# identifiers that can never be loop variables
RESERVED = ("x", "sum") + FUNCTIONS


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    index: int | str  # int: 1-based variable; str: enclosing loop variable


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


@dataclass(frozen=True)
class Sum:
    var: str
    lo: int
    hi: int
    body: object


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_PREC_NEG = 3
_PREC_ATOM = 5


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def pretty(node) -> str:
    """Render an AST back to source; reparsing yields an identical tree."""
    if isinstance(node, Const):
        return repr(float(node.value))
    if isinstance(node, Var):
        return f"x[{node.index}]"
    if isinstance(node, Neg):
        inner = pretty(node.operand)
        if _prec(node.operand) < _PREC_NEG:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Call):
        return f"{node.func}({pretty(node.arg)})"
    if isinstance(node, Sum):
        return f"sum({node.var}={node.lo}..{node.hi}, {pretty(node.body)})"
    if isinstance(node, BinOp):
        op_prec = _PREC[node.op]
        lhs = pretty(node.lhs)
        rhs = pretty(node.rhs)
        if node.op == "^":
            # right-associative and binding tighter than unary minus
            if _prec(node.lhs) <= op_prec:
                lhs = f"({lhs})"
            if _prec(node.rhs) < op_prec:
                rhs = f"({rhs})"
        else:
            if _prec(node.lhs) < op_prec:
                lhs = f"({lhs})"
            if _prec(node.rhs) <= op_prec:
                rhs = f"({rhs})"
        return f"{lhs} {node.op} {rhs}"
    raise TypeError(f"not an AST node: {node!r}")


def walk(node):
    """Yield every node in the tree, parents before children."""
    yield node
    if isinstance(node, BinOp):
        yield from walk(node.lhs)
        yield from walk(node.rhs)
    elif isinstance(node, Neg):
        yield from walk(node.operand)
    elif isinstance(node, Call):
        yield from walk(node.arg)
    elif isinstance(node, Sum):
        yield from walk(node.body)
