"""Static checks on a parsed problem source: counts, bounds, index ranges."""

from __future__ import annotations

from .expr import Sum, Var, walk
from .parser import ParseError, parse_expression
from .source import ProblemSource


def _check_expression(label: str, src: str, n_var: int) -> list[str]:
    try:
        tree = parse_expression(src)
    except ParseError as exc:
        return [f"{label}: {exc}"]
    diagnostics = []
    bound_vars: dict[str, tuple[int, int]] = {}

    def visit(node, env: frozenset[str]):
        if isinstance(node, Var):
            if isinstance(node.index, int):
                if not 1 <= node.index <= n_var:
                    diagnostics.append(
                        f"{label}: x[{node.index}] out of range [1, {n_var}]"
                    )
            elif node.index not in env:
                diagnostics.append(f"{label}: unbound loop variable '{node.index}'")
        elif isinstance(node, Sum):
            if node.var in env:
                diagnostics.append(f"{label}: loop variable '{node.var}' shadows an outer one")
            if node.lo > node.hi:
                diagnostics.append(
                    f"{label}: reduction bounds {node.lo}..{node.hi} are reversed"
                )
            bound_vars[node.var] = (node.lo, node.hi)
            inner = env | {node.var}
            visit(node.body, inner)
            return
        for child in _children(node):
            visit(child, env)

    def _children(node):
        from .expr import BinOp, Call, Neg

        if isinstance(node, BinOp):
            return (node.lhs, node.rhs)
        if isinstance(node, Neg):
            return (node.operand,)
        if isinstance(node, Call):
            return (node.arg,)
        return ()

    visit(tree, frozenset())

    # a loop variable used as an index constrains the loop range
    used_as_index = {
        n.index for n in walk(tree) if isinstance(n, Var) and isinstance(n.index, str)
    }
    for var, (lo, hi) in bound_vars.items():
        if var in used_as_index and (lo < 1 or hi > n_var):
            diagnostics.append(
                f"{label}: sum over {var}={lo}..{hi} indexes outside [1, {n_var}]"
            )
    return diagnostics


def static_check(source: ProblemSource) -> list[str]:
    """All structural diagnostics for a source; empty means pass."""
    diagnostics: list[str] = []
    if source.n_var < 1:
        diagnostics.append("n_var must be positive")
    if source.n_obj < 1:
        diagnostics.append("n_obj must be positive")
    if source.n_ieq < 0 or source.n_eq < 0:
        diagnostics.append("constraint counts must be non-negative")
    if len(source.objectives) != source.n_obj:
        diagnostics.append(
            f"{len(source.objectives)} objective expressions for n_obj={source.n_obj}"
        )
    if len(source.constraints_ieq) != source.n_ieq:
        diagnostics.append(
            f"{len(source.constraints_ieq)} inequality expressions for n_ieq={source.n_ieq}"
        )
    if len(source.constraints_eq) != source.n_eq:
        diagnostics.append(
            f"{len(source.constraints_eq)} equality expressions for n_eq={source.n_eq}"
        )
    for bound_name in ("lower", "upper"):
        bound = getattr(source, bound_name)
        if isinstance(bound, tuple) and len(bound) != source.n_var:
            diagnostics.append(
                f"{bound_name} has {len(bound)} entries for n_var={source.n_var}"
            )
    if not diagnostics:
        lo, hi = source.bound_vectors()
        bad = [i + 1 for i, (a, b) in enumerate(zip(lo, hi)) if not a < b]
        if bad:
            diagnostics.append(f"lower must be strictly below upper (variables {bad})")
    if not source.name or not source.name.strip():
        diagnostics.append("name must be nonempty")

    if diagnostics:
        return diagnostics

    for label, exprs in (
        ("objective", source.objectives),
        ("ieq constraint", source.constraints_ieq),
        ("eq constraint", source.constraints_eq),
    ):
        for k, src in enumerate(exprs, start=1):
            diagnostics.extend(_check_expression(f"{label} {k}", src, source.n_var))
    return diagnostics
