"""AST node types for ScaffLite, plus the classical expression mini-language.

Expressions cover what gate angles and loop bounds need: integer/real
literals, named constants and loop variables, + - * /, unary minus, and the
functions pow/floor/abs. Division follows C: int/int truncates toward zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import NonConstantControlError

Number = Union[int, float]


# --- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Number
    pos: tuple = None


@dataclass(frozen=True)
class Name:
    ident: str
    pos: tuple = None


@dataclass(frozen=True)
class Bin:
    op: str  # + - * / < <= > >= == !=
    lhs: "Expr"
    rhs: "Expr"
    pos: tuple = None


@dataclass(frozen=True)
class Un:
    op: str  # -
    operand: "Expr"
    pos: tuple = None


@dataclass(frozen=True)
class Fn:
    name: str  # pow floor abs
    args: tuple
    pos: tuple = None


Expr = Union[Num, Name, Bin, Un, Fn]

FUNCTIONS = {"pow", "floor", "abs"}


def c_div(a: Number, b: Number) -> Number:
    if isinstance(a, int) and isinstance(b, int):
        q = abs(a) // abs(b)
        return q if (a >= 0) == (b >= 0) else -q
    return a / b


def eval_expr(e: Expr, env: dict) -> Number:
    """Evaluate to a number; raises NonConstantControlError on free names."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Name):
        if e.ident in env:
            return env[e.ident]
        raise NonConstantControlError(f"'{e.ident}' is not a compile-time constant", e.pos)
    if isinstance(e, Un):
        return -eval_expr(e.operand, env)
    if isinstance(e, Bin):
        a, b = eval_expr(e.lhs, env), eval_expr(e.rhs, env)
        op = e.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            return c_div(a, b)
        if op == "<":
            return int(a < b)
        if op == "<=":
            return int(a <= b)
        if op == ">":
            return int(a > b)
        if op == ">=":
            return int(a >= b)
        if op == "==":
            return int(a == b)
        if op == "!=":
            return int(a != b)
        raise NonConstantControlError(f"unknown operator '{op}'", e.pos)
    if isinstance(e, Fn):
        vals = [eval_expr(a, env) for a in e.args]
        if e.name == "pow":
            return math.pow(vals[0], vals[1])
        if e.name == "floor":
            v = math.floor(vals[0])
            return int(v)
        if e.name == "abs":
            return abs(vals[0])
        raise NonConstantControlError(f"unknown function '{e.name}'", e.pos)
    raise NonConstantControlError(f"cannot evaluate {e!r}")


def fold_expr(e: Expr, env: dict) -> Expr:
    """Constant-fold under a partial environment; free names are left alone."""
    if isinstance(e, Num):
        return e
    if isinstance(e, Name):
        if e.ident in env:
            return Num(env[e.ident], e.pos)
        return e
    if isinstance(e, Un):
        x = fold_expr(e.operand, env)
        if isinstance(x, Num):
            return Num(-x.value, e.pos)
        return Un(e.op, x, e.pos)
    if isinstance(e, Bin):
        l, r = fold_expr(e.lhs, env), fold_expr(e.rhs, env)
        if isinstance(l, Num) and isinstance(r, Num):
            return Num(eval_expr(Bin(e.op, l, r, e.pos), {}), e.pos)
        return Bin(e.op, l, r, e.pos)
    if isinstance(e, Fn):
        args = tuple(fold_expr(a, env) for a in e.args)
        if all(isinstance(a, Num) for a in args):
            return Num(eval_expr(Fn(e.name, args, e.pos), {}), e.pos)
        return Fn(e.name, args, e.pos)
    return e


def free_names(e: Expr) -> set:
    if isinstance(e, Num):
        return set()
    if isinstance(e, Name):
        return {e.ident}
    if isinstance(e, Un):
        return free_names(e.operand)
    if isinstance(e, Bin):
        return free_names(e.lhs) | free_names(e.rhs)
    if isinstance(e, Fn):
        out = set()
        for a in e.args:
            out |= free_names(a)
        return out
    return set()


def affine_in(e: Expr, var: str):
    """If e == a*var + b with integer a, b, return (a, b); else None."""
    if isinstance(e, Num):
        if isinstance(e.value, int):
            return (0, e.value)
        return None
    if isinstance(e, Name):
        return (1, 0) if e.ident == var else None
    if isinstance(e, Un):
        r = affine_in(e.operand, var)
        return (-r[0], -r[1]) if r else None
    if isinstance(e, Bin):
        l, r = affine_in(e.lhs, var), affine_in(e.rhs, var)
        if e.op == "+" and l and r:
            return (l[0] + r[0], l[1] + r[1])
        if e.op == "-" and l and r:
            return (l[0] - r[0], l[1] - r[1])
        if e.op == "*" and l and r:
            if l[0] == 0:
                return (l[1] * r[0], l[1] * r[1])
            if r[0] == 0:
                return (r[1] * l[0], r[1] * l[1])
            return None
        return None
    return None


def render_expr(e: Expr) -> str:
    """Pretty-print with enough parentheses to re-parse identically."""
    if isinstance(e, Num):
        v = e.value
        if isinstance(v, float):
            return repr(v)
        return str(v)
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, Un):
        return f"(-{render_expr(e.operand)})"
    if isinstance(e, Bin):
        return f"({render_expr(e.lhs)} {e.op} {render_expr(e.rhs)})"
    if isinstance(e, Fn):
        return f"{e.name}({', '.join(render_expr(a) for a in e.args)})"
    raise TypeError(e)


# --- statements ------------------------------------------------------------

@dataclass
class QubitOperand:
    array: str
    index: Optional[Expr]  # None means the whole array (call argument form)
    pos: tuple = None


@dataclass
class GateStmt:
    kind: str
    operands: list  # of QubitOperand
    angle: Optional[Expr]
    pos: tuple = None


@dataclass
class CallArg:
    """Either a qubit array (optionally sliced) or a classical expression.

    The parser cannot always tell a bare identifier's kind; it stores it as
    `expr` and semantic resolution reinterprets it against the callee's
    signature.
    """
    array: Optional[str] = None
    lo: Optional[Expr] = None
    hi: Optional[Expr] = None
    expr: Optional[Expr] = None
    pos: tuple = None


@dataclass
class CallStmt:
    name: str
    args: list  # of CallArg
    pos: tuple = None


@dataclass
class ForStmt:
    var: str
    declares_var: bool
    start: Expr
    cmp: str        # < <= > >=
    bound: Expr
    step: int       # +k or -k, constant
    body: list
    pos: tuple = None


@dataclass
class IfStmt:
    cond: Expr
    then: list
    els: list
    pos: tuple = None


@dataclass
class QubitDeclStmt:
    name: str
    size: Expr
    pos: tuple = None


@dataclass
class ClassicalDeclStmt:
    name: str
    type: str  # int | double
    init: Optional[Expr]
    pos: tuple = None


@dataclass
class AssignStmt:
    name: str
    expr: Expr
    pos: tuple = None


@dataclass
class CtqgAssignStmt:
    """$-statements: `$ r := k;`, `$ r += k;`, `$ r -= k;`, `$ r += s;`,
    `$ r -= s;`, `$ r += s * t;`"""
    reg: str
    op: str                    # := += -=
    const: Optional[Expr] = None
    src: Optional[str] = None
    src2: Optional[str] = None  # set for += s * t
    pos: tuple = None


@dataclass
class CtqgIfStmt:
    lhs: str                   # register name
    cmp: str                   # < <= > >= == !=
    rhs_reg: Optional[str]     # register, or None when rhs is a constant
    rhs_const: Optional[Expr]
    then: list
    els: list
    pos: tuple = None


# --- module / program ------------------------------------------------------

@dataclass
class Param:
    name: str
    kind: str                  # qbit | int | double | qint
    size: Optional[Expr] = None   # qbit array size or qint width
    pos: tuple = None


@dataclass
class AstModule:
    name: str
    params: list
    body: list
    is_ctqg: bool
    pos: tuple = None


@dataclass
class Ast:
    modules: list
    defines: dict = field(default_factory=dict)


# --- pretty printer --------------------------------------------------------

def _render_stmt(st, indent) -> list:
    pad = "  " * indent
    out = []
    if isinstance(st, GateStmt):
        ops = ", ".join(
            o.array if o.index is None else f"{o.array}[{render_expr(o.index)}]"
            for o in st.operands
        )
        if st.angle is not None:
            ops += f", {render_expr(st.angle)}"
        out.append(f"{pad}{st.kind}({ops});")
    elif isinstance(st, CallStmt):
        parts = []
        for a in st.args:
            if a.array is not None:
                if a.lo is None:
                    parts.append(a.array)
                else:
                    parts.append(f"{a.array}[{render_expr(a.lo)}:{render_expr(a.hi)}]")
            else:
                parts.append(render_expr(a.expr))
        out.append(f"{pad}{st.name}({', '.join(parts)});")
    elif isinstance(st, ForStmt):
        decl = "int " if st.declares_var else ""
        if st.step == 1:
            stepstr = f"{st.var}++"
        elif st.step == -1:
            stepstr = f"{st.var}--"
        elif st.step > 0:
            stepstr = f"{st.var} += {st.step}"
        else:
            stepstr = f"{st.var} -= {-st.step}"
        out.append(f"{pad}for ({decl}{st.var} = {render_expr(st.start)}; "
                   f"{st.var} {st.cmp} {render_expr(st.bound)}; {stepstr}) {{")
        for s in st.body:
            out += _render_stmt(s, indent + 1)
        out.append(f"{pad}}}")
    elif isinstance(st, IfStmt):
        out.append(f"{pad}if ({render_expr(st.cond)}) {{")
        for s in st.then:
            out += _render_stmt(s, indent + 1)
        if st.els:
            out.append(f"{pad}}} else {{")
            for s in st.els:
                out += _render_stmt(s, indent + 1)
        out.append(f"{pad}}}")
    elif isinstance(st, QubitDeclStmt):
        out.append(f"{pad}qbit {st.name}[{render_expr(st.size)}];")
    elif isinstance(st, ClassicalDeclStmt):
        if st.init is None:
            out.append(f"{pad}{st.type} {st.name};")
        else:
            out.append(f"{pad}{st.type} {st.name} = {render_expr(st.init)};")
    elif isinstance(st, AssignStmt):
        out.append(f"{pad}{st.name} = {render_expr(st.expr)};")
    elif isinstance(st, CtqgAssignStmt):
        if st.op == ":=" or st.src is None:
            rhs = render_expr(st.const)
        elif st.src2 is not None:
            rhs = f"{st.src} * {st.src2}"
        else:
            rhs = st.src
        out.append(f"{pad}$ {st.reg} {st.op} {rhs};")
    elif isinstance(st, CtqgIfStmt):
        rhs = st.rhs_reg if st.rhs_reg is not None else render_expr(st.rhs_const)
        out.append(f"{pad}$if ({st.lhs} {st.cmp} {rhs})")
        for s in st.then:
            out += _render_stmt(s, indent + 1)
        if st.els:
            out.append(f"{pad}$else")
            for s in st.els:
                out += _render_stmt(s, indent + 1)
        out.append(f"{pad}$endif")
    else:
        raise TypeError(st)
    return out


def render_ast(ast: Ast) -> str:
    """Print a parseable ScaffLite program (defines already substituted)."""
    lines = []
    for m in ast.modules:
        ps = []
        for p in m.params:
            if p.kind == "qbit":
                ps.append(f"qbit {p.name}[{render_expr(p.size)}]")
            elif p.kind == "qint":
                ps.append(f"qint[{render_expr(p.size)}] {p.name}")
            else:
                ps.append(f"{p.kind} {p.name}")
        lines.append(f"module {m.name}({', '.join(ps)}) {{")
        for st in m.body:
            lines += _render_stmt(st, 1)
        lines.append("}")
        lines.append("")
    return "\n".join(lines)
