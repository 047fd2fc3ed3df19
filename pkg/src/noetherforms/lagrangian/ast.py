"""Lagrangian expression trees.

Nodes are frozen dataclasses; ``span`` carries ``(line, column)`` of the
source token for diagnostics and is ignored by equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Const(Node):
    value: Fraction
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class FieldRef(Node):
    name: str
    index: str | None = None
    lowered: bool = False
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ExteriorD(Node):
    child: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Wedge(Node):
    left: Node
    right: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Hodge(Node):
    child: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Constitutive(Node):
    """The premetric excitation map ``F -> kappa(F)`` (n = 4, 2-forms)."""

    child: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ScalarMul(Node):
    coef: Fraction
    child: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Sum(Node):
    children: tuple
    span: tuple | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Contract(Node):
    """Sum over frame indices; each must occur once raised and once lowered."""

    indices: tuple
    child: Node
    span: tuple | None = field(default=None, compare=False, repr=False)


def children(node: Node) -> tuple:
    if isinstance(node, (ExteriorD, Hodge, Constitutive, ScalarMul, Contract)):
        return (node.child,)
    if isinstance(node, Wedge):
        return (node.left, node.right)
    if isinstance(node, Sum):
        return node.children
    return ()


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(node: Node) -> str:
    """Render a tree back to DSL source (parses to an equal tree)."""
    if isinstance(node, Const):
        return _frac(node.value) if node.value >= 0 else f"({_frac(node.value)})"
    if isinstance(node, FieldRef):
        if node.index is None:
            return node.name
        return f"{node.name}{'_' if node.lowered else ''}[{node.index}]"
    if isinstance(node, ExteriorD):
        return f"d({to_text(node.child)})"
    if isinstance(node, Hodge):
        return f"star({to_text(node.child)})"
    if isinstance(node, Constitutive):
        return f"kappa({to_text(node.child)})"
    if isinstance(node, Wedge):
        return f"({to_text(node.left)} ^ {to_text(node.right)})"
    if isinstance(node, ScalarMul):
        c = node.coef
        body = to_text(node.child)
        if c < 0:
            return f"(-{_frac(-c)} * {body})"
        return f"({_frac(c)} * {body})"
    if isinstance(node, Sum):
        return "(" + " + ".join(to_text(c) for c in node.children) + ")"
    if isinstance(node, Contract):
        return f"sum({','.join(node.indices)}; {to_text(node.child)})"
    raise TypeError(f"unknown node {node!r}")


def dump(node: Node, indent: int = 0) -> str:
    """Indented tree listing, one node per line."""
    pad = "  " * indent
    if isinstance(node, Const):
        head = f"Const {_frac(node.value)}"
    elif isinstance(node, FieldRef):
        head = f"FieldRef {node.name}" + (
            f" [{'_' if node.lowered else '^'}{node.index}]" if node.index else ""
        )
    elif isinstance(node, ScalarMul):
        head = f"ScalarMul {_frac(node.coef)}"
    elif isinstance(node, Contract):
        head = f"Contract ({','.join(node.indices)})"
    else:
        head = type(node).__name__
    lines = [pad + head]
    for c in children(node):
        lines.append(dump(c, indent + 1))
    return "\n".join(lines)
