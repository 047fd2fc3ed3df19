"""Field declarations and degree/parity/index checking."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..errors import BadDegree, TypeCheckError, UnknownField
from .ast import Const, Constitutive, Contract, ExteriorD, FieldRef, Hodge, ScalarMul, Sum, Wedge


class NonviableLagrangianWarning(UserWarning):
    """The expression is not an odd n-form, so it cannot be integrated as a density."""


@dataclass(frozen=True)
class FieldDecl:
    name: str
    kind: str = "matter"  # "matter" or "coframe"
    degree: int = 1

    def __post_init__(self):
        if self.kind not in ("matter", "coframe"):
            raise ValueError(f"field kind must be 'matter' or 'coframe', not {self.kind!r}")
        if self.kind == "coframe" and self.degree != 1:
            raise BadDegree("a coframe family consists of 1-forms")
        if self.degree < 0:
            raise BadDegree(f"negative degree {self.degree}")

    @classmethod
    def matter(cls, name: str, degree: int) -> "FieldDecl":
        return cls(name, "matter", degree)

    @classmethod
    def coframe(cls, name: str = "theta") -> "FieldDecl":
        return cls(name, "coframe", 1)


@dataclass(frozen=True)
class TypeInfo:
    degree: int
    odd: bool
    viable: bool

    @property
    def parity(self) -> str:
        return "odd" if self.odd else "even"


def _decl_map(decls):
    out = {}
    for d in decls:
        if d.name in out:
            raise TypeCheckError(f"field {d.name!r} declared twice")
        out[d.name] = d
    return out


def infer(node, decls: dict, n: int, bound=frozenset()):
    """``(degree, odd)`` of ``node``; raises on any violation."""
    if isinstance(node, Const):
        return 0, False
    if isinstance(node, FieldRef):
        decl = decls.get(node.name)
        if decl is None:
            raise UnknownField(node.name)
        if decl.kind == "coframe":
            if node.index is None:
                raise TypeCheckError(f"coframe {node.name!r} needs a frame index")
            if node.index not in bound:
                raise TypeCheckError(f"frame index {node.index!r} is not bound by a sum")
            return 1, False
        if node.index is not None:
            raise TypeCheckError(f"matter field {node.name!r} carries no frame index")
        if decl.degree > n:
            raise TypeCheckError(f"{node.name!r} has degree {decl.degree} > n = {n}")
        return decl.degree, False
    if isinstance(node, ExteriorD):
        p, odd = infer(node.child, decls, n, bound)
        if p + 1 > n:
            raise TypeCheckError(f"d applied to a {p}-form in dimension {n}")
        return p + 1, odd
    if isinstance(node, Wedge):
        p, a = infer(node.left, decls, n, bound)
        q, b = infer(node.right, decls, n, bound)
        if p + q > n:
            raise TypeCheckError(f"wedge of degree {p} + {q} exceeds n = {n}")
        return p + q, a != b
    if isinstance(node, Hodge):
        p, odd = infer(node.child, decls, n, bound)
        return n - p, not odd
    if isinstance(node, Constitutive):
        p, odd = infer(node.child, decls, n, bound)
        if n != 4 or p != 2:
            raise TypeCheckError("kappa acts on 2-forms in dimension 4")
        return 2, not odd
    if isinstance(node, ScalarMul):
        return infer(node.child, decls, n, bound)
    if isinstance(node, Sum):
        types = {infer(c, decls, n, bound) for c in node.children}
        if len(types) != 1:
            raise TypeCheckError(f"sum of mismatched terms {sorted(types)}")
        return types.pop()
    if isinstance(node, Contract):
        if len(set(node.indices)) != len(node.indices):
            raise TypeCheckError("repeated index in sum")
        for idx in node.indices:
            if idx in bound:
                raise TypeCheckError(f"index {idx!r} shadows an outer sum")
            up, down = _count(node.child, idx)
            if (up, down) != (1, 1):
                raise TypeCheckError(
                    f"index {idx!r} must appear once raised and once lowered "
                    f"(found {up} raised, {down} lowered)"
                )
        return infer(node.child, decls, n, bound | set(node.indices))
    raise TypeCheckError(f"unsupported node {type(node).__name__}")


def _count(node, idx):
    if isinstance(node, FieldRef):
        if node.index != idx:
            return 0, 0
        return (0, 1) if node.lowered else (1, 0)
    if isinstance(node, Sum):
        # every summand must use the index the same way
        counts = {_count(c, idx) for c in node.children}
        if len(counts) != 1:
            raise TypeCheckError(f"index {idx!r} used inconsistently across a sum")
        return counts.pop()
    up = down = 0
    for c in _children(node):
        u, d = _count(c, idx)
        up += u
        down += d
    return up, down


def _children(node):
    if isinstance(node, Wedge):
        return (node.left, node.right)
    if hasattr(node, "child"):
        return (node.child,)
    return ()


def typecheck(expr, decls, n: int, warn: bool = True) -> TypeInfo:
    """Degree and parity of ``expr``; flags viability (odd ``n``-form).

    A non-viable expression emits :class:`NonviableLagrangianWarning` but is
    otherwise accepted.
    """
    degree, odd = infer(expr, _decl_map(decls), n)
    viable = degree == n and odd
    if not viable and warn:
        warnings.warn(
            f"expression is an {'odd' if odd else 'even'} {degree}-form, "
            f"not an odd {n}-form",
            NonviableLagrangianWarning,
            stacklevel=2,
        )
    return TypeInfo(degree, odd, viable)
