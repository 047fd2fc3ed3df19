"""Direct evaluation of Lagrangian expressions on a field configuration."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from types import MappingProxyType

from ..errors import ConfigError, DimensionMismatch, UnknownField
from ..forms import DForm
from ..geometry import FrameGeometry, lift, perturbed
from .ast import Const, Constitutive, Contract, ExteriorD, FieldRef, Hodge, ScalarMul, Sum, Wedge


@dataclass(frozen=True)
class Configuration:
    """Matter fields, a coframe geometry and (optionally) a constitutive tensor.

    ``chi`` is any object with ``apply(geometry, form) -> form``; it is used
    by ``kappa(...)`` nodes.
    """

    geometry: FrameGeometry
    fields: dict = field(default_factory=dict)
    chi: object = None
    coframe_name: str = "theta"

    def __post_init__(self):
        object.__setattr__(self, "fields", MappingProxyType(dict(self.fields)))
        for name, f in self.fields.items():
            if f.n != self.geometry.n:
                raise DimensionMismatch(f"field {name!r} lives on n={f.n}")

    @property
    def n(self) -> int:
        return self.geometry.n

    def validate(self, decls) -> None:
        for decl in decls:
            if decl.kind == "coframe":
                if decl.name != self.coframe_name:
                    raise ConfigError(
                        f"coframe family {decl.name!r} but configuration names {self.coframe_name!r}"
                    )
                continue
            f = self.fields.get(decl.name)
            if f is None:
                raise ConfigError(f"field {decl.name!r} has no assignment")
            if f.degree != decl.degree:
                raise ConfigError(
                    f"field {decl.name!r} declared as a {decl.degree}-form, assigned a {f.degree}-form"
                )

    def replace(self, **changes) -> "Configuration":
        kw = dict(geometry=self.geometry, fields=dict(self.fields), chi=self.chi,
                  coframe_name=self.coframe_name)
        kw.update(changes)
        return Configuration(**kw)

    def perturbed(self, delta_fields=None, delta_coframe=None) -> "Configuration":
        """``config + t * perturbation`` over first-order jets."""
        delta_fields = delta_fields or {}
        if delta_coframe is None:
            delta_coframe = [DForm.zero(self.n, 1)] * self.n
        g = perturbed(self.geometry, delta_coframe)
        fields = {name: lift(f, delta_fields.get(name)) for name, f in self.fields.items()}
        return Configuration(g, fields, self.chi, self.coframe_name)


def free_indices(node, cache: dict) -> frozenset:
    key = id(node)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(node, FieldRef):
        out = frozenset() if node.index is None else frozenset((node.index,))
    elif isinstance(node, Wedge):
        out = free_indices(node.left, cache) | free_indices(node.right, cache)
    elif isinstance(node, Sum):
        out = frozenset().union(*(free_indices(c, cache) for c in node.children))
    elif isinstance(node, Contract):
        out = free_indices(node.child, cache) - set(node.indices)
    elif isinstance(node, Const):
        out = frozenset()
    else:
        out = free_indices(node.child, cache)
    cache[key] = out
    return out


class _Evaluator:
    def __init__(self, config: Configuration):
        self.config = config
        self.g = config.geometry
        self.n = config.n
        self.memo = {}
        self.free = {}

    def __call__(self, node, env):
        fi = free_indices(node, self.free)
        key = (id(node), tuple(sorted((i, env[i]) for i in fi)))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self.eval(node, env)
        return hit

    def eval(self, node, env):
        g, n = self.g, self.n
        if isinstance(node, Const):
            return DForm.function(g.ring.const(node.value), n)
        if isinstance(node, FieldRef):
            return self.field(node, env)
        if isinstance(node, ExteriorD):
            return self(node.child, env).d()
        if isinstance(node, Wedge):
            return self(node.left, env).wedge(self(node.right, env))
        if isinstance(node, Hodge):
            return g.hodge(self(node.child, env))
        if isinstance(node, Constitutive):
            if self.config.chi is None:
                raise ConfigError("kappa(...) needs a constitutive tensor in the configuration")
            return self.config.chi.apply(g, self(node.child, env))
        if isinstance(node, ScalarMul):
            return self(node.child, env) * node.coef
        if isinstance(node, Sum):
            out = self(node.children[0], env)
            for c in node.children[1:]:
                out = out + self(c, env)
            return out
        if isinstance(node, Contract):
            out = None
            for values in product(range(n), repeat=len(node.indices)):
                sub = dict(env)
                sub.update(zip(node.indices, values))
                v = self(node.child, sub)
                out = v if out is None else out + v
            return out
        raise TypeError(f"unknown node {node!r}")

    def field(self, node, env):
        cfg = self.config
        if node.name == cfg.coframe_name:
            if node.index is None:
                raise ConfigError(f"coframe {node.name!r} used without a frame index")
            a = env[node.index]
            return self.g.lowered_coframe(a) if node.lowered else self.g.coframe[a]
        f = cfg.fields.get(node.name)
        if f is None:
            raise UnknownField(node.name)
        return f


def evaluate(expr, config: Configuration, decls=None) -> DForm:
    """Value of ``expr`` at ``config`` as an exact form."""
    if decls is not None:
        config.validate(decls)
    return _Evaluator(config)(expr, {})
