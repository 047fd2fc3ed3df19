from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ..forms import DForm, basis
from ..geometry import FrameGeometry, flat_geometry
from ..lagrangian import Configuration, parse_lagrangian, typecheck


@dataclass(frozen=True)
class Model:
    """A Lagrangian with its declarations, closed-form currents and fixtures.

    ``expected(config)`` returns whichever of ``sigma``, ``pi``, ``Sigma``,
    ``Pi`` have closed forms; ``fixture(rng)`` returns an on-shell
    configuration.
    """

    name: str
    n: int
    decls: tuple
    source: str
    signature: tuple
    expected: Callable | None = None
    fixture: Callable | None = None
    chi: object = None
    lambda_source: str | None = None
    params: dict = field(default_factory=dict)
    description: str = ""

    @property
    def expr(self):
        return parse_lagrangian(self.source, self.decls)

    @property
    def lambda_expr(self):
        if self.lambda_source is None:
            return None
        return parse_lagrangian(self.lambda_source, self.decls)

    @property
    def matter(self) -> tuple:
        return tuple(d for d in self.decls if d.kind == "matter")

    @property
    def p(self) -> int | None:
        m = self.matter
        return m[0].degree if len(m) == 1 else None

    def typeinfo(self, warn: bool = False):
        return typecheck(self.expr, self.decls, self.n, warn=warn)

    def configuration(self, geometry: FrameGeometry, fields: dict) -> Configuration:
        cfg = Configuration(geometry, fields, self.chi)
        cfg.validate(self.decls)
        return cfg


def _rational(rng, bound: int) -> Fraction:
    if rng is None:
        return Fraction(1)
    v = 0
    while v == 0:
        v = int(rng.integers(-bound, bound + 1))
    return Fraction(v)


def constant_field_strength_potential(n: int, p: int, rng=None, bound: int = 9) -> DForm:
    """A ``p``-form ``A`` whose ``dA`` has constant (nonzero) coefficients."""
    from ..scalars import ring

    r = ring(n)
    coeffs = {}
    for K in basis(n, p + 1):
        c = _rational(rng, bound)
        # d(x^k0 dx^K[1:]) = dx^K
        key = K[1:]
        term = r.var(K[0]) * c
        coeffs[key] = coeffs[key] + term if key in coeffs else term
    return DForm(n, p, {k: v for k, v in coeffs.items() if v})


def flat(n: int, signature) -> FrameGeometry:
    return flat_geometry(n, signature)


def default_rng(seed=0):
    return np.random.default_rng(seed)
