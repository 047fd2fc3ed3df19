"""Seeded random configurations.

The generator is numpy's PCG64; case ``i`` of a suite with seed ``s`` draws
from ``Generator(PCG64([s, i]))`` so cases are independent of scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..forms import DForm, VectorField, basis
from ..geometry import FrameGeometry
from ..lagrangian import Configuration
from ..scalars import ring


@dataclass(frozen=True)
class Bounds:
    degree: int = 2
    coeff: int = 9
    terms: int = 3
    coframe_density: float = 0.35


@dataclass(frozen=True)
class Case:
    index: int
    config: Configuration
    xi: VectorField
    delta_fields: dict
    delta_coframe: tuple
    f: object  # a random function for the S-linearity check


def case_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([seed, index]))


def random_scalar(rng, n: int, bounds: Bounds, terms: int | None = None):
    r = ring(n)
    drawn = {}
    for _ in range(bounds.terms if terms is None else terms):
        deg = int(rng.integers(0, bounds.degree + 1))
        exps = [0] * n
        for _ in range(deg):
            exps[int(rng.integers(0, n))] += 1
        c = int(rng.integers(-bounds.coeff, bounds.coeff + 1))
        # a repeated monomial keeps its first coefficient so sums never exceed the bound
        drawn.setdefault(tuple(exps), c)
    return sum((r.monomial(e, c) for e, c in drawn.items()), r.zero)


def random_form(rng, n: int, degree: int, bounds: Bounds, odd: bool = False) -> DForm:
    coeffs = {}
    for key in basis(n, degree):
        c = random_scalar(rng, n, bounds)
        if c:
            coeffs[key] = c
    return DForm(n, degree, coeffs, odd)


def random_coframe(rng, n: int, bounds: Bounds, constant: bool = False) -> list:
    """Identity plus a sparse strictly upper-triangular part (unit determinant)."""
    r = ring(n)
    m = [[r.one if i == j else r.zero for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < bounds.coframe_density:
                if constant:
                    m[i][j] = r.const(int(rng.integers(-bounds.coeff, bounds.coeff + 1)))
                else:
                    m[i][j] = random_scalar(rng, n, bounds, terms=2)
    return m


def random_vector(rng, n: int, bounds: Bounds) -> VectorField:
    return VectorField(random_scalar(rng, n, bounds, terms=2) for _ in range(n))


def generate_config(seed: int, bounds: Bounds, model, constant_coframe: bool = False,
                    index: int = 0) -> Configuration:
    """Deterministic random configuration for ``model``."""
    return generate_case(seed, bounds, model, constant_coframe, index).config


def generate_case(seed: int, bounds: Bounds, model, constant_coframe: bool = False,
                  index: int = 0) -> Case:
    rng = case_rng(seed, index)
    n = model.n
    g = FrameGeometry(random_coframe(rng, n, bounds, constant_coframe), model.signature)
    fields = {d.name: random_form(rng, n, d.degree, bounds) for d in model.matter}
    config = Configuration(g, fields, model.chi)
    delta_fields = {d.name: random_form(rng, n, d.degree, bounds) for d in model.matter}
    delta_coframe = tuple(random_form(rng, n, 1, bounds) for _ in range(n))
    # structured generators first: a coordinate field, a constant field, a frame leg
    kind = index % 4
    if kind == 0:
        xi = VectorField.coordinate(n, int(rng.integers(0, n)))
    elif kind == 1:
        xi = VectorField(int(rng.integers(-bounds.coeff, bounds.coeff + 1)) for _ in range(n))
    elif kind == 2:
        xi = g.frame[int(rng.integers(0, n))]
    else:
        xi = random_vector(rng, n, bounds)
    f = random_scalar(rng, n, bounds, terms=2)
    return Case(index, config, xi, delta_fields, delta_coframe, f)
