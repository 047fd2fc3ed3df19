"""Free ``p``-form gauge field, ``L = -1/2 F ^ *F`` with ``F = dA``."""

from __future__ import annotations

from fractions import Fraction

from ..errors import BadDegree
from ..forms import DForm, interior_product
from ..lagrangian import FieldDecl
from .base import Model, constant_field_strength_potential, flat

SOURCE = "-1/2 * d A ^ star(d A)"


def maxwell_sigma(F: DForm, geometry, p: int) -> tuple:
    """``1/2 [(e_a _| F) ^ *F + (-1)^p F ^ (e_a _| *F)]`` for each leg."""
    sF = geometry.hodge(F)
    out = []
    for e in geometry.frame:
        first = interior_product(e, F).wedge(sF)
        second = F.wedge(interior_product(e, sF))
        out.append((first + second if p % 2 == 0 else first - second) * Fraction(1, 2))
    return tuple(out)


def trace_residual(Sigma, F: DForm, geometry, p: int) -> DForm:
    """``vartheta^a ^ Sigma_a + (n - 2p - 2)/2 F ^ *F``."""
    n = geometry.n
    out = F.wedge(geometry.hodge(F)) * Fraction(n - 2 * p - 2, 2)
    for th, S in zip(geometry.coframe, Sigma):
        out = out + th.wedge(S)
    return out


def symmetry_residual(Sigma, geometry) -> DForm:
    """``e^a _| Sigma_a``."""
    n = geometry.n
    out = None
    for a, S in enumerate(Sigma):
        t = interior_product(geometry.raised_frame(a), S) if S.degree else S
        out = t if out is None else out + t
    return out if out is not None else DForm.zero(n, max(n - 2, 0), True)


def maxwell_model(n: int = 4, p: int = 1, signature=None) -> Model:
    if n < 1:
        raise BadDegree(f"dimension must be positive, got {n}")
    if not 0 <= p <= n - 1:
        raise BadDegree(f"p must lie in [0, {n - 1}] for n = {n}, got {p}")
    if signature is None:
        signature = (-1,) + (1,) * (n - 1)
    signature = tuple(signature)

    def expected(config):
        g = config.geometry
        F = config.fields["A"].d()
        return {
            "sigma": DForm.zero(n, n - p, True),
            "pi": -g.hodge(F),
            "Sigma": maxwell_sigma(F, g, p),
            "Pi": tuple(DForm.zero(n, n - 2, True) for _ in range(n)) if n >= 2 else (),
        }

    def fixture(rng=None, bound: int = 9):
        from ..lagrangian import Configuration

        A = constant_field_strength_potential(n, p, rng, bound)
        return Configuration(flat(n, signature), {"A": A})

    return Model(
        name="maxwell",
        n=n,
        decls=(FieldDecl.matter("A", p), FieldDecl.coframe()),
        source=SOURCE,
        signature=signature,
        expected=expected,
        fixture=fixture,
        params={"n": n, "p": p},
        description=f"free {p}-form gauge field in {n} dimensions",
    )
