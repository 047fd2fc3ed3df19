"""Linear premetric electrodynamics, ``L = -1/2 F ^ kappa(F)``."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionMismatch
from ..forms import DForm, interior_product
from ..lagrangian import Configuration, FieldDecl
from .base import Model, constant_field_strength_potential, flat
from .constitutive import ConstitutiveTensor, chi_decompose

SOURCE = "-1/2 * d A ^ kappa(d A)"
SIGNATURE = (-1, 1, 1, 1)


def hilbert_current(F: DForm, H: DForm, geometry) -> tuple:
    """``1/2 [(e_a _| F) ^ H - F ^ (e_a _| H)]``."""
    return tuple(
        (interior_product(e, F).wedge(H) - F.wedge(interior_product(e, H))) * Fraction(1, 2)
        for e in geometry.frame
    )


def hilbert_current_canonical(F: DForm, H: DForm, L: DForm, geometry) -> tuple:
    """``e_a _| L + (e_a _| F) ^ H``, the current read off the cascade identity."""
    return tuple(interior_product(e, L) + interior_product(e, F).wedge(H) for e in geometry.frame)


def electrodynamics_model(chi: ConstitutiveTensor | None = None, J: DForm | None = None) -> Model:
    """``J`` is an external odd 3-form used only for the axiom checks."""
    if chi is None:
        chi = ConstitutiveTensor.vacuum(SIGNATURE)
    if J is not None and (J.n != 4 or J.degree != 3):
        raise DimensionMismatch("the current must be a 3-form in four dimensions")

    # the skewon piece drops out of L, so the currents see only the rest
    chi_sym = chi - chi_decompose(chi)[1]

    def expected(config):
        g = config.geometry
        F = config.fields["A"].d()
        H = chi_sym.apply(g, F)
        return {
            "sigma": DForm.zero(4, 3, True),
            "pi": -H,
            "Sigma": hilbert_current(F, H, g),
            "Pi": tuple(DForm.zero(4, 2, True) for _ in range(4)),
        }

    def fixture(rng=None, bound: int = 9):
        A = constant_field_strength_potential(4, 1, rng, bound)
        return Configuration(flat(4, SIGNATURE), {"A": A}, chi)

    return Model(
        name="premetric-ed",
        n=4,
        decls=(FieldDecl.matter("A", 1), FieldDecl.coframe()),
        source=SOURCE,
        signature=SIGNATURE,
        expected=expected,
        fixture=fixture,
        chi=chi,
        params={"n": 4, "p": 1, "J": J},
        description="linear premetric electrodynamics with a constant constitutive tensor",
    )


def axiom_residuals(config: Configuration, chi: ConstitutiveTensor, J: DForm | None = None) -> dict:
    """``dJ`` (charge conservation) and ``dH - J`` (inhomogeneous equation)."""
    g = config.geometry
    F = config.fields["A"].d()
    H = chi.apply(g, F)
    if J is None:
        J = DForm.zero(4, 3, True)
    return {"charge conservation": J.d(), "inhomogeneous equation": H.d() - J}
