"""Abelian Chern-Simons term ``L = A ^ dA`` in three dimensions.

It is an even 3-form, so it is not a viable density; it serves as the
fixture on which the pure-mode Noether current is trivial.
"""

from __future__ import annotations

from ..forms import DForm
from ..lagrangian import Configuration, FieldDecl
from .base import Model, flat

SOURCE = "A ^ d A"
SIGNATURE = (-1, 1, 1)


def chern_simons_model() -> Model:
    def expected(config):
        A = config.fields["A"]
        return {"sigma": A.d(), "pi": A}

    def fixture(rng=None, bound: int = 9):
        """A closed ``A = df`` with ``f`` a random quadratic polynomial."""
        from ..scalars import ring

        r = ring(3)
        f = r.zero
        for i in range(3):
            for j in range(i, 3):
                c = 1 if rng is None else int(rng.integers(-bound, bound + 1))
                f = f + r.var(i) * r.var(j) * c
            c = 1 if rng is None else int(rng.integers(-bound, bound + 1))
            f = f + r.var(i) * c
        return Configuration(flat(3, SIGNATURE), {"A": DForm.function(f).d()})

    return Model(
        name="chern-simons",
        n=3,
        decls=(FieldDecl.matter("A", 1), FieldDecl.coframe()),
        source=SOURCE,
        signature=SIGNATURE,
        expected=expected,
        fixture=fixture,
        params={"n": 3, "p": 1},
        description="abelian Chern-Simons term (even 3-form, not a viable density)",
    )
