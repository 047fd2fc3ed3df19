"""Pseudo-orthonormal coframe geometry.

The coframe is given by its component matrix ``theta[a][mu]``, so that
``vartheta^a = theta[a][mu] dx^mu``.  The frame matrix ``E`` satisfies
``sum_mu theta[a][mu] E[b][mu] = delta_ab``, i.e. ``e_b = E[b][mu] d/dx^mu``.

Hodge convention (fixed): ``eps^{01...(n-1)} = +1`` with all indices up, so
on increasing multi-indices ``A`` with increasing complement ``B``::

    *(vartheta^A) = sign(A, B) * prod_{c in B} eta_cc * vartheta^B

The volume form is ``*1 = sgn(det eta) vartheta^0 ^ ... ^ vartheta^(n-1)``
and ``**alpha = (-1)^(p(n-p)) sgn(det eta) alpha`` on ``p``-forms.
The star flips parity.

Geometries may be built over :class:`~noetherforms.jets.Jet` entries; every
operation then carries first-order perturbations exactly.
"""

from __future__ import annotations


from .errors import BadShape, DimensionMismatch, SingularCoframe
from .forms import (
    DForm,
    VectorField,
    _accumulate,
    basis,
    complement,
    interior_product,
    permutation_sign,
    wedge,
)
from .jets import Jet
from .scalars import Scalar, ring

__all__ = ["FrameGeometry", "build_geometry", "hodge_star", "hodge_variation", "flat_geometry"]


def _invertible(c) -> bool:
    if isinstance(c, Jet):
        return c.invertible()
    return bool(c)


def _coerce_entry(r, c):
    if isinstance(c, (Scalar, Jet)):
        if isinstance(c, Scalar) and c.ring is not r:
            raise DimensionMismatch("coframe entry lives in a different dimension")
        return c
    if isinstance(c, str):
        return r.parse(c)
    return r.const(c)


def _invert(matrix, r):
    """Gauss-Jordan inverse and determinant over a field-like coefficient type."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    inv = [[r.one if i == j else r.zero for j in range(n)] for i in range(n)]
    det = r.one
    for col in range(n):
        pivot = next((i for i in range(col, n) if _invertible(a[i][col])), None)
        if pivot is None:
            raise SingularCoframe("coframe matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            det = -det
        p = a[col][col]
        det = det * p
        pinv = 1 / p
        a[col] = [x * pinv for x in a[col]]
        inv[col] = [x * pinv for x in inv[col]]
        for i in range(n):
            if i == col:
                continue
            f = a[i][col]
            if not f:
                continue
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
            inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    return inv, det


class FrameGeometry:
    """Coframe, dual frame, signature, volume form and Hodge star."""

    def __init__(self, coframe_matrix, signature):
        n = len(coframe_matrix)
        if n == 0 or any(len(row) != n for row in coframe_matrix):
            raise BadShape("coframe matrix must be square and non-empty")
        signature = tuple(int(s) for s in signature)
        if len(signature) != n or any(s not in (1, -1) for s in signature):
            raise BadShape(f"signature must be {n} entries of +1/-1")
        r = ring(n)
        theta = tuple(tuple(_coerce_entry(r, c) for c in row) for row in coframe_matrix)
        inv, det = _invert(theta, r)
        # frame E[b][mu] = (theta^{-1})[mu][b]
        frame = tuple(tuple(inv[mu][b] for mu in range(n)) for b in range(n))
        self.n = n
        self.ring = r
        self.signature = signature
        self.coframe_matrix = theta
        self.frame_matrix = frame
        self.det = det
        self.eta_sign = -1 if signature.count(-1) % 2 else 1
        self.coframe = tuple(
            DForm(n, 1, {(mu,): c for mu, c in enumerate(row) if c}) for row in theta
        )
        self.frame = tuple(VectorField(row) for row in frame)
        self.epsilon_convention = "eps^{0...n-1} = +1 (indices up)"
        self._minors = {}
        self.volume = DForm(
            n, n, {tuple(range(n)): det * self.eta_sign} if det else {}, odd=True
        )

    # -- index gymnastics --------------------------------------------------
    def eta(self, a: int) -> int:
        return self.signature[a]

    def lowered_coframe(self, a: int) -> DForm:
        return self.coframe[a] * self.signature[a]

    def raised_frame(self, a: int) -> VectorField:
        """``e^a = eta^{ab} e_b``."""
        return self.frame[a] * self.signature[a]

    def frame_dual_defect(self):
        """``e_a _| vartheta^b - delta_ab`` for all pairs (all zero for a valid geometry)."""
        n = self.n
        out = []
        for a in range(n):
            for b in range(n):
                v = interior_product(self.frame[a], self.coframe[b])
                c = v[()] - (1 if a == b else 0)
                out.append(c)
        return out

    # -- basis changes -------------------------------------------------------
    def _minor(self, which: str, rows: tuple, cols: tuple):
        if not rows:
            return self.ring.one
        key = (which, rows, cols)
        hit = self._minors.get(key)
        if hit is not None:
            return hit
        m = self.frame_matrix if which == "E" else self.coframe_matrix
        r0, rest = rows[0], rows[1:]
        total = self.ring.zero
        for k, c in enumerate(cols):
            entry = m[r0][c]
            if not entry:
                continue
            sub = self._minor(which, rest, cols[:k] + cols[k + 1:])
            if not sub:
                continue
            t = entry * sub
            total = total - t if k % 2 else total + t
        self._minors[key] = total
        return total

    def frame_components(self, alpha: DForm) -> dict:
        """``{A: alpha(e_A1, ..., e_Ap)}`` for increasing ``A``."""
        self._check(alpha)
        out = {}
        for A in basis(self.n, alpha.degree):
            total = None
            for I, c in alpha.coeffs.items():
                m = self._minor("E", A, I)
                if not m:
                    continue
                t = c * m
                total = t if total is None else total + t
            if total is not None and total:
                out[A] = total
        return out

    def from_frame_components(self, degree: int, comps: dict, odd: bool = False) -> DForm:
        """Assemble ``sum_A comps[A] vartheta^A`` in the coordinate basis."""
        out = {}
        for A, c in comps.items():
            if not c:
                continue
            for J in basis(self.n, degree):
                m = self._minor("T", A, J)
                if m:
                    _accumulate(out, J, c * m)
        return DForm(self.n, degree, out, odd)

    def coframe_wedge(self, *indices: int) -> DForm:
        """``vartheta^{a1} ^ ... ^ vartheta^{ak}`` (any order)."""
        s = permutation_sign(indices)
        if s == 0:
            return DForm.zero(self.n, len(indices))
        key = tuple(sorted(indices))
        return self.from_frame_components(len(indices), {key: self.ring.const(s)})

    # -- Hodge -----------------------------------------------------------------
    def hodge_factor(self, A: tuple) -> int:
        B = complement(self.n, A)
        s = permutation_sign(A + B)
        for c in B:
            s *= self.signature[c]
        return s

    def hodge(self, alpha: DForm) -> DForm:
        comps = self.frame_components(alpha)
        n = self.n
        out = {}
        for A, c in comps.items():
            out[complement(n, A)] = c * self.hodge_factor(A)
        return self.from_frame_components(n - alpha.degree, out, not alpha.odd)

    def _check(self, alpha: DForm):
        if alpha.n != self.n:
            raise DimensionMismatch(f"form on n={alpha.n}, geometry on n={self.n}")

    def __repr__(self):
        return f"FrameGeometry(n={self.n}, signature={self.signature})"


def build_geometry(coframe_matrix, signature) -> FrameGeometry:
    return FrameGeometry(coframe_matrix, signature)


def flat_geometry(n: int, signature=None) -> FrameGeometry:
    """Holonomic coframe ``vartheta^a = dx^a``; Lorentzian by default."""
    if signature is None:
        signature = (-1,) + (1,) * (n - 1)
    return FrameGeometry([[1 if i == j else 0 for j in range(n)] for i in range(n)], signature)


def hodge_star(g: FrameGeometry, alpha: DForm) -> DForm:
    return g.hodge(alpha)


def coframe_matrix_of(forms) -> list:
    """Component matrix of ``n`` one-forms."""
    forms = list(forms)
    n = forms[0].n
    return [[f[(mu,)] for mu in range(n)] for f in forms]


def hodge_variation(g: FrameGeometry, delta_theta, alpha: DForm) -> DForm:
    """First-order change of ``*alpha`` when the coframe moves by ``delta_theta``.

    ``delta_theta^a ^ (e_a _| *alpha) - *[delta_theta^a ^ (e_a _| alpha)]``,
    with the coordinate components of ``alpha`` held fixed.
    """
    delta_theta = list(delta_theta)
    if len(delta_theta) != g.n:
        raise DimensionMismatch(f"need {g.n} coframe variations, got {len(delta_theta)}")
    g._check(alpha)
    star_alpha = g.hodge(alpha)
    first = DForm.zero(g.n, star_alpha.degree, star_alpha.odd)
    inner = DForm.zero(g.n, alpha.degree, alpha.odd)
    for a, dt in enumerate(delta_theta):
        if dt.n != g.n or dt.degree != 1:
            raise DimensionMismatch("coframe variations must be 1-forms on the same chart")
        if not dt:
            continue
        first = first + wedge(dt, interior_product(g.frame[a], star_alpha))
        if alpha.degree:
            inner = inner + wedge(dt, interior_product(g.frame[a], alpha))
    return first - g.hodge(inner)


def perturbed(g: FrameGeometry, delta_theta) -> FrameGeometry:
    """The geometry of ``vartheta + t * delta_theta`` over jets (``t^2 = 0``)."""
    delta = coframe_matrix_of(delta_theta)
    matrix = [
        [Jet(c, d) for c, d in zip(row, drow)]
        for row, drow in zip(g.coframe_matrix, delta)
    ]
    return FrameGeometry(matrix, g.signature)


def slope_part(alpha: DForm) -> DForm:
    """``t``-coefficient of a jet-valued form."""
    return alpha.map_coeffs(lambda c: c.slope if isinstance(c, Jet) else c.ring.zero)


def value_part(alpha: DForm) -> DForm:
    return alpha.map_coeffs(lambda c: c.value if isinstance(c, Jet) else c)


def lift(alpha: DForm, slope: DForm | None = None) -> DForm:
    """``alpha + t * slope`` as a jet-valued form."""
    r = ring(alpha.n)
    out = {k: Jet(c, r.zero) for k, c in alpha.coeffs.items()}
    if slope is not None:
        for k, c in slope.coeffs.items():
            if k in out:
                out[k] = Jet(out[k].value, c)
            else:
                out[k] = Jet(r.zero, c)
    return DForm(alpha.n, alpha.degree, out, alpha.odd)


