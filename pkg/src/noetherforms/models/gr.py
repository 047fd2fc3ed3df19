"""Coframe (teleparallel) form of the Einstein-Hilbert Lagrangian in n = 4.

``L = 1/2 [(C_a ^ vartheta^b) ^ *(C_b ^ vartheta^a)
           - 2 (C_a ^ vartheta^a) ^ *(C_b ^ vartheta^b)]`` with ``C^a = d vartheta^a``;
the boundary term ``d Lambda``, ``Lambda = vartheta^a ^ *C_a``, is kept apart.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotOrthochronous
from ..forms import DForm, interior_product
from ..geometry import FrameGeometry
from ..lagrangian import Configuration, FieldDecl
from .base import Model, flat

SOURCE = (
    "1/2 * sum(a,b; (d theta[a] ^ theta_[b]) ^ star(d theta[b] ^ theta_[a]))"
    " - sum(a,b; (d theta_[a] ^ theta[a]) ^ star(d theta[b] ^ theta_[b]))"
)
LAMBDA = "sum(a; theta[a] ^ star(d theta_[a]))"
SIGNATURE = (-1, 1, 1, 1)


def torsion(geometry) -> tuple:
    """``C^a = d vartheta^a``."""
    return tuple(t.d() for t in geometry.coframe)


def gr_F(geometry) -> tuple:
    """``F^a = C^a - 2 e^a _| (vartheta^m ^ C_m) - vartheta^a ^ (e_m _| C^m)``."""
    n = geometry.n
    C = torsion(geometry)
    tm = DForm.zero(n, 3)
    trace = DForm.zero(n, 1)
    for m in range(n):
        tm = tm + geometry.coframe[m].wedge(C[m] * geometry.eta(m))
        trace = trace + interior_product(geometry.frame[m], C[m])
    return tuple(
        C[a] - interior_product(geometry.raised_frame(a), tm) * 2 - geometry.coframe[a].wedge(trace)
        for a in range(n)
    )


def gr_F_components(geometry) -> tuple:
    """The same ``F^a`` by brute-force expansion in frame components.

    With ``C^a = 1/2 C^a_bc vartheta^bc`` and ``C_abc = eta_aa C^a_bc``::

        e_k _| (vartheta^m ^ C_m) = (C_kbc + C_bck - C_cbk) vartheta^bc   (b < c)
        e_m _| C^m                = C^m_mc vartheta^c
    """
    n = geometry.n
    eta = geometry.signature
    r = geometry.ring
    comps = []
    for t in torsion(geometry):
        fc = geometry.frame_components(t)
        full = {}
        for (b, c), v in fc.items():
            full[(b, c)] = v
            full[(c, b)] = -v
        comps.append(full)

    def C_up(a, b, c):
        return comps[a].get((b, c), r.zero)

    def C_low(a, b, c):
        return C_up(a, b, c) * eta[a]

    trace = [sum((C_up(m, m, c) for m in range(n)), r.zero) for c in range(n)]
    out = []
    for a in range(n):
        frame = {}
        for b in range(n):
            for c in range(b + 1, n):
                # coefficient on vartheta^{bc}, b < c
                v = C_up(a, b, c)
                # -2 eta^aa e_a _| (vartheta^m ^ C_m)
                v = v - (C_low(a, b, c) + C_low(b, c, a) - C_low(c, b, a)) * (2 * eta[a])
                # -vartheta^a ^ (e_m _| C^m): vartheta^a ^ vartheta^c trace_c
                if a == b:
                    v = v - trace[c]
                if a == c:
                    v = v + trace[b]
                if v:
                    frame[(b, c)] = v
        out.append(geometry.from_frame_components(2, frame))
    return tuple(out)


def gr_expected(config) -> dict:
    g = config.geometry
    n = g.n
    F = gr_F(g)
    starF = tuple(g.hodge(F[a] * g.eta(a)) for a in range(n))
    C = torsion(g)
    L = lagrangian_compact(g)
    Sigma = []
    for a, e in enumerate(g.frame):
        s = interior_product(e, L)
        for b in range(n):
            s = s - interior_product(e, C[b]).wedge(starF[b])
        Sigma.append(s)
    return {"Pi": starF, "Sigma": tuple(Sigma)}


def lagrangian_compact(geometry) -> DForm:
    """``1/2 C_a ^ *F^a``."""
    n = geometry.n
    C = torsion(geometry)
    F = gr_F(geometry)
    out = DForm.zero(n, n, True)
    for a in range(n):
        out = out + (C[a] * geometry.eta(a)).wedge(geometry.hodge(F[a]))
    return out * Fraction(1, 2)


def coframe_gr_model() -> Model:
    def fixture(rng=None, bound: int = 9):
        return Configuration(flat(4, SIGNATURE), {})

    return Model(
        name="coframe-gr",
        n=4,
        decls=(FieldDecl.coframe(),),
        source=SOURCE,
        signature=SIGNATURE,
        expected=gr_expected,
        fixture=fixture,
        lambda_source=LAMBDA,
        params={"n": 4},
        description="coframe form of the Einstein-Hilbert Lagrangian (n = 4, Lorentzian)",
    )


# -- local frame rotations -------------------------------------------------------------
def _check_lorentz(A, signature):
    n = len(signature)
    for i in range(n):
        for j in range(n):
            s = sum((A[k][i] * A[k][j] * signature[k] for k in range(n)), 0 * A[0][0])
            want = signature[i] if i == j else 0
            if not (s == want):
                raise NotOrthochronous(f"A^T eta A differs from eta at ({i}, {j})")


def frame_rotate(config: Configuration, A) -> Configuration:
    """Coframe ``vartheta^a -> A^a_b vartheta^b``; matter fields untouched."""
    g = config.geometry
    r = g.ring
    n = g.n
    A = [[r.coerce(x) if not hasattr(x, "diff") else x for x in row] for row in A]
    if len(A) != n or any(len(row) != n for row in A):
        raise NotOrthochronous(f"rotation must be {n}x{n}")
    _check_lorentz(A, g.signature)
    theta = g.coframe_matrix
    new = [[sum((A[a][b] * theta[b][mu] for b in range(n)), r.zero) for mu in range(n)]
           for a in range(n)]
    return config.replace(geometry=FrameGeometry(new, g.signature))


def rotate_currents(Sigma, A) -> tuple:
    """``Sigma'_a = (A^-1)^b_a Sigma_b``: how a rigidly rotated current transforms."""
    from ..geometry import _invert
    from ..scalars import ring

    n = len(Sigma)
    rr = ring(Sigma[0].n)
    inv, _ = _invert([[rr.coerce(x) if not hasattr(x, "diff") else x for x in row] for row in A], rr)
    out = []
    for a in range(n):
        s = DForm.zero(Sigma[0].n, Sigma[0].degree, Sigma[0].odd)
        for b in range(n):
            if inv[b][a]:
                s = s + Sigma[b] * inv[b][a]
        out.append(s)
    return tuple(out)


def spatial_rotation(cos, sin, n: int = 4, plane=(2, 3)) -> list:
    """Rotation by the given cosine/sine in a spatial coordinate plane."""
    from ..scalars import ring

    r = ring(n)
    A = [[r.one if i == j else r.zero for j in range(n)] for i in range(n)]
    i, j = plane
    cos = r.coerce(cos) if not hasattr(cos, "diff") else cos
    sin = r.coerce(sin) if not hasattr(sin, "diff") else sin
    A[i][i], A[i][j] = cos, -sin
    A[j][i], A[j][j] = sin, cos
    return A


def rational_angle(s):
    """``(cos, sin)`` of the angle with half-angle tangent ``s``."""
    one = s * 0 + 1
    den = one + s * s
    return (one - s * s) / den, (s * 2) / den
