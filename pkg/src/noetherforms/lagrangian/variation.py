"""First variation of a Lagrangian and its Euler-Lagrange forms.

The expression is linearized in forward mode.  Every value carries a
tangent per *slot*: one slot for each coordinate basis component of
``psi``, ``d psi``, ``vartheta^a`` and ``d vartheta^a``, which are treated as
independent perturbations.  Hodge (and ``kappa``) nodes pick up the frame
variation through the master formula

    delta(*alpha) = *(delta alpha) + delta_theta^a ^ (e_a _| *alpha)
                    - *[delta_theta^a ^ (e_a _| alpha)].

The tangents are then collected into the left-factored shape

    delta L = dpsi ^ sigma + delta(dpsi) ^ pi
              + delta_theta^a ^ Sigma_a + delta(dtheta^a) ^ Pi_a

by left division of each slot tangent by its basis form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..errors import BadDegree, ConfigError, UnknownField, UnsupportedNode
from ..forms import DForm, _accumulate, _merge, basis, dx, interior_product
from ..geometry import slope_part
from .ast import Const, Constitutive, Contract, ExteriorD, FieldRef, Hodge, ScalarMul, Sum, Wedge
from .evaluate import Configuration, _Evaluator, evaluate
from .typecheck import infer


class NotFactorable(ArithmeticError):
    """A slot tangent is not of the form ``dx^I ^ lambda``."""


# -- d pushed to the leaves ----------------------------------------------------
def push_d(node, decls: dict, n: int, bound=frozenset()):
    """Rewrite so that ``d`` only wraps field references; ``None`` means zero."""
    if isinstance(node, ExteriorD):
        return _d_of(push_d(node.child, decls, n, bound), decls, n, bound)
    if isinstance(node, Wedge):
        left = push_d(node.left, decls, n, bound)
        right = push_d(node.right, decls, n, bound)
        if left is None or right is None:
            return None
        return Wedge(left, right)
    if isinstance(node, (Hodge, Constitutive)):
        child = push_d(node.child, decls, n, bound)
        return None if child is None else type(node)(child)
    if isinstance(node, ScalarMul):
        child = push_d(node.child, decls, n, bound)
        if child is None or node.coef == 0:
            return None
        return ScalarMul(node.coef, child)
    if isinstance(node, Sum):
        kids = tuple(k for k in (push_d(c, decls, n, bound) for c in node.children) if k is not None)
        if not kids:
            return None
        return kids[0] if len(kids) == 1 else Sum(kids)
    if isinstance(node, Contract):
        child = push_d(node.child, decls, n, bound | set(node.indices))
        return None if child is None else Contract(node.indices, child)
    if isinstance(node, Const):
        return None if node.value == 0 else node
    return node


def _d_of(node, decls, n, bound):
    if node is None or isinstance(node, Const):
        return None
    if isinstance(node, FieldRef):
        return ExteriorD(node)
    if isinstance(node, ExteriorD):
        return None
    if isinstance(node, Wedge):
        p, _ = infer(node.left, decls, n, bound)
        first = _d_of(node.left, decls, n, bound)
        second = _d_of(node.right, decls, n, bound)
        terms = []
        if first is not None:
            terms.append(Wedge(first, node.right))
        if second is not None:
            w = Wedge(node.left, second)
            terms.append(ScalarMul(Fraction(-1), w) if p % 2 else w)
        if not terms:
            return None
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))
    if isinstance(node, ScalarMul):
        child = _d_of(node.child, decls, n, bound)
        return None if child is None else ScalarMul(node.coef, child)
    if isinstance(node, Sum):
        kids = tuple(k for k in (_d_of(c, decls, n, bound) for c in node.children) if k is not None)
        if not kids:
            return None
        return kids[0] if len(kids) == 1 else Sum(kids)
    if isinstance(node, Contract):
        child = _d_of(node.child, decls, n, bound | set(node.indices))
        return None if child is None else Contract(node.indices, child)
    raise UnsupportedNode(
        f"d of {type(node).__name__} would make the Lagrangian depend on second derivatives"
    )


# -- forward-mode linearization --------------------------------------------------
def _add_tangent(out: dict, slot, t: DForm):
    if not t:
        return
    prev = out.get(slot)
    if prev is None:
        out[slot] = t
    else:
        s = prev + t
        if s:
            out[slot] = s
        else:
            del out[slot]


class _Linearizer(_Evaluator):
    def __init__(self, config: Configuration, decls: dict):
        super().__init__(config)
        self.decls = decls

    def eval(self, node, env):
        g, n = self.g, self.n
        if isinstance(node, Const):
            return DForm.function(g.ring.const(node.value), n), {}
        if isinstance(node, FieldRef):
            return self.leaf(node, env, derivative=False)
        if isinstance(node, ExteriorD):
            if not isinstance(node.child, FieldRef):
                raise UnsupportedNode("exterior derivative left above a leaf")
            return self.leaf(node.child, env, derivative=True)
        if isinstance(node, Wedge):
            lv, lt = self(node.left, env)
            rv, rt = self(node.right, env)
            tan = {}
            for s, t in lt.items():
                _add_tangent(tan, s, t.wedge(rv))
            for s, t in rt.items():
                _add_tangent(tan, s, lv.wedge(t))
            return lv.wedge(rv), tan
        if isinstance(node, (Hodge, Constitutive)):
            return self.star_like(node, env)
        if isinstance(node, ScalarMul):
            v, t = self(node.child, env)
            return v * node.coef, {s: x * node.coef for s, x in t.items()}
        if isinstance(node, Sum):
            v, t = self(node.children[0], env)
            tan = dict(t)
            for c in node.children[1:]:
                cv, ct = self(c, env)
                v = v + cv
                for s, x in ct.items():
                    _add_tangent(tan, s, x)
            return v, tan
        if isinstance(node, Contract):
            v, tan = None, {}
            for values in product(range(n), repeat=len(node.indices)):
                sub = dict(env)
                sub.update(zip(node.indices, values))
                cv, ct = self(node.child, sub)
                v = cv if v is None else v + cv
                for s, x in ct.items():
                    _add_tangent(tan, s, x)
            return v, tan
        raise UnsupportedNode(f"node {type(node).__name__} is not supported by the linearizer")

    def leaf(self, ref: FieldRef, env, derivative: bool):
        n, cfg = self.n, self.config
        if ref.name == cfg.coframe_name:
            a = env[ref.index]
            sign = self.g.eta(a) if ref.lowered else 1
            base = self.g.coframe[a] * sign
            if derivative:
                tan = {("dtheta", ref.name, a, K): dx(n, *K, coeff=sign) for K in basis(n, 2)}
                return base.d(), tan
            tan = {("theta", ref.name, a, (mu,)): dx(n, mu, coeff=sign) for mu in range(n)}
            return base, tan
        f = cfg.fields.get(ref.name)
        if f is None:
            raise UnknownField(ref.name)
        if derivative:
            if f.degree + 1 > n:
                return f.d(), {}
            tan = {("dpsi", ref.name, None, K): dx(n, *K) for K in basis(n, f.degree + 1)}
            return f.d(), tan
        tan = {("psi", ref.name, None, K): dx(n, *K) for K in basis(n, f.degree)}
        return f, tan

    def op(self, node, alpha):
        if isinstance(node, Hodge):
            return self.g.hodge(alpha)
        if self.config.chi is None:
            raise ConfigError("kappa(...) needs a constitutive tensor in the configuration")
        return self.config.chi.apply(self.g, alpha)

    def star_like(self, node, env):
        g, n = self.g, self.n
        cv, ct = self(node.child, env)
        v = self.op(node, cv)
        tan = {s: self.op(node, t) for s, t in ct.items()}
        fam = self.config.coframe_name
        for a in range(n):
            iv = interior_product(g.frame[a], v)
            ic = interior_product(g.frame[a], cv) if cv.degree else None
            if not iv and not ic:
                continue
            for mu in range(n):
                e = dx(n, mu)
                t = e.wedge(iv)
                if ic:
                    t = t - self.op(node, e.wedge(ic))
                _add_tangent(tan, ("theta", fam, a, (mu,)), t)
        return v, tan


# -- collection ------------------------------------------------------------------------
def left_divide(targets: dict, q: int, n: int, degree: int, odd: bool) -> DForm:
    """The ``lambda`` with ``dx^I ^ lambda = targets[I]`` for every ``q``-index ``I``.

    Missing keys mean a zero target.  Raises :class:`NotFactorable` when no
    such ``lambda`` exists.
    """
    if degree < 0:
        if any(targets.values()):
            raise NotFactorable("nonzero tangent of too low degree")
        return None
    out = {}
    seen = {}
    for I, T in targets.items():
        for K, c in T.coeffs.items():
            if not set(I) <= set(K):
                raise NotFactorable(f"dx^{I} does not divide the term dx^{K}")
            J = tuple(k for k in K if k not in I)
            _, sign = _merge(I, J)
            val = c if sign > 0 else -c
            prev = seen.get(J)
            if prev is None:
                seen[J] = val
            elif not (prev == val):
                raise NotFactorable(f"inconsistent component {J}")
    for J, c in seen.items():
        _accumulate(out, J, c)
    lam = DForm(n, degree, out, odd)
    for I in basis(n, q):
        T = targets.get(I)
        lhs = dx(n, *I).wedge(lam)
        if T is None:
            ok = lhs.is_zero()
        else:
            ok = (lhs - T.with_parity(lam.odd)).is_zero() if T else lhs.is_zero()
        if not ok:
            raise NotFactorable(f"dx^{I} ^ lambda misses its target")
    return lam


@dataclass(frozen=True)
class MatterCurrents:
    name: str
    degree: int
    sigma: DForm
    pi: DForm


@dataclass(frozen=True)
class DerivedCurrents:
    """Collected first derivatives of a Lagrangian at a configuration."""

    n: int
    lagrangian: DForm
    matter: dict
    Sigma: tuple
    Pi: tuple
    config: Configuration

    # single-matter-field conveniences
    def _only(self) -> MatterCurrents:
        if len(self.matter) != 1:
            raise KeyError(f"{len(self.matter)} matter fields; name one explicitly")
        return next(iter(self.matter.values()))

    @property
    def sigma(self) -> DForm:
        return self._only().sigma

    @property
    def pi(self) -> DForm:
        return self._only().pi

    @property
    def p(self) -> int:
        return self._only().degree

    def E_mat(self, name: str | None = None) -> DForm:
        m = self._only() if name is None else self.matter[name]
        dpi = m.pi.d()
        return m.sigma + (dpi if m.degree % 2 else -dpi)

    def E_gr(self, a: int) -> DForm:
        return self.Sigma[a] + self.Pi[a].d()

    def omega(self, delta_fields=None, delta_coframe=None) -> DForm:
        """``delta psi ^ pi + delta_theta^a ^ Pi_a``."""
        out = DForm.zero(self.n, self.n - 1, self.lagrangian.odd)
        for name, dpsi in (delta_fields or {}).items():
            out = out + dpsi.wedge(self.matter[name].pi)
        if delta_coframe is not None:
            for dt, P in zip(delta_coframe, self.Pi):
                out = out + dt.wedge(P)
        return out


@dataclass(frozen=True)
class EulerLagrange:
    E_mat: dict
    E_gr: tuple


def _decls_from(config: Configuration, decls):
    from .typecheck import FieldDecl

    if decls is None:
        decls = [FieldDecl.matter(k, f.degree) for k, f in config.fields.items()]
        decls.append(FieldDecl.coframe(config.coframe_name))
    out = {d.name: d for d in decls}
    if config.coframe_name not in out:
        out[config.coframe_name] = FieldDecl.coframe(config.coframe_name)
    return out


def linearize(expr, config: Configuration, decls=None):
    """``(value, {slot: tangent})`` of ``expr`` at ``config``."""
    dmap = _decls_from(config, decls)
    config.validate(dmap.values())
    degree, odd = infer(expr, dmap, config.n)
    norm = push_d(expr, dmap, config.n)
    if norm is None:
        return DForm.zero(config.n, degree, odd), {}, degree, odd
    value, tan = _Linearizer(config, dmap)(norm, {})
    return value.with_parity(odd) if not value else value, tan, degree, odd


def variational_derivatives(expr, config: Configuration, decls=None) -> DerivedCurrents:
    """Collected ``sigma, pi, Sigma_a, Pi_a`` of an ``n``-form expression."""
    n = config.n
    value, tan, degree, odd = linearize(expr, config, decls)
    if degree != n:
        raise BadDegree(f"variational derivatives need an {n}-form, got a {degree}-form")
    groups = {}
    for (kind, name, a, key), t in tan.items():
        groups.setdefault((kind, name, a), {})[key] = t

    matter = {}
    for name, f in config.fields.items():
        p = f.degree
        if p >= n:
            raise BadDegree(f"matter field {name!r} of degree {p} has no momentum in n={n}")
        sigma = left_divide(groups.get(("psi", name, None), {}), p, n, n - p, odd)
        pi = left_divide(groups.get(("dpsi", name, None), {}), p + 1, n, n - p - 1, odd)
        matter[name] = MatterCurrents(name, p, sigma, pi)
    fam = config.coframe_name
    Sigma = tuple(left_divide(groups.get(("theta", fam, a), {}), 1, n, n - 1, odd) for a in range(n))
    Pi = tuple(left_divide(groups.get(("dtheta", fam, a), {}), 2, n, n - 2, odd) for a in range(n))
    return DerivedCurrents(n, value, matter, Sigma, Pi, config)


def euler_lagrange(dc: DerivedCurrents) -> EulerLagrange:
    return EulerLagrange(
        {name: dc.E_mat(name) for name in dc.matter},
        tuple(dc.E_gr(a) for a in range(dc.n)),
    )


# -- the independent route ----------------------------------------------------------
def jet_variation(expr, config: Configuration, delta_fields=None, delta_coframe=None) -> DForm:
    """``t``-coefficient of ``expr`` evaluated at ``config + t * perturbation``."""
    return slope_part(evaluate(expr, config.perturbed(delta_fields, delta_coframe)))


def variational_identity_residual(expr, dc: DerivedCurrents, delta_fields=None,
                                  delta_coframe=None) -> DForm:
    """jet variation minus ``dpsi ^ E_mat + dtheta^a ^ E_gr_a + d Omega``; zero when correct."""
    n = dc.n
    delta_fields = delta_fields or {}
    lhs = jet_variation(expr, dc.config, delta_fields, delta_coframe)
    rhs = DForm.zero(n, n, dc.lagrangian.odd)
    for name, dpsi in delta_fields.items():
        rhs = rhs + dpsi.wedge(dc.E_mat(name))
    if delta_coframe is not None:
        for a, dt in enumerate(delta_coframe):
            rhs = rhs + dt.wedge(dc.E_gr(a))
    rhs = rhs + dc.omega(delta_fields, delta_coframe).d()
    return lhs.with_parity(rhs.odd) - rhs if lhs else -rhs
