"""Graded brackets: polyvector dgLa, form-side Koszul calculus, transport.

The differential graded Lie algebra lives on elements of
``Lambda^(T_{1,0} (+) T*_{0,1})`` (see :mod:`gkdirac.multivector`), graded by
exterior degree minus one.  On the flat model every basis leg is constant,
so the bracket of two monomials reduces to anchor derivatives: the anchor
sends d/dz_i to the coordinate derivative d/dz_i and kills dzbar legs.  For
monomials f*theta_A, g*theta_B with ordered leg words A, B (vector legs
first) the bracket is

  sum_k (-1)^{|A|-k} f (D_{a_k} g) theta_{A\\a_k} ^ theta_B
  + (-1)^{(|B|-1)|A|} sum_k (-1)^k g (D_{b_k} f) theta_{B\\b_k} ^ theta_A

with 1-based leg positions k and D the anchor derivative.  Restricted to
vector legs only this is the Schouten bracket; on two vector fields it is
the Lie bracket; against a function it gives [P, h] = -P(dh).

On the form side, a bivector sigma induces the generator
``delta = i_sigma d - d i_sigma`` and the derived bracket

  [a, b]_sigma = a ^ delta(b) - (-1)^k delta(a ^ b) + (-1)^k delta(a) ^ b

for a of total degree k.  Contraction with a decomposable bivector X^Y is
``i_Y i_X``, so i_{d/dz1 ^ d/dz2}(dz1^dz2) = +1; on 1-forms the derived
bracket then reproduces

  [xi, eta]_sigma = -( L_{sigma xi} eta - L_{sigma eta} xi - d sigma(xi,eta) ).

``pi_star`` replaces each dz leg by -sigma(dz) and keeps dzbar legs; it
intertwines d with (partial_bar + [sigma, .]) and is an exact bracket
morphism, which is what makes the two Maurer-Cartan residuals below agree
on transported data.
"""
from __future__ import annotations

from .forms import MixedForm
from .linalg import mat_apply, mat_zero
from .model import Model
from .multivector import (
    MVElement,
    bivector_matrix,
    vector_components,
)
from .poly import Poly

__all__ = [
    "dgla_bracket",
    "schouten_bracket",
    "lie_bracket_vec",
    "interior_bivector",
    "delta_sigma",
    "koszul_bracket",
    "lie_derivative_form",
    "bivector_pair",
    "bivector_apply_covector",
    "pi_star",
    "mc_residual_koszul",
    "mc_residual_dgla",
    "unit_vector",
]


def _leg_word(I, J, n):
    """Ordered leg word of a monomial: vector legs (coded i) then bar legs
    (coded n + j)."""
    return tuple(I) + tuple(n + j for j in J)


def dgla_bracket(a: MVElement, b: MVElement, tmax=None) -> MVElement:
    if a.model != b.model:
        raise ValueError("mixed models")
    model = a.model
    out = MVElement(model)
    for (p1, q1), t1 in a.comps.items():
        lenA = p1 + q1
        for (I1, J1), f in t1.items():
            for (p2, q2), t2 in b.comps.items():
                lenB = p2 + q2
                for (I2, J2), g in t2.items():
                    other_b = MVElement.monomial(
                        model, model.poly(1), vecs=I2, bars=J2)
                    other_a = MVElement.monomial(
                        model, model.poly(1), vecs=I1, bars=J1)
                    # legs of A differentiate g; only vector legs (which
                    # occupy the first p1 positions of the word) survive
                    for k, i in enumerate(I1, start=1):
                        dg = g.d_z(i)
                        if not dg:
                            continue
                        sign = (-1) ** (lenA - k)
                        rest = MVElement.monomial(
                            model, model.poly(1),
                            vecs=I1[:k - 1] + I1[k:], bars=J1)
                        term = rest.wedge(other_b, tmax=tmax).poly_mul(
                            f.mul(dg, tmax=tmax), tmax=tmax)
                        out = out + (term if sign == 1 else -term)
                    # legs of B differentiate f, target word theta_{B\b_k}^theta_A
                    pre = (lenB - 1) * lenA
                    for k, j in enumerate(I2, start=1):
                        df = f.d_z(j)
                        if not df:
                            continue
                        sign = (-1) ** (pre + k)
                        rest = MVElement.monomial(
                            model, model.poly(1),
                            vecs=I2[:k - 1] + I2[k:], bars=J2)
                        term = rest.wedge(other_a, tmax=tmax).poly_mul(
                            g.mul(df, tmax=tmax), tmax=tmax)
                        out = out + (term if sign == 1 else -term)
    return out


def schouten_bracket(a: MVElement, b: MVElement, tmax=None) -> MVElement:
    for el in (a, b):
        for (p, q) in el.comps:
            if q:
                raise ValueError("Schouten bracket expects pure polyvectors")
    return dgla_bracket(a, b, tmax=tmax)


def lie_bracket_vec(x: MVElement, y: MVElement, tmax=None) -> MVElement:
    for el in (x, y):
        for key in el.comps:
            if key != (1, 0):
                raise ValueError("Lie bracket expects vector fields")
    return dgla_bracket(x, y, tmax=tmax)


# ---------------------------------------------------------------------------
# Form-side calculus driven by a bivector
# ---------------------------------------------------------------------------

def unit_vector(model: Model, leg: int):
    v = [model.zero_poly() for _ in range(model.dim)]
    v[leg] = model.poly(1)
    return v


def _as_matrix(sigma, model):
    if isinstance(sigma, MVElement):
        return bivector_matrix(sigma, size=model.dim)
    return sigma


def interior_bivector(form: MixedForm, sigma, tmax=None) -> MixedForm:
    """i_sigma with i_{X^Y} = i_Y i_X, extended bilinearly from the matrix."""
    model = form.model
    M = _as_matrix(sigma, model)
    out = MixedForm.zero(model)
    dim = model.dim
    for a in range(dim):
        ea = unit_vector(model, a)
        inner = form.contract_vector(ea)
        if inner.is_zero():
            continue
        for b in range(a + 1, dim):
            c = M[b][a]
            if not c:
                continue
            piece = inner.contract_vector(unit_vector(model, b))
            if piece:
                out = out + piece.poly_mul(c, tmax=tmax)
    return out


def delta_sigma(form: MixedForm, sigma, tmax=None) -> MixedForm:
    """The degree -1 generator i_sigma d - d i_sigma."""
    return interior_bivector(form.d(), sigma, tmax=tmax) \
        - interior_bivector(form, sigma, tmax=tmax).d()


def koszul_bracket(alpha: MixedForm, beta: MixedForm, sigma, deg=None,
                   tmax=None) -> MixedForm:
    """Derived bracket on forms; ``alpha`` must be homogeneous (or pass deg)."""
    if deg is None:
        degs = alpha.total_degrees()
        if len(degs) != 1:
            raise ValueError("alpha must be homogeneous; pass deg explicitly")
        deg = degs[0]
    sgn = (-1) ** deg
    term1 = alpha.wedge(delta_sigma(beta, sigma, tmax=tmax), tmax=tmax)
    term2 = delta_sigma(alpha.wedge(beta, tmax=tmax), sigma, tmax=tmax).scale(sgn)
    term3 = delta_sigma(alpha, sigma, tmax=tmax).wedge(beta, tmax=tmax).scale(sgn)
    return term1 - term2 + term3


def lie_derivative_form(vec_components, form: MixedForm) -> MixedForm:
    """Cartan formula i_X d + d i_X."""
    return form.d().contract_vector(vec_components) + \
        form.contract_vector(vec_components).d()


def bivector_apply_covector(sigma, model: Model, covec):
    """sigma(xi) as frame components: (M xi)^k."""
    M = _as_matrix(sigma, model)
    return mat_apply(M, covec)


def bivector_pair(sigma, model: Model, xi, eta) -> Poly:
    """sigma(xi, eta) = eta(sigma xi)."""
    sx = bivector_apply_covector(sigma, model, xi)
    n = model.n
    acc = Poly.zero(n)
    for e, v in zip(eta, sx):
        if e and v:
            acc = acc + e * v
    return acc


# ---------------------------------------------------------------------------
# Transport between the two complexes
# ---------------------------------------------------------------------------

def pi_star(form: MixedForm, sigma: MVElement, tmax=None) -> MVElement:
    """Replace every dz leg by -sigma(dz) and reinterpret dzbar legs as
    polyvector legs.  No compensating sign: the leg substitution is taken
    in the stored leg order."""
    model = form.model
    n = model.n
    M = bivector_matrix(sigma)  # n x n holomorphic block
    minus_cols = []
    for a in range(n):
        comp = {}
        for k in range(n):
            c = M[k][a]
            if c:
                comp[((k,), ())] = -c
        minus_cols.append(MVElement(model, {(1, 0): comp} if comp else None))
    out = MVElement(model)
    for (p, q, r), table in form.comps.items():
        if r:
            raise ValueError("transport undefined on dt legs")
        for (I, J), c in table.items():
            acc = MVElement.function(model, c)
            for i in I:
                acc = acc.wedge(minus_cols[i], tmax=tmax)
            if not acc:
                continue
            bar_leg = MVElement.monomial(model, model.poly(1), bars=J)
            acc = acc.wedge(bar_leg, tmax=tmax)
            out = out + acc
    return out


def mc_residual_koszul(omega: MixedForm, sigma, tmax=None) -> MixedForm:
    """d omega + (1/2)[omega, omega]_sigma (form-side flatness residual)."""
    from fractions import Fraction
    out = omega.d() + koszul_bracket(omega, omega, sigma, deg=2,
                                     tmax=tmax).scale(Fraction(1, 2))
    if tmax is not None:
        out = out.t_truncate(tmax)
    return out


def mc_residual_dgla(eps: MVElement, sigma: MVElement, tmax=None) -> MVElement:
    """partial_bar(eps) + [sigma, eps] + (1/2)[eps, eps] for the background
    bivector sigma (assumed holomorphic Poisson)."""
    from fractions import Fraction
    out = eps.partial_bar() + dgla_bracket(sigma, eps, tmax=tmax) \
        + dgla_bracket(eps, eps, tmax=tmax).scale(Fraction(1, 2))
    if tmax is not None:
        out = out.t_truncate(tmax)
    return out
