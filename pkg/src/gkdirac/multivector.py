"""Polyvector fields valued in d/dz and dzbar legs, plus matrix bridges.

An :class:`MVElement` lives in the exterior algebra generated by the
holomorphic coordinate vector fields d/dz_i and the antiholomorphic
coordinate 1-forms dzbar_j.  The (p, q) component is a table
``(I, J) -> Poly`` for monomials

    f * (d/dz_I) ^ dzbar_J          (vector legs stored first)

Degree bookkeeping: an element concentrated in (p, q) has weight p + q - 1
for the graded bracket in :mod:`gkdirac.brackets`.

Tensor-evaluation convention (load-bearing!): when a (1,1) element phi is
read as a bundle map T_{0,1} -> T_{1,0}, the dzbar leg is contracted
*through* the vector leg, which costs a sign; concretely

    phi_geom(d/dzbar_b) = - sum_i phi[i, b] d/dz_i

where phi[i, b] is the stored coefficient of (d/dz_i)^dzbar_b.  All graph
frames and involutivity statements downstream assume exactly this reading.

Bivector matrices: a bivector (or any 2-vector in the full complexified
tangent) is stored as an antisymmetric matrix M over the frame legs with

    (M xi)^k = sum_l M[k][l] xi_l,   c * e_a ^ e_b (a<b)  =>  M[b][a] = +c,

so that contraction follows i_xi(X^Y) = xi(X) Y - xi(Y) X.  Two-form
matrices F follow the mirrored rule (i_X beta = F X as a covector), making
operator strings like beta.sigma compositions plain matrix products.
"""
from __future__ import annotations

from fractions import Fraction

from ._combinat import insert_index, merge_indices, remove_index
from .linalg import mat_mul, mat_zero
from .model import Model
from .poly import Poly
from .scalars import Scalar

__all__ = [
    "MVElement",
    "vec",
    "covec_bar",
    "phi_geom_matrix",
    "mv_from_endo",
    "bivector_matrix",
    "mv_from_bivector_matrix",
    "form_matrix",
    "form_from_matrix",
    "vector_components",
    "covector_components",
]


class MVElement:
    __slots__ = ("model", "comps")

    def __init__(self, model: Model, comps=None):
        self.model = model
        self.comps: dict = {}
        if comps:
            for key, table in comps.items():
                clean = {ij: c for ij, c in table.items() if c}
                if clean:
                    self.comps[key] = clean

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, model):
        return cls(model)

    @classmethod
    def function(cls, model, f: Poly):
        out = cls(model)
        if f:
            out.comps[(0, 0)] = {((), ()): f}
        return out

    @classmethod
    def monomial(cls, model, coeff: Poly, vecs=(), bars=()):
        vecs = tuple(vecs)
        bars = tuple(bars)
        if tuple(sorted(vecs)) != vecs or tuple(sorted(bars)) != bars:
            raise ValueError("index tuples must be strictly increasing")
        out = cls(model)
        if coeff:
            out.comps[(len(vecs), len(bars))] = {(vecs, bars): coeff}
        return out

    # -- bookkeeping -----------------------------------------------------
    def _setterm(self, key, ij, c: Poly):
        if not c:
            return
        table = self.comps.setdefault(key, {})
        prev = table.get(ij)
        tot = c if prev is None else prev + c
        if tot:
            table[ij] = tot
        else:
            table.pop(ij, None)
            if not table:
                self.comps.pop(key, None)

    def terms(self):
        for key, table in self.comps.items():
            for ij, c in table.items():
                yield key, ij, c

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if not isinstance(other, MVElement):
            return NotImplemented
        return self.model == other.model and not (self - other).comps

    def degrees(self):
        return sorted(self.comps.keys())

    def component(self, p, q) -> "MVElement":
        out = MVElement(self.model)
        table = self.comps.get((p, q))
        if table:
            out.comps[(p, q)] = dict(table)
        return out

    def coefficient(self, vecs=(), bars=()) -> Poly:
        key = (len(vecs), len(bars))
        return self.comps.get(key, {}).get(
            (tuple(vecs), tuple(bars)), Poly.zero(self.model.n))

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MVElement):
            return NotImplemented
        if self.model != other.model:
            raise ValueError("mixed models")
        out = MVElement(self.model)
        out.comps = {k: dict(t) for k, t in self.comps.items()}
        for key, table in other.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c)
        return out

    def __neg__(self):
        out = MVElement(self.model)
        out.comps = {k: {ij: -c for ij, c in t.items()}
                     for k, t in self.comps.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MVElement":
        if isinstance(c, (int, Fraction)):
            c = Scalar(c)
        out = MVElement(self.model)
        for k, t in self.comps.items():
            table = {}
            for ij, v in t.items():
                w = v.scale(c)
                if w:
                    table[ij] = w
            if table:
                out.comps[k] = table
        return out

    def poly_mul(self, f: Poly, tmax=None) -> "MVElement":
        out = MVElement(self.model)
        for k, t in self.comps.items():
            for ij, v in t.items():
                out._setterm(k, ij, v.mul(f, tmax=tmax))
        return out

    # -- wedge -----------------------------------------------------------
    def wedge(self, other: "MVElement", tmax=None) -> "MVElement":
        if self.model != other.model:
            raise ValueError("mixed models")
        out = MVElement(self.model)
        for (p1, q1), t1 in self.comps.items():
            for (p2, q2), t2 in other.comps.items():
                base_sign = (-1) ** (q1 * p2)
                for (I1, J1), c1 in t1.items():
                    for (I2, J2), c2 in t2.items():
                        mi = merge_indices(I1, I2)
                        if mi is None:
                            continue
                        mj = merge_indices(J1, J2)
                        if mj is None:
                            continue
                        si, I = mi
                        sj, J = mj
                        c = c1.mul(c2, tmax=tmax)
                        if base_sign * si * sj == -1:
                            c = -c
                        out._setterm((p1 + p2, q1 + q2), (I, J), c)
        return out

    # -- dzbar differential ----------------------------------------------
    def partial_bar(self) -> "MVElement":
        """dzbar-differential; the new leg lands in front of the dzbar block,
        behind the p vector legs, hence the (-1)^p placement sign."""
        out = MVElement(self.model)
        n = self.model.n
        for (p, q), table in self.comps.items():
            for (I, J), c in table.items():
                for j in range(n):
                    dc = c.d_zbar(j)
                    if not dc:
                        continue
                    res = insert_index(j, J)
                    if res is None:
                        continue
                    s, J2 = res
                    s *= (-1) ** p
                    out._setterm((p, q + 1), (I, J2), dc if s == 1 else -dc)
        return out

    # -- t-series helpers ------------------------------------------------
    def t_coefficient(self, k: int) -> "MVElement":
        out = MVElement(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.t_coefficient(k))
        return out

    def t_truncate(self, tmax: int) -> "MVElement":
        out = MVElement(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.t_truncate(tmax))
        return out

    def t_degree(self) -> int:
        return max((c.t_degree() for _, _, c in self.terms()), default=-1)

    def substitute_t(self, value: Scalar) -> "MVElement":
        out = MVElement(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.substitute_t(value))
        return out

    def map_coeffs(self, fn) -> "MVElement":
        out = MVElement(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, fn(c))
        return out

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.comps:
            return "0"
        bits = []
        for (p, q) in sorted(self.comps):
            for (I, J) in sorted(self.comps[(p, q)]):
                c = self.comps[(p, q)][(I, J)]
                legs = [f"@z{i+1}" for i in I] + [f"dzb{j+1}" for j in J]
                mono = "^".join(legs) if legs else "1"
                bits.append(f"[{c.render()}] {mono}")
        return "  +  ".join(bits)

    def __repr__(self):
        return f"MVElement<{self.render()}>"


# -- single-leg builders -------------------------------------------------

def vec(model: Model, i: int) -> MVElement:
    """The coordinate vector field d/dz_i as a (1,0) element."""
    return MVElement.monomial(model, model.poly(1), vecs=(i,))


def covec_bar(model: Model, j: int) -> MVElement:
    """dzbar_j as a (0,1) element."""
    return MVElement.monomial(model, model.poly(1), bars=(j,))


# -- tensor-evaluation bridges ------------------------------------------

def phi_geom_matrix(phi: MVElement):
    """Bundle-map matrix of a (1,1) element: column b holds the components
    of phi_geom(d/dzbar_b) in the d/dz frame.  Includes the evaluation sign.
    """
    model = phi.model
    n = model.n
    for key in phi.comps:
        if key != (1, 1):
            raise ValueError("phi must be purely of type (1,1)")
    M = mat_zero(n, n, n)
    for ((i,), (b,)), c in phi.comps.get((1, 1), {}).items():
        M[i][b] = M[i][b] - c
    return M


def mv_from_endo(model: Model, M) -> MVElement:
    """Inverse of :func:`phi_geom_matrix`."""
    out = MVElement(model)
    n = model.n
    for i in range(n):
        for b in range(n):
            if M[i][b]:
                out._setterm((1, 1), ((i,), (b,)), -M[i][b])
    return out


def bivector_matrix(sigma: MVElement, size=None):
    """Antisymmetric leg matrix of a (2,0) element (rows/cols over the full
    frame when ``size`` is given, else over the holomorphic legs alone)."""
    model = sigma.model
    n = model.n
    for key in sigma.comps:
        if key != (2, 0):
            raise ValueError("input must be purely of type (2,0)")
    m = size if size is not None else n
    M = mat_zero(m, m, n)
    for ((i, j), _), c in sigma.comps.get((2, 0), {}).items():
        M[j][i] = M[j][i] + c
        M[i][j] = M[i][j] - c
    return M


def mv_from_bivector_matrix(model: Model, M) -> MVElement:
    """Read the holomorphic-holomorphic block of a leg matrix back into a
    (2,0) element (entries outside that block are ignored)."""
    out = MVElement(model)
    n = model.n
    for i in range(n):
        for j in range(i + 1, n):
            c = M[j][i]
            if c:
                out._setterm((2, 0), ((i, j), ()), c)
    return out


def form_matrix(beta, size=None):
    """Leg matrix F of a 2-form (MixedForm of total degree 2, no dt unless
    the model has one): i_X beta = F X as a covector column.

    Legs are ordered dz_1..dz_n, dzbar_1..dzbar_n[, dt]; the dt leg of a
    stored monomial sits in front, which flips its sign relative to the
    tail position it occupies in the leg order.
    """
    model = beta.model
    n = model.n
    m = size if size is not None else model.dim
    F = mat_zero(m, m, n)

    def put(a, b, c):
        # c * e_a ^ e_b with a < b in leg order
        F[b][a] = F[b][a] + c
        F[a][b] = F[a][b] - c

    for (p, q, r), table in beta.comps.items():
        if p + q + r != 2:
            raise ValueError("form must be homogeneous of total degree 2")
        for (I, J), c in table.items():
            if r == 0:
                if p == 2:
                    put(I[0], I[1], c)
                elif p == 1 and q == 1:
                    put(I[0], n + J[0], c)
                else:
                    put(n + J[0], n + J[1], c)
            else:
                # dt ^ e_a = - e_a ^ dt, dt is the last leg (index 2n)
                leg = I[0] if p == 1 else n + J[0]
                put(leg, 2 * n, -c)
    return F


def form_from_matrix(model: Model, F):
    """Inverse of :func:`form_matrix` (antisymmetry is asserted)."""
    from .forms import MixedForm

    n = model.n
    m = len(F)
    out = MixedForm(model)
    for a in range(m):
        for b in range(a + 1, m):
            c = F[b][a]
            if (F[a][b] + c):
                raise ValueError("matrix is not antisymmetric")
            if not c:
                continue
            if b < n:
                out._setterm((2, 0, 0), ((a, b), ()), c)
            elif a < n <= b < 2 * n:
                out._setterm((1, 1, 0), ((a,), (b - n,)), c)
            elif n <= a and b < 2 * n:
                out._setterm((0, 2, 0), ((), (a - n, b - n)), c)
            elif b == 2 * n:
                # c * e_a ^ dt = -c * dt ^ e_a
                if a < n:
                    out._setterm((1, 0, 1), ((a,), ()), -c)
                else:
                    out._setterm((0, 1, 1), ((), (a - n,)), -c)
    return out


def vector_components(x: MVElement):
    """Frame components of a (1,0) element (length dim, zbar and dt slots 0)."""
    model = x.model
    n = model.n
    for key in x.comps:
        if key != (1, 0):
            raise ValueError("input must be a vector field")
    out = [Poly.zero(n) for _ in range(model.dim)]
    for ((i,), _), c in x.comps.get((1, 0), {}).items():
        out[i] = c
    return out


def covector_components(x: MVElement):
    """Frame components of a (0,1) element in the dzbar slots."""
    model = x.model
    n = model.n
    for key in x.comps:
        if key != (0, 1):
            raise ValueError("input must be a dzbar-valued 1-form")
    out = [Poly.zero(n) for _ in range(model.dim)]
    for (_, (j,)), c in x.comps.get((0, 1), {}).items():
        out[n + j] = c
    return out
