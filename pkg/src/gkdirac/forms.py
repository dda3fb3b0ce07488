"""Mixed-degree differential forms on the flat model.

A :class:`MixedForm` stores bigraded components: the (p, q, r) piece is a
table mapping index pairs ``(I, J)`` (strictly increasing tuples) to
polynomial coefficients for the basis monomial

    dt^r ^ dz_I ^ dzbar_J        (r in {0,1}; r = 0 unless the model has a
                                  parameter direction)

The dt leg always sits in front.  The exterior derivative splits as
``d = partial + partial_bar`` (plus a dt term on parameter models);
``partial`` inserts a dz leg at the very front, ``partial_bar`` inserts a
dzbar leg at the front, which costs the sign (-1)^{r+p} to commute into
storage position.  These placement conventions are load-bearing: the
polyvector calculus in :mod:`gkdirac.brackets` is tuned against them.

Key facts exercised by the test-suite: d^2 = 0 and its bigraded pieces,
graded commutativity of the wedge, and the Euler homotopy identity
``partial_bar(h(a)) + h(partial_bar(a)) = a`` for (0, q>=1) forms.
"""
from __future__ import annotations

from fractions import Fraction

from ._combinat import insert_index, merge_indices, remove_index
from .model import Model
from .poly import Poly
from .scalars import Scalar, ONE

__all__ = [
    "MixedForm",
    "dz",
    "dzbar",
    "dt_leg",
    "euler_homotopy",
]


class MixedForm:
    __slots__ = ("model", "comps")

    def __init__(self, model: Model, comps=None):
        self.model = model
        # (p, q, r) -> {(I, J): Poly}
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
            out.comps[(0, 0, 0)] = {((), ()): f}
        return out

    @classmethod
    def monomial(cls, model, coeff: Poly, holo=(), anti=(), dt: bool = False):
        """Build coeff * dt^r ^ dz_holo ^ dzbar_anti (indices 0-based, sorted)."""
        if dt and not model.param:
            raise ValueError("dt leg on a model without parameter direction")
        holo = tuple(holo)
        anti = tuple(anti)
        if tuple(sorted(holo)) != holo or tuple(sorted(anti)) != anti:
            raise ValueError("index tuples must be strictly increasing")
        out = cls(model)
        if coeff:
            out.comps[(len(holo), len(anti), 1 if dt else 0)] = {(holo, anti): coeff}
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
        if not isinstance(other, MixedForm):
            return NotImplemented
        return self.model == other.model and not (self - other).comps

    def degrees(self):
        return sorted(self.comps.keys())

    def total_degrees(self):
        return sorted({p + q + r for (p, q, r) in self.comps})

    def component(self, p, q, r=0) -> "MixedForm":
        out = MixedForm(self.model)
        table = self.comps.get((p, q, r))
        if table:
            out.comps[(p, q, r)] = dict(table)
        return out

    def project_type(self, p, q) -> "MixedForm":
        """The (p, q) piece (no dt leg)."""
        return self.component(p, q, 0)

    def coefficient(self, holo=(), anti=(), dt=False) -> Poly:
        key = (len(holo), len(anti), 1 if dt else 0)
        table = self.comps.get(key, {})
        return table.get((tuple(holo), tuple(anti)), Poly.zero(self.model.n))

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MixedForm):
            return NotImplemented
        if self.model != other.model:
            raise ValueError("mixed models")
        out = MixedForm(self.model)
        out.comps = {k: dict(t) for k, t in self.comps.items()}
        for key, table in other.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c)
        return out

    def __neg__(self):
        out = MixedForm(self.model)
        out.comps = {
            k: {ij: -c for ij, c in t.items()} for k, t in self.comps.items()
        }
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MixedForm":
        if isinstance(c, (int, Fraction)):
            c = Scalar(c)
        out = MixedForm(self.model)
        for k, t in self.comps.items():
            table = {}
            for ij, v in t.items():
                w = v.scale(c)
                if w:
                    table[ij] = w
            if table:
                out.comps[k] = table
        return out

    def poly_mul(self, f: Poly, tmax=None) -> "MixedForm":
        out = MixedForm(self.model)
        for k, t in self.comps.items():
            for ij, v in t.items():
                out._setterm(k, ij, v.mul(f, tmax=tmax))
        return out

    # -- wedge -----------------------------------------------------------
    def wedge(self, other: "MixedForm", tmax=None) -> "MixedForm":
        if self.model != other.model:
            raise ValueError("mixed models")
        out = MixedForm(self.model)
        for (p1, q1, r1), t1 in self.comps.items():
            for (p2, q2, r2), t2 in other.comps.items():
                if r1 + r2 > 1:
                    continue
                # move dt of the second factor to the front: crosses p1+q1 legs
                base_sign = (-1) ** ((p1 + q1) * r2)
                # move second factor's dz block past first factor's dzbar block
                base_sign *= (-1) ** (q1 * p2)
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
                        out._setterm((p1 + p2, q1 + q2, r1 + r2), (I, J), c)
        return out

    # -- conjugation -----------------------------------------------------
    def conj(self) -> "MixedForm":
        """Complex conjugate: swaps dz_I with dzbar_I, conjugates coefficients.

        Re-sorting the swapped legs into storage order costs (-1)^{pq}.
        """
        out = MixedForm(self.model)
        for (p, q, r), table in self.comps.items():
            sign = (-1) ** (p * q)
            for (I, J), c in table.items():
                cc = c.conj()
                if sign == -1:
                    cc = -cc
                out._setterm((q, p, r), (J, I), cc)
        return out

    def is_real(self) -> bool:
        return not (self - self.conj()).comps

    def real_part(self) -> "MixedForm":
        return (self + self.conj()).scale(Scalar(Fraction(1, 2)))

    def imag_part(self) -> "MixedForm":
        return (self - self.conj()).scale(Scalar(0, Fraction(-1, 2)))

    # -- exterior derivative ---------------------------------------------
    def partial(self) -> "MixedForm":
        """The dz-part of d: inserts a dz leg at the very front."""
        out = MixedForm(self.model)
        n = self.model.n
        for (p, q, r), table in self.comps.items():
            for (I, J), c in table.items():
                for i in range(n):
                    dc = c.d_z(i)
                    if not dc:
                        continue
                    res = insert_index(i, I)
                    if res is None:
                        continue
                    s, I2 = res
                    s *= (-1) ** r  # dz crosses the dt leg
                    out._setterm((p + 1, q, r), (I2, J), dc if s == 1 else -dc)
        return out

    def partial_bar(self) -> "MixedForm":
        """The dzbar-part of d: inserts a dzbar leg at the very front.

        Commuting it past dt^r and the p dz legs costs (-1)^{r+p}.
        """
        out = MixedForm(self.model)
        n = self.model.n
        for (p, q, r), table in self.comps.items():
            for (I, J), c in table.items():
                for j in range(n):
                    dc = c.d_zbar(j)
                    if not dc:
                        continue
                    res = insert_index(j, J)
                    if res is None:
                        continue
                    s, J2 = res
                    s *= (-1) ** (r + p)
                    out._setterm((p, q + 1, r), (I, J2), dc if s == 1 else -dc)
        return out

    def d_param(self) -> "MixedForm":
        """The dt-part of d (parameter models only)."""
        out = MixedForm(self.model)
        if not self.model.param:
            return out
        for (p, q, r), table in self.comps.items():
            if r:
                continue
            for (I, J), c in table.items():
                dc = c.d_t()
                if dc:
                    out._setterm((p, q, 1), (I, J), dc)
        return out

    def d(self) -> "MixedForm":
        out = self.partial() + self.partial_bar()
        if self.model.param:
            out = out + self.d_param()
        return out

    # -- contraction -----------------------------------------------------
    def contract_vector(self, vec) -> "MixedForm":
        """Interior product with a tangent vector.

        ``vec`` is a sequence of Polys over the model's frame legs
        (d/dz_1..d/dz_n, d/dzbar_1..d/dzbar_n[, d/dt]).  Antiderivation with
        the dt leg in front, then dz legs, then dzbar legs.
        """
        model = self.model
        n = model.n
        vec = list(vec)
        if len(vec) != model.dim:
            raise ValueError("vector has wrong number of components")
        out = MixedForm(model)
        for (p, q, r), table in self.comps.items():
            for (I, J), c in table.items():
                # dt leg first
                if r and model.param and vec[2 * n]:
                    out._setterm((p, q, 0), (I, J), c.mul(vec[2 * n]))
                # dz legs: cross dt^r then k-1 earlier dz legs
                for k, i in enumerate(I):
                    v = vec[i]
                    if not v:
                        continue
                    s = (-1) ** (r + k)
                    _, I2 = remove_index(I, k)
                    cc = c.mul(v)
                    out._setterm((p - 1, q, r), (I2, J), cc if s == 1 else -cc)
                # dzbar legs: cross dt^r, p dz legs, l-1 earlier dzbar legs
                for l, j in enumerate(J):
                    v = vec[n + j]
                    if not v:
                        continue
                    s = (-1) ** (r + p + l)
                    _, J2 = remove_index(J, l)
                    cc = c.mul(v)
                    out._setterm((p, q - 1, r), (I, J2), cc if s == 1 else -cc)
        return out

    # -- t-series helpers ------------------------------------------------
    def t_coefficient(self, k: int) -> "MixedForm":
        out = MixedForm(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.t_coefficient(k))
        return out

    def t_truncate(self, tmax: int) -> "MixedForm":
        out = MixedForm(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.t_truncate(tmax))
        return out

    def t_degree(self) -> int:
        return max((c.t_degree() for _, _, c in self.terms()), default=-1)

    def substitute_t(self, value: Scalar) -> "MixedForm":
        out = MixedForm(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, c.substitute_t(value))
        return out

    def map_coeffs(self, fn) -> "MixedForm":
        out = MixedForm(self.model)
        for key, table in self.comps.items():
            for ij, c in table.items():
                out._setterm(key, ij, fn(c))
        return out

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.comps:
            return "0"
        n = self.model.n
        bits = []
        for (p, q, r) in sorted(self.comps):
            for (I, J) in sorted(self.comps[(p, q, r)]):
                c = self.comps[(p, q, r)][(I, J)]
                legs = []
                if r:
                    legs.append("dt")
                legs += [f"dz{i+1}" for i in I]
                legs += [f"dzb{j+1}" for j in J]
                mono = "^".join(legs) if legs else "1"
                bits.append(f"[{c.render()}] {mono}")
        return "  +  ".join(bits)

    def __repr__(self):
        return f"MixedForm<{self.render()}>"


# -- leg builders --------------------------------------------------------

def dz(model: Model, i: int) -> MixedForm:
    return MixedForm.monomial(model, model.poly(1), holo=(i,))


def dzbar(model: Model, j: int) -> MixedForm:
    return MixedForm.monomial(model, model.poly(1), anti=(j,))


def dt_leg(model: Model) -> MixedForm:
    return MixedForm.monomial(model, model.poly(1), dt=True)


# -- Euler homotopy ------------------------------------------------------

def euler_homotopy(a: MixedForm) -> MixedForm:
    """Homotopy inverse of partial_bar on (0, q>=1) forms with polynomial
    coefficients.

    Contract with the radial antiholomorphic field E = sum zbar_j d/dzbar_j
    and divide each zbar-homogeneous piece of total weight m+q by m+q, where
    m is the zbar-degree of the coefficient and q the antiholomorphic form
    degree.  Then partial_bar(h(a)) + h(partial_bar(a)) = a.

    Raises on input with dz or dt legs, or with a (0,0) component.
    """
    model = a.model
    n = model.n
    for (p, q, r) in a.comps:
        if p or r:
            raise ValueError("homotopy defined only for purely antiholomorphic forms")
        if q == 0:
            raise ValueError("homotopy undefined on functions")
    E = [model.zero_poly()] * model.dim
    for j in range(n):
        E[n + j] = model.zbar(j)
    out = MixedForm(model)
    for (p, q, r), table in a.comps.items():
        for (I, J), c in table.items():
            for m, piece in c.zbar_degree_split().items():
                term = MixedForm.monomial(model, piece, holo=I, anti=J)
                contracted = term.contract_vector(E)
                out = out + contracted.scale(Scalar(Fraction(1, m + q)))
    return out
