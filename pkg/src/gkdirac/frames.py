"""Dirac geometry on the flat model: frames of T (+) T*, Dorfman calculus.

A generalized vector field (:class:`GVField`) is a pair of component lists
over the coordinate frame legs d/dz_i, d/dzbar_i (and d/dt on parameter
models) and their dual legs.  A :class:`DiracFrame` is a finite family of
generators whose pointwise span is the candidate Dirac subbundle; all
structural checks (isotropy, rank, involutivity, equality) are either
exact polynomial identities or carry Cramer-style certificates from
:mod:`gkdirac.linalg`, so no verdict here depends on sampling luck.

The bracket is the Dorfman bracket

    [X + xi, Y + eta]_H = [X, Y] + i_X d eta + d(eta(X)) - i_Y d xi
                          + i_Y i_X H,

whose skew part is the Courant bracket; on involutive isotropic frames the
two agree modulo the frame, so involutivity checks use the Dorfman form
directly.  The canonical pairing is <u, v> = (xi(Y) + eta(X)) / 2.

Graphs: ``graph_two_form`` gauges the tangent frame by a 2-form B
(sections X + i_X B) and ``graph_bivector`` graphs a bivector P (sections
P xi + xi).  ``dirac_sum`` composes two frames along equal vector parts,
which is the fibrewise sum L_1 + L_2 = {X + xi + eta}.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .forms import MixedForm
from .linalg import (
    kernel_certificate,
    mat_apply,
    generic_rank,
    scalar_kernel,
    scalar_rank,
    scalar_solve,
    span_certificate,
)
from .model import Model, Point
from .poly import Poly
from .scalars import Scalar, ZERO

__all__ = [
    "GVField",
    "DiracFrame",
    "PointDirac",
    "covec_to_form",
    "form_to_covec",
    "vec_to_form_components",
    "lie_bracket_components",
    "dorfman_bracket",
    "graph_two_form",
    "graph_bivector",
    "tangent_frame",
    "cotangent_frame",
    "gauge_frame",
    "dirac_sum",
    "dirac_scale",
    "conjugate_frame",
    "frame_matrix",
    "involutivity_report",
    "frames_equal",
]


class GVField:
    """A section of T (+) T*: vector and covector component lists."""

    __slots__ = ("model", "vec", "cov")

    def __init__(self, model: Model, vec=None, cov=None):
        self.model = model
        zero = [model.zero_poly() for _ in range(model.dim)]
        self.vec = list(vec) if vec is not None else list(zero)
        self.cov = list(cov) if cov is not None else list(zero)
        if len(self.vec) != model.dim or len(self.cov) != model.dim:
            raise ValueError("component lists must match the frame dimension")

    def __add__(self, other):
        if not isinstance(other, GVField) or other.model != self.model:
            return NotImplemented
        return GVField(self.model,
                       [a + b for a, b in zip(self.vec, other.vec)],
                       [a + b for a, b in zip(self.cov, other.cov)])

    def __neg__(self):
        return GVField(self.model, [-a for a in self.vec],
                       [-a for a in self.cov])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = Scalar(c)
        return GVField(self.model, [a.scale(c) for a in self.vec],
                       [a.scale(c) for a in self.cov])

    def poly_mul(self, f: Poly, tmax=None):
        return GVField(self.model,
                       [a.mul(f, tmax=tmax) for a in self.vec],
                       [a.mul(f, tmax=tmax) for a in self.cov])

    def pairing(self, other) -> Poly:
        """<u, v> = (xi(Y) + eta(X)) / 2."""
        acc = self.model.zero_poly()
        for a, b in zip(self.cov, other.vec):
            if a and b:
                acc = acc + a * b
        for a, b in zip(other.cov, self.vec):
            if a and b:
                acc = acc + a * b
        return acc.scale(Scalar(Fraction(1, 2)))

    def stack(self):
        """The 2*dim component column (vector block then covector block)."""
        return list(self.vec) + list(self.cov)

    def conj(self):
        return GVField(self.model, _conj_components(self.model, self.vec),
                       _conj_components(self.model, self.cov))

    def t_truncate(self, tmax):
        return GVField(self.model, [a.t_truncate(tmax) for a in self.vec],
                       [a.t_truncate(tmax) for a in self.cov])

    def eval_stack(self, point: Point):
        return [c.eval(point) for c in self.stack()]

    def is_zero(self):
        return not any(self.vec) and not any(self.cov)

    def render(self):
        model = self.model
        names = model.vec_names() + model.leg_names()
        bits = [f"[{c.render()}] {nm}"
                for c, nm in zip(self.stack(), names) if c]
        return "  +  ".join(bits) if bits else "0"

    def __repr__(self):
        return f"GVField<{self.render()}>"


def _conj_components(model, comps):
    n = model.n
    out = [c.conj() for c in comps]
    swapped = out[n:2 * n] + out[:n]
    if model.param:
        swapped.append(out[2 * n])
    return swapped


def conj_stack(model, column):
    """Conjugate a scalar fibre column (vector block then covector block).

    Valid at real base points, where the zbar coordinates are the honest
    conjugates of the z coordinates.
    """
    n, dim = model.n, model.dim

    def block(vals):
        out = [c.conj() for c in vals]
        swapped = out[n:2 * n] + out[:n]
        if model.param:
            swapped.append(out[2 * n])
        return swapped

    return block(column[:dim]) + block(column[dim:])


def point_pairing(model, a, b) -> Scalar:
    """<u, v> = (xi(Y) + eta(X)) / 2 on two scalar fibre columns."""
    dim = model.dim
    acc = ZERO
    for i in range(dim):
        acc = acc + a[dim + i] * b[i] + b[dim + i] * a[i]
    return acc * Scalar(Fraction(1, 2))


# ---------------------------------------------------------------------------
# covector <-> 1-form conversions and the Dorfman bracket
# ---------------------------------------------------------------------------

def covec_to_form(model: Model, cov) -> MixedForm:
    n = model.n
    out = MixedForm.zero(model)
    for i in range(n):
        if cov[i]:
            out = out + MixedForm.monomial(model, cov[i], holo=(i,))
        if cov[n + i]:
            out = out + MixedForm.monomial(model, cov[n + i], anti=(i,))
    if model.param and cov[2 * n]:
        out = out + MixedForm.monomial(model, cov[2 * n], dt=True)
    return out


def form_to_covec(form: MixedForm):
    model = form.model
    n = model.n
    out = [model.zero_poly() for _ in range(model.dim)]
    for (p, q, r), table in form.comps.items():
        if p + q + r != 1:
            raise ValueError("expected a 1-form")
        for (I, J), c in table.items():
            if r:
                out[2 * n] = out[2 * n] + c
            elif p:
                out[I[0]] = out[I[0]] + c
            else:
                out[n + J[0]] = out[n + J[0]] + c
    return out


def vec_to_form_components(model: Model, vec):
    """Identity reshuffle kept for call-site clarity."""
    return list(vec)


def _leg_derivative(model: Model, f: Poly, leg: int) -> Poly:
    n = model.n
    if leg < n:
        return f.d_z(leg)
    if leg < 2 * n:
        return f.d_zbar(leg - n)
    return f.d_t()


def lie_bracket_components(model: Model, X, Y, tmax=None):
    out = []
    for k in range(model.dim):
        acc = model.zero_poly()
        for l in range(model.dim):
            if X[l]:
                d = _leg_derivative(model, Y[k], l)
                if d:
                    acc = acc + X[l].mul(d, tmax=tmax)
            if Y[l]:
                d = _leg_derivative(model, X[k], l)
                if d:
                    acc = acc - Y[l].mul(d, tmax=tmax)
        out.append(acc)
    return out


def dorfman_bracket(u: GVField, v: GVField, H: MixedForm = None,
                    tmax=None) -> GVField:
    model = u.model
    X, xi = u.vec, covec_to_form(model, u.cov)
    Y, eta = v.vec, covec_to_form(model, v.cov)
    vec_part = lie_bracket_components(model, X, Y, tmax=tmax)
    eta_X = model.zero_poly()
    for a, b in zip(v.cov, X):
        if a and b:
            eta_X = eta_X + a.mul(b, tmax=tmax)
    cov_form = eta.d().contract_vector(X) \
        + MixedForm.function(model, eta_X).d() \
        - xi.d().contract_vector(Y)
    if H is not None:
        cov_form = cov_form + H.contract_vector(X).contract_vector(Y)
    out = GVField(model, vec_part, form_to_covec(cov_form))
    if tmax is not None:
        out = out.t_truncate(tmax)
    return out


# ---------------------------------------------------------------------------
# Dirac frames
# ---------------------------------------------------------------------------

class DiracFrame:
    """A finite generating family for a candidate Dirac subbundle."""

    __slots__ = ("model", "gens", "label")

    def __init__(self, model: Model, gens, label=""):
        self.model = model
        self.gens = list(gens)
        self.label = label
        for g in self.gens:
            if g.model != model:
                raise ValueError("generator on a different model")

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def t_truncate(self, tmax):
        return DiracFrame(self.model,
                          [g.t_truncate(tmax) for g in self.gens],
                          label=self.label)

    def substitute_t(self, tval):
        """Freeze the deformation parameter at a rational value."""
        gens = [GVField(self.model,
                        [a.substitute_t(tval) for a in g.vec],
                        [a.substitute_t(tval) for a in g.cov])
                for g in self.gens]
        return DiracFrame(self.model, gens, label=self.label)

    def conj(self):
        return DiracFrame(self.model, [g.conj() for g in self.gens],
                          label=f"conj({self.label})" if self.label else "")

    def eval_point(self, point: Point) -> "PointDirac":
        return PointDirac(self.model,
                          [g.eval_stack(point) for g in self.gens])

    def isotropy_defect(self):
        """All pairwise pairings; the frame is isotropic iff every entry is 0."""
        out = []
        for i, u in enumerate(self.gens):
            for v in self.gens[i:]:
                out.append(u.pairing(v))
        return out

    def is_isotropic(self) -> bool:
        return all(not p for p in self.isotropy_defect())


def frame_matrix(frame: DiracFrame):
    """Columns = stacked generators (2*dim rows)."""
    cols = [g.stack() for g in frame.gens]
    return [[col[i] for col in cols] for i in range(2 * frame.model.dim)]


def tangent_frame(model: Model) -> DiracFrame:
    gens = []
    for k in range(model.dim):
        v = [model.zero_poly() for _ in range(model.dim)]
        v[k] = model.poly(1)
        gens.append(GVField(model, vec=v))
    return DiracFrame(model, gens, label="T")


def cotangent_frame(model: Model) -> DiracFrame:
    gens = []
    for k in range(model.dim):
        c = [model.zero_poly() for _ in range(model.dim)]
        c[k] = model.poly(1)
        gens.append(GVField(model, cov=c))
    return DiracFrame(model, gens, label="T*")


def graph_two_form(B: MixedForm) -> DiracFrame:
    """Sections X + i_X B over the coordinate tangent frame."""
    from .multivector import form_matrix

    model = B.model
    F = form_matrix(B)
    gens = []
    for k in range(model.dim):
        v = [model.zero_poly() for _ in range(model.dim)]
        v[k] = model.poly(1)
        cov = [F[i][k] for i in range(model.dim)]
        gens.append(GVField(model, vec=v, cov=cov))
    return DiracFrame(model, gens, label="graph(B)")


def graph_bivector(model: Model, P) -> DiracFrame:
    """Sections P xi + xi over the coordinate cotangent frame; ``P`` is a
    leg matrix acting on covector columns."""
    gens = []
    for k in range(model.dim):
        c = [model.zero_poly() for _ in range(model.dim)]
        c[k] = model.poly(1)
        v = [P[i][k] for i in range(model.dim)]
        gens.append(GVField(model, vec=v, cov=c))
    return DiracFrame(model, gens, label="graph(P)")


def gauge_frame(frame: DiracFrame, B: MixedForm, tmax=None) -> DiracFrame:
    """The 2-form gauge action: X + xi  |->  X + xi + i_X B."""
    from .multivector import form_matrix

    model = frame.model
    F = form_matrix(B)
    gens = []
    for g in frame.gens:
        extra = mat_apply(F, g.vec, tmax=tmax)
        cov = [a + b for a, b in zip(g.cov, extra)]
        gens.append(GVField(model, vec=list(g.vec), cov=cov))
    out = DiracFrame(model, gens, label=frame.label)
    if tmax is not None:
        out = out.t_truncate(tmax)
    return out


def dirac_scale(frame: DiracFrame, lam) -> DiracFrame:
    """Scale the covector parts: {X + lam * xi}."""
    if isinstance(lam, (int, Fraction)):
        lam = Scalar(lam)
    gens = [GVField(frame.model, list(g.vec),
                    [c.scale(lam) for c in g.cov]) for g in frame.gens]
    return DiracFrame(frame.model, gens, label=frame.label)


def conjugate_frame(frame: DiracFrame) -> DiracFrame:
    return frame.conj()


def dirac_sum(f1: DiracFrame, f2: DiracFrame, rng, tmax=None) -> DiracFrame:
    """Fibrewise sum along matching vector parts:
    {X + xi + eta : X + xi in L1, X + eta in L2}.

    Built from an exact kernel certificate of the vector-part difference
    matrix, so each output generator satisfies the matching identity as a
    polynomial identity.
    """
    model = f1.model
    if f2.model != model:
        raise ValueError("mixed models")
    dim = model.dim
    r1, r2 = len(f1), len(f2)
    A = [[f1.gens[j].vec[i] for j in range(r1)] +
         [-f2.gens[j].vec[i] for j in range(r2)] for i in range(dim)]
    basis = kernel_certificate(A, model, rng, tmax=tmax)
    gens = []
    for v in basis:
        g = GVField(model)
        for j in range(r1):
            if v[j]:
                g = g + f1.gens[j].poly_mul(v[j], tmax=tmax)
        covonly = GVField(model)
        for j in range(r2):
            if v[r1 + j]:
                covonly = covonly + GVField(
                    model, cov=[c.mul(v[r1 + j], tmax=tmax)
                                for c in f2.gens[j].cov])
        g = g + covonly
        if tmax is not None:
            g = g.t_truncate(tmax)
        if not g.is_zero():
            gens.append(g)
    return DiracFrame(model, gens, label=f"{f1.label}+{f2.label}")


# ---------------------------------------------------------------------------
# Structural verdicts
# ---------------------------------------------------------------------------

class involutivity_report:
    """Outcome of an involutivity check: per-pair certificates plus rank."""

    __slots__ = ("ok", "rank", "expected_rank", "isotropic", "failures")

    def __init__(self, ok, rank, expected_rank, isotropic, failures):
        self.ok = ok
        self.rank = rank
        self.expected_rank = expected_rank
        self.isotropic = isotropic
        self.failures = failures

    def __bool__(self):
        return self.ok

    @staticmethod
    def check(frame: DiracFrame, rng, H: MixedForm = None, tmax=None,
              require_rank=None):
        model = frame.model
        cols = [g.stack() for g in frame.gens]
        if tmax is not None:
            cols = [[c.t_truncate(tmax) for c in col] for col in cols]
        A = [[col[i] for col in cols] for i in range(2 * model.dim)]
        rank = generic_rank(A, model, rng)
        expected = model.dim if require_rank is None else require_rank
        isotropic = frame.is_isotropic()
        failures = []
        for i, u in enumerate(frame.gens):
            for j, v in enumerate(frame.gens):
                if j < i:
                    continue
                br = dorfman_bracket(u, v, H=H, tmax=tmax)
                w = br.stack()
                if tmax is not None:
                    w = [c.t_truncate(tmax) for c in w]
                if all(not c for c in w):
                    continue
                ok, cert = span_certificate(cols, w, model, rng, tmax=tmax)
                if not ok:
                    failures.append((i, j, cert))
        ok = (rank == expected) and isotropic and not failures
        return involutivity_report(ok, rank, expected, isotropic, failures)


def frames_equal(f1: DiracFrame, f2: DiracFrame, rng, tmax=None) -> bool:
    """Generic subbundle equality via two-sided span certificates."""
    model = f1.model
    cols1 = [g.stack() for g in f1.gens]
    cols2 = [g.stack() for g in f2.gens]
    if tmax is not None:
        cols1 = [[c.t_truncate(tmax) for c in col] for col in cols1]
        cols2 = [[c.t_truncate(tmax) for c in col] for col in cols2]
    for w in cols2:
        ok, _ = span_certificate(cols1, w, model, rng, tmax=tmax)
        if not ok:
            return False
    for w in cols1:
        ok, _ = span_certificate(cols2, w, model, rng, tmax=tmax)
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Pointwise Dirac subspaces
# ---------------------------------------------------------------------------

class PointDirac:
    """A subspace of the fibre (T (+) T*)_x given by scalar columns."""

    __slots__ = ("model", "columns")

    def __init__(self, model: Model, columns):
        self.model = model
        self.columns = [list(c) for c in columns]

    def rank(self) -> int:
        if not self.columns:
            return 0
        rows = [[col[i] for col in self.columns]
                for i in range(2 * self.model.dim)]
        return scalar_rank(rows)

    def is_isotropic(self) -> bool:
        dim = self.model.dim
        for a in self.columns:
            for b in self.columns:
                pair = sum((a[dim + i] * b[i] + b[dim + i] * a[i]
                            for i in range(dim)), ZERO)
                if pair:
                    return False
        return True

    def contains(self, column) -> bool:
        rows = [[col[i] for col in self.columns]
                for i in range(2 * self.model.dim)]
        return scalar_solve(rows, list(column)) is not None

    def equals(self, other: "PointDirac") -> bool:
        if self.rank() != other.rank():
            return False
        rows = [[col[i] for col in self.columns + other.columns]
                for i in range(2 * self.model.dim)]
        return scalar_rank(rows) == self.rank()

    @classmethod
    def tangent(cls, model: Model) -> "PointDirac":
        dim = model.dim
        cols = []
        for k in range(dim):
            c = [ZERO] * (2 * dim)
            c[k] = Scalar(1)
            cols.append(c)
        return cls(model, cols)

    @classmethod
    def cotangent(cls, model: Model) -> "PointDirac":
        dim = model.dim
        cols = []
        for k in range(dim):
            c = [ZERO] * (2 * dim)
            c[dim + k] = Scalar(1)
            cols.append(c)
        return cls(model, cols)

    def conj(self) -> "PointDirac":
        """The conjugate subspace at the same (real) base point."""
        return PointDirac(self.model,
                          [conj_stack(self.model, c) for c in self.columns])

    def intersect(self, other: "PointDirac") -> "PointDirac":
        """Exact fibrewise intersection via the kernel of [A | -B]."""
        if other.model != self.model:
            raise ValueError("mixed models")
        if not self.columns or not other.columns:
            return PointDirac(self.model, [])
        r1 = len(self.columns)
        rows = [[col[i] for col in self.columns] +
                [-col[i] for col in other.columns]
                for i in range(2 * self.model.dim)]
        out = []
        for v in scalar_kernel(rows):
            col = [ZERO] * (2 * self.model.dim)
            for j in range(r1):
                if not v[j].is_zero():
                    col = [a + v[j] * b
                           for a, b in zip(col, self.columns[j])]
            if any(col):
                out.append(col)
        return PointDirac(self.model, out)
