"""Real and holomorphic Poisson structures and their gauge actions.

A bivector is stored as the antisymmetric matrix of its components over the
full coordinate frame (``d/dz_1..d/dz_n, d/dzbar_1..d/dzbar_n[, d/dt]``):
for ``pi = c * e_a ^ e_b`` with ``a < b`` the matrix holds ``M[b][a] = c``
and ``M[a][b] = -c``, the covector action is ``(pi xi)^k = sum_l M[k][l]
xi_l``, and ``pi(xi, eta) = eta(pi xi)``.

A holomorphic Poisson structure is a pair ``(phi, sigma)``: ``phi`` is the
(1,1) deformation datum of the complex structure (zero means the background
structure) and ``sigma`` a full-frame bivector required to be of type (2,0)
for the deformed structure.  Certificates are exact polynomial identities;
the closure certificate falls back to the Courant-frame characterisation
when ``phi`` is nonzero, since the deformed Dolbeault operator is not
polynomial in general.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import CertificateError, SingularityError, UnsupportedSceneError
from .forms import MixedForm
from .frames import (DiracFrame, GVField, _leg_derivative, graph_bivector,
                     gauge_frame, frames_equal, involutivity_report)
from .linalg import (mat_add, mat_apply, mat_div_right, mat_identity,
                     mat_is_zero, mat_mul, mat_scale, mat_sub, mat_transpose,
                     mat_t_truncate, mat_zero, poly_adjugate, poly_det,
                     poly_mat_inverse, real_roots_in_interval, span_certificate,
                     kernel_certificate, _pivot_block, generic_rank)
from .model import Model
from .multivector import (MVElement, bivector_matrix, form_matrix,
                          mv_from_bivector_matrix, mv_from_endo,
                          phi_geom_matrix)
from .poly import Poly
from .scalars import Scalar, ONE

__all__ = [
    "Bivector",
    "RealPoisson",
    "HoloPoisson",
    "PoissonCertificates",
    "GaugeReport",
    "schouten_defect",
    "complex_structure_matrix",
    "gauge_real_poisson",
    "build_L_sigma",
    "extract_holo_poisson",
    "check_gauge_equiv",
    "imag_Q",
]


class Bivector:
    """Antisymmetric full-frame component matrix of a section of Lambda^2 T."""

    __slots__ = ("model", "mat")

    def __init__(self, model: Model, mat=None):
        self.model = model
        dim = model.dim
        if mat is None:
            mat = mat_zero(dim, dim, model.n)
        if len(mat) != dim or any(len(row) != dim for row in mat):
            raise ValueError("component matrix must be dim x dim")
        for i in range(dim):
            for j in range(i, dim):
                if mat[i][j] + mat[j][i]:
                    raise ValueError("component matrix must be antisymmetric")
        self.mat = [list(row) for row in mat]

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, model):
        return cls(model)

    @classmethod
    def from_matrix(cls, model, mat):
        return cls(model, mat)

    @classmethod
    def from_mv(cls, mv: MVElement) -> "Bivector":
        """Embed a purely holomorphic (2,0) polyvector."""
        return cls(mv.model, bivector_matrix(mv, size=mv.model.dim))

    @classmethod
    def from_decomposable(cls, model, u, v, coeff=None) -> "Bivector":
        """coeff * u ^ v from two frame-component columns."""
        dim = model.dim
        mat = mat_zero(dim, dim, model.n)
        for i in range(dim):
            for j in range(dim):
                term = model.zero_poly()
                if u[j] and v[i]:
                    term = term + u[j] * v[i]
                if u[i] and v[j]:
                    term = term - u[i] * v[j]
                if coeff is not None and term:
                    term = term * coeff
                mat[i][j] = term
        return cls(model, mat)

    @classmethod
    def wedge_pair(cls, model, a, b, coeff) -> "Bivector":
        """coeff * e_a ^ e_b in the leg order (a != b)."""
        if isinstance(coeff, (int, Fraction)):
            coeff = Scalar(coeff)
        if isinstance(coeff, Scalar):
            coeff = Poly.const(model.n, coeff)
        if a == b:
            raise ValueError("wedge of a leg with itself")
        out = cls(model)
        out.mat[b][a] = out.mat[b][a] + coeff
        out.mat[a][b] = out.mat[a][b] - coeff
        return out

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Bivector) or other.model != self.model:
            return NotImplemented
        return Bivector(self.model, mat_add(self.mat, other.mat))

    def __sub__(self, other):
        if not isinstance(other, Bivector) or other.model != self.model:
            return NotImplemented
        return Bivector(self.model, mat_sub(self.mat, other.mat))

    def __neg__(self):
        return Bivector(self.model, [[-x for x in row] for row in self.mat])

    def scale(self, c) -> "Bivector":
        return Bivector(self.model, mat_scale(self.mat, c))

    def t_truncate(self, tmax) -> "Bivector":
        return Bivector(self.model, mat_t_truncate(self.mat, tmax))

    # -- tensor action ---------------------------------------------------
    def apply(self, covec, tmax=None):
        """pi(xi) as frame components."""
        return mat_apply(self.mat, covec, tmax=tmax)

    def pair(self, xi, eta, tmax=None) -> Poly:
        """pi(xi, eta) = eta(pi xi)."""
        px = self.apply(xi, tmax=tmax)
        acc = self.model.zero_poly()
        for e, v in zip(eta, px):
            if e and v:
                acc = acc + e.mul(v, tmax=tmax)
        return acc

    # -- reality and type ------------------------------------------------
    def _swap(self, i):
        n = self.model.n
        if i < n:
            return n + i
        if i < 2 * n:
            return i - n
        return i

    def conj(self) -> "Bivector":
        dim = self.model.dim
        out = mat_zero(dim, dim, self.model.n)
        for i in range(dim):
            for j in range(dim):
                if self.mat[i][j]:
                    out[self._swap(i)][self._swap(j)] = self.mat[i][j].conj()
        return Bivector(self.model, out)

    def is_real(self) -> bool:
        return self.conj() == self

    def imag(self) -> "Bivector":
        """(self - conj)/2i, a real bivector."""
        return (self - self.conj()).scale(Scalar(0, Fraction(-1, 2)))

    def is_zero(self) -> bool:
        return mat_is_zero(self.mat)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.model == other.model and mat_is_zero(
            mat_sub(self.mat, other.mat))

    def is_pure_holo(self) -> bool:
        """True when only the dz x dz block is populated."""
        n = self.model.n
        dim = self.model.dim
        for i in range(dim):
            for j in range(dim):
                if (i >= n or j >= n) and self.mat[i][j]:
                    return False
        return True

    def holo_part_mv(self) -> MVElement:
        """The dz x dz block as a (2,0) polyvector."""
        return mv_from_bivector_matrix(self.model, self.mat)

    def render(self) -> str:
        names = self.model.vec_names()
        bits = []
        dim = self.model.dim
        for a in range(dim):
            for b in range(a + 1, dim):
                c = self.mat[b][a]
                if c:
                    bits.append(f"[{c.render()}] {names[a]}^{names[b]}")
        return "  +  ".join(bits) if bits else "0"

    def __repr__(self):
        return f"Bivector<{self.render()}>"


def schouten_defect(P: Bivector, Q: Bivector = None, tmax=None):
    """Jacobiator components of a pair of bivectors over the full frame.

    Returns {(a,b,c): Poly} with a<b<c holding
        sum_l (P^{la} d_l Q^{bc} + Q^{la} d_l P^{bc} + cyclic in (a,b,c)),
    which vanishes identically iff the symmetrised Schouten bracket of P and
    Q does; with Q = P this is the Poisson condition [P, P] = 0.
    """
    model = P.model
    if Q is None:
        Q = P
    if Q.model != model:
        raise ValueError("mixed models")
    dim = model.dim
    out = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            for c in range(b + 1, dim):
                acc = model.zero_poly()
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    for l in range(dim):
                        plx = P.mat[x][l]
                        if plx:
                            d = _leg_derivative(model, Q.mat[z][y], l)
                            if d:
                                acc = acc + plx.mul(d, tmax=tmax)
                        qlx = Q.mat[x][l]
                        if qlx:
                            d = _leg_derivative(model, P.mat[z][y], l)
                            if d:
                                acc = acc + qlx.mul(d, tmax=tmax)
                if tmax is not None:
                    acc = acc.t_truncate(tmax)
                if acc:
                    out[(a, b, c)] = acc
    return out


class RealPoisson:
    """A real bivector field, with the Poisson condition as a certificate."""

    __slots__ = ("model", "pi")

    def __init__(self, model: Model, pi: Bivector, check=True):
        if pi.model != model:
            raise ValueError("bivector on a different model")
        if check and not pi.is_real():
            raise CertificateError("bivector has a nonzero imaginary part")
        self.model = model
        self.pi = pi

    def certify(self, tmax=None):
        """Nonzero Jacobiator entries; empty dict means Poisson."""
        return schouten_defect(self.pi, tmax=tmax)

    def is_poisson(self, tmax=None) -> bool:
        return not self.certify(tmax=tmax)

    def graph(self) -> DiracFrame:
        """The Dirac frame {pi(xi) + xi} over the coordinate covectors."""
        return graph_bivector(self.model, self.pi.mat)

    def __eq__(self, other):
        if not isinstance(other, RealPoisson):
            return NotImplemented
        return self.model == other.model and self.pi == other.pi


# ---------------------------------------------------------------------------
# Holomorphic Poisson structures
# ---------------------------------------------------------------------------

class PoissonCertificates:
    __slots__ = ("mc_phi", "type_20", "closure", "closure_method", "details")

    def __init__(self, mc_phi, type_20, closure, closure_method, details=None):
        self.mc_phi = mc_phi
        self.type_20 = type_20
        self.closure = closure
        self.closure_method = closure_method
        self.details = details or {}

    @property
    def ok(self):
        return self.mc_phi and self.type_20 and self.closure

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (f"PoissonCertificates(mc_phi={self.mc_phi}, "
                f"type_20={self.type_20}, closure={self.closure}, "
                f"method={self.closure_method!r})")


class HoloPoisson:
    """A deformed complex structure with a compatible holomorphic bivector.

    ``phi`` is the (1,1) deformation datum (zero = background structure);
    ``sigma`` is stored over the full frame so that it can be of type (2,0)
    for the deformed structure even when that differs from the background.
    """

    __slots__ = ("model", "phi", "sigma")

    def __init__(self, model: Model, sigma=None, phi=None):
        self.model = model
        if phi is None:
            phi = MVElement.zero(model)
        if phi.model != model:
            raise ValueError("phi on a different model")
        for key in phi.comps:
            if key != (1, 1):
                raise ValueError("phi must be purely of bidegree (1,1)")
        self.phi = phi
        if sigma is None:
            sigma = Bivector.zero(model)
        elif isinstance(sigma, MVElement):
            sigma = Bivector.from_mv(sigma)
        if sigma.model != model:
            raise ValueError("sigma on a different model")
        self.sigma = sigma

    # -- frames of the deformed structure --------------------------------
    def phi_matrix(self):
        """n x n matrix of phi as a map from the dzbar frame to the dz frame."""
        return phi_geom_matrix(self.phi)

    def _unit(self, k):
        col = [self.model.zero_poly() for _ in range(self.model.dim)]
        col[k] = self.model.poly(1)
        return col

    def antiholo_frame_columns(self):
        """Columns spanning the deformed antiholomorphic tangent bundle."""
        n = self.model.n
        Phi = self.phi_matrix()
        cols = []
        for b in range(n):
            col = self._unit(n + b)
            for i in range(n):
                if Phi[i][b]:
                    col[i] = col[i] + Phi[i][b]
            cols.append(col)
        return cols

    def holo_frame_columns(self):
        """Columns spanning the deformed holomorphic tangent bundle."""
        n = self.model.n
        Phi = self.phi_matrix()
        cols = []
        for b in range(n):
            col = self._unit(b)
            for i in range(n):
                if Phi[i][b]:
                    col[n + i] = col[n + i] + Phi[i][b].conj()
            cols.append(col)
        return cols

    def holo_covector_columns(self):
        """Columns spanning the annihilator of the deformed antiholomorphic
        tangent bundle (the deformed (1,0)-covectors)."""
        n = self.model.n
        Phi = self.phi_matrix()
        cols = []
        for a in range(n):
            col = self._unit(a)
            for b in range(n):
                if Phi[a][b]:
                    col[n + b] = col[n + b] - Phi[a][b]
            cols.append(col)
        return cols

    def antiholo_covector_columns(self):
        """Columns spanning the deformed (0,1)-covectors."""
        n = self.model.n
        Phi = self.phi_matrix()
        cols = []
        for a in range(n):
            col = self._unit(n + a)
            for b in range(n):
                if Phi[a][b]:
                    col[b] = col[b] - Phi[a][b].conj()
            cols.append(col)
        return cols

    def complex_structure(self, tmax=None):
        """The deformed complex structure as a frame endomorphism matrix."""
        return complex_structure_matrix(self.model, self.phi, tmax=tmax)

    # -- certificates ----------------------------------------------------
    def mc_phi_residual(self, tmax=None) -> MVElement:
        from .brackets import dgla_bracket
        out = self.phi.partial_bar() + dgla_bracket(
            self.phi, self.phi, tmax=tmax).scale(Fraction(1, 2))
        if tmax is not None:
            out = out.t_truncate(tmax)
        return out

    def type_defects(self, tmax=None):
        """sigma applied to each deformed (0,1)-covector; all-zero certifies
        that sigma has no legs along the deformed antiholomorphic bundle."""
        out = []
        for theta in self.antiholo_covector_columns():
            img = self.sigma.apply(theta, tmax=tmax)
            if tmax is not None:
                img = [x.t_truncate(tmax) for x in img]
            if any(img):
                out.append(img)
        return out

    def certificates(self, rng, tmax=None) -> PoissonCertificates:
        mc_ok = self.mc_phi_residual(tmax=tmax).is_zero()
        type_ok = not self.type_defects(tmax=tmax)
        details = {}
        if self.phi.is_zero():
            method = "direct"
            n = self.model.n
            holostep = True
            for i in range(n):
                for j in range(n):
                    entry = self.sigma.mat[i][j]
                    if any(sum(e[n:2 * n]) for e in entry.terms):
                        holostep = False
            jac = schouten_defect(self.sigma, tmax=tmax)
            details["antiholomorphic_dependence"] = not holostep
            details["jacobiator_entries"] = sorted(jac)
            closure = holostep and not jac and self.sigma.is_pure_holo()
        else:
            method = "frame"
            rep = involutivity_report.check(
                build_L_sigma(self, tmax=tmax, check=False), rng, tmax=tmax)
            details["involutivity"] = rep
            closure = bool(rep)
        return PoissonCertificates(mc_ok, type_ok, closure, method, details)

    def frame(self, tmax=None, check=True) -> DiracFrame:
        return build_L_sigma(self, tmax=tmax, check=check)

    def __eq__(self, other):
        if not isinstance(other, HoloPoisson):
            return NotImplemented
        return (self.model == other.model and self.phi == other.phi
                and self.sigma == other.sigma)


def complex_structure_matrix(model: Model, phi: MVElement, tmax=None):
    """Frame endomorphism of the complex structure deformed by phi.

    Built as i(2 P - 1) with P the projector onto the deformed holomorphic
    bundle along the antiholomorphic one; needs the usual invertibility of
    (1 - phi phibar), checked exactly (hard error when it fails).
    """
    if model.param:
        raise UnsupportedSceneError(
            "complex structures live on the parameter-free frame")
    n = model.n
    dim = model.dim
    eye = Scalar(0, 1)
    if phi is None or phi.is_zero():
        M = mat_zero(dim, dim, n)
        for i in range(n):
            M[i][i] = Poly.const(n, eye)
            M[n + i][n + i] = Poly.const(n, -eye)
        return M
    Phi = phi_geom_matrix(phi)
    P10 = _holo_projector(model, Phi, tmax=tmax)
    out = mat_scale(mat_sub(mat_scale(P10, Scalar(2)), mat_identity(dim, n)),
                    eye)
    if tmax is not None:
        out = mat_t_truncate(out, tmax)
    return out


def _deformed_frame_change(model, Phi):
    """Block matrix with columns the deformed holomorphic then
    antiholomorphic frame vectors."""
    n = model.n
    dim = model.dim
    A = mat_zero(dim, dim, n)
    for b in range(n):
        A[b][b] = Poly.const(n, ONE)
        A[n + b][n + b] = Poly.const(n, ONE)
        for i in range(n):
            if Phi[i][b]:
                A[i][n + b] = Phi[i][b]
                A[n + i][b] = Phi[i][b].conj()
    return A


def _holo_projector(model, Phi, tmax=None):
    """Projector onto the deformed holomorphic bundle along the
    antiholomorphic one."""
    n = model.n
    dim = model.dim
    A = _deformed_frame_change(model, Phi)
    proj = mat_zero(dim, dim, n)
    for i in range(n):
        proj[i][i] = Poly.const(n, ONE)
    return mat_div_right(mat_mul(A, proj, tmax=tmax), A, tmax=tmax)


# ---------------------------------------------------------------------------
# Gauge action on real Poisson structures
# ---------------------------------------------------------------------------

def _describe_zero_locus(det: Poly, model: Model) -> str:
    """Human-readable account of where a determinant polynomial vanishes."""
    n = model.n
    tvar = 2 * n
    if det.is_constant():
        return "nowhere" if det else "everywhere"
    if all(not any(e[:tvar]) for e in det.terms):
        # univariate in t with rational coefficients: isolate real roots
        coeffs = [Fraction(0)] * (det.t_degree() + 1)
        realform = True
        for e, c in det.terms.items():
            if not c.is_real():
                realform = False
                break
            coeffs[e[tvar]] = c.re
        if realform:
            lead = abs(coeffs[-1])
            bound = 1 + max(abs(c) for c in coeffs) / lead
            roots = real_roots_in_interval(coeffs, -bound, bound)
            if not roots:
                return "no real t"
            spans = ", ".join(f"t in ({a}, {b})" for a, b in roots)
            return f"real roots isolated in: {spans}"
    return "the zero set of the displayed determinant"


def gauge_real_poisson(pi0: RealPoisson, B: MixedForm, rng,
                       tmax=None, points=None) -> RealPoisson:
    """Gauge-transform a real Poisson structure by a real closed 2-form.

    Computes pi1 = pi0 (1 + B pi0)^{-1} exactly (polynomial inverse, or a
    t-series inverse when ``tmax`` is given) and verifies independently that
    the graph of pi1 equals the 2-form gauge action on the graph of pi0.
    ``points``, when given, are checked against the zero locus of
    det(1 + B pi0) and trigger a :class:`SingularityError` when hit.
    """
    model = pi0.model
    if B.model != model:
        raise ValueError("form on a different model")
    if not B.is_real():
        raise CertificateError("gauge form must be real")
    if not B.d().is_zero():
        raise CertificateError("gauge form must be closed")
    dim = model.dim
    P = pi0.pi.mat
    F = form_matrix(B)
    E = mat_add(mat_identity(dim, model.n), mat_mul(F, P, tmax=tmax))
    det = poly_det(E)
    if not det:
        raise SingularityError(
            "1 + B pi is everywhere degenerate", determinant="0")
    locus = _describe_zero_locus(det, model)
    for pt in points or ():
        if det.eval(pt).is_zero():
            raise SingularityError(
                f"1 + B pi degenerates at the requested point {pt}; "
                f"det = {det.render()}; vanishes on: {locus}",
                determinant=det.render(), point=pt)
    Einv = None
    if tmax is not None:
        try:
            Einv = poly_mat_inverse(E, tmax)
        except ArithmeticError:
            Einv = None
    if Einv is None:
        try:
            adj = poly_adjugate(E)
            Einv = [[entry.divexact(det) for entry in row] for row in adj]
        except ArithmeticError:
            raise UnsupportedSceneError(
                "(1 + B pi)^{-1} is not polynomial; det = "
                f"{det.render()}; vanishes on: {locus}")
    M1 = mat_mul(P, Einv, tmax=tmax)
    check = mat_sub(mat_mul(M1, E, tmax=tmax), P)
    if tmax is not None:
        check = mat_t_truncate(check, tmax)
    if not mat_is_zero(check):
        raise CertificateError("gauge inverse failed its defining identity")
    pi1 = RealPoisson(model, Bivector.from_matrix(model, M1))
    moved = gauge_frame(graph_bivector(model, P), B, tmax=tmax)
    if not frames_equal(moved, pi1.graph(), rng, tmax=tmax):
        raise CertificateError(
            "gauged graph does not match the graph of the computed bivector")
    return pi1


# ---------------------------------------------------------------------------
# The Dirac frame of a holomorphic Poisson structure
# ---------------------------------------------------------------------------

def build_L_sigma(hp: HoloPoisson, tmax=None, check=True) -> DiracFrame:
    """Frame {X + phi X} + {sigma(zeta) + zeta} over the deformed splitting.

    With ``check`` the exact prerequisites (flatness of phi, deformed type
    of sigma) are verified first and a CertificateError is raised on
    failure; involutivity of the result is the closure certificate and is
    checked separately.
    """
    model = hp.model
    if check:
        if not hp.mc_phi_residual(tmax=tmax).is_zero():
            raise CertificateError(
                "phi does not satisfy the flatness equation")
        if hp.type_defects(tmax=tmax):
            raise CertificateError(
                "sigma has legs along the deformed antiholomorphic bundle")
    gens = []
    for col in hp.antiholo_frame_columns():
        gens.append(GVField(model, vec=col))
    for eta in hp.holo_covector_columns():
        vec = hp.sigma.apply(eta, tmax=tmax)
        gens.append(GVField(model, vec=vec, cov=eta))
    out = DiracFrame(model, gens, label="L_sigma")
    if tmax is not None:
        out = out.t_truncate(tmax)
    return out


def extract_holo_poisson(L: DiracFrame, rng, tmax=None) -> HoloPoisson:
    """Recover (phi, sigma) from a Dirac frame of the expected shape.

    The deformed antiholomorphic bundle is the tangent intersection
    (kernel of the covector block, certified exactly); covector lifts are
    exact linear solves; the bivector is read off by prescribing its action
    on the deformed covector frame.  Round-trips through
    :func:`build_L_sigma` by construction, and that identity is verified
    before returning.
    """
    model = L.model
    if model.param:
        raise UnsupportedSceneError(
            "extraction requires the parameter-free frame")
    n = model.n
    dim = model.dim
    r = len(L)
    C = [[L.gens[j].cov[i] for j in range(r)] for i in range(dim)]
    kbasis = kernel_certificate(C, model, rng, tmax=tmax)
    vcols = []
    for k in kbasis:
        col = [model.zero_poly() for _ in range(dim)]
        for j in range(r):
            if k[j]:
                for i in range(dim):
                    if L.gens[j].vec[i]:
                        col[i] = col[i] + k[j].mul(L.gens[j].vec[i],
                                                   tmax=tmax)
        if tmax is not None:
            col = [x.t_truncate(tmax) for x in col]
        if any(col):
            vcols.append(col)
    if len(vcols) > n:
        _, keep = _pivot_block(vcols, model, rng)
        vcols = [vcols[j] for j in keep]
    if len(vcols) != n:
        raise SingularityError(
            f"tangent intersection has rank {len(vcols)}, expected {n}")
    # splitting condition: deformed bundle and its conjugate span the fibre
    spanmat = [[c[i] for c in vcols] for i in range(dim)]
    conj_cols = [_conj_column(model, c) for c in vcols]
    both = [row[:] + [c[i] for c in conj_cols]
            for i, row in enumerate(spanmat)]
    if generic_rank(both, model, rng) != dim:
        raise SingularityError(
            "deformed bundle does not split against its conjugate")
    Wa = [[vcols[b][n + i] for b in range(n)] for i in range(n)]
    Wh = [[vcols[b][i] for b in range(n)] for i in range(n)]
    Phi = mat_div_right(Wh, Wa, tmax=tmax)
    phi = mv_from_endo(model, Phi)
    hp_shape = HoloPoisson(model, phi=phi)
    etas = hp_shape.holo_covector_columns()
    thetas = hp_shape.antiholo_covector_columns()
    # covector lifts: den * eta_a = sum num_j cov_j, exact identities
    ccols = [[C[i][j] for i in range(dim)] for j in range(r)]
    lifted = []
    for eta in etas:
        okflag, cert = span_certificate(ccols, eta, model, rng, tmax=tmax)
        if not okflag:
            raise SingularityError(
                "a deformed covector is outside the covector span of the "
                f"frame (witness point {cert})")
        den, nums = cert
        X = [model.zero_poly() for _ in range(dim)]
        for j in range(r):
            if nums[j]:
                for i in range(dim):
                    if L.gens[j].vec[i]:
                        X[i] = X[i] + nums[j].mul(L.gens[j].vec[i], tmax=tmax)
        if tmax is not None:
            den_inv = den.inverse_t_series(tmax)
            X = [x.mul(den_inv, tmax=tmax).t_truncate(tmax) for x in X]
        else:
            try:
                X = [x.divexact(den) for x in X]
            except ArithmeticError:
                raise UnsupportedSceneError(
                    "covector lift requires a non-polynomial division by "
                    + den.render())
        lifted.append(X)
    # project the lifts onto the deformed holomorphic bundle
    P10 = _holo_projector(model, Phi, tmax=tmax)
    outs = [mat_apply(P10, X, tmax=tmax) for X in lifted]
    # solve S [eta | theta] = [outs | 0]
    Cbasis = [[(etas + thetas)[j][i] for j in range(dim)] for i in range(dim)]
    Mout = [[outs[j][i] if j < n else model.zero_poly()
             for j in range(dim)] for i in range(dim)]
    S = mat_div_right(Mout, Cbasis, tmax=tmax)
    if tmax is not None:
        S = mat_t_truncate(S, tmax)
    try:
        sigma = Bivector.from_matrix(model, S)
    except ValueError:
        raise CertificateError(
            "recovered bivector is not antisymmetric; the frame is not "
            "isotropic in the expected way")
    result = HoloPoisson(model, sigma=sigma, phi=phi)
    if not frames_equal(build_L_sigma(result, tmax=tmax, check=False), L,
                        rng, tmax=tmax):
        raise CertificateError("extraction failed its round-trip identity")
    return result


def _conj_column(model, col):
    n = model.n
    out = [c.conj() for c in col]
    swapped = out[n:2 * n] + out[:n]
    if model.param:
        swapped.append(out[2 * n])
    return swapped


# ---------------------------------------------------------------------------
# Gauge equivalence of holomorphic Poisson structures
# ---------------------------------------------------------------------------

class GaugeReport:
    """Outcome of a gauge-equivalence check.

    ``conditions`` holds the four exact containment verdicts; ``frame_ok``
    the independent graph identity; in real mode ``real_checks`` holds the
    shared-imaginary-part and intertwining identities.  Construction fails
    if the conditions and the frame identity disagree.
    """

    __slots__ = ("mode", "conditions", "witnesses", "frame_ok", "real_checks")

    def __init__(self, mode, conditions, witnesses, frame_ok, real_checks):
        self.mode = mode
        self.conditions = conditions
        self.witnesses = witnesses
        self.frame_ok = frame_ok
        self.real_checks = real_checks
        if all(conditions.values()) != frame_ok:
            raise CertificateError(
                "containment conditions and the frame identity disagree: "
                f"{conditions} vs frame_ok={frame_ok}")

    @property
    def ok(self):
        base = all(self.conditions.values()) and self.frame_ok
        if self.real_checks is not None:
            base = base and all(self.real_checks.values())
        return base

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (f"GaugeReport(mode={self.mode!r}, conditions={self.conditions},"
                f" frame_ok={self.frame_ok}, real_checks={self.real_checks})")


def check_gauge_equiv(hp0: HoloPoisson, hp1: HoloPoisson, beta: MixedForm,
                      mode="complex", rng=None, tmax=None) -> GaugeReport:
    """Decide gauge equivalence of two holomorphic Poisson structures.

    Four exact containment conditions characterise the equivalence; each is
    certified (or refuted with a witness point) independently of the graph
    identity e^beta L_0 = L_1, and the report asserts the two verdicts
    agree.  In real mode the shared imaginary part and its intertwining
    identities are checked as exact matrix identities on top.
    """
    if rng is None:
        raise ValueError("an explicit rng is required for certificates")
    model = hp0.model
    if hp1.model != model or beta.model != model:
        raise ValueError("mixed models")
    if not beta.d().is_zero():
        raise CertificateError("gauge form must be closed")
    F = form_matrix(beta)
    S0, S1 = hp0.sigma.mat, hp1.sigma.mat
    v0 = hp0.antiholo_frame_columns()
    v1 = hp1.antiholo_frame_columns()
    eta0 = hp0.holo_covector_columns()
    eta1 = hp1.holo_covector_columns()

    def contained(cols, targets):
        for w in targets:
            if tmax is not None:
                w = [x.t_truncate(tmax) for x in w]
            okflag, cert = span_certificate(cols, w, model, rng, tmax=tmax)
            if not okflag:
                return False, cert
        return True, None

    conditions = {}
    witnesses = {}
    # the 2-form sends the old antiholomorphic bundle into new (1,0)-covectors
    conditions["covector_type"], witnesses["covector_type"] = contained(
        eta1, [mat_apply(F, x, tmax=tmax) for x in v0])
    # corrected old antiholomorphic vectors land in the new bundle
    conditions["forward_tangent"], witnesses["forward_tangent"] = contained(
        v1, [[a - b for a, b in zip(x, mat_apply(
            mat_mul(S1, F, tmax=tmax), x, tmax=tmax))] for x in v0])
    # corrected new antiholomorphic vectors land in the old bundle
    conditions["backward_tangent"], witnesses["backward_tangent"] = contained(
        v0, [[a + b for a, b in zip(y, mat_apply(
            mat_mul(S0, F, tmax=tmax), y, tmax=tmax))] for y in v1])
    # the bivector discrepancy on old (1,0)-covectors is antiholomorphic
    D = mat_add(mat_sub(S1, S0),
                mat_mul(mat_mul(S1, F, tmax=tmax), S0, tmax=tmax))
    conditions["bivector_match"], witnesses["bivector_match"] = contained(
        v1, [mat_apply(D, a, tmax=tmax) for a in eta0])

    L0 = build_L_sigma(hp0, tmax=tmax, check=False)
    L1 = build_L_sigma(hp1, tmax=tmax, check=False)
    frame_ok = frames_equal(gauge_frame(L0, beta, tmax=tmax), L1, rng,
                            tmax=tmax)

    real_checks = None
    if mode == "real":
        if not beta.is_real():
            raise CertificateError("real mode requires a real 2-form")
        Q0 = imag_Q(hp0, tmax=tmax)
        Q1 = imag_Q(hp1, tmax=tmax)
        I0 = hp0.complex_structure(tmax=tmax)
        I1 = hp1.complex_structure(tmax=tmax)

        def z(mat):
            if tmax is not None:
                mat = mat_t_truncate(mat, tmax)
            return mat_is_zero(mat)

        real_checks = {
            "shared_imaginary_part": Q0 == Q1,
            "form_intertwines": z(mat_add(mat_mul(F, I0, tmax=tmax),
                                          mat_mul(mat_transpose(I1), F,
                                                  tmax=tmax))),
            "structure_difference": z(mat_sub(
                mat_sub(I0, I1), mat_mul(Q0.mat, F, tmax=tmax))),
            "single_structure": z(mat_sub(
                mat_add(mat_mul(F, I0, tmax=tmax),
                        mat_mul(mat_transpose(I0), F, tmax=tmax)),
                mat_mul(mat_mul(F, Q0.mat, tmax=tmax), F, tmax=tmax))),
        }
    elif mode != "complex":
        raise ValueError(f"unknown mode {mode!r}")
    return GaugeReport(mode, conditions, witnesses, frame_ok, real_checks)


def imag_Q(hp: HoloPoisson, tmax=None) -> Bivector:
    """The real bivector Q with sigma = (1/4)(I Q + i Q).

    Q is the imaginary part of 4 sigma; the reconstruction identity is
    verified exactly and certifies that sigma is of deformed type (2,0).
    """
    sig = hp.sigma
    Q = (sig - sig.conj()).scale(Scalar(0, -2))
    Im = hp.complex_structure(tmax=tmax)
    recon = mat_scale(
        mat_add(mat_mul(Im, Q.mat, tmax=tmax),
                mat_scale(Q.mat, Scalar(0, 1))),
        Scalar(Fraction(1, 4)))
    diff = mat_sub(recon, sig.mat)
    if tmax is not None:
        diff = mat_t_truncate(diff, tmax)
    if not mat_is_zero(diff):
        raise CertificateError(
            "imaginary-part reconstruction failed; sigma is not of "
            "deformed type (2,0)")
    return Q
