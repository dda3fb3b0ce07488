"""Generalized complex and generalized Kahler structures as Dirac-frame pairs.

A generalized complex structure is stored as a Dirac frame ``L`` with
``L`` transverse to its conjugate; its underlying real Poisson structure is
recovered from the combination ``(1/2i)(L - conj L)``, which must be the
graph of a bivector.  A generalized Kahler candidate is a pair of frames
``(L1, L2)``; the checker evaluates four conditions:

* ``transversality``   -- the anchor images of each frame and its conjugate
  span the tangent space;
* ``real_poisson_graphs`` -- both combinations ``(1/2i)(L_k - conj L_k)``
  are graphs of real Poisson bivectors;
* ``holomorphic_poisson_pair`` -- the combinations ``(1/2i)(L1 - L2)`` and
  ``(1/2i)(L1 - conj L2)`` carry certified holomorphic Poisson structures;
* ``positivity``       -- the pairing ``<u, conj u>`` is positive definite
  on the pointwise intersection ``L1 cap L2``.

Everything is exact: containments are span certificates, intersections are
kernel computations over Q(i), and positivity is settled by leading
principal minors of the exact Gram matrix.
"""

from fractions import Fraction

from .errors import CertificateError, SingularityError, UnsupportedSceneError
from .forms import MixedForm
from .frames import (DiracFrame, PointDirac, conj_stack, dirac_scale,
                     dirac_sum, frames_equal, gauge_frame, graph_bivector,
                     involutivity_report, point_pairing)
from .linalg import (generic_rank, poly_det, real_roots_in_interval,
                     scalar_det, scalar_rank, span_certificate)
from .model import Model
from .multivector import form_matrix
from .poisson import (Bivector, HoloPoisson, RealPoisson, build_L_sigma,
                      check_gauge_equiv, extract_holo_poisson,
                      gauge_real_poisson, imag_Q)
from .poly import Poly
from .scalars import Scalar

__all__ = [
    "GCStruct",
    "GKCheckReport",
    "GKFamilyReport",
    "GKPair",
    "gc_deform",
    "gc_from_dirac",
    "gk_check",
    "gk_deform_family",
    "gk_lift",
    "graph_to_bivector",
    "half_i_difference",
]

_HALF_OVER_I = Scalar(0, Fraction(-1, 2))  # 1/(2i)


def half_i_difference(f1: DiracFrame, f2: DiracFrame, rng, tmax=None):
    """The Dirac combination (1/2i)(f1 - f2)."""
    total = dirac_sum(f1, dirac_scale(f2, Scalar(-1)), rng, tmax=tmax)
    return dirac_scale(total, _HALF_OVER_I)


def _frame_uses_t(frame: DiracFrame) -> bool:
    return any(p.t_degree() > 0 for g in frame.gens for p in g.stack())


def _sample_points(model, rng, frames, count):
    with_t = any(_frame_uses_t(f) for f in frames)
    return model.sample_points(rng, count=count, with_t=with_t)


def _divide_out(model, X, den, tmax, what):
    if tmax is not None:
        inv = den.inverse_t_series(tmax)
        return [x.mul(inv, tmax=tmax).t_truncate(tmax) for x in X]
    try:
        return [x.divexact(den) for x in X]
    except ArithmeticError:
        raise UnsupportedSceneError(
            f"{what} requires a non-polynomial division by " + den.render())


def graph_to_bivector(frame: DiracFrame, rng, tmax=None) -> Bivector:
    """Recognize a frame as the graph {P xi + xi} of a bivector.

    Each coordinate covector is lifted through the frame's covector block
    by an exact span certificate; the matching vector parts assemble the
    bivector matrix, and a two-sided frame identity confirms the result.
    Raises SingularityError when the covector block drops rank, i.e. when
    the frame meets the tangent bundle.
    """
    model = frame.model
    dim = model.dim
    ccols = [list(g.cov) for g in frame.gens]
    cols = []
    for a in range(dim):
        w = [model.zero_poly() for _ in range(dim)]
        w[a] = model.poly(1)
        okflag, cert = span_certificate(ccols, w, model, rng, tmax=tmax)
        if not okflag:
            raise SingularityError(
                "frame is not a bivector graph: a coordinate covector is "
                f"outside the covector span (witness point {cert})",
                point=cert)
        den, nums = cert
        X = [model.zero_poly() for _ in range(dim)]
        for j, g in enumerate(frame.gens):
            if nums[j]:
                for i in range(dim):
                    if g.vec[i]:
                        X[i] = X[i] + nums[j].mul(g.vec[i], tmax=tmax)
        cols.append(_divide_out(model, X, den, tmax, "graph recognition"))
    P = [[cols[a][i] for a in range(dim)] for i in range(dim)]
    try:
        bi = Bivector.from_matrix(model, P)
    except ValueError:
        raise CertificateError(
            "graph matrix is not antisymmetric; the frame is not isotropic")
    if not frames_equal(frame, graph_bivector(model, P), rng, tmax=tmax):
        raise SingularityError(
            "frame does not coincide with the graph of its candidate "
            "bivector; it meets the tangent bundle on a generic locus")
    return bi


# ---------------------------------------------------------------------------
# Generalized complex structures
# ---------------------------------------------------------------------------

class GCStruct:
    """A generalized complex structure: a Dirac frame plus its real Poisson
    bivector and the pointwise transversality certificate."""

    __slots__ = ("model", "L", "pi", "checked_points")

    def __init__(self, model: Model, L: DiracFrame, pi: RealPoisson,
                 checked_points):
        self.model = model
        self.L = L
        self.pi = pi
        self.checked_points = list(checked_points)

    def __repr__(self):
        return (f"GCStruct(dim={self.model.dim}, "
                f"points={len(self.checked_points)})")


def _anchor_spans(f1: DiracFrame, f2: DiracFrame, rng) -> bool:
    model = f1.model
    dim = model.dim
    A = [[g.vec[i] for g in f1.gens] + [g.vec[i] for g in f2.gens]
         for i in range(dim)]
    return generic_rank(A, model, rng) == dim


def gc_from_dirac(L: DiracFrame, rng, tmax=None, sample_count=5) -> GCStruct:
    """Extract the generalized complex data carried by a Dirac frame.

    Certifies transversality with the conjugate frame both generically
    (anchor spans) and pointwise (trivial intersection at sample points),
    and recovers the real Poisson structure from (1/2i)(L - conj L).
    """
    model = L.model
    conj = L.conj()
    if not _anchor_spans(L, conj, rng):
        raise SingularityError(
            "anchor images of the frame and its conjugate do not span the "
            "tangent space")
    gamma = half_i_difference(L, conj, rng, tmax=tmax)
    pi = RealPoisson(model, graph_to_bivector(gamma, rng, tmax=tmax))
    defect = pi.certify(tmax=tmax)
    if defect:
        raise CertificateError(
            "underlying bivector fails the Jacobi identity on entries "
            + ", ".join(str(k) for k in defect))
    points = _sample_points(model, rng, [L], sample_count)
    ranks = [L.eval_point(p).intersect(conj.eval_point(p)).rank()
             for p in points]
    if min(ranks) != 0:
        raise SingularityError(
            f"frame meets its conjugate at every sampled point (ranks "
            f"{ranks})")
    return GCStruct(model, L, pi, points)


def gc_deform(g: GCStruct, beta: MixedForm, rng, tmax=None) -> GCStruct:
    """Deform a generalized complex structure by a closed complex 2-form.

    The new frame is e^beta L; the new Poisson structure must equal the
    gauge transform of the old one by Im(beta), and both routes to it are
    computed and compared.
    """
    if not beta.d().is_zero():
        raise CertificateError("deformation form must be closed")
    moved = gauge_frame(g.L, beta, tmax=tmax)
    expected = gauge_real_poisson(g.pi, beta.imag_part(), rng, tmax=tmax)
    out = gc_from_dirac(moved, rng, tmax=tmax)
    if out.pi.pi != expected.pi:
        raise CertificateError(
            "gauged frame and gauged bivector disagree; the deformation is "
            "not acting as a B-field transform")
    return out


# ---------------------------------------------------------------------------
# Generalized Kahler pairs
# ---------------------------------------------------------------------------

class GKPair:
    """A pair of Dirac frames with its extracted Poisson data."""

    __slots__ = ("model", "L1", "L2", "sigma_plus", "sigma_minus",
                 "pi1", "pi2", "gram_samples")

    def __init__(self, model, L1, L2, sigma_plus, sigma_minus,
                 pi1=None, pi2=None, gram_samples=None):
        self.model = model
        self.L1 = L1
        self.L2 = L2
        self.sigma_plus = sigma_plus
        self.sigma_minus = sigma_minus
        self.pi1 = pi1
        self.pi2 = pi2
        self.gram_samples = gram_samples or []

    def __repr__(self):
        return f"GKPair(dim={self.model.dim})"


class GKCheckReport:
    """Verdict of the four-condition generalized Kahler check."""

    __slots__ = ("model", "conditions", "verdict", "pair", "details")

    def __init__(self, model, conditions, verdict, pair, details):
        self.model = model
        self.conditions = dict(conditions)
        self.verdict = verdict
        self.pair = pair
        self.details = dict(details)

    @property
    def ok(self):
        return self.verdict == "generalized kahler"

    def __bool__(self):
        return self.ok

    def lines(self):
        out = []
        for name in ("transversality", "real_poisson_graphs",
                     "holomorphic_poisson_pair", "positivity"):
            flag = "pass" if self.conditions[name] else "FAIL"
            out.append(f"  {name:28s} {flag}")
        out.append(f"  verdict: {self.verdict}")
        return out

    def __repr__(self):
        return f"GKCheckReport({self.verdict!r})"


def _gram_matrix(model, columns):
    r = len(columns)
    return [[point_pairing(model, columns[j], conj_stack(model, columns[k]))
             for k in range(r)] for j in range(r)]


def _sylvester_positive(G):
    """Leading principal minors of an exact Hermitian matrix, with verdict."""
    minors = []
    for k in range(1, len(G) + 1):
        m = scalar_det([row[:k] for row in G[:k]])
        if m.im != 0:
            raise CertificateError(
                "pairing matrix has a non-real principal minor; it is not "
                "Hermitian")
        minors.append(m.re)
    return all(m > 0 for m in minors), minors


def gk_check(L1: DiracFrame, L2: DiracFrame, rng, tmax=None,
             sample_count=5) -> GKCheckReport:
    """Run the four-condition generalized Kahler check on a frame pair.

    Never raises for a mathematically meaningful failure -- each condition
    is reported with its reason.  Internal-consistency violations (a
    passing extraction with mismatched imaginary parts, or a passing
    pair that fails the implied transversality) do raise CertificateError,
    since they would indicate broken arithmetic rather than a bad input.
    """
    model = L1.model
    if L2.model != model:
        raise ValueError("mixed models")
    conj1, conj2 = L1.conj(), L2.conj()
    conditions = {}
    details = {}

    conditions["transversality"] = (_anchor_spans(L1, conj1, rng)
                                    and _anchor_spans(L2, conj2, rng))

    pi1 = pi2 = None
    for tag, f, cj in (("first", L1, conj1), ("second", L2, conj2)):
        try:
            bi = graph_to_bivector(half_i_difference(f, cj, rng, tmax=tmax),
                                   rng, tmax=tmax)
            cand = RealPoisson(model, bi)
            defect = cand.certify(tmax=tmax)
            if defect:
                raise CertificateError(
                    "Jacobi identity fails on entries "
                    + ", ".join(str(k) for k in defect))
        except (SingularityError, UnsupportedSceneError,
                CertificateError) as err:
            details[f"real_structure_{tag}"] = str(err)
            cand = None
        if tag == "first":
            pi1 = cand
        else:
            pi2 = cand
    conditions["real_poisson_graphs"] = pi1 is not None and pi2 is not None

    hp_plus = hp_minus = None
    for tag, other in (("plus", L2), ("minus", conj2)):
        try:
            hp = extract_holo_poisson(
                half_i_difference(L1, other, rng, tmax=tmax), rng, tmax=tmax)
            certs = hp.certificates(rng, tmax=tmax)
            if not certs.ok:
                raise CertificateError(
                    f"extracted structure failed certificates: {certs!r}")
        except (SingularityError, UnsupportedSceneError,
                CertificateError) as err:
            details[f"holomorphic_{tag}"] = str(err)
            hp = None
        if tag == "plus":
            hp_plus = hp
        else:
            hp_minus = hp
    conditions["holomorphic_poisson_pair"] = (hp_plus is not None
                                              and hp_minus is not None)

    if conditions["holomorphic_poisson_pair"]:
        if imag_Q(hp_plus, tmax=tmax) != imag_Q(hp_minus, tmax=tmax):
            raise CertificateError(
                "extracted structures do not share an imaginary part; this "
                "contradicts the half-difference identities")
        details["imaginary_parts_match"] = True
        if conditions["real_poisson_graphs"] and not \
                conditions["transversality"]:
            raise CertificateError(
                "real and holomorphic conditions hold but transversality "
                "fails; the implication between them is broken")

    # positivity of <u, conj u> on the pointwise intersection L1 cap L2
    points = _sample_points(model, rng, [L1, L2], sample_count)
    n = model.n
    gram_samples = []
    rank_trace = []
    positive_votes = []
    spanning = []
    for pt in points:
        p1, p2 = L1.eval_point(pt), L2.eval_point(pt)
        ell_plus = p1.intersect(p2)
        rank_trace.append(ell_plus.rank())
        if ell_plus.rank() != n:
            continue  # non-generic sample; settled by the other points
        G = _gram_matrix(model, ell_plus.columns)
        okflag, minors = _sylvester_positive(G)
        positive_votes.append(okflag)
        gram_samples.append((pt, minors))
        if conditions["holomorphic_poisson_pair"] and \
                conditions["real_poisson_graphs"]:
            ell_minus = p1.intersect(conj2.eval_point(pt))
            cols = (ell_plus.columns + ell_minus.columns
                    + [conj_stack(model, c) for c in ell_plus.columns]
                    + [conj_stack(model, c) for c in ell_minus.columns])
            rows = [[c[i] for c in cols] for i in range(2 * model.dim)]
            spanning.append(scalar_rank(rows) == 2 * model.dim)
    details["intersection_ranks"] = rank_trace
    conditions["positivity"] = bool(positive_votes) and all(positive_votes)
    if conditions["holomorphic_poisson_pair"] and spanning \
            and not all(spanning):
        raise CertificateError(
            "the four intersection subspaces fail to span the fibre at a "
            "generic sample point")
    if spanning:
        details["fibre_splits"] = True

    if all(conditions.values()):
        verdict = "generalized kahler"
    elif conditions["holomorphic_poisson_pair"]:
        verdict = "degenerate generalized kahler"
    else:
        verdict = "not generalized kahler"

    pair = None
    if conditions["holomorphic_poisson_pair"]:
        pair = GKPair(model, L1, L2, hp_plus, hp_minus, pi1=pi1, pi2=pi2,
                      gram_samples=gram_samples)
    return GKCheckReport(model, conditions, verdict, pair, details)


# ---------------------------------------------------------------------------
# Lifting gauge deformations of the half-difference structures
# ---------------------------------------------------------------------------

def gk_lift(beta_plus: MixedForm, beta_minus: MixedForm, pair: GKPair,
            rng, tmax=None) -> GKCheckReport:
    """Lift a pair of gauge deformations of (sigma_+, sigma_-) to the pair.

    Given closed 2-forms with a shared imaginary part B, the frames are
    re-gauged by beta1 = -B + i(F_- + F_+) and beta2 = B + i(F_- - F_+),
    where F_+- are the real parts.  The lifted pair reproduces the gauged
    half-difference structures exactly; this identity is certified, the
    gauged structures are re-extracted and checked against the originals,
    and the full four-condition check is re-run on the new pair.
    """
    model = pair.model
    for b in (beta_plus, beta_minus):
        if not b.d().is_zero():
            raise CertificateError("gauge forms must be closed")
    B = beta_plus.imag_part()
    if beta_minus.imag_part() != B:
        raise CertificateError("gauge forms must share their imaginary part")
    F_plus = beta_plus.real_part()
    F_minus = beta_minus.real_part()

    new_sigma = {}
    for tag, hp, beta in (("plus", pair.sigma_plus, beta_plus),
                          ("minus", pair.sigma_minus, beta_minus)):
        base = build_L_sigma(hp, tmax=tmax, check=False)
        moved = gauge_frame(base, beta, tmax=tmax)
        try:
            hp_new = extract_holo_poisson(moved, rng, tmax=tmax)
        except SingularityError as exc:
            # hypothesis of the lift: each gauge form must carry its
            # structure to another holomorphic Poisson structure
            raise CertificateError(
                f"the {tag} gauge form does not produce a holomorphic "
                f"Poisson structure: {exc}")
        certs = hp_new.certificates(rng, tmax=tmax)
        if not certs.ok:
            raise CertificateError(
                f"gauged {tag} structure failed its Poisson certificates")
        equiv = check_gauge_equiv(hp, hp_new, beta, rng=rng, tmax=tmax)
        if not equiv.ok:
            raise CertificateError(
                f"gauged {tag} structure is not gauge-equivalent to the "
                "original")
        new_sigma[tag] = hp_new

    i1 = Scalar(0, 1)
    beta1 = B.scale(Scalar(-1)) + (F_minus + F_plus).scale(i1)
    beta2 = B + (F_minus - F_plus).scale(i1)
    L1p = gauge_frame(pair.L1, beta1, tmax=tmax)
    L2p = gauge_frame(pair.L2, beta2, tmax=tmax)

    for tag, other in (("plus", L2p), ("minus", L2p.conj())):
        got = half_i_difference(L1p, other, rng, tmax=tmax)
        want = build_L_sigma(new_sigma[tag], tmax=tmax, check=False)
        if not frames_equal(got, want, rng, tmax=tmax):
            raise CertificateError(
                f"lifted pair does not reproduce the gauged {tag} structure")

    report = gk_check(L1p, L2p, rng, tmax=tmax)
    if report.pair is None:
        raise CertificateError(
            "lifted pair lost its holomorphic Poisson structures")
    if (report.pair.sigma_plus != new_sigma["plus"]
            or report.pair.sigma_minus != new_sigma["minus"]):
        raise CertificateError(
            "re-extracted structures disagree with the gauged ones")
    return report


# ---------------------------------------------------------------------------
# One-parameter families
# ---------------------------------------------------------------------------

class GKFamilyReport:
    """Deformation family outcome: deformed frames, certificates, and the
    exact determinant root data bounding the validity region.

    ``checked`` holds one ``(t, conditions, verdict)`` triple per sampled
    parameter value; ``conditions`` is the per-value condition dictionary
    (or None when the value was skipped as degenerate)."""

    __slots__ = ("model", "L1", "L2", "sigma_plus_family", "minus_fixed",
                 "det_roots", "checked", "ok")

    def __init__(self, model, L1, L2, sigma_plus_family, minus_fixed,
                 det_roots, checked):
        self.model = model
        self.L1 = L1
        self.L2 = L2
        self.sigma_plus_family = sigma_plus_family
        self.minus_fixed = minus_fixed
        self.det_roots = det_roots
        self.checked = checked
        self.ok = minus_fixed and all(v == "generalized kahler"
                                      for _t, _c, v in checked)

    def t_window(self) -> tuple:
        """Conservative open parameter interval around 0 that avoids every
        isolated determinant root; either side is None when unbounded.

        Each isolating interval is avoided wholesale, so the window can
        only be narrower than the true root-free region."""
        lo = hi = None
        for roots in self.det_roots.values():
            if roots is None:
                continue
            for per_point in roots:
                for a, b in per_point:
                    if a >= 0:
                        hi = a if hi is None else min(hi, a)
                    elif b <= 0:
                        lo = b if lo is None else max(lo, b)
                    else:
                        # an isolating interval straddling 0 collapses the
                        # window; the root itself cannot sit at 0 because
                        # the pencil starts at the identity
                        lo = Fraction(0) if lo is None else max(
                            lo, Fraction(0))
                        hi = Fraction(0) if hi is None else min(
                            hi, Fraction(0))
        return (lo, hi)

    def __repr__(self):
        return f"GKFamilyReport(ok={self.ok}, checked={self.checked!r})"


def _det_root_intervals(det: Poly, model, points):
    """Real roots in t of a determinant, isolated at each sample point."""
    out = []
    deg = det.t_degree()
    for pt in points:
        coeffs = []
        for k in range(deg + 1):
            v = det.t_coefficient(k).eval(pt)
            if v.im != 0:
                raise CertificateError(
                    "determinant of a real pencil evaluated non-real")
            coeffs.append(v.re)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) <= 1:
            out.append([])  # constant in t: no real roots
            continue
        lead = abs(coeffs[-1])
        bound = 1 + max(abs(c) for c in coeffs) / lead
        out.append(real_roots_in_interval(coeffs, -bound, bound))
    return out


def _real_graph_frame_certificate(f: DiracFrame, rng, tmax=None) -> bool:
    """Frame-level certificate that (1/2i)(f - conj f) is the graph of a
    real Poisson bivector.

    The combination must be a real frame, graph over the covector block,
    isotropic, and involutive -- equivalent to extracting the bivector
    and certifying its Jacobi identity, but phrased entirely in span
    arithmetic so it applies at parameter values where a pivot choice for
    the extraction would be awkward.  Degenerate combinations surface as
    singular span arithmetic and count as failure.
    """
    model = f.model
    try:
        gamma = half_i_difference(f, f.conj(), rng, tmax=tmax)
    except (SingularityError, UnsupportedSceneError):
        return False
    if not frames_equal(gamma, gamma.conj(), rng, tmax=tmax):
        return False
    cov_rows = [[g.cov[i] for g in gamma.gens] for i in range(model.dim)]
    if generic_rank(cov_rows, model, rng) != model.dim:
        return False
    return bool(involutivity_report.check(gamma, rng, tmax=tmax))


def gk_deform_family(pair: GKPair, F: MixedForm, rng, tmax,
                     check_ts=None, sample_count=4) -> GKFamilyReport:
    """Deform a pair by the family (e^{iF} L1, e^{-iF} L2) for a real
    closed t-dependent 2-form F with F(0) = 0.

    The series-level work is done once: the deformed sigma_+ family is
    re-extracted and certified to order tmax, and sigma_- is certified
    unchanged as a frame identity.  Together these settle the holomorphic
    pair condition for the whole family.  The open conditions --
    transversality, real Poisson graphs, positivity -- genuinely depend
    on the parameter value and are re-established at each entry of
    ``check_ts``; ``checked`` records (t, conditions, verdict) triples.
    Determinant root intervals for both real pencils are isolated at
    sample points to bound the parameter window where the open conditions
    can persist.
    """
    model = pair.model
    if not F.t_truncate(0).is_zero():
        raise CertificateError("family must vanish at t = 0")
    if not F.is_real():
        raise CertificateError("family must be real")
    if not F.d().is_zero():
        raise CertificateError("family must be closed")

    iF = F.scale(Scalar(0, 1))
    L1t = gauge_frame(pair.L1, iF)
    L2t = gauge_frame(pair.L2, iF.scale(Scalar(-1)))

    base_plus = build_L_sigma(pair.sigma_plus, check=False)
    hp_family = extract_holo_poisson(gauge_frame(base_plus, F), rng,
                                     tmax=tmax)
    certs = hp_family.certificates(rng, tmax=tmax)
    if not certs.ok:
        raise CertificateError(
            "deformed structure failed its order-by-order certificates")

    minus_fixed = frames_equal(
        half_i_difference(L1t, L2t.conj(), rng),
        build_L_sigma(pair.sigma_minus, check=False), rng)

    points = model.sample_points(rng, count=sample_count)
    det_roots = {}
    dets = {}
    for tag, rp in (("first", pair.pi1), ("second", pair.pi2)):
        if rp is None:
            det_roots[tag] = None
            continue
        Fmat = form_matrix(F)
        dim = model.dim
        E = [[(model.poly(1) if i == j else model.zero_poly())
              for j in range(dim)] for i in range(dim)]
        for i in range(dim):
            for j in range(dim):
                acc = E[i][j]
                for l in range(dim):
                    if Fmat[i][l] and rp.pi.mat[l][j]:
                        acc = acc + Fmat[i][l] * rp.pi.mat[l][j]
                E[i][j] = acc
        det = poly_det(E)
        dets[tag] = det
        det_roots[tag] = _det_root_intervals(det, model, points)

    if check_ts is None:
        check_ts = [Fraction(1, 8), Fraction(-1, 8), Fraction(1, 16)]
    holo_ok = bool(minus_fixed)
    n = model.n
    checked = []
    for tv in check_ts:
        sval = Scalar(tv)
        degenerate = False
        for det in dets.values():
            for pt in points:
                if det.substitute_t(sval).eval(pt).is_zero():
                    degenerate = True
        if degenerate:
            checked.append((tv, None, "skipped: determinant vanishes"))
            continue
        f1 = L1t.substitute_t(sval)
        f2 = L2t.substitute_t(sval)
        conds = {
            "transversality": (_anchor_spans(f1, f1.conj(), rng)
                               and _anchor_spans(f2, f2.conj(), rng)),
            "real_poisson_graphs": (
                _real_graph_frame_certificate(f1, rng)
                and _real_graph_frame_certificate(f2, rng)),
            "holomorphic_poisson_pair": holo_ok,
        }
        votes = []
        for pt in points:
            ell = f1.eval_point(pt).intersect(f2.eval_point(pt))
            if ell.rank() != n:
                continue  # non-generic sample; settled by the other points
            okflag, _minors = _sylvester_positive(
                _gram_matrix(model, ell.columns))
            votes.append(okflag)
        conds["positivity"] = bool(votes) and all(votes)
        if all(conds.values()):
            verdict = "generalized kahler"
        elif conds["holomorphic_poisson_pair"]:
            verdict = "degenerate generalized kahler"
        else:
            verdict = "not generalized kahler"
        checked.append((tv, conds, verdict))

    return GKFamilyReport(model, L1t, L2t, hp_family, minus_fixed,
                          det_roots, checked)
