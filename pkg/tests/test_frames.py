"""Dirac frame structure: graphs, gauge action, sums, involutivity."""
import random
from fractions import Fraction

import pytest

from gkdirac.forms import MixedForm, dz, dzbar
from gkdirac.frames import (
    DiracFrame,
    GVField,
    PointDirac,
    conjugate_frame,
    cotangent_frame,
    covec_to_form,
    dirac_scale,
    dirac_sum,
    dorfman_bracket,
    form_to_covec,
    frame_matrix,
    frames_equal,
    gauge_frame,
    graph_bivector,
    graph_two_form,
    involutivity_report,
    lie_bracket_components,
    tangent_frame,
)
from gkdirac.linalg import mat_apply
from gkdirac.model import Model
from gkdirac.multivector import MVElement, bivector_matrix, form_matrix
from gkdirac.poly import Poly
from gkdirac.scalars import Scalar, sc


M = Model(2)


def rand_poly(rng, model, nterms=2, maxdeg=2):
    n = model.n
    p = model.zero_poly()
    for _ in range(nterms):
        term = model.poly(Fraction(rng.randrange(-3, 4), rng.randrange(1, 3)))
        for i in range(n):
            for _ in range(rng.randrange(0, maxdeg)):
                term = term * model.z(i)
        for j in range(n):
            for _ in range(rng.randrange(0, maxdeg)):
                term = term * model.zbar(j)
        p = p + term
    return p


def rand_two_form(rng, model, closed=False):
    """A random 2-form; when closed, d(random 1-form)."""
    if closed:
        one = MixedForm.zero(model)
        for i in range(model.n):
            one = one + MixedForm.monomial(model, rand_poly(rng, model), (i,), ())
            one = one + MixedForm.monomial(model, rand_poly(rng, model), (), (i,))
        return one.d()
    out = MixedForm.zero(model)
    n = model.n
    for I in ((0, 1),):
        out = out + MixedForm.monomial(model, rand_poly(rng, model), I, ())
        out = out + MixedForm.monomial(model, rand_poly(rng, model), (), I)
    for i in range(n):
        for j in range(n):
            out = out + MixedForm.monomial(model, rand_poly(rng, model), (i,), (j,))
    return out


def test_covec_form_roundtrip():
    rng = random.Random(301)
    cov = [rand_poly(rng, M) for _ in range(M.dim)]
    assert form_to_covec(covec_to_form(M, cov)) == cov


def test_lie_bracket_jacobi():
    rng = random.Random(303)
    for _ in range(5):
        X, Y, Z = ([rand_poly(rng, M, nterms=1) for _ in range(M.dim)]
                   for _ in range(3))
        lhs = lie_bracket_components(
            M, X, lie_bracket_components(M, Y, Z))
        m1 = lie_bracket_components(
            M, lie_bracket_components(M, X, Y), Z)
        m2 = lie_bracket_components(
            M, Y, lie_bracket_components(M, X, Z))
        for a, b, c in zip(lhs, m1, m2):
            assert a == b + c


def test_pairing_isotropy_of_graphs():
    rng = random.Random(307)
    for _ in range(4):
        B = rand_two_form(rng, M)
        fr = graph_two_form(B)
        assert fr.is_isotropic()
        assert len(fr) == M.dim
    sigma = MVElement.monomial(M, M.z(0), (0, 1), ())
    P = bivector_matrix(sigma, size=M.dim)
    fp = graph_bivector(M, P)
    assert fp.is_isotropic()


def test_tangent_and_cotangent_frames():
    rng = random.Random(311)
    t = tangent_frame(M)
    c = cotangent_frame(M)
    assert t.is_isotropic() and c.is_isotropic()
    rep = involutivity_report.check(t, rng)
    assert rep.ok and rep.rank == M.dim
    rep2 = involutivity_report.check(c, rng)
    assert rep2.ok


def test_graph_closed_two_form_involutive():
    rng = random.Random(313)
    B = rand_two_form(rng, M, closed=True)
    rep = involutivity_report.check(graph_two_form(B), rng)
    assert rep.ok


def test_graph_nonclosed_two_form_obstructed():
    rng = random.Random(317)
    # B = z1 dz1^dz2 wedge-closed? dB = dzb/dz parts: d(z1 dz1^dz2) = 0.
    # use B = zb1 dz1^dz2 instead: dB = dzb1^dz1^dz2 != 0
    B = MixedForm.monomial(M, M.zbar(0), (0, 1), ())
    assert not B.d().is_zero()
    rep = involutivity_report.check(graph_two_form(B), rng)
    assert not rep.ok and rep.failures


def test_gauge_by_closed_form_preserves_involutivity():
    rng = random.Random(319)
    B = rand_two_form(rng, M, closed=True)
    fr = gauge_frame(tangent_frame(M), B)
    rep = involutivity_report.check(fr, rng)
    assert rep.ok
    assert frames_equal(fr, graph_two_form(B), rng)


def test_twisted_involutivity():
    rng = random.Random(323)
    # graph of B with dB = -H is involutive for the H-twisted bracket
    B = MixedForm.monomial(M, M.zbar(0), (0, 1), ())
    H = -B.d()
    rep = involutivity_report.check(graph_two_form(B), rng, H=H)
    assert rep.ok
    rep_untw = involutivity_report.check(graph_two_form(B), rng)
    assert not rep_untw.ok


def test_gauge_composes_additively():
    rng = random.Random(327)
    B1 = rand_two_form(rng, M)
    B2 = rand_two_form(rng, M)
    fr = tangent_frame(M)
    once = gauge_frame(gauge_frame(fr, B1), B2)
    both = gauge_frame(fr, B1 + B2)
    assert frames_equal(once, both, rng)


def test_dirac_scale_and_conjugate():
    rng = random.Random(331)
    B = rand_two_form(rng, M)
    lam = Scalar(Fraction(3, 2))
    scaled = dirac_scale(graph_two_form(B), lam)
    expect = graph_two_form(B.scale(lam))
    assert frames_equal(scaled, expect, rng)
    cj = conjugate_frame(graph_two_form(B))
    expect_cj = graph_two_form(B.conj())
    assert frames_equal(cj, expect_cj, rng)


def test_dirac_sum_difference_of_graphs():
    rng = random.Random(337)
    B1 = rand_two_form(rng, M)
    B2 = rand_two_form(rng, M)
    # (-1)*graph(B1) + graph(B2) = graph(B2 - B1)
    neg = dirac_scale(graph_two_form(B1), Scalar(-1))
    s = dirac_sum(neg, graph_two_form(B2), rng)
    assert frames_equal(s, graph_two_form(B2 - B1), rng)


def test_dirac_sum_with_tangent_identity():
    rng = random.Random(341)
    B = rand_two_form(rng, M)
    fr = graph_two_form(B)
    s = dirac_sum(fr, tangent_frame(M), rng)
    assert frames_equal(s, fr, rng)


def test_point_dirac_equality_and_rank():
    rng = random.Random(347)
    B = rand_two_form(rng, M)
    fr = graph_two_form(B)
    pt = M.sample_point(rng)
    pd = fr.eval_point(pt)
    assert pd.rank() == M.dim
    assert pd.is_isotropic()
    assert pd.equals(fr.eval_point(pt))
    assert not pd.equals(tangent_frame(M).eval_point(pt)) or B.is_zero()


def test_dorfman_leibniz_rule():
    rng = random.Random(349)
    # [u, f v] = f[u, v] + (pi(u) f) v  for the Dorfman bracket
    for _ in range(4):
        u = GVField(M, [rand_poly(rng, M) for _ in range(M.dim)],
                    [rand_poly(rng, M) for _ in range(M.dim)])
        v = GVField(M, [rand_poly(rng, M) for _ in range(M.dim)],
                    [rand_poly(rng, M) for _ in range(M.dim)])
        f = rand_poly(rng, M)
        lhs = dorfman_bracket(u, v.poly_mul(f))
        Xf = M.zero_poly()
        for l in range(M.dim):
            if u.vec[l]:
                from gkdirac.frames import _leg_derivative
                d = _leg_derivative(M, f, l)
                if d:
                    Xf = Xf + u.vec[l] * d
        rhs = dorfman_bracket(u, v).poly_mul(f) + v.poly_mul(Xf)
        assert (lhs - rhs).is_zero()


def std_hermitian_form(model):
    """(i/2) sum_k dz_k ^ dzbar_k (the flat positive form)."""
    out = MixedForm.zero(model)
    for k in range(model.n):
        out = out + MixedForm.monomial(
            model, model.poly(Scalar(0, Fraction(1, 2))), (k,), (k,))
    return out


def test_pointwise_intersection_of_tangent_and_cotangent():
    assert PointDirac.tangent(M).intersect(PointDirac.cotangent(M)).rank() == 0
    assert PointDirac.tangent(M).rank() == M.dim


def test_symplectic_type_meets_conjugate_trivially():
    rng = random.Random(353)
    L = graph_two_form(std_hermitian_form(M).scale(sc(0, 1)))
    for pt in M.sample_points(rng, count=4):
        pd = L.eval_point(pt)
        assert pd.intersect(pd.conj()).rank() == 0


def test_intersection_dimension_matches_anchor_image():
    # dim(L1 cap L2) = dim((L2 - L1) cap T) pointwise on graph pairs
    rng = random.Random(359)
    for _ in range(3):
        B1 = rand_two_form(rng, M)
        B2 = rand_two_form(rng, M)
        L1, L2 = graph_two_form(B1), graph_two_form(B2)
        diff = dirac_sum(dirac_scale(L1, Scalar(-1)), L2, rng)
        for pt in M.sample_points(rng, count=3):
            lhs = L1.eval_point(pt).intersect(L2.eval_point(pt)).rank()
            rhs = diff.eval_point(pt).intersect(
                PointDirac.tangent(M)).rank()
            assert lhs == rhs


def test_point_conjugation_fixes_real_graphs():
    rng = random.Random(367)
    B = rand_two_form(rng, M)
    B = B + B.conj()  # force a real form
    L = graph_two_form(B)
    for pt in M.sample_points(rng, count=3):
        pd = L.eval_point(pt)
        assert pd.conj().equals(pd)
