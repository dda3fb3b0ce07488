"""Order-by-order deformation solver: inverse series, transport, families."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gkdirac.errors import CertificateError
from gkdirac.forms import MixedForm
from gkdirac.frames import frames_equal
from gkdirac.hitchin import (MCElement, deformation_frame,
                             deformed_holomorphic_lift, deformed_structures,
                             formality_psi, hamiltonian_family_check,
                             mc_component_check, pi_star_transport,
                             solve_hitchin, twistor_demo,
                             verify_graph_identity,
                             _deformed_dbar_function)
from gkdirac.linalg import mat_add
from gkdirac.model import Model
from gkdirac.multivector import MVElement, bivector_matrix
from gkdirac.poisson import (Bivector, HoloPoisson, RealPoisson,
                             build_L_sigma, gauge_real_poisson)
from gkdirac.poly import Poly
from gkdirac.scalars import Scalar, sc

M2 = Model(2)
M1 = Model(1)


def c2_sigma():
    return Bivector.from_mv(MVElement.monomial(M2, M2.z(0), vecs=(0, 1)))


def c2_background():
    return HoloPoisson(M2, sigma=c2_sigma())


def fubini_seed(model=M2):
    half_i = Scalar(0, Fraction(1, 2))
    out = MixedForm.zero(model)
    for k in range(model.n):
        out = out + MixedForm.monomial(model, Poly.const(model.n, half_i),
                                       (k,), (k,))
    return out


def mono(model, coeff, holo=(), anti=()):
    return MixedForm.monomial(model, model.poly(coeff), holo, anti)


# ---------------------------------------------------------------------------
# MCElement
# ---------------------------------------------------------------------------

def test_mc_element_type_enforcement():
    rho = MVElement.monomial(M2, M2.poly(1), vecs=(0, 1))
    phi = MVElement.monomial(M2, M2.poly(1), vecs=(0,), bars=(1,))
    gamma = MixedForm.monomial(M2, M2.poly(1), anti=(0, 1))
    MCElement(M2, rho=rho, phi=phi, gamma=gamma)
    with pytest.raises(ValueError):
        MCElement(M2, rho=phi)
    with pytest.raises(ValueError):
        MCElement(M2, phi=rho)
    with pytest.raises(ValueError):
        MCElement(M2, gamma=mono(M2, sc(1, 0), (0,), (1,)))


def test_mc_element_polyvector_round_trip():
    rho = MVElement.monomial(M2, M2.z(1), vecs=(0, 1))
    phi = MVElement.monomial(M2, M2.zbar(0), vecs=(1,), bars=(0,))
    gamma = MixedForm.monomial(M2, M2.z(0), anti=(0, 1))
    eps = MCElement(M2, rho=rho, phi=phi, gamma=gamma)
    back = MCElement.from_polyvector(eps.polyvector())
    assert back == eps
    assert MCElement.zero(M2).polyvector().is_zero()


# ---------------------------------------------------------------------------
# The inverse series
# ---------------------------------------------------------------------------

def test_formality_zero_sigma_is_identity():
    hp = HoloPoisson(M2)
    beta = fubini_seed().poly_mul(Poly.t(2))
    assert formality_psi(beta, hp, 6) == beta.t_truncate(6)


def test_formality_zero_beta():
    assert formality_psi(MixedForm.zero(M2), c2_background(), 5).is_zero()


def test_formality_rejects_non_closed():
    beta = MixedForm.monomial(M2, M2.zbar(0), (0,), (1,)).poly_mul(Poly.t(2))
    assert not beta.d().is_zero()
    with pytest.raises(CertificateError):
        formality_psi(beta, c2_background(), 4)


def test_formality_rejects_constant_term():
    with pytest.raises(CertificateError):
        formality_psi(fubini_seed(), c2_background(), 4)


def test_formality_flat_family_terminates():
    # constant-coefficient scene where every cubic-and-higher word dies:
    # the inverse series of 2it omega_1 + t^2 conj(volume) is exactly
    # 2it omega_1
    rep = twistor_demo(order=2)
    hp = HoloPoisson(rep.model, sigma=rep.sigma1)
    beta = rep.series.beta_series()
    psi = formality_psi(beta, hp, 9)
    seed = fubini_seed(rep.model).scale(sc(0, 2)).poly_mul(Poly.t(2))
    assert psi == seed
    assert psi.component(0, 2).is_zero()


def test_formality_accepts_series_object():
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 3, mode="real")
    assert formality_psi(ds, hp, 3) == ds.omega


def test_formality_random_closed_forms_are_flat():
    rng = random.Random(90125)
    hp = c2_background()
    for _ in range(4):
        alpha = MixedForm.zero(M2)
        for leg in range(4):
            coeff = M2.z(0) * M2.zbar(1) if leg == 0 else \
                M2.poly(Fraction(rng.randint(-2, 2), rng.randint(1, 3)))
            holo = (leg,) if leg < 2 else ()
            anti = (leg - 2,) if leg >= 2 else ()
            alpha = alpha + MixedForm.monomial(M2, coeff, holo, anti)
        beta = alpha.d().poly_mul(Poly.t(2))
        # full certificates (defining identity, partial sums, flatness)
        formality_psi(beta, hp, 6)


# ---------------------------------------------------------------------------
# Transport into the polyvector complex
# ---------------------------------------------------------------------------

def test_transport_splits_by_type():
    hp = c2_background()
    w11 = fubini_seed()
    w02 = MixedForm.monomial(M2, M2.z(0), anti=(0, 1))
    w20 = MixedForm.monomial(M2, M2.poly(1), holo=(0, 1))
    e11 = pi_star_transport(w11, hp)
    assert e11.rho.is_zero() and e11.gamma.is_zero()
    assert not e11.phi.is_zero()
    e02 = pi_star_transport(w02, hp)
    assert e02.gamma == w02 and e02.phi.is_zero() and e02.rho.is_zero()
    e20 = pi_star_transport(w20, hp)
    assert e20.phi.is_zero() and e20.gamma.is_zero()
    assert not e20.rho.is_zero()
    total = pi_star_transport(w11 + w02 + w20, hp).polyvector()
    split = (e11.polyvector() + e02.polyvector() + e20.polyvector())
    assert total == split


def test_transport_first_order_representative():
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 3, mode="real")
    rep1 = pi_star_transport(fubini_seed().poly_mul(Poly.t(2)),
                             hp).t_coefficient(1)
    got = ds.eps.t_coefficient(1)
    assert got.phi == rep1.phi
    assert got.rho == rep1.rho
    assert got.gamma.is_zero()


# ---------------------------------------------------------------------------
# The solver
# ---------------------------------------------------------------------------

def test_solve_zero_seed_gives_zero_series():
    ds = solve_hitchin(c2_background(), MixedForm.zero(M2), 4)
    assert all(b.is_zero() for b in ds.betas)
    assert ds.omega.is_zero()
    assert ds.eps.is_zero()


def test_solve_rejects_bad_seeds():
    hp = c2_background()
    with pytest.raises(CertificateError):
        solve_hitchin(hp, MixedForm.monomial(M2, M2.zbar(0), (0,), (1,)), 3)
    with pytest.raises(CertificateError):
        solve_hitchin(hp, MixedForm.monomial(M2, M2.poly(1), anti=(0, 1)), 3)
    with pytest.raises(CertificateError):
        solve_hitchin(hp, fubini_seed().poly_mul(Poly.t(2)), 3)
    with pytest.raises(CertificateError):
        # real mode needs a real (1,1) seed
        solve_hitchin(hp, fubini_seed().scale(sc(0, 1)), 3, mode="real")
    with pytest.raises(ValueError):
        solve_hitchin(hp, fubini_seed(), 0)
    with pytest.raises(ValueError):
        solve_hitchin(hp, fubini_seed(), 3, mode="formal")


def test_solve_c2_real_quadratic_obstruction():
    ds = solve_hitchin(c2_background(), fubini_seed(), 4, mode="real")
    quarter = Scalar(Fraction(-1, 4))
    want_r2 = MixedForm.monomial(M2, M2.z(0).scale(quarter), anti=(0, 1))
    assert ds.residuals[2] == want_r2
    eighth = Fraction(1, 8)
    want_g2 = (MixedForm.monomial(M2, (M2.z(0) * M2.zbar(0)).scale(
        Scalar(eighth)), anti=(1,))
        - MixedForm.monomial(M2, (M2.z(0) * M2.zbar(1)).scale(
            Scalar(eighth)), anti=(0,)))
    assert ds.gammas[2] == want_g2
    assert ds.betas[1] == (want_g2 + want_g2.conj()).d()
    for b in ds.betas:
        assert b.d().is_zero() and b.is_real()
    assert ds.omega.component(0, 2).is_zero()
    # the scheme keeps producing corrections at this scene
    assert not ds.residuals[3].is_zero()


def test_solve_c2_complex_mode_differs_from_real():
    dsr = solve_hitchin(c2_background(), fubini_seed(), 3, mode="real")
    dsc = solve_hitchin(c2_background(), fubini_seed(), 3, mode="complex")
    assert dsr.betas[1] != dsc.betas[1]
    assert dsc.betas[1].d().is_zero()
    assert not dsc.betas[1].is_real()


# ---------------------------------------------------------------------------
# Gauge identity
# ---------------------------------------------------------------------------

def test_graph_identity_zero_form():
    rng = random.Random(31)
    rep = verify_graph_identity(MixedForm.zero(M2), c2_background(), rng)
    assert rep.ok and len(rep.points) == 5


def test_graph_identity_constant_scene():
    rng = random.Random(37)
    sigma = Bivector.wedge_pair(M2, 0, 1, sc(1, 1))
    hp = HoloPoisson(M2, sigma=sigma)
    beta = (mono(M2, sc(1, 0), (0,), (1,))
            + mono(M2, sc(-1, 0), (1,), (0,))
            + mono(M2, sc(0, 2), (0,), (0,)))
    assert beta.d().is_zero()
    rep = verify_graph_identity(beta, hp, rng, sample_count=6)
    assert rep.ok and all(flag for _p, flag in rep.points)


def test_graph_identity_series_level():
    rng = random.Random(41)
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 4, mode="real")
    rep = verify_graph_identity(ds.beta_series(), hp, rng, order=4)
    assert rep.ok and rep.series_equal is True


# ---------------------------------------------------------------------------
# Componentwise flatness
# ---------------------------------------------------------------------------

def test_mc_components_zero_element():
    rep = mc_component_check(MCElement.zero(M2), c2_background())
    assert rep.ok and rep.linear_ok


def test_mc_components_of_solved_series():
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 4, mode="real")
    rep = mc_component_check(ds.eps, hp, tmax=4)
    assert rep.ok and rep.linear_ok
    assert set(rep.components) == {"complex_structure", "holomorphicity",
                                   "jacobi", "form_part"}


def test_mc_components_flag_violations():
    phi_bad = MVElement.monomial(M2, M2.zbar(0) * M2.zbar(1),
                                 vecs=(0,), bars=(0,))
    rep = mc_component_check(MCElement(M2, phi=phi_bad), c2_background())
    assert not rep.ok
    assert not rep.components["complex_structure"].is_zero()


small = st.fractions(min_value=-2, max_value=2, max_denominator=3)


@settings(max_examples=12, deadline=None)
@given(small, small, small)
def test_mc_component_sum_consistency(a, b, c):
    # the split never raises and always reproduces the one-shot residual,
    # whatever the (non-flat) input
    rho = MVElement.monomial(M2, M2.z(0).scale(Scalar(a)), vecs=(0, 1))
    phi = MVElement.monomial(M2, M2.zbar(1).scale(Scalar(b)),
                             vecs=(0,), bars=(1,))
    gamma = MixedForm.monomial(M2, M2.z(1).scale(Scalar(c)), anti=(0, 1))
    eps = MCElement(M2, rho=rho, phi=phi, gamma=gamma)
    rep = mc_component_check(eps, c2_background())
    assert set(rep.components) == {"complex_structure", "holomorphicity",
                                   "jacobi", "form_part"}


# ---------------------------------------------------------------------------
# Deformed structures
# ---------------------------------------------------------------------------

def test_deformed_structures_zero_element():
    rng = random.Random(53)
    hp = c2_background()
    st_ = deformed_structures(MCElement.zero(M2), hp, rng)
    assert st_.ok
    assert st_.poisson.sigma.mat == hp.sigma.mat
    P, UR, Q = st_.psi_blocks
    assert P[0][0] == M2.poly(1) and P[2][2].is_zero()
    assert Q[2][2] == M2.poly(1) and Q[0][0].is_zero()
    assert all(e.is_zero() for row in UR for e in row)


def test_deformed_structures_pure_bivector_shift():
    rng = random.Random(59)
    hp = c2_background()
    rho = MVElement.monomial(M2, M2.poly(Fraction(1, 3)), vecs=(0, 1))
    eps = MCElement(M2, rho=rho)
    assert eps.mc_residual(hp).is_zero()
    st_ = deformed_structures(eps, hp, rng)
    want = mat_add(hp.sigma.mat, bivector_matrix(rho, size=M2.dim))
    assert st_.poisson.sigma.mat == want


def test_deformed_structures_solved_series():
    rng = random.Random(61)
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 4, mode="real")
    st_ = deformed_structures(ds.eps, hp, rng, tmax=4)
    assert st_.ok and st_.frame_match
    assert all(agree for _f, agree, _h in st_.holomorphic_functions)
    qualified = [lbl for lbl, q, _ok in st_.poisson_fields if q]
    assert qualified  # the corrected coordinate hamiltonians make the cut
    assert frames_equal(
        deformation_frame(hp, ds.eps, tmax=4),
        build_L_sigma(st_.poisson, tmax=4, check=False), rng, tmax=4)


def test_deformed_structures_rejects_surviving_gamma():
    rng = random.Random(67)
    gamma = MixedForm.monomial(M2, M2.z(0), anti=(0, 1))
    with pytest.raises(CertificateError):
        deformed_structures(MCElement(M2, gamma=gamma), c2_background(), rng)


def test_deformed_holomorphic_lift_closes_residual():
    hp = c2_background()
    ds = solve_hitchin(hp, fubini_seed(), 4, mode="real")
    h = deformed_holomorphic_lift(M2.z(0), ds.eps, 4)
    assert _deformed_dbar_function(M2, h, ds.eps, tmax=4).is_zero()
    assert h.t_coefficient(0) == M2.z(0)
    with pytest.raises(ValueError):
        deformed_holomorphic_lift(M2.zbar(0), ds.eps, 3)


# ---------------------------------------------------------------------------
# Hamiltonian families
# ---------------------------------------------------------------------------

def r2_family(tmax=6):
    rng = random.Random(71)
    mat = [[M1.zero_poly(), M1.poly(sc(0, 2))],
           [M1.poly(sc(0, -2)), M1.zero_poly()]]
    pi0 = RealPoisson(M1, Bivector(M1, mat))
    B = MixedForm.monomial(M1, Poly.t(1).scale(Scalar(0, Fraction(1, 2))),
                           (0,), (0,))
    return gauge_real_poisson(pi0, B, rng, tmax=tmax), B


def test_real_family_trivial_gauge():
    rng = random.Random(73)
    mat = [[M1.zero_poly(), M1.poly(sc(0, 2))],
           [M1.poly(sc(0, -2)), M1.zero_poly()]]
    pi0 = Bivector(M1, mat)
    rep = hamiltonian_family_check((pi0, MixedForm.zero(M1)), rng,
                                   mode="real", tmax=4)
    assert rep.ok


def test_real_family_line_scene():
    rng = random.Random(79)
    rp, B = r2_family()
    # geometric series response to the linear gauge
    assert rp.pi.mat[1][0].t_coefficient(3) == Poly.const(1, sc(0, -2))
    rep = hamiltonian_family_check((rp.pi, B), rng, mode="real", tmax=6)
    assert rep.ok, rep.checks


def test_real_family_solved_c2_scene():
    rng = random.Random(83)
    hp = c2_background()
    sig_mat = bivector_matrix(MVElement.monomial(M2, M2.z(0), vecs=(0, 1)),
                              size=4)
    # the real bivector sigma + conj(sigma)
    from gkdirac.hitchin import _conj_operator
    Q = Bivector(M2, mat_add(sig_mat, _conj_operator(M2, sig_mat)))
    assert Q.is_real() and RealPoisson(M2, Q).is_poisson()
    ds = solve_hitchin(hp, fubini_seed(), 3, mode="real")
    F = ds.beta_series()
    rp = gauge_real_poisson(RealPoisson(M2, Q), F, rng, tmax=3)
    rep = hamiltonian_family_check((rp.pi, F), rng, mode="real", tmax=3)
    assert rep.ok, rep.checks


def test_real_family_rejects_complex_gauge():
    rng = random.Random(89)
    rp, B = r2_family()
    with pytest.raises(CertificateError):
        hamiltonian_family_check((rp.pi, B.scale(sc(0, 1))), rng,
                                 mode="real", tmax=4)


def test_complex_family_identities():
    rng = random.Random(97)
    rep = twistor_demo(order=6)
    ham = hamiltonian_family_check(rep.series, rng, mode="complex", tmax=6)
    assert ham.ok, ham.checks
    assert set(ham.checks) == {"structure_velocity", "bivector_velocity",
                               "conjugate_velocity"}


# ---------------------------------------------------------------------------
# The flat four-dimensional family
# ---------------------------------------------------------------------------

def test_twistor_exact_low_order():
    rep = twistor_demo(order=2)
    assert rep.ok
    model = rep.model
    assert rep.sigma1.mat == Bivector.wedge_pair(model, 0, 1,
                                                 Scalar(-1)).mat
    Obar = MixedForm.monomial(model, model.poly(1), (0, 1), ()).conj()
    assert rep.series.betas[1] == Obar
    assert rep.series.residuals[2] == Obar.scale(Scalar(-1))


def test_twistor_terminates_at_high_order():
    rep = twistor_demo(order=8)
    assert rep.ok
    assert rep.checks["higher_terms_vanish"]
    low = twistor_demo(order=2)
    assert rep.series.betas[:2] == low.series.betas
    assert rep.omega_t == low.omega_t
