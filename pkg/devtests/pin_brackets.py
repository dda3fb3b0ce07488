"""Dev scratch: empirically validate/pin the bracket sign conventions.

Not part of the package or test suite.
"""
import itertools
import random
import sys
from fractions import Fraction

sys.path.insert(0, "/root/pkg/src")

from gkdirac.brackets import (
    dgla_bracket, schouten_bracket, lie_bracket_vec, interior_bivector,
    delta_sigma, koszul_bracket, lie_derivative_form, bivector_pair,
    bivector_apply_covector, pi_star, mc_residual_koszul, mc_residual_dgla,
    unit_vector,
)
from gkdirac.forms import MixedForm, dz, dzbar
from gkdirac.model import Model
from gkdirac.multivector import MVElement, vec, covec_bar, bivector_matrix
from gkdirac.poly import Poly
from gkdirac.scalars import Scalar, sc

M = Model(2)
M3 = Model(3)
rng = random.Random(42)


def rand_poly(model, nterms=2, maxdeg=2, rng=rng):
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


def rand_mv(model, pq_choices, nterms=2, rng=rng):
    out = MVElement.zero(model)
    n = model.n
    for _ in range(nterms):
        p, q = pq_choices[rng.randrange(len(pq_choices))]
        I = tuple(sorted(rng.sample(range(n), p)))
        J = tuple(sorted(rng.sample(range(n), q)))
        out = out + MVElement.monomial(model, rand_poly(model), I, J)
    return out


def mv_hom(model, p, q, nterms=2, rng=rng):
    out = MVElement.zero(model)
    n = model.n
    for _ in range(nterms):
        I = tuple(sorted(rng.sample(range(n), p)))
        J = tuple(sorted(rng.sample(range(n), q)))
        out = out + MVElement.monomial(model, rand_poly(model), I, J)
    return out


def dgla_deg(p, q):
    return p + q - 1


# 1. graded antisymmetry: [a,b] = -(-1)^{|a||b|} [b,a]
print("== graded antisymmetry ==")
ok = True
for (p1, q1), (p2, q2) in itertools.product(
        [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1)], repeat=2):
    a = mv_hom(M3, p1, q1)
    b = mv_hom(M3, p2, q2)
    d1, d2 = dgla_deg(p1, q1), dgla_deg(p2, q2)
    lhs = dgla_bracket(a, b)
    rhs = dgla_bracket(b, a).scale((-1) ** (d1 * d2 + 1))
    if not (lhs - rhs).is_zero():
        ok = False
        print("  FAIL", (p1, q1), (p2, q2))
print("  OK" if ok else "  BROKEN")

# 2. graded Jacobi: [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
print("== graded Jacobi ==")
ok = True
for _ in range(6):
    types = [(1, 0), (0, 1), (1, 1), (2, 0)]
    (p1, q1), (p2, q2), (p3, q3) = (types[rng.randrange(4)] for _ in range(3))
    a, b, c = mv_hom(M, p1, q1, 1), mv_hom(M, p2, q2, 1), mv_hom(M, p3, q3, 1)
    d1, d2 = dgla_deg(p1, q1), dgla_deg(p2, q2)
    lhs = dgla_bracket(a, dgla_bracket(b, c))
    rhs = dgla_bracket(dgla_bracket(a, b), c) + \
        dgla_bracket(b, dgla_bracket(a, c)).scale((-1) ** (d1 * d2))
    if not (lhs - rhs).is_zero():
        ok = False
        print("  FAIL", (p1, q1), (p2, q2), (p3, q3))
print("  OK" if ok else "  BROKEN")

# 3. partial_bar is a bracket derivation: D[a,b] = [Da,b] + (-1)^{|a|}[a,Db]
print("== partial_bar derivation ==")
ok = True
for _ in range(8):
    types = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1)]
    (p1, q1), (p2, q2) = (types[rng.randrange(len(types))] for _ in range(2))
    a, b = mv_hom(M, p1, q1, 2), mv_hom(M, p2, q2, 2)
    d1 = dgla_deg(p1, q1)
    lhs = dgla_bracket(a, b).partial_bar()
    rhs = dgla_bracket(a.partial_bar(), b) + \
        dgla_bracket(a, b.partial_bar()).scale((-1) ** d1)
    if not (lhs - rhs).is_zero():
        ok = False
        print("  FAIL", (p1, q1), (p2, q2))
print("  OK" if ok else "  BROKEN")

# 4. wedge (Gerstenhaber) identity: find s in {+1,-1} with
#    [a, b^c] = [a,b]^c + s^{?} ... test candidate signs
print("== Gerstenhaber/odd-Leibniz sign ==")
types = [(1, 0), (0, 1), (1, 1), (2, 0)]
candidates = {
    "(-1)^{(|a|)(degb)}": lambda da, pb, qb: (-1) ** (da * (pb + qb)),
    "(-1)^{(|a|+1)(degb)}": lambda da, pb, qb: (-1) ** ((da + 1) * (pb + qb)),
}
for name, fn in candidates.items():
    ok = True
    for _ in range(10):
        (p1, q1), (p2, q2), (p3, q3) = (types[rng.randrange(4)] for _ in range(3))
        a, b, c = mv_hom(M, p1, q1, 1), mv_hom(M, p2, q2, 1), mv_hom(M, p3, q3, 1)
        da = dgla_deg(p1, q1)
        lhs = dgla_bracket(a, b.wedge(c))
        rhs = dgla_bracket(a, b).wedge(c) + \
            b.wedge(dgla_bracket(a, c)).scale(fn(da, p2, q2))
        if not (lhs - rhs).is_zero():
            ok = False
            break
    print(f"  {name}: {'OK' if ok else 'no'}")

# 5. vector/function sanity
print("== basics ==")
f = rand_poly(M)
g = rand_poly(M)
X = MVElement.monomial(M, f, (0,), ())
Y = MVElement.monomial(M, g, (1,), ())
lb = lie_bracket_vec(X, Y)
expect = MVElement.monomial(M, f * g.d_z(0), (1,), ()) - \
    MVElement.monomial(M, g * f.d_z(1), (0,), ())
print("  Lie bracket:", "OK" if (lb - expect).is_zero() else "BROKEN")

sigma = MVElement.monomial(M, M.poly(1), (0, 1), ())  # @z1 ^ @z2
h = rand_poly(M)
br = dgla_bracket(sigma, MVElement.function(M, h))
# -sigma(dh) = -(h_z1 @z2 - h_z2 @z1)
expect = MVElement.monomial(M, h.d_z(1), (0,), ()) - \
    MVElement.monomial(M, h.d_z(0), (1,), ())
print("  [sigma,f] = -sigma(df):", "OK" if (br - expect).is_zero() else "BROKEN")

# 6. interior bivector pin: i_{@z1^@z2}(dz1^dz2) = +1
w = dz(M, 0).wedge(dz(M, 1))
got = interior_bivector(w, sigma)
print("  i_{@1^@2}(dz1^dz2):", got.render())

# 7. Koszul on 1-forms vs Lie-derivative formula
print("== Koszul 1-form formula ==")
ok = True
for smv in (sigma, MVElement.monomial(M, M.z(0), (0, 1), ())):
    for _ in range(4):
        xiP = [rand_poly(M), rand_poly(M)]
        etaP = [rand_poly(M), rand_poly(M)]
        xi = MixedForm.monomial(M, xiP[0], (0,), ()) + MixedForm.monomial(M, xiP[1], (1,), ())
        eta = MixedForm.monomial(M, etaP[0], (0,), ()) + MixedForm.monomial(M, etaP[1], (1,), ())
        xi_comp = [xiP[0], xiP[1], M.zero_poly(), M.zero_poly()]
        eta_comp = [etaP[0], etaP[1], M.zero_poly(), M.zero_poly()]
        lhs = koszul_bracket(xi, eta, smv, deg=1)
        sX = bivector_apply_covector(smv, M, xi_comp)
        sY = bivector_apply_covector(smv, M, eta_comp)
        pair = bivector_pair(smv, M, xi_comp, eta_comp)
        rhs = (lie_derivative_form(sX, eta) - lie_derivative_form(sY, xi)
               - MixedForm.function(M, pair).d()).scale(-1)
        if not (lhs - rhs).is_zero():
            ok = False
print("  OK" if ok else "  BROKEN")

# 8. pi_star: d-morphism and bracket-morphism sign
print("== pi_star morphisms ==")
for smv in (sigma, MVElement.monomial(M, M.z(0), (0, 1), ())):
    ok_d = True
    for _ in range(6):
        form = MixedForm.monomial(M, rand_poly(M), (0,), ()) + \
            MixedForm.monomial(M, rand_poly(M), (), (1,)) + \
            MixedForm.monomial(M, rand_poly(M), (0,), (1,)) + \
            MixedForm.function(M, rand_poly(M))
        lhs = pi_star(form.d(), smv)
        t = pi_star(form, smv)
        rhs = t.partial_bar() + dgla_bracket(smv, t)
        if not (lhs - rhs).is_zero():
            ok_d = False
    print("  d-morphism:", "OK" if ok_d else "BROKEN")
    for s in (1, -1):
        ok_b = True
        for _ in range(6):
            al = MixedForm.monomial(M, rand_poly(M), (0,), ()) + \
                MixedForm.monomial(M, rand_poly(M), (1,), (0,))
            be = MixedForm.monomial(M, rand_poly(M), (1,), ()) + \
                MixedForm.monomial(M, rand_poly(M), (), (0, 1))
            # need [sigma,sigma]=0 for morphism; both test sigmas are Poisson
            lhs = pi_star(koszul_bracket(al, be, smv, deg=None) if False else
                          koszul_bracket(al + be, al + be, smv, deg=2), smv)
            tt = pi_star(al + be, smv)
            rhs = dgla_bracket(tt, tt).scale(s)
            if not (lhs - rhs).is_zero():
                ok_b = False
                break
        print(f"  bracket-morphism sign {s:+d}:", "OK" if ok_b else "no")

# 9. MC transport: koszul residual vs dgla residual of transported element
print("== MC residual transport ==")
for smv in (sigma, MVElement.monomial(M, M.z(0), (0, 1), ())):
    ok = True
    for _ in range(4):
        om = MixedForm.monomial(M, rand_poly(M), (0, 1), ()) + \
            MixedForm.monomial(M, rand_poly(M), (0,), (1,)) + \
            MixedForm.monomial(M, rand_poly(M), (), (0, 1))
        lhs = pi_star(mc_residual_koszul(om, smv), smv)
        rhs = mc_residual_dgla(pi_star(om, smv), smv)
        if not (lhs - rhs).is_zero():
            ok = False
            break
    print("  match:", "OK" if ok else "BROKEN")
