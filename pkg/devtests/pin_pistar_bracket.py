"""Probe pi_star bracket morphism sign per bidegree pair."""
import random
import sys
from fractions import Fraction

sys.path.insert(0, "/root/pkg/src")

from gkdirac.brackets import dgla_bracket, koszul_bracket, pi_star
from gkdirac.forms import MixedForm
from gkdirac.model import Model
from gkdirac.multivector import MVElement

M = Model(2)
rng = random.Random(11)


def rand_poly(model, nterms=2, maxdeg=2):
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


def hom_form(model, p, q):
    out = MixedForm.zero(model)
    n = model.n
    import itertools
    for I in itertools.combinations(range(n), p):
        for J in itertools.combinations(range(n), q):
            out = out + MixedForm.monomial(model, rand_poly(model), I, J)
    return out


types = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]
for smv in (MVElement.monomial(M, M.poly(1), (0, 1), ()),
            MVElement.monomial(M, M.z(0), (0, 1), ())):
    print("sigma =", smv.render())
    for (p1, q1) in types:
        for (p2, q2) in types:
            a = hom_form(M, p1, q1)
            b = hom_form(M, p2, q2)
            lhs = pi_star(koszul_bracket(a, b, smv, deg=p1 + q1), smv)
            ta, tb = pi_star(a, smv), pi_star(b, smv)
            br = dgla_bracket(ta, tb)
            if lhs.is_zero() and br.is_zero():
                continue
            verdict = None
            for s in (1, -1):
                if (lhs - br.scale(s)).is_zero():
                    verdict = s
            print(f"  ({p1},{q1})x({p2},{q2}): sign {verdict}")
