"""Polynomials on the flat affine model.

A :class:`Poly` is a finite Scalar-linear combination of monomials in the
variables ``z_1..z_n, zbar_1..zbar_n, t``; exponent vectors are stored as
tuples of length ``2n+1`` in that order.  ``t`` is a real parameter:
conjugation fixes it while swapping the z / zbar blocks and conjugating
coefficients.

All arithmetic is exact.  Multiplication accepts an optional ``tmax``
so series work can drop monomials beyond a t-truncation order early.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, ZERO, ONE

__all__ = ["Poly"]


class Poly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        # exponent tuple (len 2n+1) -> nonzero Scalar
        self.terms: dict = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    self.terms[e] = c

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c) -> "Poly":
        if isinstance(c, (int, Fraction)):
            c = Scalar(c)
        p = cls(n)
        if not c.is_zero():
            p.terms[(0,) * (2 * n + 1)] = c
        return p

    @classmethod
    def var(cls, n, index: int, power: int = 1) -> "Poly":
        """Monomial for variable ``index`` in the (z.., zbar.., t) ordering."""
        e = [0] * (2 * n + 1)
        e[index] = power
        return cls(n, {tuple(e): ONE})

    @classmethod
    def z(cls, n, i):
        return cls.var(n, i)

    @classmethod
    def zbar(cls, n, i):
        return cls.var(n, n + i)

    @classmethod
    def t(cls, n, power=1):
        return cls.var(n, 2 * n, power)

    # -- ring ops --------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.n != other.n:
            raise ValueError(f"mixed model dimensions {self.n} != {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Poly.const(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        p = Poly(self.n)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly(self.n)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        if isinstance(c, (int, Fraction)):
            c = Scalar(c)
        if c.is_zero():
            return Poly(self.n)
        p = Poly(self.n)
        p.terms = {e: c * v for e, v in self.terms.items()}
        return p

    def mul(self, other: "Poly", tmax: int | None = None) -> "Poly":
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        self._check(other)
        ti = 2 * self.n
        out: dict = {}
        for e1, c1 in self.terms.items():
            t1 = e1[ti]
            for e2, c2 in other.terms.items():
                if tmax is not None and t1 + e2[ti] > tmax:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        p = Poly(self.n)
        p.terms = out
        return p

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    # -- calculus --------------------------------------------------------
    def derivative(self, index: int) -> "Poly":
        out: dict = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            e2 = list(e)
            e2[index] = k - 1
            e2 = tuple(e2)
            v = c * k
            s = out.get(e2)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(e2, None)
            else:
                out[e2] = s
        p = Poly(self.n)
        p.terms = out
        return p

    def d_z(self, i):
        return self.derivative(i)

    def d_zbar(self, i):
        return self.derivative(self.n + i)

    def d_t(self):
        return self.derivative(2 * self.n)

    def conj(self) -> "Poly":
        """Swap z and zbar blocks, conjugate coefficients; t is fixed."""
        n = self.n
        out = {}
        for e, c in self.terms.items():
            e2 = e[n:2 * n] + e[:n] + (e[2 * n],)
            out[e2] = c.conj()
        p = Poly(n)
        p.terms = out
        return p

    # -- t-series helpers ------------------------------------------------
    def t_coefficient(self, k: int) -> "Poly":
        """The coefficient of t**k, returned t-free."""
        ti = 2 * self.n
        out = {}
        for e, c in self.terms.items():
            if e[ti] == k:
                out[e[:ti] + (0,)] = c
        p = Poly(self.n)
        p.terms = out
        return p

    def t_truncate(self, tmax: int) -> "Poly":
        ti = 2 * self.n
        p = Poly(self.n)
        p.terms = {e: c for e, c in self.terms.items() if e[ti] <= tmax}
        return p

    def t_degree(self) -> int:
        ti = 2 * self.n
        return max((e[ti] for e in self.terms), default=-1)

    def t_valuation(self) -> int:
        """Smallest t-power with a nonzero coefficient; -1 for the zero
        polynomial."""
        ti = 2 * self.n
        return min((e[ti] for e in self.terms), default=-1)

    def t_shift_down(self, k: int) -> "Poly":
        """Divide by t^k; every term must carry at least t^k."""
        if k == 0:
            return self
        ti = 2 * self.n
        out = Poly(self.n)
        for e, c in self.terms.items():
            if e[ti] < k:
                raise ArithmeticError("t-order too low for shift")
            out.terms[e[:ti] + (e[ti] - k,)] = c
        return out

    def substitute_t(self, value: Scalar) -> "Poly":
        ti = 2 * self.n
        out = Poly(self.n)
        for e, c in self.terms.items():
            piece = Poly(self.n, {e[:ti] + (0,): c * (value ** e[ti])})
            out = out + piece
        return out

    def inverse_t_series(self, tmax: int) -> "Poly":
        """Inverse in the ring Q(i)[z,zbar][t]/t^{tmax+1}.

        Requires the t^0 part to be a nonzero constant; anything else has no
        polynomial inverse and is a hard error.
        """
        c0 = self.t_coefficient(0)
        if len(c0.terms) != 1 or (0,) * (2 * self.n + 1) not in c0.terms:
            raise ValueError("series inverse needs a nonzero constant t^0 term")
        a0 = c0.terms[(0,) * (2 * self.n + 1)]
        out = Poly.const(self.n, a0.inverse())
        err = (Poly.const(self.n, ONE) - self.mul(out, tmax=tmax)).t_truncate(tmax)
        while err.terms:  # Newton-style fixed point; err gains a t-order each pass
            out = (out + out.mul(err, tmax=tmax)).t_truncate(tmax)
            new_err = (Poly.const(self.n, ONE) - self.mul(out, tmax=tmax)).t_truncate(tmax)
            if new_err.terms == err.terms:
                raise ArithmeticError("series inversion did not converge")
            err = new_err
        return out

    def divexact(self, den: "Poly") -> "Poly":
        """Exact polynomial division: the quotient q with q * den == self.

        Works over the field Q(i) with lex order on exponent tuples; raises
        ArithmeticError when ``den`` does not divide ``self`` exactly.
        """
        self._check(den)
        if not den.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        num = Poly(self.n)
        num.terms = dict(self.terms)
        quot = Poly(self.n)
        lead_d = max(den.terms)
        cd = den.terms[lead_d]
        while num.terms:
            lead_n = max(num.terms)
            e = tuple(a - b for a, b in zip(lead_n, lead_d))
            if any(x < 0 for x in e):
                raise ArithmeticError("inexact polynomial division")
            term = Poly(self.n, {e: num.terms[lead_n] / cd})
            quot = quot + term
            num = num - term.mul(den)
        return quot

    # -- evaluation ------------------------------------------------------
    def eval(self, point) -> Scalar:
        """Evaluate at a point: z_i -> point.z[i], zbar_i -> conj, t -> point.t."""
        n = self.n
        zs = point.z
        tval = point.t
        acc = ZERO
        for e, c in self.terms.items():
            v = c
            for i in range(n):
                if e[i]:
                    v = v * (zs[i] ** e[i])
                if e[n + i]:
                    v = v * (zs[i].conj() ** e[n + i])
            if e[2 * n]:
                v = v * (tval ** e[2 * n])
            acc = acc + v
        return acc

    # -- degrees and predicates -----------------------------------------
    def zbar_degree_split(self):
        """Split into pieces homogeneous in total zbar-degree: {m: Poly}."""
        n = self.n
        out: dict[int, Poly] = {}
        for e, c in self.terms.items():
            m = sum(e[n:2 * n])
            out.setdefault(m, Poly(n)).terms[e] = c
        return out

    def total_degree(self) -> int:
        return max((sum(e[:2 * self.n]) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.terms:
            return ZERO
        [(e, c)] = list(self.terms.items())
        if any(e):
            raise ValueError("not a constant polynomial")
        return c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        n = self.n
        names = [f"z{i+1}" for i in range(n)] + [f"zb{i+1}" for i in range(n)] + ["t"]
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}")
                for i, k in enumerate(e) if k
            )
            if mono:
                bits.append(f"({c.re}+{c.im} i)*{mono}")
            else:
                bits.append(f"({c.re}+{c.im} i)")
        return " + ".join(bits)

    def __repr__(self):
        return f"Poly<{self.render()}>"
