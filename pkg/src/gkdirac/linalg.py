"""Exact linear algebra over Q(i) scalars and polynomial matrices.

Two layers:

* Scalar matrices (lists of lists of :class:`~gkdirac.scalars.Scalar`):
  Gauss-Jordan reduction with exact pivots, giving rank, solve, kernel,
  inverse and determinant with no rounding anywhere.

* Polynomial matrices (lists of lists of :class:`~gkdirac.poly.Poly`):
  arithmetic helpers, truncated t-series inverses, determinants by
  memoised Laplace expansion, generic rank via random evaluation, and
  symbolic span/kernel certificates built from Cramer-style maximal
  minors.  A certificate is an exact polynomial identity, so a positive
  answer never depends on the sampled points; sampling is only used to
  locate a well-conditioned pivot block quickly.

The univariate Sturm-chain utilities at the bottom isolate real roots of
exact rational polynomials; they drive the validity-interval reports for
one-parameter families.
"""
from __future__ import annotations

from fractions import Fraction

from .model import Point
from .poly import Poly
from .scalars import Scalar, ZERO, ONE

__all__ = [
    "scalar_rref",
    "scalar_rank",
    "scalar_solve",
    "scalar_kernel",
    "scalar_inverse",
    "scalar_det",
    "mat_zero",
    "mat_identity",
    "mat_add",
    "mat_sub",
    "mat_neg",
    "mat_scale",
    "mat_mul",
    "mat_transpose",
    "mat_apply",
    "mat_eval",
    "mat_t_truncate",
    "mat_is_zero",
    "mat_poly_scale",
    "poly_mat_inverse",
    "poly_det",
    "poly_adjugate",
    "exact_inverse",
    "mat_div_right",
    "generic_rank",
    "span_certificate",
    "kernel_certificate",
    "sturm_chain",
    "count_real_roots",
    "real_roots_in_interval",
]


# ---------------------------------------------------------------------------
# Scalar matrices
# ---------------------------------------------------------------------------

def scalar_rref(rows):
    """Reduced row-echelon form.  Returns (rref_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def scalar_rank(rows) -> int:
    return len(scalar_rref(rows)[1])


def scalar_solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent."""
    if not rows:
        return [] if all(not v for v in rhs) else None
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = scalar_rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None  # pivot in the rhs column
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x

def scalar_kernel(rows):
    """Exact basis of the right kernel of A."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = scalar_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def scalar_inverse(rows):
    n = len(rows)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = scalar_rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def scalar_det(rows) -> Scalar:
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            return ZERO
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# Polynomial matrices (plain lists of lists of Poly)
# ---------------------------------------------------------------------------

def mat_zero(rows, cols, n):
    return [[Poly.zero(n) for _ in range(cols)] for _ in range(rows)]


def mat_identity(size, n):
    return [[Poly.const(n, ONE if i == j else ZERO) for j in range(size)]
            for i in range(size)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(A):
    return [[-a for a in r] for r in A]


def mat_scale(A, c):
    return [[a.scale(c) for a in r] for r in A]


def mat_poly_scale(A, f, tmax=None):
    return [[a.mul(f, tmax=tmax) for a in r] for r in A]


def mat_mul(A, B, tmax=None):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    n = A[0][0].n if rows and A[0] else (B[0][0].n if inner else 0)
    out = mat_zero(rows, cols, n)
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(cols):
                b = Bk[j]
                if b:
                    row[j] = row[j] + a.mul(b, tmax=tmax)
    return out


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_apply(A, vec, tmax=None):
    out = []
    for row in A:
        n = row[0].n
        acc = Poly.zero(n)
        for a, v in zip(row, vec):
            if a and v:
                acc = acc + a.mul(v, tmax=tmax)
        out.append(acc)
    return out


def mat_eval(A, point):
    return [[a.eval(point) for a in row] for row in A]


def mat_t_truncate(A, tmax):
    return [[a.t_truncate(tmax) for a in row] for row in A]


def mat_is_zero(A) -> bool:
    return all(not a for row in A for a in row)


def poly_mat_inverse(A, tmax):
    """Inverse of a square polynomial matrix as a t-series mod t^{tmax+1}.

    Requires the t-degree-0 part to be a constant (z-independent) invertible
    matrix; the rest is handled by a Neumann fixed point.  Raises
    ArithmeticError otherwise.
    """
    size = len(A)
    n = A[0][0].n
    A0 = []
    for row in A:
        r0 = []
        for a in row:
            c0 = a.t_coefficient(0)
            if not c0.is_constant():
                raise ArithmeticError(
                    "t-degree-0 block is not constant; series inverse unsupported")
            r0.append(c0.constant_value())
        A0.append(r0)
    A0inv_s = scalar_inverse(A0)  # raises ZeroDivisionError when singular
    A0inv = [[Poly.const(n, c) for c in row] for row in A0inv_s]
    # A = A0 (I + A0^{-1} R) with R = A - A0 of t-order >= 1
    R = mat_sub(A, [[Poly.const(n, c) for c in row] for row in A0])
    N = mat_mul(A0inv, R, tmax=tmax)
    # X = (I + N)^{-1} via fixed point X = I - N X
    X = mat_identity(size, n)
    for _ in range(tmax + 1):
        X = mat_sub(mat_identity(size, n), mat_mul(N, X, tmax=tmax))
    out = mat_mul(X, A0inv, tmax=tmax)
    # exact check mod t^{tmax+1}
    err = mat_sub(mat_t_truncate(mat_mul(A, out, tmax=tmax), tmax),
                  mat_identity(size, n))
    if not mat_is_zero(err):
        raise ArithmeticError("series inverse did not converge at this order")
    return out


def poly_det(A, tmax=None) -> Poly:
    """Determinant by Laplace expansion memoised over row subsets."""
    size = len(A)
    n = A[0][0].n if size else 0
    if size == 0:
        return Poly.const(n, ONE)
    memo = {0: Poly.const(n, ONE)}

    full = (1 << size) - 1

    def det_of(mask):
        # determinant of the submatrix with rows = set bits of mask,
        # columns = first popcount(mask) columns
        if mask in memo:
            return memo[mask]
        col = bin(mask).count("1") - 1
        acc = Poly.zero(n)
        pos = 0  # position of row i among the set bits
        for i in range(size):
            if not (mask >> i) & 1:
                continue
            a = A[i][col]
            if a:
                sub = det_of(mask & ~(1 << i))
                term = a.mul(sub, tmax=tmax)
                acc = acc + (term if (pos + col) % 2 == 0 else -term)
            pos += 1
        memo[mask] = acc
        return acc

    return det_of(full)


def exact_inverse(A, tmax=None):
    """Inverse of a square polynomial matrix, exact whenever representable.

    With ``tmax`` the inverse is a t-series mod t^{tmax+1} (delegates to
    :func:`poly_mat_inverse`).  Without it the adjugate/determinant route is
    used: the determinant must be nonzero and must divide every entry of
    ``adj(A)`` exactly, otherwise the inverse has no polynomial entries and
    an :class:`UnsupportedSceneError` is raised.
    """
    from .errors import SingularityError, UnsupportedSceneError

    if tmax is not None:
        return poly_mat_inverse(A, tmax)
    det = poly_det(A)
    if not det:
        raise SingularityError("matrix is singular", determinant="0")
    adj = poly_adjugate(A)
    try:
        return [[entry.divexact(det) for entry in row] for row in adj]
    except ArithmeticError:
        raise UnsupportedSceneError(
            "matrix inverse is not polynomial; determinant = " + det.render())


def mat_div_right(Num, Den, tmax=None):
    """Num * Den^{-1} for polynomial matrices, exact or raising.

    The division happens after forming Num * adj(Den), so scalings of the
    columns of ``Den`` (matched in ``Num``) cancel before any divisibility
    question arises.  With ``tmax`` a series inverse is tried first and the
    adjugate route is the fallback.
    """
    from .errors import SingularityError, UnsupportedSceneError

    if tmax is not None:
        try:
            return mat_mul(Num, poly_mat_inverse(Den, tmax), tmax=tmax)
        except ArithmeticError:
            pass
    det = poly_det(Den)
    if not det:
        raise SingularityError("matrix is singular", determinant="0")
    N = mat_mul(Num, poly_adjugate(Den))
    try:
        out = [[x.divexact(det) for x in row] for row in N]
    except ArithmeticError:
        raise UnsupportedSceneError(
            "matrix division is not polynomial; determinant = " + det.render())
    if tmax is not None:
        out = mat_t_truncate(out, tmax)
    return out


def poly_adjugate(A, tmax=None):
    """Adjugate matrix: adj(A)[j][i] = (-1)^{i+j} det(A with row i, col j removed).

    Satisfies A * adj(A) = det(A) * Id exactly, which lets callers invert a
    polynomial matrix whenever they can divide by its determinant.
    """
    size = len(A)
    n = A[0][0].n if size else 0
    adj = [[Poly.zero(n) for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [
                [A[r][c] for c in range(size) if c != j]
                for r in range(size) if r != i
            ]
            d = poly_det(minor, tmax=tmax)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


# ---------------------------------------------------------------------------
# Generic rank and symbolic certificates
# ---------------------------------------------------------------------------

def generic_rank(A, model, rng, samples=5, with_t=True):
    """Maximal rank of a polynomial matrix over random exact sample points."""
    best = 0
    for _ in range(samples):
        pt = model.sample_point(rng, with_t=with_t)
        best = max(best, scalar_rank(mat_eval(A, pt)))
    return best


def _pivot_block(cols, model, rng, samples=8, t_zero=False):
    """Locate a maximal independent set of columns and matching rows.

    ``cols`` is a list of column vectors (lists of Poly).  Returns
    (row_idx, col_idx) such that the square submatrix is generically
    invertible, using evaluation at random points to pick the block.
    With ``t_zero`` the sample points sit on the t = 0 slice, so the
    block's determinant has a nonzero leading series coefficient.
    """
    nrows = len(cols[0]) if cols else 0
    best = (0, [], [])
    for _ in range(samples):
        pt = model.sample_point(rng, with_t=True)
        if t_zero:
            pt = Point(pt.z, ZERO)
        M = [[c[i].eval(pt) for c in cols] for i in range(nrows)]
        red, piv_cols = scalar_rref(mat_transpose(M))
        # piv_cols of the transpose are pivot *rows* of M
        rowsel = piv_cols
        Msub = [[M[i][j] for j in range(len(cols))] for i in rowsel]
        red2, piv2 = scalar_rref(Msub)
        r = len(piv2)
        if r > best[0]:
            best = (r, list(rowsel)[:r], piv2)
        if r == min(nrows, len(cols)):
            break
    return best[1], best[2]


def span_certificate(generators, w, model, rng, tmax=None, attempts=4):
    """Decide whether w lies in the span of the generators over the
    rational-function field (or the t-series ring when ``tmax`` is given).

    ``generators`` and ``w`` are column vectors of Poly.  Returns
    ``(True, (den, nums))`` with the exact identity den*w = sum nums[i]*g_i
    (den a Poly, checked symbolically; mod t^{tmax+1} when truncating), or
    ``(False, witness_point)`` where evaluation shows w outside the span.

    When ``tmax`` is set the denominator must be invertible as a t-series
    (nonzero constant coefficient), so the identity certifies membership
    over exact series, not just generically.
    """
    if not generators:
        if all(not x for x in w):
            n = model.n
            return True, (Poly.const(n, ONE), [])
        pt = model.sample_point(rng, with_t=True)
        return False, pt
    n = model.n
    for _ in range(attempts):
        # with truncation the denominator must be a series unit, so pick
        # the pivot block on the t = 0 slice
        rows, cols_sel = _pivot_block(generators, model, rng,
                                      t_zero=(tmax is not None))
        r = len(rows)
        if r == 0:
            rows_all = list(range(len(w)))
            # all generators vanish generically; w must vanish too
            if all(not x for x in w):
                return True, (Poly.const(n, ONE), [Poly.zero(n)] * len(generators))
            pt = model.sample_point(rng, with_t=True)
            if any(x.eval(pt) for x in w):
                return False, pt
            continue
        sel_gens = [generators[j] for j in cols_sel]
        D = [[sel_gens[j][i] for j in range(r)] for i in rows]
        den = poly_det(D, tmax=tmax)
        if not den:
            continue
        if tmax is not None:
            c0 = den.t_coefficient(0)
            if not c0:
                continue  # pivot block not invertible as a series; retry
        # Cramer: num_j = det with column j replaced by w (restricted rows)
        nums = []
        for j in range(r):
            Dj = [row[:] for row in D]
            for i, ri in enumerate(rows):
                Dj[i][j] = w[ri]
            nums.append(poly_det(Dj, tmax=tmax))
        # verify den*w = sum nums_j * g_j on every coordinate
        ok = True
        for i in range(len(w)):
            lhs = den.mul(w[i], tmax=tmax)
            rhs = Poly.zero(n)
            for j, g in enumerate(sel_gens):
                rhs = rhs + nums[j].mul(g[i], tmax=tmax)
            diff = lhs - rhs
            if tmax is not None:
                diff = diff.t_truncate(tmax)
            if diff:
                ok = False
                break
        if ok:
            full_nums = [Poly.zero(n)] * len(generators)
            for j, cj in enumerate(cols_sel):
                full_nums[cj] = nums[j]
            return True, (den, full_nums)
        # symbolic identity failed: find a concrete witness point
        for _ in range(16):
            pt = model.sample_point(rng, with_t=True)
            M = [[g[i].eval(pt) for g in generators] for i in range(len(w))]
            b = [x.eval(pt) for x in w]
            if scalar_solve(M, b) is None:
                return False, pt
    raise ArithmeticError("could not settle span membership; matrix may be "
                          "rank-degenerate along the sampled locus")


def kernel_certificate(A, model, rng, tmax=None, attempts=4):
    """Symbolic basis of the generic right kernel of a polynomial matrix.

    Returns a list of column vectors of Poly with A v = 0 exactly (mod
    t^{tmax+1} when truncating), one for each generic kernel dimension,
    built from signed maximal minors.  Raises if verification fails.
    """
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    n = model.n
    if ncols == 0:
        return []
    cols = [[A[i][j] for i in range(nrows)] for j in range(ncols)]
    for _ in range(attempts):
        rows_sel, cols_sel = _pivot_block(cols, model, rng)
        r = len(rows_sel)
        free = [j for j in range(ncols) if j not in cols_sel]
        basis = []
        ok_all = True
        for fc in free:
            # Cramer solve D x = -A[:, fc] on the pivot rows; kernel vector
            # is den * e_fc + sum_j x_j e_{cols_sel[j]} with x_j the
            # numerators.  Dets are taken untruncated so the residual check
            # is an exact polynomial identity.
            D = [[A[i][cols_sel[j]] for j in range(r)] for i in rows_sel]
            den = poly_det(D) if r else Poly.const(n, 1)
            if not den:
                ok_all = False
                break
            v = [Poly.zero(n)] * ncols
            v[fc] = den
            for j in range(r):
                Dj = [row[:] for row in D]
                for i, ri in enumerate(rows_sel):
                    Dj[i][j] = A[ri][fc]
                v[cols_sel[j]] = -poly_det(Dj)
            # verify A v = 0
            resid = mat_apply(A, v, tmax=tmax)
            if tmax is not None:
                resid = [x.t_truncate(tmax) for x in resid]
            if any(resid):
                ok_all = False
                break
            # strip a common t-power so the generator survives t-series use
            val = min((x.t_valuation() for x in v if x), default=0)
            if val > 0:
                v = [x.t_shift_down(val) if x else x for x in v]
            if tmax is not None:
                v = [x.t_truncate(tmax) for x in v]
            basis.append(v)
        if ok_all:
            return basis
    raise ArithmeticError("kernel certificate failed; matrix rank may drop "
                          "on the sampled locus")


# ---------------------------------------------------------------------------
# Sturm chains for exact real-root isolation
# ---------------------------------------------------------------------------

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_deriv(c):
    return _poly_trim([Fraction(k) * c[k] for k in range(1, len(c))])


def _poly_rem(a, b):
    """Remainder of univariate division over Fraction coefficient lists."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _poly_trim(a):
        da = len(a) - 1
        f = a[-1] / lb
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a = _poly_trim(a)
        if not a:
            break
    return a


def _poly_eval(c, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def sturm_chain(coeffs):
    """Sturm chain of a univariate polynomial (list of Fractions, low-first)."""
    p0 = _poly_trim([Fraction(c) for c in coeffs])
    if not p0:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [p0]
    p1 = _poly_deriv(p0)
    if p1:
        chain.append(p1)
        while True:
            r = _poly_rem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(coeffs, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    chain = sturm_chain(coeffs)
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def real_roots_in_interval(coeffs, a: Fraction, b: Fraction, depth=64):
    """Disjoint isolating intervals (lo, hi] for each distinct real root
    in (a, b], refined by bisection to width <= (b-a)/2^8 or until isolated."""
    chain = sturm_chain(coeffs)

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    total = count(a, b)
    if total == 0:
        return []
    out = []
    stack = [(Fraction(a), Fraction(b), total, 0)]
    while stack:
        lo, hi, k, d = stack.pop()
        if k == 0:
            continue
        if k == 1 and (d >= 8 or _poly_eval(chain[0], hi) == 0):
            out.append((lo, hi))
            continue
        if d >= depth:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        kl = count(lo, mid)
        stack.append((lo, mid, kl, d + 1))
        stack.append((mid, hi, k - kl, d + 1))
    out.sort()
    return out
