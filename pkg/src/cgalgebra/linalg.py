"""Exact linear algebra over the coefficient ring.

Fraction-free (Montante/Bareiss style) elimination keeps every intermediate
entry inside the ring, so nullspaces, determinants and characteristic
polynomials of matrices with polynomial entries come out exact.  Division
only ever happens through :meth:`Coefficient.divide_exact`, which is
guaranteed to succeed at the points the algorithms use it.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from .ring import Coefficient, GaussianRational

Matrix = List[List[Coefficient]]
Vector = List[Coefficient]

_ONE = Coefficient.of(1)


def _nnz(row: Sequence[Coefficient]) -> int:
    return sum(1 for c in row if not c.is_zero())


def rref_fraction_free(m: Matrix) -> Tuple[Matrix, List[int], Coefficient]:
    """Full fraction-free Gauss-Jordan elimination.

    Returns (reduced matrix, pivot column list, final pivot value d).  On
    exit every pivot entry equals d and every other entry in a pivot column
    is zero; the nullspace can be read off without any division.
    """
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: List[int] = []
    pivot_rows: List[int] = []
    prev = _ONE
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # choose the sparsest candidate row for pivot (deterministic tie-break)
        best = None
        for i in range(r, rows):
            if not a[i][c].is_zero():
                key = (_nnz(a[i]), i)
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            continue
        i = best[1]
        if i != r:
            a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        for i in range(rows):
            if i == r:
                continue
            if a[i][c].is_zero():
                # still rescale to keep all previous pivots equal
                for j in range(cols):
                    if not a[i][j].is_zero():
                        a[i][j] = (a[i][j] * piv).divide_exact(prev)
                continue
            fac = a[i][c]
            for j in range(cols):
                num = a[i][j] * piv - fac * a[r][j]
                a[i][j] = num.divide_exact(prev) if num else Coefficient()
        pivots.append(c)
        pivot_rows.append(r)
        prev = piv
        r += 1
    # normalize pivot rows so each pivot equals the final prev
    for idx, (pr, pc) in enumerate(zip(pivot_rows, pivots)):
        piv = a[pr][pc]
        if piv == prev:
            continue
        ratio = prev.divide_exact(piv)
        a[pr] = [v * ratio if not v.is_zero() else v for v in a[pr]]
    return a, pivots, prev


def nullspace(m: Matrix, ncols: Optional[int] = None) -> List[Vector]:
    """Basis of {v : m v = 0}; entries stay in the ring (denominator-free)."""
    if not m:
        n = ncols or 0
        basis = []
        for f in range(n):
            v = [Coefficient() for _ in range(n)]
            v[f] = _ONE
            basis.append(v)
        return basis
    cols = len(m[0])
    red, pivots, d = rref_fraction_free(m)
    piv_of_col = {c: i for i, c in enumerate(pivots)}
    free_cols = [c for c in range(cols) if c not in piv_of_col]
    basis = []
    for f in free_cols:
        v = [Coefficient() for _ in range(cols)]
        v[f] = d
        for c, i in piv_of_col.items():
            w = red[i][f]
            if not w.is_zero():
                v[c] = -w
        basis.append(_normalize_vector(v))
    return basis


def _normalize_vector(v: Vector) -> Vector:
    """Deterministic normalization: strip common monomial and rational content,
    then make the first nonzero entry's leading value 1 when it is a unit."""
    support = [c for c in v if not c.is_zero()]
    if not support:
        return v
    gmin = min(c.gamma_exponents()[0] for c in support)
    wmin = min(min(b for (_, b), _ in c.terms) for c in support)
    if wmin:
        wshift = Coefficient.monomial(GaussianRational.of(1), 0, wmin)
        v = [c.divide_exact(wshift) if c else c for c in v]
    if gmin:
        gshift = Coefficient.monomial(GaussianRational.of(1), -gmin, 0)
        v = [c * gshift if c else c for c in v]
    first = next(c for c in v if not c.is_zero())
    if len(first.terms) == 1:
        lead = first.terms[0][1]
        inv = Coefficient.of(GaussianRational.of(1) / lead)
        v = [c * inv if c else c for c in v]
    else:
        cont = first.rational_content()
        if cont and cont != 1:
            inv = Coefficient.of(Fraction(1, 1) / cont)
            v = [c * inv if c else c for c in v]
    return v


def rank(m: Matrix) -> int:
    if not m:
        return 0
    _, pivots, _ = rref_fraction_free(m)
    return len(pivots)


def det(m: Matrix) -> Coefficient:
    """Bareiss determinant; exact over the ring."""
    n = len(m)
    if n == 0:
        return _ONE
    a = [row[:] for row in m]
    prev = _ONE
    sign = 1
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Coefficient()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divide_exact(prev) if num else Coefficient()
            a[i][k] = Coefficient()
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return -out if sign < 0 else out


def solve_in_span(columns: List[Vector], target: Vector) -> Optional[Vector]:
    """Solve sum_j x_j columns[j] = target exactly; None when inconsistent.

    The solution must live in the ring (true for every structure-constant
    expansion this package performs); a genuinely fractional solution
    raises ``ValueError`` from the exact division.
    """
    if not columns:
        return [] if all(c.is_zero() for c in target) else None
    rows = len(columns[0])
    ncols = len(columns)
    aug = [[columns[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
    red, pivots, d = rref_fraction_free(aug)
    if ncols in pivots:
        return None  # pivot in the target column: inconsistent
    piv_of_col = {c: i for i, c in enumerate(pivots)}
    # free unknowns are set to zero
    sol = [Coefficient() for _ in range(ncols)]
    for c, i in piv_of_col.items():
        rhs = red[i][ncols]
        sol[c] = rhs.divide_exact(d) if rhs else Coefficient()
    return sol


def charpoly(m: Matrix) -> List[Coefficient]:
    """Characteristic polynomial det(xI - m) by Faddeev-LeVerrier.

    Returns coefficients [c_0, ..., c_n] with c_n = 1, exact over the ring
    (the algorithm divides by integers only).
    """
    n = len(m)
    coeffs = [Coefficient() for _ in range(n + 1)]
    coeffs[n] = _ONE
    a = [[Coefficient() for _ in range(n)] for _ in range(n)]
    ident = [[_ONE if i == j else Coefficient() for j in range(n)] for i in range(n)]
    mk = ident
    for k in range(1, n + 1):
        # a = m @ mk
        a = [[_dot(m[i], [mk[r][j] for r in range(n)]) for j in range(n)] for i in range(n)]
        tr = Coefficient()
        for i in range(n):
            tr = tr + a[i][i]
        ck = tr * Fraction(-1, k)
        coeffs[n - k] = ck
        mk = [[a[i][j] + (ck if i == j else Coefficient()) for j in range(n)] for i in range(n)]
    return coeffs


def _dot(row: Sequence[Coefficient], col: Sequence[Coefficient]) -> Coefficient:
    out = Coefficient()
    for a, b in zip(row, col):
        if a and b:
            out = out + a * b
    return out


def eval_poly(coeffs: Sequence[Coefficient], x: Coefficient) -> Coefficient:
    out = Coefficient()
    for c in reversed(list(coeffs)):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------
# univariate rational utilities
# ---------------------------------------------------------------------------

def rational_roots(coeffs: Sequence[Fraction]) -> List[Tuple[Fraction, int]]:
    """All rational roots (with multiplicity) of a polynomial over Q.

    ``coeffs[k]`` is the coefficient of x^k.  Uses the rational-root theorem
    after clearing denominators, then deflates.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial has every root")
    mults: dict = {}
    while len(cs) > 1:
        if cs[0] == 0:
            cs = cs[1:]
            mults[Fraction(0)] = mults.get(Fraction(0), 0) + 1
            continue
        den = 1
        for c in cs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in cs]
        a0, an = ints[0], ints[-1]
        found = None
        for p in _divisors(abs(a0)):
            for q in _divisors(abs(an)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval_frac(cs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        while len(cs) > 1 and _poly_eval_frac(cs, found) == 0:
            cs = _deflate(cs, found)
            mults[found] = mults.get(found, 0) + 1
    return sorted(mults.items(), key=lambda rm: rm[0])


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> List[int]:
    if n == 0:
        return [1]
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def _poly_eval_frac(cs: Sequence[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(list(cs)):
        out = out * x + c
    return out


def _deflate(cs: List[Fraction], root: Fraction) -> List[Fraction]:
    """Synthetic division by (x - root); the remainder vanishes for exact roots."""
    n = len(cs) - 1
    out = [Fraction(0)] * n
    acc = cs[n]
    out[n - 1] = acc
    for k in range(n - 1, 0, -1):
        acc = cs[k] + acc * root
        out[k - 1] = acc
    return out


def fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_rational_roots(coeffs: Sequence[GaussianRational]) -> List[Fraction]:
    """Rational roots of a polynomial with Gaussian-rational coefficients.

    A rational root must kill both the real and the imaginary part.
    """
    res = [c.re for c in coeffs]
    ims = [c.im for c in coeffs]
    base = res if any(res) else ims
    if not any(base):
        raise ValueError("zero polynomial")
    out = []
    for root, _ in rational_roots(base):
        if _poly_eval_frac(res, root) == 0 and _poly_eval_frac(ims, root) == 0:
            out.append(root)
    return out
