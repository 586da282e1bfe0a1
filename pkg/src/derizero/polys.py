"""Univariate polynomial helpers over exact fields.

Polynomials are coefficient lists in increasing degree, trimmed and monic
where noted.  Factorization into irreducibles is delegated to sympy; the
surrounding gcd/xgcd/evaluation arithmetic is done here to avoid round
trips in hot paths.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from .field import Field
from .linalg import ExactMatrix, rref


def trim(field: Field, coeffs: list) -> list:
    while coeffs and coeffs[-1] == field.zero():
        coeffs.pop()
    return coeffs


def poly_mul(field: Field, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == field.zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return trim(field, out)


def poly_sub(field: Field, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [field.zero()] * n
    for i in range(n):
        x = a[i] if i < len(a) else field.zero()
        y = b[i] if i < len(b) else field.zero()
        out[i] = field.sub(x, y)
    return trim(field, out)


def poly_divmod(field: Field, a: list, b: list) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    while len(a) >= len(b):
        c = field.mul(a[-1], inv_lead)
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = field.sub(a[d + i], field.mul(c, y))
        a = trim(field, a)
        if not a:
            break
    return trim(field, q), a


def poly_monic(field: Field, a: list) -> list:
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.mul(c, inv) for c in a]


def poly_gcd(field: Field, a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = poly_divmod(field, a, b)
        a, b = b, r
    return poly_monic(field, a)


def poly_xgcd(field: Field, a: list, b: list):
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [field.one()], []
    t0, t1 = [], [field.one()]
    while r1:
        q, r = poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(field, s0, poly_mul(field, q, s1))
        t0, t1 = t1, poly_sub(field, t0, poly_mul(field, q, t1))
    if not r0:
        return [], s0, t0
    lead_inv = field.inv(r0[-1])
    scale = lambda p: [field.mul(c, lead_inv) for c in p]
    return scale(r0), scale(s0), scale(t0)


def poly_eval_matrix(field: Field, coeffs: list, m: np.ndarray) -> np.ndarray:
    """Evaluate at a square matrix (Horner)."""
    n = m.shape[0]
    out = field.zeros(n, n)
    for c in reversed(coeffs):
        out = field.matmul(out, m)
        if c != field.zero():
            for i in range(n):
                out[i, i] = field.add(out[i, i], c)
    return out


def minimal_polynomial(field: Field, m: np.ndarray) -> list:
    """Monic minimal polynomial of a square matrix, via Krylov on powers."""
    n = m.shape[0]
    if n == 0:
        return [field.one()]
    flat_len = n * n
    powers = [field.eye(n)]
    rows = [powers[0].reshape(flat_len)]
    while True:
        nxt = field.matmul(powers[-1], m)
        powers.append(nxt)
        rows.append(nxt.reshape(flat_len))
        stacked = ExactMatrix(field, np.array(rows, dtype=field.dtype)
                              if field.dtype is np.int64
                              else np.array(rows, dtype=object))
        res = rref(stacked)
        if res.rank < len(rows):
            break
    # last power is a combination of the earlier ones: solve for coefficients
    k = len(rows) - 1
    a = ExactMatrix(field, np.array(rows[:k], dtype=field.dtype).T
                    if field.dtype is np.int64
                    else np.array(rows[:k], dtype=object).T)
    b = rows[k]
    from .linalg import solve
    x = solve(a, list(b))
    coeffs = [field.neg(x.data[i, 0]) for i in range(k)]
    coeffs.append(field.one())
    return coeffs


def char_polynomial(field: Field, m: np.ndarray) -> list:
    """Monic characteristic polynomial det(tI - m), Hessenberg method."""
    n = m.shape[0]
    if n == 0:
        return [field.one()]
    h = m.copy()
    # reduce to upper Hessenberg form with exact row/column operations
    for c in range(n - 2):
        pivot = next((r for r in range(c + 1, n) if h[r, c] != field.zero()), None)
        if pivot is None:
            continue
        if pivot != c + 1:
            h[[c + 1, pivot]] = h[[pivot, c + 1]]
            h[:, [c + 1, pivot]] = h[:, [pivot, c + 1]]
        inv = field.inv(h[c + 1, c])
        for r in range(c + 2, n):
            if h[r, c] != field.zero():
                factor = field.mul(h[r, c], inv)
                h[r] = field.normalize(h[r] - factor * h[c + 1])
                h[:, c + 1] = field.normalize(h[:, c + 1] + factor * h[:, r])
    # recurrence over leading principal minors of (tI - h)
    polys = [[field.one()]]
    for k in range(1, n + 1):
        # p_k = (t - h[k-1,k-1]) p_{k-1} - sum over subdiagonal products
        p = poly_sub(
            field,
            poly_mul(field, [field.neg(h[k - 1, k - 1]), field.one()], polys[k - 1]),
            [],
        )
        prod = field.one()
        for i in range(k - 1, 0, -1):
            prod = field.mul(prod, h[i, i - 1])
            if prod == field.zero():
                break
            term = field.mul(prod, h[i - 1, k - 1])
            if term != field.zero():
                p = poly_sub(field, p, [field.mul(term, c) for c in polys[i - 1]])
        polys.append(p)
    out = polys[n]
    # pad: char poly has degree exactly n
    while len(out) < n + 1:
        out.append(field.zero())
    return out


_SYMPY_T = sympy.Symbol("t")


@lru_cache(maxsize=65536)
def _factor_cached(p: int, coeffs: tuple) -> tuple:
    if p == 0:
        dom = sympy.QQ
        sy = [sympy.Rational(c.numerator, c.denominator) for c in coeffs]
    else:
        dom = sympy.GF(p)
        sy = [sympy.Integer(c) for c in coeffs]
    poly = sympy.Poly(list(reversed(sy)), _SYMPY_T, domain=dom)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = list(reversed(fac.all_coeffs()))
        out.append((tuple(cs), int(mult)))
    return tuple(out)


def factor_poly(field: Field, coeffs: list) -> list[tuple[list, int]]:
    """Irreducible factorization [(monic factor, multiplicity), ...]."""
    if len(coeffs) <= 1:
        return []
    monic = poly_monic(field, coeffs)
    key = tuple(monic) if field.p else tuple(Fraction(c) for c in monic)
    raw = _factor_cached(field.p, key)
    out = []
    for cs, mult in raw:
        if field.p == 0:
            fac = [Fraction(sympy.Rational(c)) for c in cs]
        else:
            fac = [int(c) % field.p for c in cs]
        fac = poly_monic(field, fac)
        if len(fac) > 1:
            out.append((fac, mult))
    return out
