"""Independent reference computations used only by the tests.

None of these call the code paths they check: products are schoolbook loops,
shortest vectors come from enumeration or F_p linear algebra, never from
reduction.
"""

import itertools
import random

import numpy as np

from funcfield.arith import LaurentSeries


def all_polys(p, deg_max, nonzero=True):
    for coeffs in itertools.product(range(p), repeat=deg_max + 1):
        if nonzero and not any(coeffs):
            continue
        yield coeffs  # coefficient of t^i at position i


def brute_score(alpha: LaurentSeries, D: int, K: int):
    """Double loop over every nonzero N (deg <= D) and 0 <= k <= K.

    Returns ("zero-to-precision", None) if some fractional part vanishes on its window,
    else ("positive", min exponent).
    """
    p, P = alpha.p, alpha.prec
    a = {n: alpha.coeff(n) for n in range(alpha.start, P)}
    best = None
    for coeffs in all_polys(p, D):
        deg = max(i for i, c in enumerate(coeffs) if c)
        # N * alpha: t^i * t^-m = t^-(m-i); coefficient of t^-n is sum_i N_i a_{n+i}
        prod = {}
        for i, c in enumerate(coeffs):
            if c:
                for m, x in a.items():
                    prod[m - i] = (prod.get(m - i, 0) + c * x) % p
        certified_end = P - deg
        for k in range(K + 1):
            # fractional part of t^k N alpha: indices n - k >= 1, n < certified_end
            first = None
            for n in range(k + 1, certified_end):
                if prod.get(n, 0):
                    first = n
                    break
            if first is None:
                return "zero-to-precision", None
            val = deg - (first - k)
            best = val if best is None else min(best, val)
    return "positive", best


def _dense(c: LaurentSeries, lo: int, width: int) -> np.ndarray:
    out = np.zeros(width, dtype=np.int64)
    for i, x in enumerate(c.coeffs):
        out[c.start + i - lo] = x
    return out


def enum_shortest(cols, deg_max: int) -> int:
    """Exponent of min |P v1 + Q v2| over every nonzero (P, Q), deg <= deg_max.

    ``cols`` are two exact Laurent-polynomial column vectors.
    """
    (a, c), (b, d) = cols
    p = a.p
    entries = (a, b, c, d)
    lo = min(e.start for e in entries) - deg_max
    hi = max(e.prec for e in entries)
    width = hi - lo
    count = p ** (deg_max + 1)
    idx = np.arange(count, dtype=np.int64)
    digits = np.stack([(idx // p**i) % p for i in range(deg_max + 1)], axis=1)

    def multiples(e):
        base = _dense(e, lo, width)
        out = np.zeros((count, width), dtype=np.int64)
        for i in range(deg_max + 1):
            shifted = np.zeros(width, dtype=np.int64)
            shifted[: width - i] = base[i:]
            out += digits[:, i: i + 1] * shifted[None, :]
        return out % p

    Pa, Pc = multiples(a), multiples(c)
    Qb, Qd = multiples(b), multiples(d)
    best = None
    for q in range(count):
        top = None
        for X, Y in ((Pa, Qb), (Pc, Qd)):
            nz = ((X + Y[q][None, :]) % p) != 0
            first = np.where(nz.any(axis=1), nz.argmax(axis=1), width + 10**6)
            exps = -(first + lo)
            top = exps if top is None else np.maximum(top, exps)
        if q == 0:
            top = top[1:]
        m = int(top.min())
        best = m if best is None else min(best, m)
    return best


def _rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def linalg_shortest(cols, deg_max: int, floor: int) -> int:
    """First minimum by F_p linear algebra over all (P, Q) with deg <= deg_max.

    |P v1 + Q v2| <= p^r iff every coefficient of u^n with n < -r vanishes in
    both coordinates; those coefficients are linear in the 2(deg_max+1)
    unknowns.  Scans r upward from ``floor``; only indices inside the
    certified windows are used (the caller picks ``floor`` accordingly).
    """
    (a, c), (b, d) = cols
    p = a.p
    nunk = 2 * (deg_max + 1)

    def coeff_row(n):
        # coefficient of u^n in (P * e1 + Q * e2) for each coordinate pair
        rows = []
        for e1, e2 in ((a, b), (c, d)):
            row = []
            for e in (e1, e2):
                for i in range(deg_max + 1):
                    # t^i * e: index n receives e's index n + i
                    m = n + i
                    row.append(e.coeff(m) if m >= e.start else 0)
            rows.append(row)
        return rows

    lowest = min(e.start for e in (a, b, c, d)) - deg_max
    for r in range(floor, 10**6):
        rows = []
        for n in range(lowest, -r):
            rows.extend(coeff_row(n))
        if not rows or _rank_mod_p(rows, p) < nunk:
            return r
    raise AssertionError("no vector found")


def laurent(terms, p, W):
    return LaurentSeries.from_laurent_poly(terms, p, W)


def _mat_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def random_unimodular_basis(rng: random.Random, p: int, max_deg: int = 4, W: int = 40):
    """Random [[a, b], [c, d]] with exact Laurent-polynomial entries, |det| = 1
    and every entry of absolute value <= p^max_deg.

    Built as u(x) * lower(y) * a(t^s) * U with x, y Laurent polynomials and U an
    elementary product in SL_2(F_p[t]); rejection keeps the degree cap.
    """
    while True:
        x = {e: rng.randrange(p) for e in range(-3, 2)}
        y = {e: rng.randrange(p) for e in range(-3, 1)}
        s = rng.randrange(0, 3)
        one = laurent({0: 1}, p, W)
        zero = LaurentSeries.zero(p, W)
        M = [[one, laurent(x, p, W)], [zero, one]]
        M = _mat_mul(M, [[one, zero], [laurent(y, p, W), one]])
        M = _mat_mul(M, [[laurent({s: 1}, p, W), zero], [zero, laurent({-s: 1}, p, W)]])
        for _ in range(2):
            f = {e: rng.randrange(p) for e in range(2)}
            g = {e: rng.randrange(p) for e in range(2)}
            M = _mat_mul(M, [[one, laurent(f, p, W)], [zero, one]])
            M = _mat_mul(M, [[one, zero], [laurent(g, p, W), one]])
        entries = [M[0][0], M[0][1], M[1][0], M[1][1]]
        if any(e.is_zero() for e in entries):
            continue
        if max(e.abs_exp() for e in entries) <= max_deg:
            return M
