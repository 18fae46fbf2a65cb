"""Restriction of scalars from L = F(beta) down to F(t).

With the F[t]-basis (1, t*beta) of F[t, t*beta], multiplication by
a = j + k*beta has matrix l_a = j*I + k*B, B = [[0, t+1], [1/t, 0]].  The same
formula extends to K x K, which gives psi: M_2(K x K) -> M_4(K).

Matrices are plain nested lists.  Exact matrices hold RatFunc entries;
analytic ones hold LaurentSeries in 1/t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import TINV, LaurentSeries, PairElem, Poly
from .errors import DomainError, NoSquareRoot, NotInImage, PrecisionError
from .quadext import BetaSeries, QuadElem, RatFunc, embed_pair, unit

YES = "yes"
YES_TO_PRECISION = "yes-to-precision"
NO = "no"


# --------------------------------------------------------------------------
# generic matrix helpers


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = A[i][0] * B[0][j]
            for r in range(1, m):
                acc = acc + A[i][r] * B[r][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_map(fn, A):
    return [[fn(x) for x in row] for row in A]


def det(A):
    """Cofactor expansion; ring operations only, so it works for any entry type."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * det(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


def identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def block_diag(A, B, zero):
    n, m = len(A), len(B)
    top = [list(r) + [zero] * m for r in A]
    bottom = [[zero] * n + list(r) for r in B]
    return top + bottom


def blocks_to_mat4(blocks):
    """[[X11, X12], [X21, X22]] of 2x2 blocks -> 4x4."""
    rows = []
    for bi in range(2):
        for r in range(2):
            rows.append([blocks[bi][bj][r][c] for bj in range(2) for c in range(2)])
    return rows


def series_one(p, prec):
    return LaurentSeries.constant(1, p, prec)


def series_zero(p, prec):
    return LaurentSeries.zero(p, prec)


def exact_to_series(A, prec: int):
    """RatFunc/Poly matrix -> LaurentSeries matrix known to O(t^-prec)."""

    def conv(x):
        if isinstance(x, Poly):
            x = RatFunc(x, 1)
        return x.to_series(prec)

    return mat_map(conv, A)


def residual_exp(A, B) -> int:
    """Exponent of an upper bound for max |A_ij - B_ij| (exact when nonzero)."""
    return max(x.abs_bound() for row in mat_sub(A, B) for x in row)


def mat_agrees(A, B) -> bool:
    return all(a.agrees(b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat4_to_dict(A) -> dict:
    return {"entries": [[x.to_dict() for x in row] for row in A]}


def mat4_from_dict(d: dict):
    return [[LaurentSeries.from_dict(x) for x in row] for row in d["entries"]]


def mat4_to_json(A) -> str:
    return json.dumps(mat4_to_dict(A))


# --------------------------------------------------------------------------
# l, psi_0, psi


def b_matrix(p: int):
    """l_beta = [[0, t+1], [1/t, 0]] in the basis (1, t*beta)."""
    zero = RatFunc(0, 1, p)
    return [[zero, RatFunc(Poly((1, 1), p), 1)], [RatFunc.t_inv(p), zero]]


def l_matrix(a: QuadElem):
    """Matrix of multiplication by a on the basis (1, t*beta): j*I + k*B."""
    B = b_matrix(a.p)
    return [[a.j * (1 if i == c else 0) + a.k * B[i][c] for c in range(2)] for i in range(2)]


def _b_series(p: int, prec: int):
    return [
        [series_zero(p, prec), LaurentSeries.from_poly(Poly((1, 1), p), prec)],
        [LaurentSeries.monomial(1, 1, p, prec), series_zero(p, prec)],
    ]


def psi_scalar(x: PairElem, beta: BetaSeries):
    """psi_0(x1, x2) = s*I + d*B with s = (x1 + x2)/2 and d = (x1 - x2)/(2*beta).

    On the image of L this is l_a: for a = j + k*beta, s = j and d = k.
    """
    if x.second.orientation != TINV:
        raise DomainError("psi needs both components in K = F((1/t))")
    s = (x.first + x.second) / 2
    d = (x.first - x.second) / 2 / beta.series
    prec = max(s.prec, d.prec) + 2
    B = _b_series(x.p, prec)
    return [[s, d * B[0][1]], [d * B[1][0], s]]


def psi(X, beta: BetaSeries):
    """Entrywise psi_0 on a 2x2 matrix of PairElem, assembled into 4x4."""
    return blocks_to_mat4([[psi_scalar(X[i][j], beta) for j in range(2)] for i in range(2)])


def psi_exact(X):
    """psi on a 2x2 matrix over L, via l_matrix; entries are RatFunc."""
    return blocks_to_mat4([[l_matrix(X[i][j]) for j in range(2)] for i in range(2)])


def embed_matrix(X, beta: BetaSeries):
    return [[embed_pair(x, beta) for x in row] for row in X]


# --------------------------------------------------------------------------
# gamma, g


def gamma_element(p: int):
    """diag(l_alpha, l_alpha) with alpha = (beta - 1)/(beta + 1); exact entries."""
    la = l_matrix(unit(p))
    return block_diag(la, la, RatFunc(0, 1, p))


@dataclass(frozen=True)
class GMatrices:
    g1: list
    g1_inv: list
    c: LaurentSeries
    g: list
    g_inv: list


def g_matrices(beta: BetaSeries) -> GMatrices:
    """g1 = [[1, t*beta], [1, -t*beta]], c = 1/det(g1) = (-2t*beta)^-1,
    g = diag(g1, c*g1), so that det(g) = 1."""
    p, P = beta.p, beta.prec
    tb = beta.series.times_t(1)
    one = series_one(p, P)
    zero = series_zero(p, P)
    g1 = [[one, tb], [one, -tb]]
    det_g1 = -(tb.scale(2))
    c = det_g1.inverse()
    # inverse of g1 is c * [[-t*beta, -t*beta], [-1, 1]]
    g1_inv = [[-tb * c, -tb * c], [-c, c]]
    cg1 = mat_map(lambda x: x * c, g1)
    g = block_diag(g1, cg1, zero)
    g_inv = block_diag(g1_inv, mat_map(lambda x: x * det_g1, g1_inv), zero)
    return GMatrices(g1, g1_inv, c, g, g_inv)


def eigen_residual(theta: QuadElem, beta: BetaSeries) -> int:
    """Residual exponent of g1 * l_theta * g1^-1 against diag(theta, tau(theta))."""
    gm = g_matrices(beta)
    L = exact_to_series(l_matrix(theta), beta.prec + 8)
    lhs = mat_mul(mat_mul(gm.g1, L), gm.g1_inv)
    e = embed_pair(theta, beta)
    zero = series_zero(beta.p, beta.prec)
    return residual_exp(lhs, [[e.first, zero], [zero, e.second]])


# --------------------------------------------------------------------------
# the diagonal group


def az_to_diag(alpha1: LaurentSeries, alpha2: LaurentSeries, zeta: LaurentSeries):
    """Diagonal of the D-element matching a(alpha1, alpha2) * z(zeta)."""
    return (alpha1 * zeta, alpha2 / zeta, zeta / alpha1, 1 / (alpha2 * zeta))


def az_matrix(alpha1, alpha2, zeta):
    """a(alpha1, alpha2) * z(zeta) as a 2x2 matrix over K x K."""
    d1, d2, d3, d4 = az_to_diag(alpha1, alpha2, zeta)
    zero = PairElem(series_zero(d1.p, d1.prec), series_zero(d1.p, d1.prec))
    return [[PairElem(d1, d2), zero], [zero, PairElem(d3, d4)]]


@dataclass
class DiagCheck:
    alpha1: LaurentSeries
    alpha2: LaurentSeries
    zeta: LaurentSeries
    residual_exp: int

    def to_dict(self) -> dict:
        return {
            "alpha1": self.alpha1.to_dict(),
            "alpha2": self.alpha2.to_dict(),
            "zeta": self.zeta.to_dict(),
            "residual_exp": self.residual_exp,
        }


def conj_diag_check(d, beta: BetaSeries) -> DiagCheck:
    """Recover (alpha1, alpha2, zeta) from diag(d) and verify
    g^-1 diag(d) g = psi(a(alpha1, alpha2) z(zeta)) within the window.

    zeta is the square root of d1*d3 with the smaller leading representative;
    (-alpha1, -alpha2, -zeta) gives the same diagonal.  Diagonals with d1*d3
    not a square are outside psi(AZ) (it has finite index in g^-1 D g).
    """
    d1, d2, d3, d4 = d
    for x in d:
        if x.is_zero():
            raise PrecisionError("diagonal entry is zero to precision")
    prod = d1 * d2 * d3 * d4 - 1
    if not prod.is_zero():
        raise NotInImage(f"diagonal has determinant != 1 (residual |.| = p^{prod.abs_exp()})")
    try:
        zeta = (d1 * d3).sqrt()
    except NoSquareRoot as exc:
        raise NotInImage(f"d1*d3 is not a square in K: {exc}") from exc
    alpha1 = d1 / zeta
    alpha2 = d2 * zeta
    gm = g_matrices(beta)
    p = beta.p
    P = min(x.prec for x in d)
    zero = series_zero(p, P)
    D = [[d[i] if i == j else zero for j in range(4)] for i in range(4)]
    lhs = mat_mul(mat_mul(gm.g_inv, D), gm.g)
    rhs = psi(az_matrix(alpha1, alpha2, zeta), beta)
    res = residual_exp(lhs, rhs)
    if not mat_agrees(lhs, rhs):
        raise NotInImage(f"g^-1 D g differs from psi(AZ) at |.| = p^{res}")
    return DiagCheck(alpha1, alpha2, zeta, res)


# --------------------------------------------------------------------------
# SL_4(F[t]) membership


@dataclass
class Membership:
    verdict: str
    witness: dict | None = None

    @property
    def member(self) -> bool:
        return self.verdict != NO

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness}


def _is_exact(A) -> bool:
    return all(isinstance(x, (RatFunc, Poly)) for row in A for x in row)


def in_SL4_Ft(m) -> Membership:
    """Is m in SL_4(F[t])?

    Exact (RatFunc/Poly) input gives an exact verdict.  Series input gives
    ``yes-to-precision`` when every certified coefficient of t^-n (n >= 1) is
    zero and det(m) - 1 vanishes on its window; ``no`` carries a witness.
    """
    if _is_exact(m):
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                x = x if isinstance(x, RatFunc) else RatFunc(x, 1)
                if not x.is_poly():
                    return Membership(NO, {"entry": [i, j], "reason": "non-polynomial", "den": list(x.den.coeffs)})
        dm = det(m)
        if dm != 1:
            return Membership(NO, {"reason": "determinant", "det": dm.to_dict()})
        return Membership(YES)
    for row in m:
        for x in row:
            if x.orientation != TINV:
                raise DomainError("membership test needs series in 1/t")
            if x.prec < 2:
                raise PrecisionError(f"entry window O(t^-{x.prec}) does not reach t^-1", required=2)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            for n in range(max(x.start, 1), x.prec):
                c = x.coeff(n)
                if c:
                    return Membership(NO, {"entry": [i, j], "index": n, "coeff": c, "reason": "negative power"})
    r = det(m) - 1
    if r.prec < 1:
        raise PrecisionError("determinant window does not reach the constant term", required=1)
    v = r.valuation
    if v is not None:
        return Membership(NO, {"reason": "determinant", "index": v, "coeff": r.coeff(v)})
    return Membership(YES_TO_PRECISION)
