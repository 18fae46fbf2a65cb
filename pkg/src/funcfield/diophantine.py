"""t-adic Littlewood scores and rank-2 lattice reduction over F_p[t].

Everything here is measured in exponents of p: a score or height ``e`` means
the quantity ``p**e``.  Searches are finite (degree and shift caps) and the
caps are recorded in every report.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import TINV, LaurentSeries, Poly
from .errors import DomainError, PrecisionError

ZERO_TO_PRECISION = "zero-to-precision"
POSITIVE = "positive"

# rows per vectorized block in the score search
_BLOCK = 1 << 14


def _map(fn, items, workers):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# --------------------------------------------------------------------------
# Littlewood score


@dataclass
class ScoreReport:
    verdict: str
    score_exp: int | None
    witnesses: list[tuple[Poly, int]]
    witness_count: int
    searched: dict

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "score_exp": self.score_exp,
            "witness_count": self.witness_count,
            "witnesses": [{"N": list(N.coeffs), "k": k} for N, k in self.witnesses],
            "searched": dict(self.searched),
        }


def _witness_key(w):
    N, k = w
    return (k, N.deg, N.coeffs)


def _monic_block(p: int, d: int, lo: int, hi: int, width: int) -> np.ndarray:
    """Rows lo..hi-1 of the monic degree-d polynomials, coefficients low first."""
    idx = np.arange(lo, hi, dtype=np.int64)
    rows = np.zeros((hi - lo, width), dtype=np.int64)
    for i in range(d):
        rows[:, i] = (idx // p**i) % p
    rows[:, d] = 1
    return rows


def _score_block(args):
    alpha_tail, p, prec, d, lo, hi, D, K = args
    rows = _monic_block(p, d, lo, hi, D + 1)
    # hankel[i, n] = a_{n+i}; the product N*alpha has t^-n coefficient sum_i N_i a_{n+i}
    n_cols = prec
    hankel = np.zeros((D + 1, n_cols), dtype=np.int64)
    for i in range(D + 1):
        seg = alpha_tail[i: i + n_cols]
        hankel[i, : len(seg)] = seg
    prod = (rows @ hankel) % p
    nz = prod != 0
    # coefficients n >= prec - d are not certified
    nz[:, prec - d:] = False
    best = None
    hits = []
    zeros = []
    for k in range(K + 1):
        window = nz[:, k + 1: prec - d]
        has = window.any(axis=1)
        first = window.argmax(axis=1) + (k + 1)
        vals = d - (first - k)
        for r in np.flatnonzero(~has):
            zeros.append((r, k))
        if has.any():
            vmin = int(vals[has].min())
            sel = np.flatnonzero(has & (vals == vmin))
            if best is None or vmin < best:
                best, hits = vmin, [(r, k) for r in sel]
            elif vmin == best:
                hits.extend((r, k) for r in sel)
    as_poly = lambda r: Poly(rows[r].tolist(), p)
    return best, [(as_poly(r), k) for r, k in hits], [(as_poly(r), k) for r, k in zeros]


def littlewood_score(
    alpha: LaurentSeries,
    D: int,
    K: int,
    guard: int = 1,
    workers: int = 1,
    max_witnesses: int = 16,
) -> ScoreReport:
    """min over nonzero N (deg <= D) and 0 <= k <= K of |N| * |<N t^k alpha>|.

    Only monic N are enumerated: scaling N by a nonzero constant changes
    neither factor.  If some fractional part vanishes on its whole certified
    window the verdict is ``zero-to-precision`` and the witnesses are those
    pairs instead.
    """
    if alpha.orientation != TINV:
        raise DomainError("the Littlewood score needs a series in 1/t")
    if D < 0 or K < 0 or guard < 1:
        raise DomainError("need D >= 0, K >= 0 and guard >= 1")
    need = D + K + guard + 1
    if alpha.prec < need:
        raise PrecisionError(
            f"score with D={D}, K={K}, guard={guard} needs alpha known to O(t^-{need}); "
            f"have O(t^-{alpha.prec})",
            required=need,
        )
    p, prec = alpha.p, alpha.prec
    # a_m for m = 0 .. prec-1 (indices below 1 never enter a fractional part)
    tail = np.array([alpha.coeff(m) if m >= 1 else 0 for m in range(prec)], dtype=np.int64)
    jobs = []
    for d in range(D + 1):
        total = p**d
        for lo in range(0, total, _BLOCK):
            jobs.append((tail, p, prec, d, lo, min(lo + _BLOCK, total), D, K))
    results = _map(_score_block, jobs, workers)

    searched = {"D": D, "K": K, "prec": prec, "guard": guard, "monic_only": True}
    zeros = sorted((w for _, _, z in results for w in z), key=_witness_key)
    if zeros:
        return ScoreReport(ZERO_TO_PRECISION, None, zeros[:max_witnesses], len(zeros), searched)
    best = min(b for b, _, _ in results if b is not None)
    wit = sorted((w for b, h, _ in results if b == best for w in h), key=_witness_key)
    return ScoreReport(POSITIVE, best, wit[:max_witnesses], len(wit), searched)


def score_pair(alpha: LaurentSeries, N: Poly, k: int) -> int | None:
    """Exponent of |N| * |<N t^k alpha>| for one pair; ``None`` if zero to precision."""
    x = (alpha * N).times_t(k).frac_part()
    if x.is_zero():
        return None
    return N.deg + x.abs_exp()


# --------------------------------------------------------------------------
# rank-2 lattices


Vec2 = tuple[LaurentSeries, LaurentSeries]


def vec_norm(v: Vec2) -> int:
    """Certified exponent of max(|x|, |y|)."""
    vals = [c.valuation for c in v]
    certified = [-c for c in vals if c is not None]
    if not certified:
        raise PrecisionError("lattice vector is zero to precision")
    top = max(certified)
    for c, val in zip(v, vals):
        if val is None and c.abs_bound() > top:
            raise PrecisionError(
                f"norm not certified: a coordinate is only known to O(u^{c.prec})",
                required=c.prec + (c.abs_bound() - top),
            )
    return top


def _vec_sub_mul(v: Vec2, q: Poly, w: Vec2) -> Vec2:
    return (v[0] - w[0] * q, v[1] - w[1] * q)


@dataclass
class Lattice2:
    """The F_p[t]-span of two column vectors in K^2."""

    v1: Vec2
    v2: Vec2
    det_exp: int = field(init=False)

    def __post_init__(self):
        det = self.v1[0] * self.v2[1] - self.v2[0] * self.v1[1]
        if det.is_zero():
            raise PrecisionError("determinant is zero to precision; lattice not certified")
        self.det_exp = det.abs_exp()

    @classmethod
    def from_columns(cls, a, b, c, d) -> Lattice2:
        """Basis matrix [[a, b], [c, d]]; columns (a, c) and (b, d)."""
        return cls((a, c), (b, d))


@dataclass
class ReducedBasis:
    v1: Vec2
    v2: Vec2
    min_exp: int
    second_exp: int
    steps: int

    @property
    def cancels(self) -> bool:
        """Shortest vector has a first coordinate that vanished to precision
        while the second is nonzero (a near-exact relation P + Q x = 0)."""
        x, y = self.v1
        return x.is_zero() and not y.is_zero()


def reduce_lattice2(lat: Lattice2, max_steps: int = 100_000) -> ReducedBasis:
    """Ultrametric Gauss reduction.

    Keep |v1| <= |v2| and subtract from v2 the polynomial multiple of v1 read
    off the coordinate where v1 attains its norm.  A step that fails to shrink
    v2 means the top-coefficient vectors are independent, which is exactly the
    reducedness condition for the sup norm, so |v1| is the first minimum.
    """
    v1, v2 = lat.v1, lat.v2
    n1, n2 = vec_norm(v1), vec_norm(v2)
    if n1 > n2:
        v1, v2, n1, n2 = v2, v1, n2, n1
    steps = 0
    while steps < max_steps:
        i = 0 if v1[0].valuation is not None and -v1[0].valuation == n1 else 1
        quot = v2[i] / v1[i]
        try:
            q = quot.poly_part()
        except PrecisionError as exc:
            raise PrecisionError(
                f"precision exhausted in a reduction quotient (known to O(u^{quot.prec}))",
                required=exc.required,
            ) from exc
        if q.is_zero():
            break
        w = _vec_sub_mul(v2, q, v1)
        nw = vec_norm(w)
        steps += 1
        if nw >= n2:
            break
        v2, n2 = w, nw
        if n2 < n1:
            v1, v2, n1, n2 = v2, v1, n2, n1
    else:
        raise PrecisionError(f"reduction did not settle in {max_steps} steps")
    return ReducedBasis(v1, v2, n1, n2, steps)


# --------------------------------------------------------------------------
# trajectory heights


def _exact_window(alpha_inv: LaurentSeries, m: int, n: int) -> int:
    return alpha_inv.prec + 4 * (m + n) + 16


def trajectory_lattice(m: int, n: int, alpha_inv: LaurentSeries) -> Lattice2:
    """Columns (t^(m+n), 0) and (t^(m-n) / alpha, t^(-m-n))."""
    if not m >= n >= 0:
        raise DomainError(f"trajectory needs m >= n >= 0, got m={m}, n={n}")
    p = alpha_inv.p
    W = _exact_window(alpha_inv, m, n)
    a = LaurentSeries.monomial(1, -(m + n), p, W)
    c = LaurentSeries.zero(p, W)
    b = alpha_inv.times_t(m - n)
    d = LaurentSeries.monomial(1, m + n, p, W)
    return Lattice2.from_columns(a, b, c, d)


def mahler_reduce(m: int, n: int, alpha: LaurentSeries, alpha_inv: LaurentSeries | None = None) -> ReducedBasis:
    if alpha_inv is None:
        alpha_inv = alpha.inverse()
    return reduce_lattice2(trajectory_lattice(m, n, alpha_inv))


def mahler_height(m: int, n: int, alpha: LaurentSeries) -> int:
    """Exponent of the first minimum of a(t^(m+n), 1) u(t^(-2n)/alpha) F[t]^2."""
    return mahler_reduce(m, n, alpha).min_exp


@dataclass
class HeightGrid:
    entries: dict[tuple[int, int], int]
    min_exp: int
    zero_witnesses: list[tuple[int, int]]
    M: int
    prec: int

    def csv_lines(self) -> list[str]:
        rows = ["# m,n,height_exp"]
        rows += [f"{m},{n},{e}" for (m, n), e in sorted(self.entries.items())]
        if self.zero_witnesses:
            rows.append("# zero_witnesses=" + ";".join(f"{m}:{n}" for m, n in self.zero_witnesses))
        rows.append(f"# min_exp={self.min_exp}")
        return rows


def grid_precision(M: int, guard: int = 1) -> int:
    return 2 * (M + guard) + 1


def trajectory_grid(alpha: LaurentSeries, M: int, guard: int = 1, workers: int = 1) -> HeightGrid:
    if M < 0:
        raise DomainError("grid size must be >= 0")
    need = grid_precision(M, guard)
    if alpha.prec < need:
        raise PrecisionError(f"grid M={M} needs alpha to O(t^-{need}), have O(t^-{alpha.prec})", required=need)
    alpha_inv = alpha.inverse()
    cells = [(m, n) for m in range(M + 1) for n in range(m + 1)]

    def run(cell):
        m, n = cell
        red = mahler_reduce(m, n, alpha, alpha_inv)
        return cell, red.min_exp, red.cancels

    results = _map(run, cells, workers)
    entries = {cell: e for cell, e, _ in results}
    zeros = sorted(cell for cell, _, z in results if z)
    return HeightGrid(entries, min(entries.values()), zeros, M, alpha.prec)


# --------------------------------------------------------------------------
# the reduction chain from heights to Littlewood


def case_a_check(alpha: LaurentSeries, samples: int, seed: int, deg_max: int = 8, n_max: int = 10) -> dict:
    """Random (P, Q, n) with P, Q != 0 and |P| != |Q t^-2n / alpha|.

    For these the sum Q t^-2n / alpha + P has absolute value
    max(|Q t^-2n / alpha|, |P|) >= 1, hence every trajectory height with that
    (P, Q) is at least 1.  Samples with matched magnitudes are skipped and
    redrawn.
    """
    rng = random.Random(seed)
    p = alpha.p
    alpha_inv = alpha.inverse()
    inv_exp = alpha_inv.abs_exp()
    passed = failed = skipped = 0
    while passed + failed < samples:
        P = Poly([rng.randrange(p) for _ in range(rng.randrange(deg_max + 1))] + [rng.randrange(1, p)], p)
        Q = Poly([rng.randrange(p) for _ in range(rng.randrange(deg_max + 1))] + [rng.randrange(1, p)], p)
        n = rng.randrange(n_max + 1)
        x = (alpha_inv * Q).times_t(-2 * n)
        if P.deg == Q.deg - 2 * n + inv_exp:
            skipped += 1
            continue
        s = x + P
        lhs = s.abs_exp()
        m = n + rng.randrange(4)
        height = max(m + n + lhs, -(m + n) + Q.deg)
        if lhs == max(x.abs_exp(), P.deg) and lhs >= 0 and height >= 0:
            passed += 1
        else:
            failed += 1
    return {"samples": samples, "passed": passed, "failed": failed, "skipped_matched": skipped}


def matched_minimum(alpha: LaurentSeries, M: int, D: int) -> dict:
    """min over n <= M, monic P (deg <= D), Q != 0 of |P| * |Q + t^(2n) P alpha|."""
    p = alpha.p
    best = None
    witness = None
    zero = None
    for n in range(M + 1):
        for d in range(D + 1):
            for r in range(p**d):
                P = Poly([(r // p**i) % p for i in range(d)] + [1], p)
                x = (alpha * P).times_t(2 * n)
                Q = -x.poly_part()
                if Q.is_zero():
                    val = P.deg  # |Q + x| = |Q| >= 1 for any nonzero Q
                else:
                    s = x + Q
                    if s.is_zero():
                        if zero is None:
                            zero = (P, Q, n)
                        continue
                    val = P.deg + s.abs_exp()
                if best is None or val < best:
                    best, witness = val, (P, Q, n)
    if zero is not None:
        P, Q, n = zero
        return {"verdict": ZERO_TO_PRECISION, "min_exp": None,
                "witness": {"P": list(P.coeffs), "Q": list(Q.coeffs), "n": n}}
    P, Q, n = witness
    return {"verdict": POSITIVE, "min_exp": best,
            "witness": {"P": list(P.coeffs), "Q": list(Q.coeffs), "n": n}}


def score_height_consistency(alpha: LaurentSeries, M: int, D: int, K: int, samples: int = 1000, seed: int = 0) -> dict:
    """Check the chain heights -> matched products -> Littlewood score at desk scale."""
    case_a = case_a_check(alpha, samples, seed)
    matched = matched_minimum(alpha, M, D)
    score = littlewood_score(alpha, D, K)
    consistent = matched["verdict"] == score.verdict
    if consistent and score.verdict == POSITIVE and 2 * M <= K:
        # the matched products are a sub-family of the score's (N, k) pairs
        consistent = matched["min_exp"] >= score.score_exp
    return {
        "case_a": case_a,
        "matched": matched,
        "score": score.to_dict(),
        "consistent": consistent and case_a["failed"] == 0,
        "searched": {"M": M, "D": D, "K": K, "prec": alpha.prec},
    }
