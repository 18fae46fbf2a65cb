"""Exact arithmetic over F_p, F_p[t] and truncated Laurent series.

Absolute values are never floats.  ``|x| = p**e`` is carried as the integer
exponent ``e``; the zero polynomial has exponent ``NEG_INF``.

A :class:`LaurentSeries` is written in a uniformizer ``u`` with ``|u| = 1/p``:
``u = 1/t`` for elements of F((1/t)) (orientation ``"tinv"``) and ``u = t``
for elements of F((t)) (orientation ``"t"``).  Index ``n`` always holds the
coefficient of ``u**n``, so the valuation ``v`` gives ``|x| = p**(-v)`` in both
orientations and all arithmetic is shared.  The window ``[start, prec)`` is
absolute: the element equals ``sum(c[n] u**n) + O(u**prec)`` and every
coefficient below ``start`` is exactly zero.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DivergentSubstitution, DomainError, NoSquareRoot, PrecisionError

NEG_INF = -math.inf

TINV = "tinv"
T = "t"
ORIENTATIONS = (TINV, T)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_modulus(p: int) -> int:
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise DomainError(f"modulus must be an odd prime, got {p!r}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DomainError("zero has no inverse")
    return pow(a, -1, p)


def is_square_mod(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


def sqrt_mod(a: int, p: int) -> int:
    """Square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks).

    Of the two roots the one with the smaller representative in [0, p) is
    returned.
    """
    a %= p
    if a == 0:
        return 0
    if not is_square_mod(a, p):
        raise NoSquareRoot(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while is_square_mod(z, p):
            z += 1
        m, c, tt, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while tt != 1:
            i, t2 = 0, tt
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            tt, r = tt * c % p, r * b % p
    return min(r, p - r)


# --------------------------------------------------------------------------
# F_p


@dataclass(frozen=True)
class FieldElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, b) -> int:
        if isinstance(b, FieldElem):
            if b.p != self.p:
                raise DomainError("field elements over different primes")
            return b.value
        if isinstance(b, int):
            return b
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FieldElem(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FieldElem(self.value - v, self.p)

    def __rsub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FieldElem(v - self.value, self.p)

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FieldElem(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> FieldElem:
        return FieldElem(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * inv_mod(v, self.p), self.p)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


# --------------------------------------------------------------------------
# F_p[t]


class Poly:
    """Polynomial over F_p, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.p = p
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, p: int) -> Poly:
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> Poly:
        return cls((1,), p)

    @classmethod
    def monomial(cls, c: int, d: int, p: int) -> Poly:
        return cls([0] * d + [c], p)

    @classmethod
    def t(cls, p: int) -> Poly:
        return cls((0, 1), p)

    @property
    def deg(self):
        """Degree; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def abs_exp(self):
        return self.deg

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _coerce(self, b) -> Poly:
        if isinstance(b, Poly):
            if b.p != self.p:
                raise DomainError("polynomials over different primes")
            return b
        if isinstance(b, (int, FieldElem)):
            return Poly((int(b),), self.p)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        n = max(len(self.coeffs), len(b.coeffs))
        x = self.coeffs + (0,) * (n - len(self.coeffs))
        y = b.coeffs + (0,) * (n - len(b.coeffs))
        return Poly([u + v for u, v in zip(x, y)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.p)

    def __sub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if not self.coeffs or not b.coeffs:
            return Poly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return Poly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise DomainError("negative power of a polynomial")
        r, b = Poly.one(self.p), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        if b.is_zero():
            raise DomainError("division by the zero polynomial")
        p = self.p
        r = list(self.coeffs)
        db = len(b.coeffs) - 1
        inv_lc = inv_mod(b.lc, p)
        q = [0] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv_lc % p
            if c:
                q[i - db] = c
                for j, y in enumerate(b.coeffs):
                    r[i - db + j] = (r[i - db + j] - c * y) % p
        return Poly(q, p), Poly(r[:db], p)

    def __floordiv__(self, b):
        return divmod(self, b)[0]

    def __mod__(self, b):
        return divmod(self, b)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc % self.p if isinstance(acc, int) else acc

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * inv_mod(self.lc, self.p)

    def shift(self, k: int) -> Poly:
        """Multiply by t**k (k >= 0)."""
        return Poly((0,) * k + self.coeffs, self.p) if self.coeffs else self

    def __eq__(self, b):
        if isinstance(b, int):
            b = Poly((b,), self.p)
        if not isinstance(b, Poly):
            return NotImplemented
        return self.p == b.p and self.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, d: dict) -> Poly:
        return cls(d["coeffs"], check_modulus(d["p"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> Poly:
        return cls.from_dict(json.loads(s))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Poly, b: Poly | None, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    if op == "abs":
        return a.abs_exp()
    if op == "deg":
        return a.deg
    raise ValueError(f"unknown polynomial operation {op!r}")


# --------------------------------------------------------------------------
# truncated Laurent series

# int64 convolution is exact while (p-1)^2 * length stays below this
_INT64_SAFE = 1 << 62


def _convolve(a: Sequence[int], b: Sequence[int], p: int, n: int) -> list[int]:
    """First ``n`` coefficients of the product of two coefficient lists, mod p."""
    if n <= 0:
        return []
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    if (p - 1) ** 2 * min(len(a), len(b)) < _INT64_SAFE:
        r = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = (r[:n] % p).tolist()
    else:
        out = [0] * min(n, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n - i)):
                    out[i + j] += x * b[j]
        out = [c % p for c in out]
    return out + [0] * (n - len(out))


def _newton_inverse(c: Sequence[int], p: int, n: int) -> list[int]:
    """First ``n`` coefficients of 1/c for a power series c with c[0] != 0."""
    r = [inv_mod(c[0], p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        cr = _convolve(c, r, p, k)
        corr = [(-x) % p for x in cr]
        corr[0] = (corr[0] + 2) % p
        r = _convolve(r, corr, p, k)
    return r[:n]


def _newton_inv_sqrt(c: Sequence[int], p: int, n: int) -> list[int]:
    """First ``n`` coefficients of c**(-1/2), leading root the smaller residue."""
    half = inv_mod(2, p)
    r = [inv_mod(sqrt_mod(c[0], p), p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        r2 = _convolve(r, r, p, k)
        cr2 = _convolve(c, r2, p, k)
        corr = [(-x) * half % p for x in cr2]
        corr[0] = (corr[0] + 3 * half) % p
        r = _convolve(r, corr, p, k)
    return r[:n]


class LaurentSeries:
    """Truncated element of F_p((u)) with an absolute precision window."""

    __slots__ = ("p", "start", "prec", "coeffs", "orientation")

    def __init__(
        self,
        p: int,
        coeffs: Iterable[int],
        start: int = 0,
        prec: int | None = None,
        orientation: str = TINV,
    ):
        c = [int(x) % p for x in coeffs]
        if prec is None:
            prec = start + len(c)
        if start > prec:
            raise ValueError(f"window start {start} exceeds precision {prec}")
        if orientation not in ORIENTATIONS:
            raise ValueError(f"unknown orientation {orientation!r}")
        n = prec - start
        c = c[:n] + [0] * (n - len(c))
        self.p = p
        self.start = start
        self.prec = prec
        self.coeffs = tuple(c)
        self.orientation = orientation

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p, prec, orientation=TINV):
        return cls(p, (), prec, prec, orientation)

    @classmethod
    def constant(cls, c, p, prec, orientation=TINV):
        if prec <= 0:
            return cls(p, (), prec, prec, orientation)
        return cls(p, [c], 0, prec, orientation)

    @classmethod
    def monomial(cls, c, n, p, prec, orientation=TINV):
        """``c * u**n`` known to absolute precision ``prec``."""
        if n >= prec:
            return cls(p, (), prec, prec, orientation)
        return cls(p, [c], n, prec, orientation)

    @classmethod
    def from_poly(cls, poly: Poly, prec: int, orientation=TINV) -> LaurentSeries:
        """Embed a polynomial in t; ``prec`` is the absolute window end."""
        p = poly.p
        if poly.is_zero():
            return cls.zero(p, prec, orientation)
        if orientation == TINV:
            start = -poly.deg
            return cls(p, reversed(poly.coeffs), start, max(prec, start), orientation)
        return cls(p, poly.coeffs, 0, max(prec, 0), orientation)

    @classmethod
    def from_laurent_poly(cls, terms: dict[int, int], p: int, prec: int, orientation=TINV):
        """From a mapping ``{exponent of t: coefficient}``."""
        idx = {(-e if orientation == TINV else e): c % p for e, c in terms.items() if c % p}
        if not idx:
            return cls.zero(p, prec, orientation)
        start = min(min(idx), prec)
        return cls(p, [idx.get(n, 0) for n in range(start, prec)], start, prec, orientation)

    # -- inspection --------------------------------------------------------

    @property
    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def abs_exp(self) -> int:
        """Certified exponent e with |x| = p**e."""
        v = self.valuation
        if v is None:
            raise PrecisionError(
                f"series is zero to precision O(u^{self.prec}); |x| is not certified",
                required=self.prec + 1,
            )
        return -v

    def abs_bound(self) -> int:
        """Exponent of an upper bound for |x| (exact when certified)."""
        v = self.valuation
        return -self.prec if v is None else -v

    def coeff(self, n: int) -> int:
        if n < self.start:
            return 0
        if n >= self.prec:
            raise PrecisionError(f"coefficient {n} outside window ending at {self.prec}", required=n + 1)
        return self.coeffs[n - self.start]

    def leading(self) -> int:
        v = self.valuation
        return 0 if v is None else self.coeffs[v - self.start]

    # -- ring operations ---------------------------------------------------

    def _check(self, b: LaurentSeries):
        if b.p != self.p or b.orientation != self.orientation:
            raise DomainError("incompatible series (modulus or orientation differ)")

    def _lift(self, b):
        if isinstance(b, LaurentSeries):
            self._check(b)
            return b
        if isinstance(b, (int, FieldElem)):
            return LaurentSeries.constant(int(b), self.p, self.prec, self.orientation)
        if isinstance(b, Poly):
            # exact polynomial: window wide enough not to limit sums/products
            prec = self.prec + max(self.abs_bound(), 0) + len(b.coeffs)
            return LaurentSeries.from_poly(b, prec, self.orientation)
        return NotImplemented

    def _add(self, b: LaurentSeries, sign: int) -> LaurentSeries:
        start = min(self.start, b.start)
        prec = min(self.prec, b.prec)
        out = []
        for n in range(start, prec):
            x = self.coeffs[n - self.start] if n >= self.start else 0
            y = b.coeffs[n - b.start] if n >= b.start else 0
            out.append(x + sign * y)
        return LaurentSeries(self.p, out, start, prec, self.orientation)

    def __add__(self, b):
        b = self._lift(b)
        return b if b is NotImplemented else self._add(b, 1)

    __radd__ = __add__

    def __sub__(self, b):
        b = self._lift(b)
        return b if b is NotImplemented else self._add(b, -1)

    def __rsub__(self, b):
        b = self._lift(b)
        return b if b is NotImplemented else b._add(self, -1)

    def __neg__(self):
        return LaurentSeries(self.p, [-c for c in self.coeffs], self.start, self.prec, self.orientation)

    def scale(self, c: int) -> LaurentSeries:
        c %= self.p
        if c == 0:
            return LaurentSeries.zero(self.p, self.prec, self.orientation)
        return LaurentSeries(self.p, [c * x for x in self.coeffs], self.start, self.prec, self.orientation)

    def __mul__(self, b):
        if isinstance(b, (int, FieldElem)):
            return self.scale(int(b))
        b = self._lift(b)
        if b is NotImplemented:
            return b
        va = self.valuation
        vb = b.valuation
        va = self.start if va is None else va
        vb = b.start if vb is None else vb
        prec = min(self.prec + vb, b.prec + va)
        start = min(self.start + b.start, prec)
        # skip leading zeros so the convolution covers only the live window
        sa, sb = va - self.start, vb - b.start
        lo = va + vb
        if lo >= prec:
            return LaurentSeries(self.p, (), start, prec, self.orientation)
        body = _convolve(self.coeffs[sa:], b.coeffs[sb:], self.p, prec - lo)
        return LaurentSeries(self.p, [0] * (lo - start) + body, start, prec, self.orientation)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentSeries:
        """Exact multiplication by ``u**k``."""
        return LaurentSeries(self.p, self.coeffs, self.start + k, self.prec + k, self.orientation)

    def times_t(self, k: int) -> LaurentSeries:
        """Exact multiplication by ``t**k``."""
        return self.shift(-k if self.orientation == TINV else k)

    def inverse(self) -> LaurentSeries:
        v = self.valuation
        if v is None:
            raise PrecisionError("cannot certify invertibility: series is zero to precision", required=self.prec + 1)
        unit = self.coeffs[v - self.start:]
        n = self.prec - v
        r = _newton_inverse(unit, self.p, n)
        return LaurentSeries(self.p, r, -v, self.prec - 2 * v, self.orientation)

    def __truediv__(self, b):
        if isinstance(b, (int, FieldElem)):
            return self.scale(inv_mod(int(b), self.p))
        b = self._lift(b)
        if b is NotImplemented:
            return b
        return self * b.inverse()

    def __rtruediv__(self, b):
        b = self._lift(b)
        if b is NotImplemented:
            return b
        return b * self.inverse()

    def __pow__(self, e: int) -> LaurentSeries:
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return LaurentSeries.constant(1, self.p, max(self.prec, 1), self.orientation)
        r, b = None, self
        while True:
            if e & 1:
                r = b if r is None else r * b
            e >>= 1
            if not e:
                return r
            b = b * b

    def sqrt(self) -> LaurentSeries:
        """Square root via Newton iteration on the inverse square root.

        The root whose leading coefficient has the smaller representative in
        [0, p) is returned; the other root is its negative.
        """
        v = self.valuation
        if v is None:
            raise PrecisionError("cannot take the square root of a series that is zero to precision")
        if v % 2:
            raise NoSquareRoot(f"odd valuation {v}: no square root in the field")
        unit = self.coeffs[v - self.start:]
        if not is_square_mod(unit[0], self.p):
            raise NoSquareRoot(f"leading coefficient {unit[0]} is not a square mod {self.p}")
        n = self.prec - v
        r = _newton_inv_sqrt(unit, self.p, n)
        s = _convolve(unit, r, self.p, n)
        return LaurentSeries(self.p, s, v // 2, v // 2 + n, self.orientation)

    # -- integer / fractional parts (orientation tinv) ---------------------

    def frac_part(self) -> LaurentSeries:
        """Tail sum_{n>=1} c_n t^(-n)."""
        if self.orientation != TINV:
            raise DomainError("fractional part is defined for series in 1/t only")
        if self.prec <= 1:
            raise PrecisionError(f"insufficient precision {self.prec} for the fractional part", required=2)
        s = max(self.start, 1)
        return LaurentSeries(self.p, self.coeffs[s - self.start:], s, self.prec, TINV)

    def poly_part(self) -> Poly:
        """The polynomial part sum_{n<=0} c_n t^(-n), as an exact polynomial."""
        if self.orientation != TINV:
            raise DomainError("polynomial part is defined for series in 1/t only")
        if self.prec < 1:
            raise PrecisionError(f"window ending at {self.prec} does not reach the constant term", required=1)
        if self.start > 0:
            return Poly.zero(self.p)
        return Poly(reversed(self.coeffs[: 1 - self.start]), self.p)

    def truncate(self, prec: int) -> LaurentSeries:
        if prec >= self.prec:
            return self
        start = min(self.start, prec)
        return LaurentSeries(self.p, self.coeffs[: prec - start], start, prec, self.orientation)

    def substitute(self, s: LaurentSeries) -> LaurentSeries:
        """Replace the uniformizer of ``self`` by ``s``: sum c_n s**n.

        Requires |s| <= 1/p.  The result lives in the orientation of ``s``;
        the truncation tail O(u**prec) becomes O(s**prec).
        """
        if s.p != self.p:
            raise DomainError("substitution across different primes")
        w = s.valuation
        if w is None:
            raise PrecisionError("substituted series is zero to precision; |s| not certified")
        if w < 1:
            raise DivergentSubstitution(f"|s| = p^{-w} >= 1: substitution does not converge")
        e, P = self.start, self.prec
        target = w * P
        body_prec = w * (P - e)
        acc = LaurentSeries.zero(self.p, body_prec, s.orientation)
        for c in reversed(self.coeffs):
            acc = acc * s + LaurentSeries.constant(c, self.p, body_prec, s.orientation)
        if e > 0:
            acc = acc * s ** e
        elif e < 0:
            acc = acc * s.inverse() ** (-e)
        return acc.truncate(target)

    # -- comparison / serialization ---------------------------------------

    def agrees(self, b: LaurentSeries) -> bool:
        """True if both certified windows agree on their overlap."""
        self._check(b)
        lo = min(self.start, b.start)
        hi = min(self.prec, b.prec)
        return all(self.coeff(n) == b.coeff(n) for n in range(lo, hi))

    def __eq__(self, b):
        if not isinstance(b, LaurentSeries):
            return NotImplemented
        return (
            self.p == b.p
            and self.orientation == b.orientation
            and self.prec == b.prec
            and self.agrees(b)
        )

    def __hash__(self):
        v = self.valuation
        lead = () if v is None else self.coeffs[v - self.start:]
        return hash((self.p, self.orientation, self.prec, v, lead))

    def __repr__(self):
        var = "t"
        sgn = -1 if self.orientation == TINV else 1
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                n = sgn * (self.start + i)
                mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        terms.append(f"O({var}^{sgn * self.prec})")
        return " + ".join(terms)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "orientation": self.orientation,
            "start": self.start,
            "prec": self.prec,
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_dict(cls, d: dict) -> LaurentSeries:
        p = check_modulus(d["p"])
        start, prec = int(d["start"]), int(d["prec"])
        coeffs = d["coeffs"]
        if len(coeffs) != prec - start:
            raise DomainError(f"expected {prec - start} coefficients, got {len(coeffs)}")
        return cls(p, coeffs, start, prec, d.get("orientation", TINV))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> LaurentSeries:
        return cls.from_dict(json.loads(s))


def laurent_ring(a: LaurentSeries, b: LaurentSeries, op: str) -> LaurentSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def frac_part(a: LaurentSeries) -> LaurentSeries:
    return a.frac_part()


def substitute(a: LaurentSeries, s: LaurentSeries) -> LaurentSeries:
    return a.substitute(s)


# --------------------------------------------------------------------------
# K x K  and  K x F((t))


@dataclass(frozen=True)
class PairElem:
    first: LaurentSeries
    second: LaurentSeries

    def __post_init__(self):
        if self.first.p != self.second.p:
            raise DomainError("pair components over different primes")
        if self.first.orientation != TINV:
            raise DomainError("first pair component must be a series in 1/t")

    @property
    def p(self) -> int:
        return self.first.p

    def _other(self, b):
        if isinstance(b, PairElem):
            return b
        if isinstance(b, (int, FieldElem)):
            return PairElem(
                LaurentSeries.constant(int(b), self.p, self.first.prec, TINV),
                LaurentSeries.constant(int(b), self.p, self.second.prec, self.second.orientation),
            )
        return NotImplemented

    def __add__(self, b):
        b = self._other(b)
        return b if b is NotImplemented else PairElem(self.first + b.first, self.second + b.second)

    __radd__ = __add__

    def __sub__(self, b):
        b = self._other(b)
        return b if b is NotImplemented else PairElem(self.first - b.first, self.second - b.second)

    def __rsub__(self, b):
        b = self._other(b)
        return b if b is NotImplemented else PairElem(b.first - self.first, b.second - self.second)

    def __mul__(self, b):
        if isinstance(b, (int, FieldElem)):
            return PairElem(self.first * b, self.second * b)
        b = self._other(b)
        return b if b is NotImplemented else PairElem(self.first * b.first, self.second * b.second)

    __rmul__ = __mul__

    def __neg__(self):
        return PairElem(-self.first, -self.second)

    def inverse(self) -> PairElem:
        return PairElem(self.first.inverse(), self.second.inverse())

    def __truediv__(self, b):
        if isinstance(b, (int, FieldElem)):
            return PairElem(self.first / b, self.second / b)
        return self * b.inverse()

    def agrees(self, b: PairElem) -> bool:
        return self.first.agrees(b.first) and self.second.agrees(b.second)

    def to_dict(self) -> dict:
        return {"first": self.first.to_dict(), "second": self.second.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> PairElem:
        return cls(LaurentSeries.from_dict(d["first"]), LaurentSeries.from_dict(d["second"]))
