"""The quadratic extension L = F_p(t)(beta) with beta^2 = 1 + 1/t.

Elements are held exactly as j + k*beta with rational-function coordinates.
Series only appear when an element is pushed into K x K (``embed_pair``) or
when the isomorphism eta is applied to a pair of completed elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import TINV, LaurentSeries, PairElem, Poly, check_modulus, poly_gcd
from .errors import DomainError


class RatFunc:
    """num/den in F_p(t), reduced, with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | int, den: Poly | int = 1, p: int | None = None):
        if isinstance(num, int):
            if p is None:
                p = den.p if isinstance(den, Poly) else None
            if p is None:
                raise DomainError("modulus needed to build a rational function from ints")
            num = Poly((num,), p)
        if isinstance(den, int):
            den = Poly((den,), num.p)
        if den.p != num.p:
            raise DomainError("numerator and denominator over different primes")
        if den.is_zero():
            raise DomainError("zero denominator")
        g = poly_gcd(num, den) if num else den.monic()
        num, den = num // g, den // g
        lc_inv = pow(den.lc, -1, den.p)
        self.num = num * lc_inv
        self.den = den * lc_inv

    @property
    def p(self) -> int:
        return self.num.p

    @classmethod
    def t(cls, p: int) -> RatFunc:
        return cls(Poly.t(p), 1)

    @classmethod
    def t_inv(cls, p: int) -> RatFunc:
        return cls(Poly.one(p), Poly.t(p))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.deg == 0

    def _coerce(self, b) -> RatFunc:
        if isinstance(b, RatFunc):
            if b.p != self.p:
                raise DomainError("rational functions over different primes")
            return b
        if isinstance(b, (int, Poly)):
            return RatFunc(b, 1, self.p)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return RatFunc(self.num * b.den + b.num * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else self + (-b)

    def __rsub__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else b + (-self)

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return RatFunc(self.num * b.num, self.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise DomainError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else self * b.inverse()

    def __rtruediv__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else b * self.inverse()

    def __pow__(self, e: int) -> RatFunc:
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e)

    def __eq__(self, b):
        if isinstance(b, (int, Poly)):
            b = RatFunc(b, 1, self.p)
        if not isinstance(b, RatFunc):
            return NotImplemented
        return self.num == b.num and self.den == b.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"

    def to_series(self, prec: int, orientation: str = TINV) -> LaurentSeries:
        """Expansion known to absolute precision ``prec``."""
        if self.is_zero():
            return LaurentSeries.zero(self.p, prec, orientation)
        work = prec + len(self.num.coeffs) + 2 * len(self.den.coeffs) + 2
        num = LaurentSeries.from_poly(self.num, work, orientation)
        if self.is_poly():
            return num.truncate(prec)
        den = LaurentSeries.from_poly(self.den, work, orientation)
        return (num / den).truncate(prec)

    def to_dict(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @classmethod
    def from_dict(cls, d: dict, p: int) -> RatFunc:
        return cls(Poly(d["num"], p), Poly(d["den"], p))


def _one_plus_tinv(p: int) -> RatFunc:
    return RatFunc(Poly((1, 1), p), Poly.t(p))


class QuadElem:
    """j + k*beta in L, with beta^2 = 1 + 1/t."""

    __slots__ = ("j", "k")

    def __init__(self, j: RatFunc, k: RatFunc):
        if j.p != k.p:
            raise DomainError("coordinates over different primes")
        self.j = j
        self.k = k

    @property
    def p(self) -> int:
        return self.j.p

    @classmethod
    def from_base(cls, x: RatFunc | Poly | int, p: int) -> QuadElem:
        x = x if isinstance(x, RatFunc) else RatFunc(x, 1, p)
        return cls(x, RatFunc(0, 1, p))

    @classmethod
    def beta(cls, p: int) -> QuadElem:
        return cls(RatFunc(0, 1, p), RatFunc(1, 1, p))

    @classmethod
    def t(cls, p: int) -> QuadElem:
        return cls.from_base(RatFunc.t(p), p)

    def _coerce(self, b) -> QuadElem:
        if isinstance(b, QuadElem):
            if b.p != self.p:
                raise DomainError("elements over different primes")
            return b
        if isinstance(b, (int, Poly, RatFunc)):
            return QuadElem.from_base(b, self.p)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else QuadElem(self.j + b.j, self.k + b.k)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.j, -self.k)

    def __sub__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else self + (-b)

    def __rsub__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else b + (-self)

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        j = self.j * b.j + self.k * b.k * _one_plus_tinv(self.p)
        k = self.j * b.k + self.k * b.j
        return QuadElem(j, k)

    __rmul__ = __mul__

    def conj(self) -> QuadElem:
        """tau: beta -> -beta."""
        return QuadElem(self.j, -self.k)

    def norm(self) -> RatFunc:
        return self.j * self.j - self.k * self.k * _one_plus_tinv(self.p)

    def trace(self) -> RatFunc:
        return self.j * 2

    def is_zero(self) -> bool:
        return self.j.is_zero() and self.k.is_zero()

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n.is_zero():
            raise DomainError("inverse of zero in L")
        c = self.conj()
        return QuadElem(c.j / n, c.k / n)

    def __truediv__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else self * b.inverse()

    def __rtruediv__(self, b):
        b = self._coerce(b)
        return b if b is NotImplemented else b * self.inverse()

    def __pow__(self, e: int) -> QuadElem:
        if e < 0:
            return self.inverse() ** (-e)
        r, b = QuadElem.from_base(1, self.p), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, b):
        if isinstance(b, (int, Poly, RatFunc)):
            b = QuadElem.from_base(b, self.p)
        if not isinstance(b, QuadElem):
            return NotImplemented
        return self.j == b.j and self.k == b.k

    def __hash__(self):
        return hash((self.j, self.k))

    def __repr__(self):
        return f"QuadElem(j={self.j!r}, k={self.k!r})"

    def to_dict(self) -> dict:
        return {"p": self.p, "j": self.j.to_dict(), "k": self.k.to_dict()}

    @classmethod
    def from_dict(cls, d: dict, p: int | None = None) -> QuadElem:
        p = check_modulus(d.get("p", p))
        return cls(RatFunc.from_dict(d["j"], p), RatFunc.from_dict(d["k"], p))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str, p: int | None = None) -> QuadElem:
        return cls.from_dict(json.loads(s), p)


def quad_arith(a: QuadElem, b: QuadElem | None, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    raise DomainError(f"unknown operation {op!r}")


def is_integral(a: QuadElem) -> bool:
    """Membership in F[t, t*beta]: j in F[t] and k in t*F[t]."""
    return a.j.is_poly() and a.k.is_poly() and (a.k.num.is_zero() or a.k.num.coeffs[0] == 0)


def unit(p: int) -> QuadElem:
    """(beta - 1) / (beta + 1), which equals (2t + 1) - 2t*beta."""
    b = QuadElem.beta(p)
    return (b - 1) / (b + 1)


# --------------------------------------------------------------------------
# the analytic branch of beta


@dataclass(frozen=True)
class BetaSeries:
    series: LaurentSeries
    p: int

    @property
    def prec(self) -> int:
        return self.series.prec

    def to_dict(self) -> dict:
        return {"p": self.p, "series": self.series.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> BetaSeries:
        return cls(LaurentSeries.from_dict(d["series"]), d["p"])


def beta_series(p: int, prec: int) -> BetaSeries:
    """sqrt(1 + 1/t) in K to O(t^-prec), normalized to constant term 1."""
    check_modulus(p)
    if prec < 3:
        raise DomainError(f"beta needs prec >= 3, got {prec}")
    s = LaurentSeries(p, [1, 1], 0, prec, TINV).sqrt()
    if s.coeff(0) != 1:
        s = -s
    return BetaSeries(s, p)


def embed_pair(a: QuadElem, beta: BetaSeries) -> PairElem:
    """(a, tau(a)) in K x K, using the fixed branch of beta."""
    if a.p != beta.p:
        raise DomainError("element and beta over different primes")
    P = beta.prec
    work = P + 2 * (len(a.k.num.coeffs) + len(a.k.den.coeffs)) + 2
    j = a.j.to_series(work)
    kb = a.k.to_series(work) * beta.series
    return PairElem(j + kb, j - kb)


def unit_series(beta: BetaSeries) -> LaurentSeries:
    """(beta - 1)/(beta + 1) in K, of absolute value 1/p."""
    return embed_pair(unit(beta.p), beta).first


def eta_map(x: LaurentSeries, y: LaurentSeries, beta: BetaSeries) -> PairElem:
    """The isomorphism F((1/t)) x F((t)) -> K x K sending (t, t) to
    ((beta+1)/(beta-1), (beta-1)/(beta+1)).

    1/t in the first factor and t in the second are both replaced by the
    series s = (beta-1)/(beta+1), which converges since |s| = 1/p.
    """
    if x.orientation != TINV or y.orientation == TINV:
        raise DomainError("eta takes a series in 1/t and a series in t")
    s = unit_series(beta)
    return PairElem(x.substitute(s), y.substitute(s))
