"""Paperfolding sequences and deterministic finite automata with output."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arith import TINV, FieldElem, LaurentSeries, check_modulus
from .errors import DomainError


def odd_part(n: int) -> tuple[int, int]:
    """Return ``(l, k)`` with ``n == 2**l * k`` and ``k`` odd."""
    if n < 1:
        raise DomainError(f"odd part needs n >= 1, got {n}")
    l = (n & -n).bit_length() - 1
    return l, n >> l


def paperfold_value(n: int, m: int) -> int:
    """Integer value f_n of the m-th level paperfolding sequence, in [0, 2**m)."""
    if m < 1:
        raise DomainError(f"paperfolding level must be >= 1, got {m}")
    _, k = odd_part(n)
    return ((k - 1) % (1 << (m + 1))) // 2


@dataclass(frozen=True)
class PaperfoldParams:
    m: int
    p: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"paperfolding level must be >= 1, got {self.m}")
        check_modulus(self.p)


def paperfold_term(n: int, params: PaperfoldParams) -> FieldElem:
    return FieldElem(paperfold_value(n, params.m), params.p)


def paperfold_values(count: int, m: int) -> list[int]:
    return [paperfold_value(n, m) for n in range(1, count + 1)]


def paperfold_series(params: PaperfoldParams, prec: int) -> LaurentSeries:
    """alpha = sum_{n>=1} f_n t^-n, stored from index 1 up to ``prec``."""
    if prec < 2:
        raise DomainError(f"paperfolding series needs prec >= 2, got {prec}")
    coeffs = [paperfold_value(n, params.m) for n in range(1, prec)]
    return LaurentSeries(params.p, coeffs, 1, prec, TINV)


def max_two_adic(p: int) -> int:
    """Largest m with 2**m dividing p - 1."""
    check_modulus(p)
    return odd_part(p - 1)[0]


@dataclass(frozen=True)
class DFAO:
    """Automaton with output (S, s0, mu, Phi) reading base-q digits.

    ``transitions[d][s]`` is the image of state ``s`` under the map for digit
    ``d``; ``output[s]`` is the output symbol of state ``s``.
    """

    q: int
    states: int
    initial: int
    transitions: tuple[tuple[int, ...], ...]
    output: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "output", tuple(self.output))
        if self.q < 2:
            raise DomainError(f"base must be >= 2, got {self.q}")
        if not 0 <= self.initial < self.states:
            raise DomainError("initial state out of range")
        if len(self.transitions) != self.q:
            raise DomainError(f"need one transition map per digit 0..{self.q - 1}")
        for d, row in enumerate(self.transitions):
            if len(row) != self.states or not all(0 <= s < self.states for s in row):
                raise DomainError(f"transition map for digit {d} is not a total map on the states")
        if len(self.output) != self.states:
            raise DomainError("output must be defined on every state")

    def run(self, n: int) -> int:
        """Final state after feeding the digits of n, least significant first."""
        if n < 0:
            raise DomainError("DFAO input must be nonnegative")
        s = self.initial
        if n == 0:
            return self.transitions[0][s]
        while n:
            n, d = divmod(n, self.q)
            s = self.transitions[d][s]
        return s

    def __call__(self, n: int) -> int:
        return self.output[self.run(n)]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "states": self.states,
            "initial": self.initial,
            "transitions": [list(r) for r in self.transitions],
            "output": list(self.output),
        }

    @classmethod
    def from_dict(cls, d: dict) -> DFAO:
        return cls(d["q"], d["states"], d["initial"], d["transitions"], d["output"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> DFAO:
        return cls.from_dict(json.loads(s))


def dfao_eval(aut: DFAO, n: int) -> int:
    return aut(n)


def christol_example() -> DFAO:
    """3-automaton for the coefficients of sum_{n>=0} t^(-3^n), a root of x^3 - x + 1/t."""
    return DFAO(
        q=3,
        states=3,
        initial=0,
        transitions=((0, 2, 2), (1, 2, 2), (2, 2, 2)),
        output=(0, 1, 0),
    )


def dfao_series(aut: DFAO, p: int, prec: int) -> LaurentSeries:
    """sum_{n>=0} f_n t^-n for the automatic sequence, outputs read in F_p."""
    check_modulus(p)
    return LaurentSeries(p, [aut(n) for n in range(prec)], 0, prec, TINV)
