import pytest
from hypothesis import given
from hypothesis import strategies as st

from funcfield.arith import FieldElem, LaurentSeries
from funcfield.autoseq import (
    DFAO,
    PaperfoldParams,
    christol_example,
    dfao_eval,
    dfao_series,
    max_two_adic,
    odd_part,
    paperfold_series,
    paperfold_term,
    paperfold_value,
)
from funcfield.errors import DomainError


def is_power_of_3(n):
    if n < 1:
        return False
    while n % 3 == 0:
        n //= 3
    return n == 1


def test_odd_part():
    assert odd_part(12) == (2, 3)
    assert odd_part(1) == (0, 1)
    assert odd_part(2**20) == (20, 1)
    with pytest.raises(DomainError):
        odd_part(0)


@given(st.integers(1, 10**30))
def test_odd_part_decomposes(n):
    l, k = odd_part(n)
    assert k % 2 == 1 and n == (1 << l) * k


def direct_f(n, m):
    # literal reading: strip factors of two, then floor(((k-1) mod 2^(m+1)) / 2)
    k = n
    while k % 2 == 0:
        k //= 2
    return ((k - 1) % 2 ** (m + 1)) // 2


def test_paperfold_small_values():
    assert [paperfold_value(n, 1) for n in range(1, 9)] == [0, 0, 1, 0, 0, 1, 1, 0]
    assert [paperfold_value(n, 2) for n in range(1, 9)] == [0, 0, 1, 0, 2, 1, 3, 0]
    for m in (1, 2, 3, 4):
        assert all(paperfold_value(n, m) == direct_f(n, m) for n in range(1, 2000))


def test_paperfold_term_reduces_mod_p():
    params = PaperfoldParams(m=2, p=3)
    assert paperfold_term(7, params) == FieldElem(0, 3)  # f_7 = 3
    with pytest.raises(DomainError):
        paperfold_term(0, params)


def test_paperfold_series():
    a = paperfold_series(PaperfoldParams(1, 3), 5)
    assert a.start == 1 and a.prec == 5 and list(a.coeffs) == [0, 0, 1, 0]
    assert a.abs_exp() == -3
    for m, p in ((2, 5), (3, 17)):
        assert paperfold_series(PaperfoldParams(m, p), 40).start == 1


def test_max_two_adic():
    assert [max_two_adic(p) for p in (3, 7, 11)] == [1, 1, 1]
    assert max_two_adic(5) == 2
    assert max_two_adic(17) == 4


def test_doubling_law():
    for m in (1, 2, 3):
        assert all(paperfold_value(2 * k, m) == paperfold_value(k, m) for k in range(1, 10**4 + 1))


def test_value_range():
    for m in (1, 2, 3, 4):
        vals = {paperfold_value(n, m) for n in range(1, 5000)}
        assert vals == set(range(2**m))


def test_mod2_homomorphism():
    for m in (1, 2):
        for k in range(1, 2001, 2):
            fk = paperfold_value(k, m)
            for l in range(1, 2001, 2):
                assert (fk + paperfold_value(l, m)) % 2 == paperfold_value(k * l, m) % 2


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_binomial_expansion_of_p_power(p):
    m = max_two_adic(p)
    x = (p - 1) >> m
    for n in range(1, 40):
        rest = p**n - 1 - n * 2**m * x - n * (n - 1) * 2 ** (2 * m - 1) * x * x
        assert rest >= 0 and rest % 2 ** (3 * m) == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_transcendence_congruences(p):
    m = max_two_adic(p)
    checked = 0
    e = 2
    while p ** (3 * e) <= 10**8:
        l, z = odd_part(p**e - 1)
        assert l >= m + 1
        big = p ** (3 * e) - 1
        assert paperfold_value(big, m) == paperfold_value(3 * z, m)
        assert paperfold_value(big, m) % 2 == (1 + paperfold_value(p**e - 1, m)) % 2
        checked += 1
        e += 2
    assert checked >= 1


def test_christol_table():
    aut = christol_example()
    assert dfao_eval(aut, 1) == 1
    assert dfao_eval(aut, 4) == 0
    assert dfao_eval(aut, 9) == 1
    assert dfao_eval(aut, 0) == 0
    assert [dfao_eval(aut, n) for n in (1, 3, 9, 27)] == [1, 1, 1, 1]
    assert [dfao_eval(aut, n) for n in (2, 4, 5, 6, 7, 8)] == [0] * 6


def test_christol_power_of_three_indicator():
    aut = christol_example()
    assert all(aut(n) == int(is_power_of_3(n)) for n in range(3**8 + 1))


def test_christol_algebraic_relation():
    alpha = dfao_series(christol_example(), 3, 3**6 + 1)
    residual = alpha**3 - alpha + LaurentSeries.monomial(1, 1, 3, alpha.prec)
    assert residual.is_zero()
    assert residual.prec - min(residual.start, 0) >= 3**6


def test_dfao_validation_and_json():
    aut = christol_example()
    assert DFAO.from_json(aut.to_json()) == aut
    with pytest.raises(DomainError):
        DFAO(2, 2, 0, [[0, 1]], [0, 1])
    with pytest.raises(DomainError):
        DFAO(2, 2, 0, [[0, 1], [0, 2]], [0, 1])


def test_binary_dfao_counts_ones_parity():
    # Thue-Morse: parity of the binary digit sum
    tm = DFAO(2, 2, 0, [[0, 1], [1, 0]], [0, 1])
    assert all(tm(n) == bin(n).count("1") % 2 for n in range(2000))
