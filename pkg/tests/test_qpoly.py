"""Ring arithmetic and quantum-integer constructions."""
import pytest
from hypothesis import given, strategies as st

from tilecalc.qpoly import (
    LaurentPoly,
    NotDivisibleError,
    one_plus_q_power_product,
    qbinom,
    qbinom_q2,
    qdoublefact,
    qfact,
    qint,
    qmultinom,
    qmultinom_q2,
    qt_int,
)

q = LaurentPoly.q
t = LaurentPoly.t


def test_qint_small():
    assert qint(0) == LaurentPoly.zero()
    assert qint(1) == 1
    assert qint(3) == 1 + q() + q(2)


def test_qbinom_4_2():
    # expand [4]!/([2]![2]!) by long division
    assert qbinom(4, 2) == 1 + q() + 2 * q(2) + q(3) + q(4)


def test_qt_int():
    assert qt_int(2) == 1 + t()
    assert qt_int(1) == t()
    assert qt_int(3) == 1 + q() + q() * t()
    with pytest.raises(ValueError):
        qt_int(0)


def test_qmultinom_identity_case():
    for n in range(6):
        assert qmultinom(n, [n]) == 1


def test_mul_difference_of_squares():
    assert (1 + q()) * (1 - q()) == 1 - q(2)


def test_exact_div_factorials():
    assert qfact(4).exact_div(qfact(2)) == qint(3) * qint(4)


def test_exact_div_error():
    with pytest.raises(NotDivisibleError):
        q().exact_div(1 + q())


def test_exact_div_with_t_divisor():
    a = (1 + t()) * (1 + q() * t())
    assert a.exact_div(1 + t()) == 1 + q() * t()
    with pytest.raises(NotDivisibleError):
        (q() + t()).exact_div(1 + t())


def test_pascal_q_recurrence():
    # used in the trivalent-tree identity proof
    for n in range(1, 13):
        for m in range(1, n + 1):
            assert qbinom(n, m) == qbinom(n - 1, m - 1) + q(m) * qbinom(n - 1, m)


def test_classical_specialization():
    import math

    for n in range(9):
        for m in range(n + 1):
            assert qbinom(n, m).substitute(q=1) == math.comb(n, m)
    assert qint(5).substitute(q=1) == 5


def test_doublefact_vs_fact():
    # [2m]!! = [m]! * prod (1+q^i)
    for m in range(6):
        assert qdoublefact(2 * m) == qfact(m) * one_plus_q_power_product(m)


def test_q2_binomial_is_q2_substitution():
    # [n m]_{q^2} equals the q-binomial with q -> q^2
    for n in range(6):
        for m in range(n + 1):
            plain = qbinom(n, m)
            sub = LaurentPoly(
                {(2 * dq, dt): c for (dq, dt), c in plain.terms.items()}
            )
            assert qbinom_q2(n, m) == sub


def test_qmultinom_q2_small():
    assert qmultinom_q2(2, [1, 1]) == qdoublefact(4).exact_div(
        qdoublefact(2) * qdoublefact(2)
    )


def test_json_round_trip():
    p = 2 * q(3) - t(2) + 5 + q() * t()
    assert LaurentPoly.from_json(p.to_json()) == p


def test_str_rendering():
    assert str(LaurentPoly.zero()) == "0"
    assert str(1 + q() + 2 * q(2) + q() * t()) == "1 + q + 2*q^2 + q*t"
    assert str(-q(2)) == "-q^2"


coeffs = st.integers(min_value=-9, max_value=9)
exps = st.integers(min_value=-3, max_value=4)


@st.composite
def polys(draw):
    n = draw(st.integers(min_value=0, max_value=5))
    terms = {}
    for _ in range(n):
        terms[(draw(exps), draw(exps))] = draw(coeffs)
    return LaurentPoly(terms)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a + LaurentPoly.zero() == a
    assert a * LaurentPoly.one() == a


@given(polys(), polys())
def test_exact_div_inverts_mul(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a
