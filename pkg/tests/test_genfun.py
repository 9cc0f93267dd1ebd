"""Closed-form generating functions against the brute-force oracle."""
import pytest

from tilecalc.paths import Path, all_words, ballot_paths, dyck_paths
from tilecalc.qpoly import LaurentPoly, qint
from tilecalc.tilings import genfun_bruteforce
from tilecalc.genfun import (
    HypothesisError,
    bi_fixed_lower,
    bi_fixed_upper,
    bi_tree_fac,
    biii_2_product,
    biii_fixed_lower,
    dyck_product,
    dyck_upper_product,
    p_mn,
    p_mn_recursive,
    upper_tilde,
)

q = LaurentPoly.q
t = LaurentPoly.t


def test_dyck_product_basics():
    assert dyck_product("UUDD") == 1
    assert dyck_product("UDUD") == qint(2)
    for n in (1, 2, 3):
        assert dyck_product("U" * n + "D" * n) == 1


def test_dyck_upper_basics():
    from tilecalc.paths import zigzag

    assert dyck_upper_product(zigzag(8)) == 1
    assert dyck_upper_product("UUDD") == qint(1) * qint(2)


def test_dyck_sweeps_small():
    for n2 in (2, 4, 6, 8):
        for lam in dyck_paths(n2):
            assert dyck_product(lam) == genfun_bruteforce(lam, None, "dyck", "art")
            assert dyck_upper_product(lam) == genfun_bruteforce(
                None, lam, "dyck", "tiles"
            )


def test_biii_example_42():
    assert biii_fixed_lower("UU") == 1
    assert biii_fixed_lower("UD") == 1 + t()
    assert biii_fixed_lower("DU") == (1 + q()) * (1 + t())
    assert biii_fixed_lower("DD") == (1 + t()) * (1 + q() * t())


def test_biii_sweep_small():
    for n in (1, 2, 3, 4, 5):
        for lam in all_words(n):
            assert biii_fixed_lower(lam) == genfun_bruteforce(
                lam, None, "biii", "art_tiles2"
            ), lam


def test_biii_2_product_ud():
    assert biii_2_product("UD") == 1 + t()
    assert biii_2_product("UU") == 1


def test_upper_tilde_example():
    assert upper_tilde("UUUDUD") == qint(3) * qint(3)


def test_upper_tilde_lowest_path_is_one():
    from tilecalc.paths import zigzag

    for n2, npr in [(4, 1), (2, 2), (6, 0)]:
        gamma0 = Path(zigzag(n2).steps + "U" * npr)
        assert upper_tilde(gamma0) == 1


def test_upper_tilde_vs_bruteforce():
    for n in range(1, 8):
        for gamma in ballot_paths(n):
            got = genfun_bruteforce(
                None,
                gamma,
                "dyck",
                "tiles",
                lower_domain="ballot",
                same_endpoint=True,
            )
            assert got == upper_tilde(gamma), gamma


def test_p11_is_qint3():
    assert p_mn(1, 1) == qint(3)
    assert p_mn_recursive(1, 1) == qint(3)


def test_p_mn_a_table_entry():
    # the (M,N) = (3,2) entry of the a-product table is [6]^2 / ([2][4])
    from tilecalc.genfun import a_product

    num, den = a_product(3, 2)
    lhs = num * qint(2) * qint(4)
    rhs = qint(6) * qint(6) * den
    assert lhs == rhs


def test_p_mn_zero_column():
    from tilecalc.qpoly import one_plus_q_power_product

    for n in range(6):
        assert p_mn(0, n) == one_plus_q_power_product(n)


def test_p_mn_recurrence_matches_closed_form():
    for m in range(0, 9):
        for n in range(0, 9):
            if m + n <= 10:
                assert p_mn(m, n) == p_mn_recursive(m, n), (m, n)


def test_p_mn_matches_bruteforce():
    for m in range(0, 5):
        for n in range(0, 5):
            if m + n <= 6:
                lam = Path("D" * n + "U" * m)
                assert p_mn(m, n) == genfun_bruteforce(lam, None, "bi", "art"), (m, n)


def test_bi_fixed_lower_example():
    assert bi_fixed_lower("UUDDUU") == (qint(4) * qint(6)).exact_div(qint(2))


def test_bi_fixed_lower_ddudu_coefficient():
    assert bi_fixed_lower("DDUDU").coeff(5) == 8


def test_bi_fixed_lower_sweep():
    for n in range(1, 7):
        for lam in all_words(n):
            assert bi_fixed_lower(lam) == genfun_bruteforce(
                lam, None, "bi", "art"
            ), lam


def test_bi_tree_fac_small():
    assert bi_tree_fac("UD") == 1 + q()
    assert bi_tree_fac("UU") == 1
    assert bi_tree_fac("U") == 1


def test_bi_tree_fac_matches_fixed_lower():
    for n in range(1, 8):
        for lam in ballot_paths(n):
            tree = None
            try:
                got = bi_tree_fac(lam)
            except HypothesisError:
                continue  # tree has arrows
            assert got == bi_fixed_lower(lam), lam
