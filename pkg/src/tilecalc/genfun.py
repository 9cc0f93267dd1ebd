"""Closed-form and tree-weighted generating functions, with the expansion
recurrences used to prove the factorizations.

Every function returns an exact :class:`~tilecalc.qpoly.LaurentPoly`; all
internal divisions must be exact and raise on any remainder.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .paths import (
    Path,
    as_path,
    chords,
    decompose_at_minimum,
    highest_path,
    is_dyck,
    pad_to_ballot,
    pad_to_dyck,
    skew_region,
    zigzag,
)
from .qpoly import (
    LaurentPoly,
    one_plus_q_power_product,
    qbinom,
    qdoublefact,
    qint,
    qt_int,
    prod,
)
from . import trees as trees_mod
from .trees import (
    PlaneTree,
    TreeError,
    build_tree,
    enumerate_ls_labellings,
    enumerate_natural_labellings,
    inv_word,
    inverse_pre_word,
    modified_postorder,
    pre_word,
    tree_to_path,
)


class HypothesisError(ValueError):
    """A tree or path violates the hypotheses of the requested formula."""


# -- Dyck tilings ----------------------------------------------------------------


def dyck_product(lam: Path | str) -> LaurentPoly:
    """[n]! / prod over chords of [l(c)] -- fixed lower path, art statistic."""
    lam = as_path(lam)
    if not is_dyck(lam):
        raise HypothesisError(f"{lam} is not a Dyck path")
    n = len(lam) // 2
    den = prod(qint(l) for _, l, _ in chords(lam))
    from .qpoly import qfact

    return qfact(n).exact_div(den)


def dyck_upper_product(mu: Path | str) -> LaurentPoly:
    """prod over chords of [ht(c)] -- fixed upper path, tiles statistic."""
    mu = as_path(mu)
    if not is_dyck(mu):
        raise HypothesisError(f"{mu} is not a Dyck path")
    return prod(qint(ht) for _, _, ht in chords(mu))


# -- ballot tilings with a fixed lower path (type BIII) ----------------------------


def biii_fixed_lower(lam: Path | str) -> LaurentPoly:
    """P^Dyck of the Dyck completion times prod (1 + q^(i-1) t)."""
    lam = as_path(lam)
    extra = prod(
        LaurentPoly.one() + LaurentPoly.monomial(1, i - 1, 1)
        for i in range(1, lam.count("D") + 1)
    )
    return dyck_product(pad_to_dyck(lam)) * extra


# -- type BIII with signed permutations (second formula) ---------------------------


def shifted_shape_columns(mu: Path | str) -> list[tuple[int, bool]]:
    """(height, starred) per up step of the all-U path over mu's shifted shape.

    The height is one plus the number of boxes southeast of the up step; a
    column is starred when the last box on its diagonal is an anchor box.
    """
    mu = as_path(mu)
    n = len(mu)
    region = skew_region(mu, highest_path(n), shifted=True)
    out = []
    for k in range(1, n + 1):
        a, b = k - 1, k - 1  # the k-th up step of the all-U path starts here
        boxes = 0
        last = None
        while (a + 1 + boxes, b - boxes) in region.boxes:
            last = (a + 1 + boxes, b - boxes)
            boxes += 1
        starred = last is not None and last in region.anchors
        out.append((boxes + 1, starred))
    return out


def biii_2_product(mu: Path | str) -> LaurentPoly:
    """prod [ht(U)] over plain columns times prod [ht(U)]_t over starred ones."""
    out = LaurentPoly.one()
    for ht, starred in shifted_shape_columns(mu):
        out = out * (qt_int(ht) if starred else qint(ht))
    return out


# -- fixed upper path families -----------------------------------------------------


def _diag_ne_boxcount(region, d_step_start: tuple[int, int]) -> int:
    """Boxes along the (1,1) diagonal hugging a down step from above."""
    a, b = d_step_start
    cnt = 0
    while (a + 1 + cnt, b + cnt) in region.boxes:
        cnt += 1
    return cnt


def upper_tilde(gamma: Path | str) -> LaurentPoly:
    """prod over down steps of the low staircase of [1 + boxes above them].

    The Dyck-tiling generating function with fixed upper path gamma, lower
    paths ranging between the staircase and gamma, weighted by tiles.
    """
    gamma = as_path(gamma)
    if gamma.min_height < 0:
        raise HypothesisError(f"{gamma} is not a ballot path")
    n2 = 2 * gamma.count("D")
    nprime = gamma.end_height
    gamma0 = Path(zigzag(n2).steps + "U" * nprime)
    region = skew_region(gamma0, gamma, shifted=False)
    out = LaurentPoly.one()
    for d in gamma0.down_positions():
        ht = 1 + _diag_ne_boxcount(region, (d, gamma0.heights[d]))
        out = out * qint(ht)
    return out


def bi_fixed_upper(mu: Path | str) -> LaurentPoly:
    """prod over down steps of the zig-zag of [ht(d; mu)] (odd length)."""
    mu = as_path(mu)
    n = len(mu)
    if n % 2 == 0:
        raise HypothesisError("the fixed-upper product needs odd length")
    if mu.min_height < 0:
        raise HypothesisError(f"{mu} is not a ballot path")
    mu0 = zigzag(n)
    region = skew_region(mu0, mu, shifted=True)
    out = LaurentPoly.one()
    for d in mu0.down_positions():
        ht = 1 + _diag_ne_boxcount(region, (d, mu0.heights[d]))
        out = out * qint(ht)
    return out


def ht_d_list(mu: Path | str) -> list[int]:
    """[ht(d; mu)] heights along the zig-zag, left to right (odd length)."""
    mu = as_path(mu)
    n = len(mu)
    mu0 = zigzag(n)
    region = skew_region(mu0, mu, shifted=True)
    return [
        1 + _diag_ne_boxcount(region, (d, mu0.heights[d]))
        for d in mu0.down_positions()
    ]


# -- the staircase generating function P(M, N) --------------------------------------


def _a_factor(j: int, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Numerator and denominator of a_(j,N)."""
    if j % 2 == 1:
        m = (j + 1) // 2
        return qint(n + 2 * m), qint(2 * m)
    m = j // 2
    return qint(2 * n + 2 * m), qint(n + 2 * m)


def p_mn(m: int, n: int) -> LaurentPoly:
    """Closed form: prod (1+q^i) times the telescoping a-factor product."""
    if m < 0 or n < 0:
        raise HypothesisError("p_mn needs nonnegative arguments")
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for j in range(1, m + 1):
        a, b = _a_factor(j, n)
        num = num * a
        den = den * b
    return (one_plus_q_power_product(n) * num).exact_div(den)


def a_product(m: int, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """The a-factor product as an exact (numerator, denominator) pair."""
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for j in range(1, m + 1):
        a, b = _a_factor(j, n)
        num = num * a
        den = den * b
    return num, den


@lru_cache(maxsize=None)
def p_mn_recursive(m: int, n: int) -> LaurentPoly:
    """The two-case recurrence; agrees with the closed form."""
    if n < 0:
        return LaurentPoly.zero()
    if m < 0:
        raise HypothesisError("recurrence reached a negative first argument")
    if n == 0:
        return LaurentPoly.one()
    if m == 0:
        return one_plus_q_power_product(n)
    out = p_mn_recursive(m, n - 1) + LaurentPoly.q(n) * p_mn_recursive(m - 1, n)
    if m % 2 == 1:
        out = out + LaurentPoly.q(m + n) * p_mn_recursive(m + 1, n - 2)
    return out


# -- type BI with a fixed lower path -------------------------------------------------


def bi_fixed_lower(lam: Path | str) -> LaurentPoly:
    """Recursive factorization by stripping the leading balanced factor.

    For lam = U z D rest with the first step matched, the value factors as
    P^Dyck(z) * P(|rest|, |z|/2 + 1) * value(rest); a leading unmatched U
    leaves the value unchanged and is dropped.  Words below zero are first
    embedded by left U-padding, which also preserves the value.
    """
    lam = pad_to_ballot(lam)
    if len(lam) == 0:
        return LaurentPoly.one()
    d = _first_match(lam)
    if d is None:
        return bi_fixed_lower(Path(lam.steps[1:]))
    z = Path(lam.steps[1:d])
    rest = Path(lam.steps[d + 1 :])
    return (
        dyck_product(z)
        * p_mn(len(rest), len(z) // 2 + 1)
        * bi_fixed_lower(rest)
    )


def _first_match(lam: Path) -> int | None:
    """Index of the D matching step 0, or None when step 0 is unmatched."""
    depth = 0
    for i, c in enumerate(lam.steps):
        depth += 1 if c == "U" else -1
        if depth == 0:
            return i
    return None


def bi_tree_fac(tree_or_path: PlaneTree | Path | str) -> LaurentPoly:
    """[2N]!! divided by the per-edge factors [l(e)]; l doubles on dots."""
    if isinstance(tree_or_path, PlaneTree):
        tree = tree_or_path
    else:
        tree = build_tree(pad_to_ballot(as_path(tree_or_path)))
    if tree.arrows:
        raise HypothesisError("the tree factorization needs an arrow-free tree")
    n = tree.n_edges
    den = LaurentPoly.one()
    for e in range(1, n + 1):
        desc = len(tree.subtree_edges(e)) - 1
        l = 2 * desc + 2 if e in tree.dotted else desc + 1
        den = den * qint(l)
    return qdoublefact(2 * n).exact_div(den)
