"""Plane trees, labellings, order words and the KL generating function."""
import pytest

from tilecalc.paths import Path, dyck_paths, highest_path
from tilecalc.qpoly import LaurentPoly, qbinom, qint
from tilecalc.tilings import genfun_bruteforce
from tilecalc.trees import (
    NaturalLabelling,
    PlaneTree,
    TreeError,
    build_tree,
    build_tree_with_audit,
    dyck_fac,
    enumerate_ls_labellings,
    enumerate_natural_labellings,
    inv_word,
    inverse_pre_word,
    kl_polynomial,
    ls_weight_sum,
    mini_word_tops,
    p_sequence,
    pre_word,
    post_word,
    reference_labelling,
    tree_from_text,
    tree_to_path,
    word_from_text,
    word_text,
)

q = LaurentPoly.q


def shape(tree):
    """(parent-by-preorder, dotted set, arrows) for structural comparison."""
    return tree.canonical()[:3]


def test_empty_tree():
    t = build_tree("")
    assert t.n_edges == 0


def test_uudd_chain():
    t = build_tree("UUDD")
    assert t.n_edges == 2 and not t.dotted and not t.arrows
    assert t.to_text() == "(())"


def test_terminal_u_single_dot():
    t = build_tree("U")
    assert t.n_edges == 1 and len(t.dotted) == 1


def test_diamond8_example_tree():
    # two dotted edges and one arrow, the arrow pointing from the inner
    # dotted leaf to the adjacent chain of two plain edges
    t = build_tree("UUDDUUUUUDDU")
    assert len(t.dotted) == 2
    assert len(t.arrows) == 1
    expected = tree_from_text("(())((())()*)*", arrows=[])
    # same underlying shape/dots; check the arrow goes dotted-leaf -> chain top
    (src, dst) = t.arrows[0]
    assert src in t.dotted
    assert dst not in t.dotted
    assert shape(t)[:2] == expected.canonical()[:2]


def test_example_51_tree_no_arrow():
    t = build_tree("UUDDUUUUDDUU")
    assert len(t.dotted) == 2 and not t.arrows


def _example51_labelling() -> NaturalLabelling:
    t = build_tree("UUDDUUUUDDUU")
    # edges in pre-order: chain2 top, chain2 leaf, dot, inner chain top,
    # inner chain leaf, dotted leaf
    order = t.preorder()
    labels = dict(zip(order, [1, 3, 2, 4, 5, 6]))
    return NaturalLabelling(t, tuple(sorted(labels.items())))


def test_example51_pre_post_words():
    lab = _example51_labelling()
    assert word_text(pre_word(lab)) == "1,3,2_,4,5,6_"
    assert word_text(post_word(lab)) == "3,1,2_,5,4,6_"


def test_reference_pre_word_is_identity():
    for n2 in (2, 4, 6):
        for lam in dyck_paths(n2):
            lab = reference_labelling(build_tree(lam))
            assert [v for v, _ in pre_word(lab)] == list(
                range(1, lam.count("U") + 1)
            )
    lab = reference_labelling(build_tree("UUDDUUUUDDUU"))
    assert [v for v, _ in pre_word(lab)] == list(range(1, 7))


def test_single_dotted_edge_pre_word():
    lab = reference_labelling(build_tree("UU"))
    assert word_text(pre_word(lab)) == "1_"


def test_example52_p_sequence_and_miniword():
    lab = _example51_labelling()
    p = p_sequence(lab)
    assert word_text(p) == "0,2_,1,6,7,10_"
    # the unadjusted tops a' and the mini-word rows from the worked example
    pprime = [0, 2, 1, 5, 6, 9]
    assert mini_word_tops(pprime, 6) == [1, 4, 2, 6, 7, 10]


def test_inv_word_micro():
    # reproduces art(BTS) = inv on the smallest trees: plain inversions count
    # once, inversions meeting an underlined position twice
    assert inv_word(word_from_text("1,2")) == 0
    assert inv_word(word_from_text("2,1")) == 1
    assert inv_word(word_from_text("1_")) == 0
    assert inv_word(word_from_text("2,1_")) == 2


def test_natural_labelling_count():
    # hook-length style count: E! / prod(subtree sizes)
    t = build_tree("UUDDUD")
    labs = list(enumerate_natural_labellings(t))
    assert len(labs) == 3  # 3!/(2*1*1)
    for lab in labs:
        lm = lab.label_map()
        for e in range(1, t.n_edges + 1):
            if t.parent[e]:
                assert lm[t.parent[e]] < lm[e]


def test_ls_count_chain_with_capacity():
    # chain of E edges with leaf capacity c has binom(E+c, c) labellings
    for e_cnt, cap in [(1, 2), (2, 2), (3, 1), (2, 3)]:
        lam = Path("U" * e_cnt + "D" * e_cnt)
        tree = build_tree(lam)
        tree = PlaneTree(tree.parent, tree.dotted, tree.arrows, ((e_cnt, cap),))
        n = sum(1 for _ in enumerate_ls_labellings(tree))
        assert n == qbinom(e_cnt + cap, cap).substitute(q=1)


def test_ls_stream_matches_weight_sum():
    for lam in dyck_paths(6):
        tree = build_tree(lam, highest_path(6))
        total = LaurentPoly.zero()
        for values in enumerate_ls_labellings(tree):
            total = total + LaurentPoly.q(sum(values.values()))
        assert total == ls_weight_sum(tree)


def test_section24_example_38_labellings():
    lam = Path("UUDDUUUDDUDUUDDD")
    tree = build_tree(lam, highest_path(16))
    count = sum(
        1 for v in enumerate_ls_labellings(tree) if sum(v.values()) == 5
    )
    assert count == 38


def test_kl_trivial_and_small():
    assert kl_polynomial("UDUD", "UUUU") == 1 + q()
    for lam in dyck_paths(6):
        assert kl_polynomial(lam, lam) == 1


def test_kl_matches_bruteforce():
    for n2 in (2, 4, 6, 8):
        for lam in dyck_paths(n2):
            assert kl_polynomial(lam) == genfun_bruteforce(lam, None, "dyck", "art")


def test_dyck_fac_matches_kl():
    assert dyck_fac("UDUD") == qbinom(2, 1)
    for n2 in (2, 4, 6, 8, 10):
        for lam in dyck_paths(n2):
            assert dyck_fac(lam) == kl_polynomial(lam)


def test_chain_tree_fac_is_one():
    for n in (1, 2, 3, 4):
        assert dyck_fac("U" * n + "D" * n) == 1


def test_lemma_udlam_d_invariance():
    # wrapping a Dyck path in U...D leaves the KL polynomial unchanged
    for n2 in (2, 4, 6, 8):
        for lam in dyck_paths(n2):
            assert kl_polynomial(Path("U" + lam.steps + "D")) == kl_polynomial(lam)


def test_lemma_concatenation_factorization():
    for n1 in (1, 2, 3):
        for n2 in (1, 2, 3):
            for a in dyck_paths(2 * n1):
                for b in dyck_paths(2 * n2):
                    lhs = kl_polynomial(a + b)
                    rhs = qbinom(n1 + n2, n1) * kl_polynomial(a) * kl_polynomial(b)
                    assert lhs == rhs


def test_tree_text_round_trip():
    t = build_tree("UUDDUUUUUDDU")
    pre = t.preorder()
    idx = {e: i for i, e in enumerate(pre)}
    t2 = tree_from_text(
        t.to_text(), arrows=[(idx[s], idx[d]) for s, d in t.arrows]
    )
    assert t2 == t


def test_tree_to_path_round_trip():
    from tilecalc.paths import ballot_paths

    for n in range(1, 9):
        for lam in ballot_paths(n):
            t = build_tree(lam)
            lam2 = tree_to_path(t)
            assert build_tree(lam2) == t


def test_tree_to_path_canonical_on_treewt1_example():
    # hand-built tree: plain edge with one child, arrowed plain edge, dotted
    # edge; the canonical path re-inserts the leftover unmatched U
    t = tree_from_text("(())()()*", arrows=[(3, 2)])
    assert tree_to_path(t) == "UUDDUUDU"
    assert build_tree("UUDDUUDU") == t
