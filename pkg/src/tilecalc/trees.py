"""Planted plane trees for Dyck and ballot paths, and their labellings.

A tree is stored as a rooted ordered forest below a virtual root node 0.
Edges are identified with their child node (1..E).  Ballot paths contribute
dotted edges (one per terminal U or UU-pair) and dashed arrows between
sibling edges; Dyck paths give plain trees.

Everything downstream of a path's tree -- natural labellings, labellings of
Lascoux-Schutzenberger type, pre/post order words, the p-sequences feeding
the growth bijection -- lives here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .paths import Path, as_path, highest_path, matched_pairs
from .qpoly import LaurentPoly, qmultinom


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneTree:
    """Rooted ordered forest with per-edge dot flags and sibling arrows."""

    parent: tuple[int, ...]  # parent[i] is the parent node of node i; parent[0] = -1
    dotted: frozenset[int]
    arrows: tuple[tuple[int, int], ...]  # (source edge, target edge), source -> target
    capacities: tuple[tuple[int, int], ...] = ()  # (leaf edge, capacity)

    @property
    def n_edges(self) -> int:
        return len(self.parent) - 1

    def children(self, v: int) -> list[int]:
        return [i for i in range(1, len(self.parent)) if self.parent[i] == v]

    def _children_map(self):
        m: dict[int, list[int]] = {i: [] for i in range(len(self.parent))}
        for i in range(1, len(self.parent)):
            m[self.parent[i]].append(i)
        return m

    def child_map(self) -> dict[int, list[int]]:
        return {k: list(v) for k, v in self._children_map().items()}

    def preorder(self) -> list[int]:
        cm = self._children_map()
        out: list[int] = []

        def rec(v: int):
            for c in cm[v]:
                out.append(c)
                rec(c)

        rec(0)
        return out

    def subtree_edges(self, e: int) -> list[int]:
        cm = self._children_map()
        out = []
        stack = [e]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(cm[v])
        return out

    def leaves(self) -> list[int]:
        cm = self._children_map()
        return [e for e in self.preorder() if not cm[e]]

    def arrow_target(self, e: int) -> int | None:
        for s, t in self.arrows:
            if s == e:
                return t
        return None

    def arrow_source(self, e: int) -> int | None:
        for s, t in self.arrows:
            if t == e:
                return s
        return None

    def capacity_map(self) -> dict[int, int]:
        return dict(self.capacities)

    def canonical(self) -> tuple:
        """Shape-plus-decorations key under pre-order edge numbering."""
        order = self.preorder()
        idx = {e: i for i, e in enumerate(order)}
        cm = self._children_map()
        shape = tuple(idx[self.parent[e]] if self.parent[e] else -1 for e in order)
        dots = tuple(sorted(idx[e] for e in self.dotted))
        arrs = tuple(sorted((idx[s], idx[t]) for s, t in self.arrows))
        caps = tuple(sorted((idx[e], c) for e, c in self.capacities))
        return (shape, dots, arrs, caps)

    def __hash__(self):
        return hash(self.canonical())

    def __eq__(self, other):
        return isinstance(other, PlaneTree) and self.canonical() == other.canonical()

    # -- text format ------------------------------------------------------

    def to_text(self) -> str:
        cm = self._children_map()

        def rec(v: int) -> str:
            body = "".join(rec(c) for c in cm[v])
            mark = "*" if v in self.dotted else ""
            return f"({body}){mark}"

        return "".join(rec(c) for c in cm[0])

    def to_json(self) -> dict:
        order = self.preorder()
        idx = {e: i for i, e in enumerate(order)}
        return {
            "structure": self.to_text(),
            "arrows": sorted([idx[s], idx[t]] for s, t in self.arrows),
            "capacities": {str(idx[e]): c for e, c in sorted(self.capacities)},
        }


def tree_from_text(
    text: str,
    arrows: Sequence[Sequence[int]] = (),
    capacities: dict[int, int] | None = None,
) -> PlaneTree:
    """Parse the nested-parentheses format; '*' after ')' marks a dot.

    Arrow pairs and the capacity map refer to pre-order edge indices.
    """
    parent = [-1]
    dotted = set()
    stack = [0]
    i = 0
    order: list[int] = []
    while i < len(text):
        c = text[i]
        if c == "(":
            parent.append(stack[-1])
            node = len(parent) - 1
            order.append(node)
            stack.append(node)
        elif c == ")":
            node = stack.pop()
            if i + 1 < len(text) and text[i + 1] == "*":
                dotted.add(node)
                i += 1
        else:
            raise TreeError(f"unexpected character {c!r} in tree text")
        i += 1
    if len(stack) != 1:
        raise TreeError("unbalanced parentheses in tree text")
    arr = tuple((order[s], order[t]) for s, t in arrows)
    caps = tuple(
        (order[e], c) for e, c in (capacities or {}).items()
    )
    return PlaneTree(tuple(parent), frozenset(dotted), arr, caps)


# -- building the tree of a path ------------------------------------------------


@dataclass
class BuildAudit:
    """Classification of each step of the path used to build the tree."""

    roles: dict[int, str] = field(default_factory=dict)  # U position -> role


def build_tree(lam: Path | str, lam0: Path | str | None = None) -> PlaneTree:
    tree, _ = build_tree_with_audit(lam, lam0)
    return tree


def build_tree_with_audit(
    lam: Path | str, lam0: Path | str | None = None
) -> tuple[PlaneTree, BuildAudit]:
    """The plane tree of a Dyck or ballot path, with optional leaf capacities.

    Matched UD pairs give plain edges; the terminal U gives a dotted edge,
    每 UU-pair gives a dotted edge, and the leftover unmatched U (present when
    the end height is even) is dropped.  Arrows chain each dotted edge through
    the factor trees of the balanced word immediately to its left.
    """
    lam = as_path(lam)
    if lam.min_height < 0:
        raise TreeError(f"{lam} is not a ballot path; pad it first")
    pairs, ups, downs = matched_pairs(lam)
    assert not downs
    match = {u: d for u, d in pairs}
    m = len(ups)
    audit = BuildAudit()
    for u, _ in pairs:
        audit.roles[u] = "paired"

    parent = [-1]
    dotted: set[int] = set()
    arrows: list[tuple[int, int]] = []
    upos: dict[int, int] = {}

    def new_node(par: int) -> int:
        parent.append(par)
        return len(parent) - 1

    def dyck_forest(i: int, j: int, par: int) -> list[int]:
        tops = []
        k = i
        while k < j:
            assert lam.steps[k] == "U"
            d = match[k]
            v = new_node(par)
            upos[v] = k
            tops.append(v)
            dyck_forest(k + 1, d, v)
            k = d + 1
        return tops

    def add_arrow_chain(s: int, tops: list[int]) -> None:
        prev = s
        for x in reversed(tops):
            arrows.append((prev, x))
            prev = x

    def process(start: int, up_idx: int, par: int) -> None:
        if up_idx == m:
            dyck_forest(start, len(lam), par)
            return
        u = ups[up_idx]
        k = m - up_idx  # count of unmatched U's from here rightward
        if k % 2 == 0:
            audit.roles[u] = "extra"
            dyck_forest(start, u, par)
            process(u + 1, up_idx + 1, par)
        elif k == 1:
            audit.roles[u] = "terminal"
            tops = dyck_forest(start, u, par)
            s = new_node(par)
            dotted.add(s)
            upos[s] = u
            dyck_forest(u + 1, len(lam), s)
            add_arrow_chain(s, tops)
        else:
            u2 = ups[up_idx + 1]
            audit.roles[u] = "uu_pair"
            audit.roles[u2] = "uu_pair"
            tops = dyck_forest(start, u, par)
            s = new_node(par)
            dotted.add(s)
            upos[s] = u
            dyck_forest(u + 1, u2, s)
            process(u2 + 1, up_idx + 2, s)
            add_arrow_chain(s, tops)

    process(0, 0, 0)

    caps: tuple[tuple[int, int], ...] = ()
    if lam0 is not None:
        lam0 = as_path(lam0)
        if len(lam0) != len(lam):
            raise TreeError("reference path must have the same length")
        pu = [0]
        pu0 = [0]
        for c in lam.steps:
            pu.append(pu[-1] + (c == "U"))
        for c in lam0.steps:
            pu0.append(pu0[-1] + (c == "U"))
        tree_tmp = PlaneTree(tuple(parent), frozenset(dotted), tuple(arrows))
        cap_list = []
        for e in tree_tmp.leaves():
            k = upos[e]
            cap_list.append((e, pu0[k + 1] - pu[k + 1]))
        caps = tuple(cap_list)
    return PlaneTree(tuple(parent), frozenset(dotted), tuple(arrows), caps), audit


def with_capacities(tree: PlaneTree, caps: dict[int, int]) -> PlaneTree:
    return PlaneTree(tree.parent, tree.dotted, tree.arrows, tuple(sorted(caps.items())))


def tree_to_path(tree: PlaneTree) -> Path:
    """A canonical ballot path whose tree equals the given one.

    Raises TreeError when the dot/arrow pattern cannot arise from a path
    (dots must be last among siblings; each dot's arrow chain must pass
    right-to-left through its adjacent left siblings).
    """
    cm = tree._children_map()
    chain_targets: dict[int, list[int]] = {}
    for s in tree.dotted:
        chain = []
        cur = tree.arrow_target(s)
        while cur is not None:
            chain.append(cur)
            cur = tree.arrow_target(cur)
        chain_targets[s] = chain
    for s, t in tree.arrows:
        if s not in tree.dotted and tree.arrow_source(s) is None:
            raise TreeError("arrow chain must start at a dotted edge")

    def forest_word(kids: list[int]) -> str:
        if not kids:
            return ""
        dots = [k for k in kids if k in tree.dotted]
        if not dots:
            return "".join(edge_word(k) for k in kids)
        if len(dots) > 1 or kids[-1] not in tree.dotted:
            raise TreeError("a dotted edge must be the last sibling")
        s = kids[-1]
        plains = kids[:-1]
        chain = chain_targets[s]
        k = len(chain)
        if k:
            if plains[len(plains) - k :] != list(reversed(chain)):
                raise TreeError("arrow chain does not match the left siblings")
        non_targets = plains[: len(plains) - k]
        targets = plains[len(plains) - k :]
        word = "".join(edge_word(e) for e in non_targets)
        if non_targets:
            word += "U"  # the leftover unmatched U
        word += "".join(edge_word(e) for e in targets)
        return word + dotted_word(s)

    def edge_word(e: int) -> str:
        if e in tree.dotted:
            raise TreeError("unexpected dotted edge position")
        return "U" + forest_word(cm[e]) + "D"

    def dotted_word(s: int) -> str:
        kids = cm[s]
        dots = [k for k in kids if k in tree.dotted]
        if not dots:
            return "U" + "".join(edge_word(k) for k in kids)
        if len(dots) > 1 or kids[-1] not in tree.dotted:
            raise TreeError("a dotted edge must be the last sibling")
        s2 = kids[-1]
        plains = kids[:-1]
        chain = chain_targets[s2]
        k = len(chain)
        if k and plains[len(plains) - k :] != list(reversed(chain)):
            raise TreeError("arrow chain does not match the left siblings")
        non_targets = plains[: len(plains) - k]
        targets = plains[len(plains) - k :]
        return (
            "U"
            + "".join(edge_word(e) for e in non_targets)
            + "U"
            + "".join(edge_word(e) for e in targets)
            + dotted_word(s2)
        )

    return Path(forest_word(cm[0]))


# -- labellings ------------------------------------------------------------------


@dataclass(frozen=True)
class NaturalLabelling:
    """A bijection edges -> 1..E increasing away from the root."""

    tree: PlaneTree
    label: tuple[tuple[int, int], ...]  # (edge, label)

    def label_map(self) -> dict[int, int]:
        return dict(self.label)

    def edge_of(self, value: int) -> int:
        for e, v in self.label:
            if v == value:
                return e
        raise KeyError(value)


def enumerate_natural_labellings(tree: PlaneTree) -> Iterator[NaturalLabelling]:
    cm = tree._children_map()
    e_total = tree.n_edges
    label: dict[int, int] = {}

    def rec(available: list[int], next_label: int) -> Iterator[NaturalLabelling]:
        if next_label > e_total:
            yield NaturalLabelling(tree, tuple(sorted(label.items())))
            return
        for i, e in enumerate(list(available)):
            label[e] = next_label
            new_avail = available[:i] + available[i + 1 :] + cm[e]
            yield from rec(new_avail, next_label + 1)
            del label[e]

    yield from rec(list(cm[0]), 1)


def reference_labelling(tree: PlaneTree) -> NaturalLabelling:
    """Labels increase in the left-to-right depth-first (pre-order) search."""
    order = tree.preorder()
    return NaturalLabelling(tree, tuple(sorted((e, i + 1) for i, e in enumerate(order))))


def enumerate_ls_labellings(
    tree: PlaneTree, capacities: dict[int, int] | None = None
) -> Iterator[dict[int, int]]:
    """All capacity-bounded labellings non-increasing toward the root."""
    caps = capacities if capacities is not None else tree.capacity_map()
    cm = tree._children_map()
    if tree.n_edges and not caps:
        raise TreeError("LS labellings need leaf capacities")

    ub: dict[int, int] = {}

    def bound(e: int) -> int:
        if e in ub:
            return ub[e]
        kids = cm[e]
        if not kids:
            b = caps[e]
        else:
            b = min(bound(k) for k in kids)
        ub[e] = b
        return b

    values: dict[int, int] = {}

    def rec(edges: list[int], parent_value: dict[int, int]) -> Iterator[dict[int, int]]:
        if not edges:
            yield dict(values)
            return
        e = edges[0]
        low = parent_value.get(tree.parent[e], 0)
        for v in range(low, bound(e) + 1):
            values[e] = v
            pv = dict(parent_value)
            pv[e] = v
            yield from rec(edges[1:], pv)
            del values[e]

    yield from rec(tree.preorder(), {})


def ls_weight_sum(tree: PlaneTree, capacities: dict[int, int] | None = None) -> LaurentPoly:
    """Sum of q^(sum of labels) over LS labellings, by subtree DP."""
    caps = capacities if capacities is not None else tree.capacity_map()
    cm = tree._children_map()
    ub: dict[int, int] = {}

    def bound(e: int) -> int:
        if e not in ub:
            kids = cm[e]
            ub[e] = caps[e] if not kids else min(bound(k) for k in kids)
        return ub[e]

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def f(e: int, low: int) -> LaurentPoly:
        out = LaurentPoly.zero()
        for v in range(low, bound(e) + 1):
            term = LaurentPoly.q(v)
            for k in cm[e]:
                term = term * f(k, v)
            out = out + term
        return out

    out = LaurentPoly.one()
    for e in cm[0]:
        out = out * f(e, 0)
    return out


def kl_polynomial(lam: Path | str, lam0: Path | str | None = None) -> LaurentPoly:
    """Sum over LS labellings of A(lam/lam0) of q^(label sum).

    With the all-U reference this equals the fixed-lower generating function
    of Dyck tilings.
    """
    lam = as_path(lam)
    if lam0 is None:
        lam0 = highest_path(len(lam))
    tree = build_tree(lam, lam0)
    return ls_weight_sum(tree)


def ramification_points(tree: PlaneTree) -> list[list[int]]:
    """Branch lists: the root's children plus every edge's >=2 children."""
    cm = tree._children_map()
    out = [cm[0]]
    for e in tree.preorder():
        if len(cm[e]) >= 2:
            out.append(cm[e])
    return out


def dyck_fac(lam: Path | str) -> LaurentPoly:
    """Product of branch multinomials over ramification points of A(lam)."""
    lam = as_path(lam)
    tree = build_tree(lam)
    out = LaurentPoly.one()
    for branches in ramification_points(tree):
        sizes = [len(tree.subtree_edges(b)) for b in branches]
        out = out * qmultinom(sum(sizes), sizes)
    return out


# -- order words --------------------------------------------------------------


Word = tuple[tuple[int, bool], ...]  # (value, underlined)


def pre_word(lab: NaturalLabelling) -> Word:
    tree = lab.tree
    lm = lab.label_map()
    return tuple((lm[e], e in tree.dotted) for e in tree.preorder())


def modified_postorder(tree: PlaneTree) -> list[int]:
    """Post-order, except each trailing dotted chain is emitted right after
    the subtrees to its left, top to bottom down to the next ramification."""
    cm = tree._children_map()
    out: list[int] = []

    def emit_forest(kids: list[int]) -> None:
        if kids and kids[-1] in tree.dotted:
            plains, dot = kids[:-1], kids[-1]
        else:
            plains, dot = kids, None
        for k in plains:
            emit_forest(cm[k])
            out.append(k)
        if dot is not None:
            cur = dot
            while True:
                out.append(cur)
                kids2 = cm[cur]
                if len(kids2) == 1 and kids2[0] in tree.dotted:
                    cur = kids2[0]
                else:
                    emit_forest(kids2)
                    break

    emit_forest(cm[0])
    return out


def post_word(lab: NaturalLabelling) -> Word:
    tree = lab.tree
    lm = lab.label_map()
    return tuple((lm[e], e in tree.dotted) for e in modified_postorder(tree))


def inverse_pre_word(lab: NaturalLabelling) -> Word:
    """sigma with sigma(k) = pre-order position of label k; position k is
    underlined when the edge labelled k carries a dot."""
    tree = lab.tree
    lm = lab.label_map()
    pos = {lm[e]: i + 1 for i, e in enumerate(tree.preorder())}
    e_of = {v: e for e, v in lm.items()}
    return tuple(
        (pos[k], e_of[k] in tree.dotted) for k in range(1, tree.n_edges + 1)
    )


def inv_word(word: Word) -> int:
    """Inversions of an underlined word: plain inversions count once,
    inversions touching an underlined position count twice."""
    total = 0
    for i in range(len(word)):
        vi, ui = word[i]
        for j in range(i + 1, len(word)):
            vj, uj = word[j]
            if vi > vj:
                total += 2 if (ui or uj) else 1
    return total


# -- the p-sequence of a labelling -----------------------------------------------


def p_sequence(lab: NaturalLabelling) -> Word:
    """The adjusted step sequence driving the growth bijection.

    p'_k = 2|T_e| - |S_e| + 1 for the edge labelled k, where S_e is the
    root chain through e and T_e counts smaller labels appearing to the left
    of k in the pre-order word; the mini-word correction m_k is added.
    Entries at dotted edges are underlined.
    """
    tree = lab.tree
    lm = lab.label_map()
    e_total = tree.n_edges
    pre = [v for v, _ in pre_word(lab)]
    pos_in_pre = {v: i for i, v in enumerate(pre)}
    e_of = {v: e for e, v in lm.items()}

    def root_chain(e: int) -> list[int]:
        out = []
        while e != 0:
            out.append(e)
            e = tree.parent[e]
        return out

    pprime: list[int] = []
    for k in range(1, e_total + 1):
        e = e_of[k]
        s_e = len(root_chain(e))
        t_e = sum(1 for v in range(1, k) if pos_in_pre[v] < pos_in_pre[k])
        pprime.append(2 * t_e - s_e + 1)

    aprime = mini_word_tops(pprime, e_total)
    m = []
    for k in range(1, e_total + 1):
        e = e_of[k]
        chain = set(root_chain(e))
        cnt = 0
        for j in range(1, e_total + 1):
            if (
                e_of[j] in chain
                and e_of[j] in tree.dotted
                and aprime[j - 1] < aprime[k - 1]
            ):
                cnt += 1
        m.append(cnt)

    return tuple(
        (pprime[k - 1] + m[k - 1], e_of[k] in tree.dotted)
        for k in range(1, e_total + 1)
    )


def mini_word_tops(pprime: Sequence[int], e_total: int) -> list[int]:
    """a'_k: pair off [1..2E] from k = E downward, taking the (p'_k+1)-th
    smallest remaining element against the current maximum."""
    s = list(range(1, 2 * e_total + 1))
    a = [0] * e_total
    for k in range(e_total, 0, -1):
        idx = pprime[k - 1]
        if idx < 0 or idx >= len(s) - 1:
            raise TreeError("p-sequence entry out of range")
        a[k - 1] = s.pop(idx)
        s.pop()  # the maximum pairs with it
    return a


def word_text(word: Word) -> str:
    """Comma list with a trailing underscore on underlined entries."""
    return ",".join(f"{v}_" if u else str(v) for v, u in word)


def word_from_text(text: str) -> Word:
    out = []
    if not text:
        return ()
    for part in text.split(","):
        part = part.strip()
        if part.endswith("_"):
            out.append((int(part[:-1]), True))
        else:
            out.append((int(part), False))
    return tuple(out)
