"""Generalized perfect matchings and their crossing/nesting statistics.

A matching places solid arcs from each D to a distinct earlier U, dashes
pairs of leftover U's, and marks at most one leftover U with a diamond.
The statistics are sums of local contributions over configurations of two
features; the contribution tables differ between the restricted family, the
unrestricted family and the tree-labelling family, and are transcribed as
explicit pattern rules below.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .paths import Path, as_path
from .trees import NaturalLabelling, TreeError, mini_word_tops, pre_word


class MatchingError(ValueError):
    pass


@dataclass(frozen=True)
class GPMatching:
    """Arcs over 1..size; solid arcs join U to D, dashed arcs join two U's."""

    size: int
    solid: tuple[tuple[int, int], ...]
    dashed: tuple[tuple[int, int], ...]
    diamond: int | None = None

    def canonical(self):
        return (self.size, tuple(sorted(self.solid)), tuple(sorted(self.dashed)), self.diamond)

    def __hash__(self):
        return hash(self.canonical())

    def __eq__(self, other):
        return isinstance(other, GPMatching) and self.canonical() == other.canonical()

    def to_json(self) -> dict:
        return {
            "n": self.size,
            "solid": [list(a) for a in sorted(self.solid)],
            "dashed": [list(a) for a in sorted(self.dashed)],
            "diamond": self.diamond,
        }


def enumerate_pm_I(gamma: Path | str, restricted: bool = False) -> list[GPMatching]:
    """All type-I matchings of a ballot path; ``restricted`` keeps only those
    whose dashed arcs pairwise cross and whose diamond has no dashed arc to
    its right."""
    gamma = as_path(gamma)
    if gamma.min_height < 0:
        raise MatchingError(f"{gamma} is not a ballot path")
    ups = [i + 1 for i in gamma.up_positions()]
    downs = [i + 1 for i in gamma.down_positions()]
    out: list[GPMatching] = []

    def assign(d_idx: int, used: set[int], solid: list[tuple[int, int]]):
        if d_idx == len(downs):
            rest = [u for u in ups if u not in used]
            for dashed, diamond in _dash_options(rest):
                m = GPMatching(
                    len(gamma), tuple(solid), tuple(dashed), diamond
                )
                if not restricted or _restricted_ok(m):
                    out.append(m)
            return
        d = downs[d_idx]
        for u in ups:
            if u < d and u not in used:
                used.add(u)
                solid.append((u, d))
                assign(d_idx + 1, used, solid)
                solid.pop()
                used.remove(u)

    assign(0, set(), [])
    return sorted(out, key=lambda m: m.canonical())


def _dash_options(rest: Sequence[int]) -> Iterator[tuple[list[tuple[int, int]], int | None]]:
    rest = sorted(rest)
    if not rest:
        yield [], None
        return
    if len(rest) % 2:
        for i in range(len(rest)):
            others = rest[:i] + rest[i + 1 :]
            for pairs in _pairings(others):
                yield pairs, rest[i]
    else:
        for pairs in _pairings(rest):
            yield pairs, None


def _pairings(nodes: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not nodes:
        yield []
        return
    a = nodes[0]
    for i in range(1, len(nodes)):
        b = nodes[i]
        rest = [x for j, x in enumerate(nodes) if j not in (0, i)]
        for tail in _pairings(rest):
            yield [(a, b)] + tail


def _restricted_ok(m: GPMatching) -> bool:
    dashed = sorted(m.dashed)
    for i in range(len(dashed)):
        for j in range(i + 1, len(dashed)):
            (a, b), (c, d) = dashed[i], dashed[j]
            if not (a < c < b < d):  # anything but a crossing is forbidden
                return False
    if m.diamond is not None:
        for a, b in dashed:
            if b > m.diamond:
                return False
    return True


# -- the family built from tree labellings ------------------------------------------


def pm_II_from_labelling(lab: NaturalLabelling) -> GPMatching:
    """Mini-word construction: p' -> a' -> (a, b) -> arcs on 2E nodes."""
    tree = lab.tree
    if tree.arrows:
        raise MatchingError("the labelling family needs an arrow-free tree")
    e_total = tree.n_edges
    lm = lab.label_map()
    pre = [v for v, _ in pre_word(lab)]
    pos_in_pre = {v: i for i, v in enumerate(pre)}
    e_of = {v: e for e, v in lm.items()}

    def root_chain(e: int) -> set[int]:
        out = set()
        while e != 0:
            out.add(e)
            e = tree.parent[e]
        return out

    pprime = []
    for k in range(1, e_total + 1):
        e = e_of[k]
        s_e = len(root_chain(e))
        t_e = sum(1 for v in range(1, k) if pos_in_pre[v] < pos_in_pre[k])
        pprime.append(2 * t_e - s_e + 1)
    aprime = mini_word_tops(pprime, e_total)
    underl = [e_of[k] in tree.dotted for k in range(1, e_total + 1)]
    a = []
    for k in range(1, e_total + 1):
        chain = root_chain(e_of[k])
        m_k = sum(
            1
            for j in range(1, e_total + 1)
            if e_of[j] in chain and underl[j - 1] and aprime[j - 1] < aprime[k - 1]
        )
        a.append(aprime[k - 1] + m_k)
    used = set(a)
    b = [x for x in range(1, 2 * e_total + 1) if x not in used]
    if len(b) != e_total:
        raise MatchingError("mini-word rows are not disjoint")
    solid = []
    dashed = []
    for k in range(e_total):
        arc = (a[k], b[k]) if a[k] < b[k] else (b[k], a[k])
        if underl[k]:
            dashed.append(arc)
        else:
            solid.append(arc)
    return GPMatching(2 * e_total, tuple(solid), tuple(dashed), None)


def mini_word(lab: NaturalLabelling) -> tuple[tuple[int, ...], tuple[int, ...], tuple[bool, ...]]:
    """The two rows (a, b) and the underline flags of the mini-word."""
    m = pm_II_from_labelling(lab)
    arcs = [(arc, False) for arc in m.solid] + [(arc, True) for arc in m.dashed]
    arcs.sort(key=lambda t: t[0][1])  # the bottom row increases
    a = tuple(arc[0] for arc, _ in arcs)
    b = tuple(arc[1] for arc, _ in arcs)
    flags = tuple(f for _, f in arcs)
    return a, b, flags


# -- crossing and nesting ------------------------------------------------------------


def _relation(f: tuple[int, int], g: tuple[int, int]) -> str:
    """Relation of two arcs: 'nest' (g inside f), 'cross' (f opens first),
    or 'apart'; callers order the arguments."""
    (a, b), (c, d) = f, g
    if a < c and d < b:
        return "nest"
    if a < c < b < d:
        return "cross"
    return "apart"


def _pairs(m: GPMatching):
    for s in m.solid:
        yield s, "s"
    for d in m.dashed:
        yield d, "d"


def crossing_seq(m: GPMatching, table: str) -> list[int]:
    """Per-node crossing contributions for the requested family table."""
    p = [0] * (m.size + 1)
    feats = list(_pairs(m))
    if table == "pm_prime":
        for s in m.solid:
            for d in m.dashed:
                if _relation(s, d) == "nest":
                    p[s[1]] += 2
                elif _relation(s, d) == "cross" or _relation(d, s) == "cross":
                    p[s[1]] += 1
        for s in m.solid:
            for s2 in m.solid:
                if s < s2 and _relation(s, s2) == "cross":
                    p[s[1]] += 1
        if m.diamond is not None:
            for s in m.solid:
                if s[0] < m.diamond < s[1]:
                    p[s[1]] += 1
    elif table == "pm":
        for f, tf in feats:
            for g, tg in feats:
                if f == g:
                    continue
                rel = _relation(f, g)
                if tf == "d" and tg == "d" and rel == "nest":
                    p[g[0]] += 1
                    p[g[1]] += 1
                if tf == "d" and tg == "d" and f < g and rel == "cross":
                    p[f[1]] += 1
                if tf == "d" and tg == "s" and rel == "cross":
                    p[f[1]] += 1
                if tf == "s" and tg == "d" and rel == "nest":
                    p[g[0]] += 1
                    p[g[1]] += 1
                if tf == "s" and tg == "d" and rel == "cross":
                    p[g[0]] += 1
                if tf == "s" and tg == "s" and f < g and rel == "cross":
                    p[g[0]] += 1
        if m.diamond is not None:
            for f, tf in feats:
                if tf == "d" and f[0] < m.diamond < f[1]:
                    p[f[1]] += 1
                if tf == "d" and m.diamond < f[0]:
                    p[f[0]] += 1
                    p[f[1]] += 1
                if tf == "s" and m.diamond < f[0]:
                    p[f[0]] += 1
    else:
        raise MatchingError(f"no crossing table for {table!r}")
    return p[1:]


def nesting_seq(m: GPMatching, table: str) -> list[int]:
    """Per-node nesting contributions for the requested family table."""
    p = [0] * (m.size + 1)
    feats = list(_pairs(m))
    if table in ("pm_prime", "pm_ii"):
        for f, tf in feats:
            for g, tg in feats:
                if f == g:
                    continue
                rel = _relation(f, g)
                if tf == "s" and tg == "d" and rel == "nest":
                    p[g[0]] += 1
                    p[g[1]] += 1
                if tf == "d" and tg == "s" and rel == "nest":
                    p[g[0]] += 1
                if tf == "d" and tg == "s" and rel == "cross":
                    p[f[1]] += 1
                if tf == "s" and tg == "s" and rel == "nest":
                    p[g[0]] += 1
        if table == "pm_prime" and m.diamond is not None:
            for f, tf in feats:
                if tf == "s" and f[0] < m.diamond < f[1]:
                    p[m.diamond] += 1
    elif table == "pm":
        for f, tf in feats:
            for g, tg in feats:
                if f == g:
                    continue
                rel = _relation(f, g)
                if tf == "d" and tg == "d" and rel == "nest":
                    p[g[0]] += 1
                    p[g[1]] += 1
                if tf == "d" and tg == "d" and f < g and rel == "cross":
                    p[f[1]] += 1
                if tf == "d" and tg == "s" and rel == "cross":
                    p[f[1]] += 1
                if tf == "s" and tg == "d" and rel == "nest":
                    p[g[0]] += 1
                    p[g[1]] += 1
                if tf == "d" and tg == "s" and rel == "nest":
                    p[g[0]] += 1
                if tf == "s" and tg == "s" and rel == "nest":
                    p[g[0]] += 1
        if m.diamond is not None:
            for f, tf in feats:
                if tf == "d" and f[0] < m.diamond < f[1]:
                    p[f[1]] += 1
                if tf == "d" and m.diamond < f[0]:
                    p[f[0]] += 1
                    p[f[1]] += 1
                if tf == "s" and m.diamond < f[0]:
                    p[f[0]] += 1
    else:
        raise MatchingError(f"no nesting table for {table!r}")
    return p[1:]


def cr(m: GPMatching, table: str) -> int:
    return sum(crossing_seq(m, table))


def nes(m: GPMatching, table: str) -> int:
    return sum(nesting_seq(m, table))
