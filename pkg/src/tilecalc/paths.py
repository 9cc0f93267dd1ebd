"""Lattice paths over the step alphabet {U, D} and their derived views.

A path starts at the origin; U is the step (1,1) and D the step (1,-1).
Heights, chords, capacities, valleys and the diamond-coordinate regions
between two paths all live here.

Diamond coordinates: the unit box (rotated square) whose bottom vertex sits
at the lattice point (x, y-1) is identified by its center (x, y); centers
satisfy y != x (mod 2).  Translating a box "down one row" moves its center
by (0, -2).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


class PathError(ValueError):
    pass


class Path:
    """An immutable word over {U, D} with cached height profile."""

    __slots__ = ("steps", "heights")

    def __init__(self, steps: str):
        if any(c not in "UD" for c in steps):
            raise PathError(f"invalid step characters in {steps!r}")
        self.steps = steps
        h = [0]
        for c in steps:
            h.append(h[-1] + (1 if c == "U" else -1))
        self.heights = tuple(h)

    def __len__(self) -> int:
        return len(self.steps)

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            return self.steps == other
        return isinstance(other, Path) and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return f"Path({self.steps!r})"

    def __str__(self):
        return self.steps

    def __add__(self, other: "Path | str") -> "Path":
        other = as_path(other)
        return Path(self.steps + other.steps)

    def height(self, x: int) -> int:
        return self.heights[x]

    @property
    def end_height(self) -> int:
        return self.heights[-1]

    @property
    def min_height(self) -> int:
        return min(self.heights)

    def count(self, step: str) -> int:
        return self.steps.count(step)

    def up_positions(self) -> list[int]:
        return [i for i, c in enumerate(self.steps) if c == "U"]

    def down_positions(self) -> list[int]:
        return [i for i, c in enumerate(self.steps) if c == "D"]

    def reversed_mirror(self) -> "Path":
        """Left-right mirror image: reverse the word and swap U <-> D."""
        return Path("".join("U" if c == "D" else "D" for c in reversed(self.steps)))

    def to_json(self) -> dict:
        return {"steps": self.steps}


def as_path(p: "Path | str") -> Path:
    return p if isinstance(p, Path) else Path(p)


def is_dyck(p: Path | str) -> bool:
    p = as_path(p)
    return p.min_height >= 0 and p.end_height == 0


def is_ballot(p: Path | str) -> bool:
    return as_path(p).min_height >= 0


def is_above(p1: Path | str, p2: Path | str) -> bool:
    """True when p1 lies weakly above p2 (pointwise heights)."""
    p1, p2 = as_path(p1), as_path(p2)
    if len(p1) != len(p2):
        raise PathError("is_above requires equal lengths")
    return all(a >= b for a, b in zip(p1.heights, p2.heights))


def all_words(n: int) -> Iterator[Path]:
    """All 2^n paths of length n, in lexicographic order with U < D."""
    for mask in range(1 << n):
        yield Path("".join("D" if (mask >> (n - 1 - i)) & 1 else "U" for i in range(n)))


@lru_cache(maxsize=None)
def dyck_paths(n2: int) -> tuple[Path, ...]:
    """All Dyck paths of length n2 (an even number of steps)."""
    if n2 % 2:
        return ()
    return tuple(p for p in all_words(n2) if is_dyck(p))


@lru_cache(maxsize=None)
def ballot_paths(n: int) -> tuple[Path, ...]:
    return tuple(p for p in all_words(n) if is_ballot(p))


def highest_path(n: int) -> Path:
    return Path("U" * n)


def zigzag(n: int) -> Path:
    return Path("".join("U" if i % 2 == 0 else "D" for i in range(n)))


# -- chords ------------------------------------------------------------------


@dataclass(frozen=True)
class Chord:
    """A matched U-D pair of a Dyck path."""

    u_pos: int
    d_pos: int

    @property
    def length(self) -> int:
        """l(c): one plus the number of chords nested strictly inside."""
        return (self.d_pos - self.u_pos + 1) // 2


def chords(p: Path | str) -> list[tuple[Chord, int, int]]:
    """Matched U-D pairs of a Dyck path with their (length, height) stats.

    Returns a list of (chord, l, ht) sorted by u_pos.  ht(c) = i when the
    chord sits between the lines y = i-1 and y = i.
    """
    p = as_path(p)
    if not is_dyck(p):
        raise PathError(f"{p} is not a Dyck path")
    stack: list[int] = []
    out = []
    for i, c in enumerate(p.steps):
        if c == "U":
            stack.append(i)
        else:
            u = stack.pop()
            ch = Chord(u, i)
            out.append((ch, ch.length, p.heights[u] + 1))
    out.sort(key=lambda t: t[0].u_pos)
    return out


def matched_pairs(p: Path | str) -> tuple[list[tuple[int, int]], list[int], list[int]]:
    """Pair adjacent U-D steps repeatedly (operations (A)/(B)).

    Returns (pairs, unpaired_up_positions, unpaired_down_positions); pairs
    are (u_pos, d_pos) with every position used at most once.
    """
    p = as_path(p)
    stack: list[int] = []
    pairs = []
    un_down = []
    for i, c in enumerate(p.steps):
        if c == "U":
            stack.append(i)
        elif stack:
            pairs.append((stack.pop(), i))
        else:
            un_down.append(i)
    return pairs, stack, un_down


# -- capacities ---------------------------------------------------------------


def capacities(p: Path | str, p0: Path | str) -> list[int]:
    """Capacities of the leaf positions of p with respect to p0 >= p.

    One value per adjacent UD factor of p, plus one for the terminal U when p
    ends above zero, in left-to-right order.  The capacity attached at step
    index k (the U of the pair, or the terminal U) is
    ``#U(p0[0..k]) - #U(p[0..k])``.
    """
    p, p0 = as_path(p), as_path(p0)
    if len(p) != len(p0):
        raise PathError("capacities requires equal lengths")
    if not is_above(p0, p):
        raise PathError("reference path must lie above the path")
    prefix_u_p = [0]
    prefix_u_p0 = [0]
    for c in p.steps:
        prefix_u_p.append(prefix_u_p[-1] + (c == "U"))
    for c in p0.steps:
        prefix_u_p0.append(prefix_u_p0[-1] + (c == "U"))

    def cap_at(k: int) -> int:
        return prefix_u_p0[k + 1] - prefix_u_p[k + 1]

    out = []
    for k in range(len(p) - 1):
        if p.steps[k] == "U" and p.steps[k + 1] == "D":
            out.append(cap_at(k))
    if p.end_height > 0:
        term = terminal_up_position(p)
        if term is not None:
            out.append(cap_at(term))
    return out


def unmatched_up_positions(p: Path | str) -> list[int]:
    """Positions of the U steps with no matching D, left to right."""
    _, ups, _ = matched_pairs(as_path(p))
    return list(ups)


def terminal_up_position(p: Path | str) -> int | None:
    """The rightmost unmatched U (followed only by a balanced word)."""
    ups = unmatched_up_positions(p)
    return ups[-1] if ups else None


# -- valleys and the minimum-point decomposition ------------------------------


def valleys(p: Path | str) -> list[int]:
    """Vertex indices of the middle points of DU factors."""
    p = as_path(p)
    return [
        i + 1
        for i in range(len(p) - 1)
        if p.steps[i] == "D" and p.steps[i + 1] == "U"
    ]


def val_set(p: Path | str) -> list[int]:
    """The left-to-right recursive valley set; heights strictly decrease."""
    p = as_path(p)
    out: list[int] = []
    for v in valleys(p):
        if not out or p.heights[v] < p.heights[out[-1]]:
            out.append(v)
    return out


def minimum_point(p: Path | str) -> int | None:
    """The lowest (then leftmost) valley, i.e. the rightmost Val element."""
    p = as_path(p)
    vs = valleys(p)
    if not vs:
        return None
    best = min(vs, key=lambda v: (p.heights[v], v))
    chain = val_set(p)
    assert chain and chain[-1] == best
    return best


def decompose_at_minimum(p: Path | str) -> tuple[Path, Path]:
    """Split p = p1 o p2 at the minimum point; p2 is empty if no valley."""
    p = as_path(p)
    m = minimum_point(p)
    if m is None:
        return p, Path("")
    return Path(p.steps[:m]), Path(p.steps[m:])


# -- embeddings ---------------------------------------------------------------


def pad_to_ballot(p: Path | str) -> Path:
    """Prepend the minimal number of U steps making the word a ballot path."""
    p = as_path(p)
    return Path("U" * max(0, -p.min_height) + p.steps)


def pad_to_dyck(p: Path | str) -> Path:
    """Prepend U steps and append D steps minimally to reach a Dyck path."""
    q = pad_to_ballot(p)
    return Path(q.steps + "D" * q.end_height)


# -- regions between two paths -------------------------------------------------


@dataclass(frozen=True)
class SkewRegion:
    """The diamonds between a lower and an upper path of equal length.

    ``boxes`` is the set of centers (x, y) with h_lower(x) < y < h_upper(x)
    and y != x (mod 2), for 1 <= x <= N; the boxes on the line x = N are the
    anchor boxes (present only when the region is built as shifted).
    """

    lower: Path
    upper: Path
    boxes: frozenset[tuple[int, int]]
    anchors: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.lower)


def skew_region(lower: Path | str, upper: Path | str, shifted: bool = True) -> SkewRegion:
    """Boxes between two paths; anchors populated only for shifted regions."""
    lower, upper = as_path(lower), as_path(upper)
    if len(lower) != len(upper):
        raise PathError("region requires equal path lengths")
    if not is_above(upper, lower):
        raise PathError(f"upper path {upper} is not above lower path {lower}")
    n = len(lower)
    boxes = set()
    top_x = n if shifted else n - 1
    for x in range(1, top_x + 1):
        lo, hi = lower.heights[x], upper.heights[x]
        for y in range(lo + 1, hi):
            if (y - x) % 2:
                boxes.add((x, y))
    anchors = frozenset(b for b in boxes if b[0] == n) if shifted else frozenset()
    return SkewRegion(lower, upper, frozenset(boxes), anchors)
