"""Hermite histories for Dyck and ballot tilings, and the integer arrays
connecting them to capacity-bounded tree labellings.

A history labels the steps of one boundary path by the number of tiles a
non-intersecting lattice path travels through.  Type I lives on the up steps
of the upper path, type II on the up steps of the lower path, type III on the
down steps of the upper path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .paths import Path, as_path, highest_path, matched_pairs, skew_region, zigzag
from .qpoly import LaurentPoly
from .tilings import Tile, Tiling, enumerate_tilings, stats
from .trees import PlaneTree, build_tree


class HistoryError(ValueError):
    pass


@dataclass(frozen=True)
class HermiteHistory:
    path: Path
    labels: tuple[tuple[int, int], ...]  # (step index, label), every carrier step
    flavor: str  # "I", "II" or "III"

    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    def values(self) -> list[int]:
        return [v for _, v in self.labels]

    def total(self) -> int:
        return sum(v for _, v in self.labels)

    def to_json(self) -> dict:
        return {
            "path": self.path.steps,
            "flavor": self.flavor,
            "labels": {str(k): v for k, v in self.labels},
        }


# -- extracting histories from tilings ---------------------------------------------


def _chains(t: Tiling) -> dict[int, list[Tile]]:
    """Type-I chains: up step of the upper path -> tiles travelled."""
    entry: dict[tuple[int, int], Tile] = {}
    for tile in t.tiles:
        x0, y0 = tile.boxes[0]
        entry[(x0 - 1, y0)] = tile  # northwest edge of the leftmost box
    mu = t.upper
    out: dict[int, list[Tile]] = {}
    for k in mu.up_positions():
        cur = (k, mu.heights[k])
        chain = []
        while cur in entry:
            tile = entry[cur]
            chain.append(tile)
            x1, y1 = tile.boxes[-1]
            cur = (x1, y1 - 1)  # exit: southeast edge of the rightmost box
        out[k] = chain
    return out


def tiling_to_history(t: Tiling, flavor: str) -> HermiteHistory:
    """Read off the Hermite history of the requested flavor.

    Rising ballot tiles contribute zero to type-I labels, matching the tiles
    statistic of ballot tilings.
    """
    if flavor == "I":
        chains = _chains(t)
        labels = tuple(
            (k, sum(1 for tile in chains[k] if tile.rise == 0))
            for k in t.upper.up_positions()
        )
        return HermiteHistory(t.upper, labels, "I")
    if flavor == "II":
        if t.kind != "dyck":
            raise HistoryError("type II histories are defined for Dyck tilings")
        lam = t.lower
        chains = _chains(t)
        label = {k: 0 for k in lam.up_positions()}
        for k, chain in chains.items():
            if not chain:
                continue
            x1, y1 = chain[-1].boxes[-1]
            c = x1
            if c >= len(lam) or lam.steps[c] != "U":
                raise HistoryError("chain exit not above an up step of the lower path")
            drop = y1 - 1 - lam.heights[c]
            if drop < 0 or drop % 2:
                raise HistoryError("chain exit misaligned with the lower path")
            if label[c]:
                raise HistoryError("two chains over one up step")
            label[c] = sum(tile.down_steps + 1 for tile in chain)
        return HermiteHistory(lam, tuple(sorted(label.items())), "II")
    if flavor == "III":
        if t.kind != "dyck":
            raise HistoryError("type III histories are defined for Dyck tilings")
        entry: dict[tuple[int, int], Tile] = {}
        for tile in t.tiles:
            entry[tile.boxes[-1]] = tile
        mu = t.upper
        labels = []
        for k in mu.down_positions():
            cur = (k, mu.heights[k] - 1)
            cnt = 0
            while cur in entry:
                tile = entry[cur]
                cnt += 1
                x0, y0 = tile.boxes[0]
                cur = (x0 - 1, y0 - 1)  # exit through the southwest edge
            labels.append((k, cnt))
        return HermiteHistory(mu, tuple(labels), "III")
    raise HistoryError(f"unknown flavor {flavor!r}")


def history_label_ranges(h: HermiteHistory) -> bool:
    """Check the per-step label bounds of each flavor."""
    p = h.path
    for k, v in h.labels:
        if h.flavor == "I":
            hgt = p.heights[k + 1]
            if not 0 <= v <= hgt - 1:
                return False
        elif h.flavor == "II":
            n_u = p.steps[:k].count("D")
            if not 0 <= v <= n_u:
                return False
        else:
            hgt = p.heights[k]
            if not 0 <= v <= hgt - 1:
                return False
    return True


# -- the constructive inverse for type I --------------------------------------------


def history_to_tiling(h: HermiteHistory, kind: str = "dyck") -> Tiling:
    """Rebuild the tiling from a history; the type-I map is constructive.

    Type III inverts through the left-right mirror of the type-I walk; the
    type-II inverse searches the enumeration for the matching label vector.
    """
    if h.flavor == "I" and kind == "dyck":
        return _type_i_inverse(h.path, h.label_map())
    if h.flavor == "III" and kind == "dyck":
        mirror = h.path.reversed_mirror()
        n = len(h.path)
        lm = {n - 1 - k: v for k, v in h.labels}
        t = _type_i_inverse(mirror, lm)
        return _mirror_tiling(t)
    if h.flavor == "II" and kind == "dyck":
        for t in enumerate_tilings(h.path, None, "dyck"):
            if tiling_to_history(t, "II") == h:
                return t
        raise HistoryError("no tiling realizes this type II history")
    if h.flavor == "I" and kind == "bi":
        for t in enumerate_tilings_upper_bi(h.path):
            if tiling_to_history(t, "I") == h:
                return t
        raise HistoryError("no ballot tiling realizes this type I history")
    raise HistoryError(f"unsupported flavor/kind pair {h.flavor}/{kind}")


def enumerate_tilings_upper_bi(mu: Path):
    from .tilings import enumerate_tilings_upper

    return enumerate_tilings_upper(mu, "bi", lower_domain="ballot")


def _type_i_inverse(mu: Path, label: dict[int, int]) -> Tiling:
    n = len(mu)
    region = skew_region(zigzag(n), mu, shifted=False)
    for k, v in label.items():
        if mu.steps[k] != "U":
            raise HistoryError(f"label on a down step at {k}")
        if not 0 <= v <= mu.heights[k + 1] - 1:
            raise HistoryError(f"label {v} out of range at step {k}")
    covered: set[tuple[int, int]] = set()
    placed: list[Tile] = []

    def free(b: tuple[int, int]) -> bool:
        return b in region.boxes and b not in covered

    for k in reversed(mu.up_positions()):
        pos = (k + 1, mu.heights[k])
        for _ in range(label.get(k, 0)):
            if not free(pos):
                raise HistoryError(f"walk start {pos} blocked; no preimage")
            boxes = [pos]
            while True:
                x, y = boxes[-1]
                ne = (x + 1, y + 1)
                if free(ne):
                    boxes.append(ne)
                elif y == boxes[0][1]:
                    break
                else:
                    dn = (x + 1, y - 1)
                    if not free(dn):
                        raise HistoryError("walk stuck; no preimage")
                    boxes.append(dn)
            tile = Tile(tuple(boxes))
            placed.append(tile)
            covered.update(boxes)
            bx, by = boxes[-1]
            pos = (bx + 1, by - 1)

    counts: dict[int, int] = {}
    for x, _ in covered:
        counts[x] = counts.get(x, 0) + 1
    heights = [mu.heights[x] - 2 * counts.get(x, 0) for x in range(n + 1)]
    steps = []
    for x in range(n):
        d = heights[x + 1] - heights[x]
        if d == 1:
            steps.append("U")
        elif d == -1:
            steps.append("D")
        else:
            raise HistoryError("covered boxes do not leave a lattice path")
    lam = Path("".join(steps))
    t = Tiling(skew_region(lam, mu, shifted=False), tuple(placed), "dyck")
    return t


def _mirror_tiling(t: Tiling) -> Tiling:
    n = len(t.lower)
    lam = t.lower.reversed_mirror()
    mu = t.upper.reversed_mirror()
    tiles = tuple(
        Tile(tuple(sorted((n - x, y) for x, y in tile.boxes)))
        for tile in t.tiles
    )
    return Tiling(skew_region(lam, mu, shifted=False), tiles, t.kind)


# -- integer arrays -----------------------------------------------------------------


@dataclass(frozen=True)
class ArrayShape:
    """Column layout of the integer arrays attached to a Dyck path."""

    lam: Path
    col_rows: tuple[tuple[int, int], ...]  # (top row, length) per column
    capacities: tuple[int, ...]
    parents: tuple[tuple[int, int] | None, ...]  # (column, offset in column)

    @property
    def n_cols(self) -> int:
        return len(self.col_rows)

    def cells(self) -> int:
        return sum(l for _, l in self.col_rows)


def array_shape(lam: Path | str) -> ArrayShape:
    lam = as_path(lam)
    tree = build_tree(lam, highest_path(len(lam)))
    cm = tree._children_map()
    caps = tree.capacity_map()

    cols: list[list[int]] = []
    col_of: dict[int, tuple[int, int]] = {}

    def walk(e: int, depth: int, col: int | None):
        if col is None:
            cols.append([])
            col = len(cols) - 1
        cols[col].append(e)
        col_of[e] = (col, len(cols[col]) - 1)
        kids = cm[e]
        for i, k in enumerate(kids):
            walk(k, depth + 1, col if i == 0 else None)

    for i, r in enumerate(cm[0]):
        walk(r, 1, None)

    depth = {}
    for e in tree.preorder():
        depth[e] = depth.get(tree.parent[e], 0) + 1

    col_rows = []
    capacities = []
    parents: list[tuple[int, int] | None] = []
    for col in cols:
        col_rows.append((depth[col[0]], len(col)))
        capacities.append(caps[col[-1]])
        par_edge = tree.parent[col[0]]
        parents.append(col_of[par_edge] if par_edge else None)
    return ArrayShape(lam, tuple(col_rows), tuple(capacities), tuple(parents))


IntArray = tuple[tuple[int, ...], ...]


def array_total(arr: IntArray) -> int:
    return sum(sum(col) for col in arr)


def in_m(shape: ArrayShape, arr: IntArray) -> bool:
    """Columns weakly increase downward and end at most at their capacity."""
    for c, col in enumerate(arr):
        if len(col) != shape.col_rows[c][1]:
            return False
        if any(a > b for a, b in zip(col, col[1:])):
            return False
        if col and col[-1] > shape.capacities[c]:
            return False
        if any(v < 0 for v in col):
            return False
    return True


def in_m_ls(shape: ArrayShape, arr: IntArray) -> bool:
    """Additionally, each column's top dominates its parent cell."""
    if not in_m(shape, arr):
        return False
    for j in range(shape.n_cols):
        par = shape.parents[j]
        if par is not None:
            i, off = par
            if arr[i][off] > arr[j][0]:
                return False
    return True


def _between_cells(shape: ArrayShape, i: int, j: int) -> int:
    return sum(shape.col_rows[c][1] for c in range(i + 1, j))


def hh_discrepant_columns(shape: ArrayShape, arr: IntArray) -> list[int]:
    """Columns whose bottom entry exceeds the reachable bound.

    Column j with parent cell in column i is discrepant when
    bottom(i) + p + q < bottom(j), p counting the cells of column i strictly
    below the parent cell and q the cells of the columns in between.
    """
    out = []
    for j in range(shape.n_cols):
        par = shape.parents[j]
        if par is None:
            continue
        i, off = par
        p = shape.col_rows[i][1] - (off + 1)
        q = _between_cells(shape, i, j)
        if arr[i][-1] + p + q < arr[j][-1]:
            out.append(j)
    return out


def in_m_hh(shape: ArrayShape, arr: IntArray) -> bool:
    return in_m(shape, arr) and not hh_discrepant_columns(shape, arr)


def ls_discrepant_columns(shape: ArrayShape, arr: IntArray) -> list[int]:
    out = []
    for j in range(shape.n_cols):
        par = shape.parents[j]
        if par is None:
            continue
        i, off = par
        if arr[i][off] > arr[j][0]:
            out.append(j)
    return out


def enumerate_m(shape: ArrayShape) -> Iterator[IntArray]:
    """All arrays of M: per-column sorted chains bounded by the capacity."""

    def columns(c: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if c == shape.n_cols:
            yield ()
            return
        _, length = shape.col_rows[c]
        cap = shape.capacities[c]

        def chains(k: int, low: int) -> Iterator[tuple[int, ...]]:
            if k == 0:
                yield ()
                return
            for v in range(low, cap + 1):
                for rest in chains(k - 1, v):
                    yield (v,) + rest

        for col in chains(length, 0):
            for rest in columns(c + 1):
                yield (col,) + rest

    yield from columns(0)


def array_from_history(h: HermiteHistory) -> IntArray:
    """Fill the array shape column by column, bottom to top, from type II."""
    if h.flavor != "II":
        raise HistoryError("arrays are filled from type II histories")
    shape = array_shape(h.path)
    vals = h.values()
    arr = []
    pos = 0
    for _, length in shape.col_rows:
        chunk = vals[pos : pos + length]
        pos += length
        arr.append(tuple(reversed(chunk)))
    if pos != len(vals):
        raise HistoryError("label count does not match the array shape")
    return tuple(arr)


def history_from_array(lam: Path | str, arr: IntArray) -> HermiteHistory:
    lam = as_path(lam)
    shape = array_shape(lam)
    vals: list[int] = []
    for col in arr:
        vals.extend(reversed(col))
    ups = lam.up_positions()
    if len(vals) != len(ups):
        raise HistoryError("array size does not match the path")
    return HermiteHistory(lam, tuple(zip(ups, vals)), "II")


def m_hh_oracle(lam: Path | str) -> set[IntArray]:
    """The arrays realized by actual Dyck tilings with lower path lam."""
    lam = as_path(lam)
    out = set()
    for t in enumerate_tilings(lam, None, "dyck"):
        out.add(array_from_history(tiling_to_history(t, "II")))
    return out


# -- the discrepancy-resolving maps -------------------------------------------------


class MapError(ValueError):
    pass


def _phi(shape: ArrayShape, col: int, value: int) -> int:
    return shape.capacities[col] - value


def omega(shape: ArrayShape, arr: IntArray) -> IntArray:
    """Resolve the LS discrepancy of smallest slack, rotating values leftward.

    The target column minimizes cap - top among the discrepant columns (the
    largest index on ties); this is the selection inverse to sigma's.
    """
    dis = ls_discrepant_columns(shape, arr)
    if not dis:
        raise MapError("nothing to resolve")
    best = min(_phi(shape, j, arr[j][0]) for j in dis)
    j = max(jj for jj in dis if _phi(shape, jj, arr[jj][0]) == best)
    i, off = shape.parents[j]
    x = list(arr[i])
    y = list(arr[j])
    n = len(x)
    p = n - (off + 1)
    q = _between_cells(shape, i, j)
    y1 = y[0]
    a = next(k for k in range(n) if x[k] > y1)  # 0-based insertion slot
    moved = x[a + p]
    new_i = x[:a] + [y1] + [v - 1 for v in x[a : a + p]] + x[a + p + 1 :]
    new_j = y[1:] + [moved + p + q]
    out = list(arr)
    out[i] = tuple(new_i)
    out[j] = tuple(new_j)
    for c in range(i + 1, j):
        if any(v < 1 for v in arr[c]):
            if arr[c]:
                raise MapError("between column cannot be decremented")
        out[c] = tuple(v - 1 for v in arr[c])
    return tuple(out)


def sigma(shape: ArrayShape, arr: IntArray) -> IntArray:
    """Resolve the shallowest Hh discrepancy; inverse to omega."""
    dis = hh_discrepant_columns(shape, arr)
    if not dis:
        raise MapError("nothing to resolve")
    best = min(_phi(shape, j, arr[j][-1]) for j in dis)
    j = min(jj for jj in dis if _phi(shape, jj, arr[jj][-1]) == best)
    i, off = shape.parents[j]
    x = list(arr[i])
    y = list(arr[j])
    n = len(x)
    p = n - (off + 1)
    q = _between_cells(shape, i, j)
    ym = y[-1]
    if ym - p - q <= x[-1]:
        raise MapError("column is not Hh-discrepant after all")
    new_i = x[: n - p - 1] + [v + 1 for v in x[n - p :]] + [ym - p - q]
    new_j = [x[n - p - 1]] + y[:-1]
    out = list(arr)
    out[i] = tuple(new_i)
    out[j] = tuple(new_j)
    for c in range(i + 1, j):
        out[c] = tuple(v + 1 for v in arr[c])
    return tuple(out)


def omega_pow(shape: ArrayShape, arr: IntArray) -> tuple[IntArray, int]:
    """Apply omega until the array satisfies the LS conditions."""
    r = 0
    cur = arr
    while not in_m_ls(shape, cur):
        cur = omega(shape, cur)
        r += 1
        if r > 10_000:
            raise MapError("omega does not terminate")
    return cur, r


def sigma_pow(shape: ArrayShape, arr: IntArray, r: int) -> IntArray:
    cur = arr
    for _ in range(r):
        cur = sigma(shape, cur)
    return cur


# -- lower paths from matching statistics (ballot histories) ------------------------


def ballot_history_from_sequence(
    mu: Path | str,
    p: Sequence[int],
    which: str = "nes",
    source: str = "pm_prime",
) -> tuple[HermiteHistory, Path]:
    """Rebuild the history and the lower path from a per-step sequence.

    ``which`` chooses the statistic the sequence came from (``nes`` labels
    live on up steps, ``cr`` on down steps for the restricted matchings);
    ``source`` is ``pm_prime`` for restricted matchings or ``pm`` for the
    dashed-arc variant whose leftward-moved pairs flip to D's.
    """
    mu = as_path(mu)
    if len(p) != len(mu):
        raise HistoryError("sequence length must match the path")
    word = list(mu.steps)

    if source == "pm_prime" and which == "nes":
        _rewrite_nes_prime(mu, word, p)
        carriers = mu.up_positions()
        flavor = "I"
    elif source == "pm_prime" and which == "cr":
        _rewrite_cr_prime(mu, word, p)
        carriers = mu.down_positions()
        flavor = "III"
    elif source == "pm":
        _rewrite_pm(mu, word, p)
        carriers = mu.up_positions()
        flavor = "I"
    else:
        raise HistoryError(f"unknown source/statistic pair {source}/{which}")

    for k, v in enumerate(p):
        if v and k not in carriers:
            raise HistoryError(f"nonzero entry on a non-carrier step at {k}")
    hist = HermiteHistory(mu, tuple((k, p[k]) for k in carriers), flavor)
    return hist, Path("".join(word))


def _unpaired(word_slice: list[str]) -> tuple[list[int], list[int]]:
    stack = []
    downs = []
    for i, c in enumerate(word_slice):
        if c == "U":
            stack.append(i)
        elif stack:
            stack.pop()
        else:
            downs.append(i)
    return stack, downs


def _rewrite_nes_prime(mu: Path, word: list[str], p: Sequence[int]) -> None:
    for u in reversed(mu.up_positions()):
        n_i = p[u]
        if not n_i:
            continue
        tail = word[u + 1 :]
        ups, downs = _unpaired(tail)
        ms = [u] + [u + 1 + k for k in sorted(ups + downs)]
        if n_i >= len(ms):
            raise HistoryError("sequence entry exceeds the movable letters")
        old = list(word)
        for j in range(1, n_i + 1):
            word[ms[j - 1]] = old[ms[j]]
        word[ms[n_i]] = "U"


def _rewrite_cr_prime(mu: Path, word: list[str], p: Sequence[int]) -> None:
    for d in mu.down_positions():
        n_i = p[d]
        if not n_i:
            continue
        head = word[:d]
        ups, downs = _unpaired(head)
        ms = [d] + sorted(ups + downs, reverse=True)
        if n_i >= len(ms):
            raise HistoryError("sequence entry exceeds the movable letters")
        old = list(word)
        for j in range(1, n_i + 1):
            word[ms[j - 1]] = old[ms[j]]
        word[ms[n_i]] = "D"


def _rewrite_pm(mu: Path, word: list[str], p: Sequence[int]) -> None:
    for u in reversed(mu.up_positions()):
        n_i = p[u]
        if not n_i:
            continue
        base = u + 1
        tail = word[base:]
        ups, downs = _unpaired(tail)
        # dash the unpaired U's from the right; at most one lone U remains
        ups_sorted = sorted(ups)
        dashed_pairs: list[tuple[int, int]] = []
        rest = list(ups_sorted)
        while len(rest) >= 2:
            b = rest.pop()
            a = rest.pop()
            dashed_pairs.append((a, b))
        lone = rest[0] if rest else None
        unit: dict[int, int] = {}
        kind: dict[int, str] = {}
        for d0 in downs:
            unit[d0] = 1
            kind[d0] = "D"
        for a, b in dashed_pairs:
            unit[a] = 0
            unit[b] = 1
            kind[a] = "dash"
            kind[b] = "dash"
        if lone is not None:
            unit[lone] = 1
            kind[lone] = "lone"
        letters = sorted(unit)
        # extend with virtual unpaired D's until the units suffice
        virtual = 0
        total_units = sum(unit[k] for k in letters)
        while total_units < n_i:
            v = len(tail) + virtual
            letters.append(v)
            unit[v] = 1
            kind[v] = "D"
            virtual += 1
            total_units += 1
        acc = 0
        cut = 0
        for idx, k in enumerate(letters):
            acc += unit[k]
            if acc == n_i:
                cut = idx + 1
                break
        ms = [u] + [base + k for k in letters[:cut]]
        old = list(word) + ["D"] * virtual
        moved_from: dict[int, int] = {}
        for j in range(1, cut + 1):
            dst = ms[j - 1]
            src = ms[j]
            if dst < len(word):
                word[dst] = old[src]
                moved_from[src - base] = dst
        if ms[cut] < len(word):
            word[ms[cut]] = "U"
        for a, b in dashed_pairs:
            if a in moved_from and b in moved_from:
                for tgt in (moved_from[a], moved_from[b]):
                    if tgt < len(word):
                        word[tgt] = "D"
