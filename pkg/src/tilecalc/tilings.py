"""Ribbon tiles, cover-inclusive tilings and their exhaustive enumeration.

This is the brute-force oracle for every product formula in the package:
a tiling is a partition of the region between two paths into ribbons whose
centers form a Dyck path (kind ``dyck``) or a ballot path (kinds ``bi`` and
``biii``), subject to the cover-inclusive condition and the per-kind anchor
and parity rules.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .paths import (
    Path,
    SkewRegion,
    all_words,
    as_path,
    ballot_paths,
    dyck_paths,
    is_above,
    is_dyck,
    skew_region,
)
from .qpoly import LaurentPoly

KINDS = ("dyck", "bi", "biii")


@dataclass(frozen=True)
class Tile:
    """A ribbon: boxes at consecutive x whose centers trace a lattice path."""

    boxes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        xs = [b[0] for b in self.boxes]
        assert xs == list(range(xs[0], xs[0] + len(xs))), "ribbon boxes must have consecutive x"

    @property
    def rise(self) -> int:
        """n': the height gained by the center path (0 for a Dyck tile)."""
        return self.boxes[-1][1] - self.boxes[0][1]

    @property
    def down_steps(self) -> int:
        """n: the number of descents of the center path; length is (2n, n')."""
        return sum(
            1
            for a, b in zip(self.boxes, self.boxes[1:])
            if b[1] < a[1]
        )

    @property
    def shape_class(self) -> tuple[int, int]:
        return (self.down_steps, self.rise)

    def is_dyck_tile(self) -> bool:
        base = self.boxes[0][1]
        run = 0
        for a, b in zip(self.boxes, self.boxes[1:]):
            run += 1 if b[1] > a[1] else -1
            if run < 0:
                return False
        return run == 0

    def is_ballot_tile(self) -> bool:
        base = self.boxes[0][1]
        return all(b[1] >= base for b in self.boxes)

    def translated_down(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y - 2) for x, y in self.boxes)


@dataclass(frozen=True)
class Tiling:
    region: SkewRegion
    tiles: tuple[Tile, ...]
    kind: str

    @property
    def lower(self) -> Path:
        return self.region.lower

    @property
    def upper(self) -> Path:
        return self.region.upper

    def canonical_key(self):
        return (
            self.lower.steps,
            self.upper.steps,
            tuple(sorted(t.boxes for t in self.tiles)),
        )

    def to_json(self) -> dict:
        st = stats(self)
        return {
            "lower": self.lower.steps,
            "upper": self.upper.steps,
            "kind": self.kind,
            "tiles": [[list(b) for b in t.boxes] for t in sorted(self.tiles, key=lambda t: t.boxes)],
            "stats": {"area": st.area, "tiles": st.tiles, "tiles2": st.tiles2, "art": st.art},
        }


@dataclass(frozen=True)
class TilingStats:
    area: int
    tiles: int
    tiles2: int
    art: int


class TilingError(ValueError):
    pass


def _tile_anchored(tile: Tile, region: SkewRegion) -> bool:
    return tile.boxes[-1] in region.anchors


def stats(t: Tiling) -> TilingStats:
    """Integer statistics of a tiling, per its kind's conventions."""
    region = t.region
    if t.kind == "dyck":
        area = sum(len(tile.boxes) for tile in t.tiles)
        tiles = len(t.tiles)
        art2 = area + tiles
        if art2 % 2:
            raise TilingError("non-integer art statistic")
        return TilingStats(area, tiles, 0, art2 // 2)
    if t.kind == "bi":
        area = 0
        tiles = 0
        tiles2 = 0
        art = 0
        for tile in t.tiles:
            n, nprime = tile.shape_class
            boxes = len(tile.boxes)
            area += boxes
            if nprime == 0:
                tiles += 1
                art += n + 1
            else:
                if (2 * n + 1 + nprime) % 2:
                    raise TilingError("non-integer art for a ballot tile")
                art += (2 * n + 1 + nprime) // 2
            if _tile_anchored(tile, region):
                tiles2 += 1
        return TilingStats(area, tiles, tiles2, art)
    if t.kind == "biii":
        area = 0
        tiles = len(t.tiles)
        tiles2 = 0
        art = 0
        for tile in t.tiles:
            n, _ = tile.shape_class
            area += 2 * n + 1
            if _tile_anchored(tile, region):
                tiles2 += 1
                art += n
            else:
                art += n + 1
        return TilingStats(area, tiles, tiles2, art)
    raise TilingError(f"unknown tiling kind {t.kind!r}")


# -- validation ----------------------------------------------------------------


def is_cover_inclusive(tiles: Iterable[Tile], lower: Path) -> bool:
    """Each tile moved down one row lies below the lower path or in one tile."""
    tiles = list(tiles)
    box_owner: dict[tuple[int, int], int] = {}
    for idx, t in enumerate(tiles):
        for b in t.boxes:
            box_owner[b] = idx
    for idx, t in enumerate(tiles):
        shifted = t.translated_down()
        if all(y < lower.heights[x] for x, y in shifted):
            continue
        owners = {box_owner.get(b, -1) for b in shifted}
        if len(owners) == 1 and -1 not in owners and owners != {idx}:
            continue
        return False
    return True


def validate(t: Tiling, warnings: list[str] | None = None) -> None:
    """Raise TilingError when t breaks any structural rule of its kind.

    Optional BI pairing diagnostics (whether the even multiset of anchored
    tiles of each shape splits into vertically stacked pairs) are appended to
    ``warnings`` instead of failing.
    """
    region = t.region
    covered: set[tuple[int, int]] = set()
    for tile in t.tiles:
        for b in tile.boxes:
            if b not in region.boxes:
                raise TilingError(f"box {b} outside the region")
            if b in covered:
                raise TilingError(f"box {b} covered twice")
            covered.add(b)
    if covered != set(region.boxes):
        raise TilingError("tiles do not cover the region")
    for tile in t.tiles:
        if t.kind == "dyck":
            if not tile.is_dyck_tile():
                raise TilingError(f"non-Dyck tile {tile.boxes}")
        else:
            if not tile.is_ballot_tile():
                raise TilingError(f"non-ballot tile {tile.boxes}")
            if tile.rise >= 1 and not _tile_anchored(tile, region):
                raise TilingError("rising ballot tile not ending on an anchor box")
    if not is_cover_inclusive(t.tiles, region.lower):
        raise TilingError("tiling is not cover-inclusive")
    if t.kind == "bi":
        counts: dict[tuple[int, int], int] = {}
        for tile in t.tiles:
            n, nprime = tile.shape_class
            if nprime:
                counts[(n, nprime)] = counts.get((n, nprime), 0) + 1
        for (n, nprime), c in counts.items():
            if nprime % 2 == 0 and nprime > 0:
                raise TilingError(f"ballot tile with even positive rise {nprime}")
            if nprime % 2 and c % 2:
                raise TilingError(f"odd number of ballot tiles of shape {(2*n, nprime)}")
        if warnings is not None:
            _check_stacked_pairs(t, warnings)


def _check_stacked_pairs(t: Tiling, warnings: list[str]) -> None:
    groups: dict[tuple[int, int], list[Tile]] = {}
    for tile in t.tiles:
        if tile.rise:
            groups.setdefault(tile.shape_class, []).append(tile)
    for shape, tiles in groups.items():
        rest = sorted(tiles, key=lambda t: t.boxes)
        ok = True
        while rest:
            a = rest.pop(0)
            mate = None
            for b in rest:
                if all(
                    (bx == ax and by == ay + 2)
                    for (ax, ay), (bx, by) in zip(a.boxes, b.boxes)
                ):
                    mate = b
                    break
            if mate is None:
                ok = False
                break
            rest.remove(mate)
        if not ok:
            warnings.append(
                f"ballot tiles of shape {shape} are even in number but not vertically stacked"
            )


# -- enumeration ----------------------------------------------------------------


def _candidate_tiles(
    start: tuple[int, int],
    free: set[tuple[int, int]],
    region: SkewRegion,
    kind: str,
) -> Iterator[Tile]:
    """All ribbons starting at ``start`` inside ``free`` that the kind allows."""
    path: list[tuple[int, int]] = [start]

    def rec():
        x, y = path[-1]
        base = path[0][1]
        rise = y - base
        if rise == 0:
            yield Tile(tuple(path))
        elif kind != "dyck" and (x, y) in region.anchors:
            if kind == "biii" or rise % 2 == 1:
                yield Tile(tuple(path))
        for dy in (1, -1):
            nxt = (x + 1, y + dy)
            if nxt in free and nxt[1] >= base:
                path.append(nxt)
                yield from rec()
                path.pop()

    yield from rec()


def _enumerate_fixed(region: SkewRegion, kind: str) -> Iterator[tuple[Tile, ...]]:
    boxes = sorted(region.boxes)

    def first_free(free: set, start_idx: int) -> int:
        for i in range(start_idx, len(boxes)):
            if boxes[i] in free:
                return i
        return -1

    def rec(free: set, placed: list[Tile], scan: int) -> Iterator[tuple[Tile, ...]]:
        i = first_free(free, scan)
        if i < 0:
            yield tuple(placed)
            return
        start = boxes[i]
        for tile in _candidate_tiles(start, free, region, kind):
            if not _cover_ok(tile, placed, region.lower):
                continue
            for b in tile.boxes:
                free.remove(b)
            placed.append(tile)
            yield from rec(free, placed, i)
            placed.pop()
            for b in tile.boxes:
                free.add(b)

    yield from rec(set(region.boxes), [], 0)


def _cover_ok(tile: Tile, placed: list[Tile], lower: Path) -> bool:
    shifted = tile.translated_down()
    if all(y < lower.heights[x] for x, y in shifted):
        return True
    for other in placed:
        ob = set(other.boxes)
        if all(b in ob for b in shifted):
            return True
    return False


def enumerate_tilings(
    lower: Path | str,
    upper: Path | str | None,
    kind: str,
    lower_domain: str = "auto",
) -> list[Tiling]:
    """All cover-inclusive tilings of the given kind, deterministically ordered.

    ``upper=None`` means the upper path ranges over every word above the
    lower path.  ``lower=None`` is expressed by passing ``upper`` and calling
    :func:`enumerate_tilings_upper` instead.
    """
    if kind not in KINDS:
        raise TilingError(f"unknown kind {kind!r}")
    lower = as_path(lower)
    shifted = kind != "dyck"
    results: list[Tiling] = []
    if upper is None:
        if kind == "dyck":
            pool: Iterable[Path] = dyck_paths(len(lower))
        else:
            pool = all_words(len(lower))
        uppers: Iterable[Path] = (mu for mu in pool if is_above(mu, lower))
    else:
        up = as_path(upper)
        if len(up) != len(lower) or not is_above(up, lower):
            return []
        uppers = [up]
    for mu in uppers:
        region = skew_region(lower, mu, shifted=shifted)
        for tiles in _enumerate_fixed(region, kind):
            t = Tiling(region, tiles, kind)
            if kind == "bi" and not _bi_parity_ok(tiles):
                continue
            results.append(t)
    results.sort(key=lambda t: t.canonical_key())
    return results


def _bi_parity_ok(tiles: tuple[Tile, ...]) -> bool:
    counts: dict[tuple[int, int], int] = {}
    for tile in tiles:
        n, nprime = tile.shape_class
        if nprime:
            if nprime % 2 == 0:
                return False
            counts[(n, nprime)] = counts.get((n, nprime), 0) + 1
    return all(c % 2 == 0 for c in counts.values())


def enumerate_tilings_upper(
    upper: Path | str,
    kind: str,
    lower_domain: str = "dyck",
    same_endpoint: bool = False,
) -> list[Tiling]:
    """All tilings with a fixed upper path.

    ``lower_domain`` selects the family the lower path ranges over:
    ``"dyck"`` (Dyck paths) or ``"ballot"`` (ballot paths).  With
    ``same_endpoint`` the lower paths must end at the upper path's height.
    """
    upper = as_path(upper)
    n = len(upper)
    if lower_domain == "dyck":
        lowers: Iterable[Path] = dyck_paths(n)
    elif lower_domain == "ballot":
        lowers = ballot_paths(n)
    else:
        raise TilingError(f"unknown lower domain {lower_domain!r}")
    shifted = kind != "dyck"
    results: list[Tiling] = []
    for lam in lowers:
        if same_endpoint and lam.end_height != upper.end_height:
            continue
        if not is_above(upper, lam):
            continue
        region = skew_region(lam, upper, shifted=shifted)
        for tiles in _enumerate_fixed(region, kind):
            if kind == "bi" and not _bi_parity_ok(tiles):
                continue
            results.append(Tiling(region, tiles, kind))
    results.sort(key=lambda t: t.canonical_key())
    return results


# -- brute-force generating functions ---------------------------------------------


def _weight(t: Tiling, stat: str) -> LaurentPoly:
    st = stats(t)
    if stat == "art":
        return LaurentPoly.q(st.art)
    if stat == "tiles":
        return LaurentPoly.q(st.tiles)
    if stat == "art_tiles2":
        return LaurentPoly.monomial(1, st.art, st.tiles2)
    raise TilingError(f"unknown statistic {stat!r}")


def genfun_bruteforce(
    lower: Path | str | None,
    upper: Path | str | None,
    kind: str,
    stat: str,
    lower_domain: str = "dyck",
    same_endpoint: bool = False,
) -> LaurentPoly:
    """Sum the requested monomial over an exhaustive enumeration."""
    if lower is not None:
        tilings = enumerate_tilings(lower, upper, kind)
    elif upper is not None:
        tilings = enumerate_tilings_upper(
            upper, kind, lower_domain=lower_domain, same_endpoint=same_endpoint
        )
    else:
        raise TilingError("at least one of lower/upper must be fixed")
    out = LaurentPoly.zero()
    for t in tilings:
        out = out + _weight(t, stat)
    return out
