"""Quad-tiled surfaces carrying arcs and curves.

Each tile is a unit square with sides numbered counter-clockwise
``0`` bottom, ``1`` right, ``2`` top, ``3`` left.  A point on side ``e`` has
a position ``t`` in ``(0, 1)`` measured counter-clockwise around its tile.
Gluings identify ``(A, e, t)`` with ``(B, f, 1 - t)``, which is the only
orientation-compatible choice, so every glued complex is oriented.

A path is a sequence of crossings of tiles, each a chord from an entry
point to an exit point.  Only the cyclic order of chord endpoints on a
tile's boundary matters: two chords meet iff their endpoints interleave.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

BOTTOM, RIGHT, TOP, LEFT = range(4)

Side = tuple[int, int]


class PageError(ValueError):
    pass


class GeneralPositionError(PageError):
    pass


@dataclass(frozen=True)
class CombinatorialPage:
    ntiles: int
    gluing: Mapping[Side, Side] = field(hash=False)
    boundary: Mapping[str, tuple[Side, ...]] = field(hash=False)

    @classmethod
    def build(cls, ntiles: int, pairs: Iterable[tuple[Side, Side]],
              names: Mapping[Side, str] | None = None) -> CombinatorialPage:
        """Glue tiles along ``pairs``; unglued sides form the boundary.

        ``names`` maps some side of each boundary cycle to its id; cycles
        without a name get ``b0, b1, ...`` in order of their first side.
        """
        gluing: dict[Side, Side] = {}
        for a, b in pairs:
            a, b = tuple(a), tuple(b)
            if a == b or a in gluing or b in gluing:
                raise PageError(f"gluing is not a fixed-point-free involution at {a}, {b}")
            for s in (a, b):
                if not (0 <= s[0] < ntiles and 0 <= s[1] < 4):
                    raise PageError(f"bad side {s}")
            gluing[a] = b
            gluing[b] = a
        free = [(t, e) for t in range(ntiles) for e in range(4) if (t, e) not in gluing]
        cycles = _boundary_cycles(gluing, free)
        names = dict(names or {})
        boundary: dict[str, tuple[Side, ...]] = {}
        auto = 0
        for cyc in cycles:
            hits = {names[s] for s in cyc if s in names}
            if len(hits) > 1:
                raise PageError(f"boundary cycle {cyc} named twice: {hits}")
            if hits:
                name = hits.pop()
            else:
                while f"b{auto}" in names.values() or f"b{auto}" in boundary:
                    auto += 1
                name = f"b{auto}"
            if name in boundary:
                raise PageError(f"boundary id {name} used twice")
            boundary[name] = cyc
        page = cls(ntiles, gluing, boundary)
        page._check_connected()
        return page

    def _check_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for e in range(4):
                other = self.gluing.get((t, e))
                if other and other[0] not in seen:
                    seen.add(other[0])
                    stack.append(other[0])
        if len(seen) != self.ntiles:
            raise PageError("glued complex is not connected")

    @property
    def closed(self) -> bool:
        return not self.boundary

    def is_boundary(self, s: Side) -> bool:
        return s not in self.gluing

    def boundary_id(self, s: Side) -> str:
        for name, cyc in self.boundary.items():
            if s in cyc:
                return name
        raise PageError(f"{s} is not a boundary side")

    def vertex_classes(self) -> dict[tuple[int, int], int]:
        """Map each tile corner to its vertex class; corner ``k`` starts side ``k``."""
        parent = {(t, k): (t, k) for t in range(self.ntiles) for k in range(4)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (a, e), (b, f) in self.gluing.items():
            for x, y in (((a, e), (b, (f + 1) % 4)), ((a, (e + 1) % 4), (b, f))):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        roots: dict = {}
        return {c: roots.setdefault(find(c), len(roots)) for c in parent}

    @property
    def euler_characteristic(self) -> int:
        v = len(set(self.vertex_classes().values()))
        e = len(self.gluing) // 2 + (4 * self.ntiles - len(self.gluing))
        return v - e + self.ntiles

    @property
    def genus(self) -> int:
        g2 = 2 - self.euler_characteristic - len(self.boundary)
        if g2 % 2:
            raise PageError("inconsistent Euler characteristic")
        return g2 // 2


def _boundary_cycles(gluing: Mapping[Side, Side], free: list[Side]) -> list[tuple[Side, ...]]:
    free_set = set(free)

    def successor(s: Side) -> Side:
        # walk around the end vertex of s until the next free side
        t, e = s[0], (s[1] + 1) % 4
        for _ in range(4 * len(gluing) + 8):
            if (t, e) in free_set:
                return (t, e)
            b, f = gluing[(t, e)]
            t, e = b, (f + 1) % 4
        raise PageError("boundary walk did not terminate")

    seen: set = set()
    cycles = []
    for s in free:
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        nxt = successor(s)
        while nxt != s:
            if nxt in seen:
                raise PageError("boundary is not a union of cycles")
            cyc.append(nxt)
            seen.add(nxt)
            nxt = successor(nxt)
        cycles.append(tuple(cyc))
    return cycles


# -- paths -------------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    tile: int
    entry: tuple[int, Fraction]
    exit: tuple[int, Fraction]

    def chord(self) -> tuple[Fraction, Fraction]:
        return self.entry[0] + self.entry[1], self.exit[0] + self.exit[1]


@dataclass(frozen=True)
class CombPath:
    crossings: tuple[Crossing, ...]
    closed: bool = False

    def reversed(self) -> CombPath:
        return CombPath(
            tuple(Crossing(c.tile, c.exit, c.entry) for c in reversed(self.crossings)),
            self.closed,
        )

    def __len__(self):
        return len(self.crossings)

    def tiles(self) -> list[int]:
        return [c.tile for c in self.crossings]


def path(steps: Sequence[tuple], closed: bool = False) -> CombPath:
    """Build a path from ``(tile, entry_side, entry_t, exit_side, exit_t)`` tuples."""
    out = []
    for tile, es, et, xs, xt in steps:
        out.append(Crossing(tile, (es, Fraction(et)), (xs, Fraction(xt))))
    return CombPath(tuple(out), closed)


def check_path(page: CombinatorialPage, p: CombPath) -> None:
    if not p.crossings:
        raise PageError("empty path")
    for c in p.crossings:
        if not 0 <= c.tile < page.ntiles:
            raise PageError(f"unknown tile {c.tile}")
        for side, t in (c.entry, c.exit):
            if side not in range(4) or not 0 < t < 1:
                raise PageError(f"bad point {(side, t)} in tile {c.tile}")
        if c.entry == c.exit:
            raise PageError(f"degenerate chord in tile {c.tile}")
    cs = p.crossings
    links = list(zip(cs, cs[1:]))
    if p.closed:
        links.append((cs[-1], cs[0]))
    for a, b in links:
        other = page.gluing.get((a.tile, a.exit[0]))
        if other != (b.tile, b.entry[0]) or b.entry[1] != 1 - a.exit[1]:
            raise PageError(f"crossings in tiles {a.tile} and {b.tile} do not connect")
    if not p.closed:
        if not page.is_boundary((cs[0].tile, cs[0].entry[0])):
            raise PageError("open path must start on the boundary")
        if not page.is_boundary((cs[-1].tile, cs[-1].exit[0])):
            raise PageError("open path must end on the boundary")


def canonical(page: CombinatorialPage, tile: int, side: int, t: Fraction) -> tuple[Side, Fraction]:
    """One representative per physical point on a side."""
    other = page.gluing.get((tile, side))
    if other is not None and other < (tile, side):
        return other, 1 - t
    return (tile, side), t


def path_points(page: CombinatorialPage, p: CombPath) -> list[tuple[Side, Fraction]]:
    pts = [] if p.closed else [canonical(page, p.crossings[0].tile, *p.crossings[0].entry)]
    pts += [canonical(page, c.tile, *c.exit) for c in p.crossings]
    return pts


def check_general_position(page: CombinatorialPage, paths: Iterable[CombPath]) -> None:
    seen: dict = {}
    for k, p in enumerate(paths):
        for pt in path_points(page, p):
            if pt in seen:
                raise GeneralPositionError(f"paths {seen[pt]} and {k} share the point {pt}")
            seen[pt] = k


def in_arc(x: Fraction, a: Fraction, b: Fraction) -> bool:
    """Whether ``x`` lies strictly inside the counter-clockwise arc from ``a`` to ``b``."""
    return 0 < (x - a) % 4 < (b - a) % 4


def chord_sign(p: tuple, q: tuple) -> int:
    """``0`` if the chords are disjoint, else the sign of ``(p, q)`` at the crossing."""
    a, b = p
    c, d = q
    ic, id_ = in_arc(c, a, b), in_arc(d, a, b)
    if ic == id_:
        return 0
    return 1 if ic else -1


def _order_along(chord: tuple, others: list[tuple]) -> list[int]:
    """Order in which pairwise disjoint chords meet ``chord`` from its start."""
    a, _ = chord

    def key(k):
        c, d = others[k]
        right = c if in_arc(c, a, chord[1]) else d
        return (right - a) % 4

    return sorted(range(len(others)), key=key)


def intersections(p: CombPath, q: CombPath) -> list[tuple[int, int, int]]:
    """Transverse crossings of ``p`` and ``q`` as ``(i, j, sign)``, ordered along ``p``.

    ``i`` and ``j`` index the crossings of ``p`` and ``q`` that meet.
    """
    by_tile = defaultdict(list)
    for j, c in enumerate(q.crossings):
        by_tile[c.tile].append(j)
    out = []
    for i, c in enumerate(p.crossings):
        ch = c.chord()
        hits = []
        for j in by_tile.get(c.tile, ()):
            s = chord_sign(ch, q.crossings[j].chord())
            if s:
                hits.append((j, s))
        if len(hits) > 1:
            order = _order_along(ch, [q.crossings[j].chord() for j, _ in hits])
            hits = [hits[k] for k in order]
        out.extend((i, j, s) for j, s in hits)
    return out


def algebraic_intersection(p: CombPath, q: CombPath) -> int:
    return sum(s for _, _, s in intersections(p, q))


def self_crossings(p: CombPath) -> list[tuple[int, int]]:
    by_tile = defaultdict(list)
    for i, c in enumerate(p.crossings):
        by_tile[c.tile].append(i)
    out = []
    for idx in by_tile.values():
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                if chord_sign(p.crossings[idx[x]].chord(), p.crossings[idx[y]].chord()):
                    out.append((idx[x], idx[y]))
    return out


def is_embedded(p: CombPath) -> bool:
    return not self_crossings(p)


# -- Dehn twists -----------------------------------------------------------

@dataclass(frozen=True)
class TwistAnnulus:
    tiles: tuple[int, ...]
    entry: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.tiles)


def twist_annulus(page: CombinatorialPage, c: CombPath) -> TwistAnnulus:
    """The tile cycle a closed curve runs straight through."""
    if not c.closed:
        raise PageError("twist curve must be closed")
    check_path(page, c)
    tiles = tuple(x.tile for x in c.crossings)
    if len(set(tiles)) != len(tiles):
        raise PageError("twist curve is not embedded in a tile cycle (repeats a tile)")
    for x in c.crossings:
        if x.exit[0] != (x.entry[0] + 2) % 4:
            raise PageError(f"twist curve does not cross tile {x.tile} between opposite sides")
    return TwistAnnulus(tiles, tuple(x.entry[0] for x in c.crossings))


def core_curve(page: CombinatorialPage, tiles: Sequence[int], entry: Sequence[int]) -> CombPath:
    """The curve through the middle of a tile cycle."""
    half = Fraction(1, 2)
    c = CombPath(tuple(Crossing(t, (e, half), ((e + 2) % 4, half)) for t, e in zip(tiles, entry)), True)
    check_path(page, c)
    return c


def _to_frame(side: int, t: Fraction, entry: int) -> tuple[Fraction, Fraction]:
    local = (side - entry + 3) % 4
    if local == 0:
        return t, Fraction(0)
    if local == 1:
        return Fraction(1), t
    if local == 2:
        return 1 - t, Fraction(1)
    return Fraction(0), 1 - t


def _from_frame(local: int, coord: Fraction, entry: int) -> tuple[int, Fraction]:
    """``coord`` is ``u`` on the bottom/top sides and ``v`` on the left/right."""
    t = {0: coord, 1: coord, 2: 1 - coord, 3: 1 - coord}[local]
    return (local + entry + 1) % 4, t


class _Strip:
    def __init__(self, ann: TwistAnnulus):
        self.ann = ann
        self.pos = {t: i for i, t in enumerate(ann.tiles)}
        self.m = ann.length

    def local_side(self, tile: int, side: int) -> int:
        return (side - self.ann.entry[self.pos[tile]] + 3) % 4

    def is_s_link(self, c: Crossing) -> bool:
        return c.tile in self.pos and self.local_side(c.tile, c.exit[0]) in (1, 3)

    def lift(self, run: list[Crossing]) -> list[tuple[Fraction, Fraction]]:
        lift = self.pos[run[0].tile]
        e = self.ann.entry[self.pos[run[0].tile]]
        u, v = _to_frame(*run[0].entry, e)
        pts = [(lift + u, v)]
        for c in run:
            e = self.ann.entry[self.pos[c.tile]]
            u, v = _to_frame(*c.exit, e)
            pts.append((lift + u, v))
            local = self.local_side(c.tile, c.exit[0])
            if local == 1:
                lift += 1
            elif local == 3:
                lift -= 1
        return pts

    def crossing(self, start: tuple, end: tuple) -> Crossing:
        """Chord between two strip points given as ``(cell, local side, coord)``."""
        cell, ls, lc = start
        cell2, ls2, lc2 = end
        assert cell % self.m == cell2 % self.m
        tile = self.ann.tiles[cell % self.m]
        e = self.ann.entry[cell % self.m]
        return Crossing(tile, _from_frame(ls, lc, e), _from_frame(ls2, lc2, e))


def _cut(points: list[tuple[Fraction, Fraction]], cyclic: bool):
    """Crossings of a strip polyline with the integer lines ``s = L``.

    Vertices lying exactly on a line are pushed to the side of the
    preceding vertex, so touching never produces a spurious crossing.
    Returns a list of ``(L, y, direction)``.
    """
    n = len(points)
    side = [0] * n  # -1 left of own line, +1 right, 0 not on a line
    order = range(n)
    if cyclic:
        # the last point is the first one translated by ``shift``
        count = n - 1
        shift = points[-1][0] - points[0][0]
        starts = [k for k in range(count) if points[k][0].denominator != 1]
        first = starts[0] if starts else 0
        order = [(first + k) % count for k in range(count)]
    prev_key = None
    for k in order:
        s = points[k][0]
        if cyclic and k == 0 and prev_key is not None:
            prev_key -= shift
        if s.denominator == 1:
            if prev_key is None:
                side[k] = -1
            else:
                side[k] = -1 if prev_key < s else 1
        prev_key = s if s.denominator != 1 else (s - Fraction(1, 2) if side[k] < 0 else s + Fraction(1, 2))
    if cyclic:
        side[-1] = side[0]

    def key(k):
        s = points[k][0]
        return (s, side[k])

    def left_of(k, L):
        s, sd = key(k)
        return s < L or (s == L and sd < 0)

    out = []
    segs = list(zip(range(n - 1), range(1, n)))
    for a, b in segs:
        (sa, ya), (sb, yb) = points[a], points[b]
        lo, hi = (sa, sb) if sa <= sb else (sb, sa)
        lines = range(int(lo) - 1, int(hi) + 2)
        hits = []
        for L in lines:
            if left_of(a, L) != left_of(b, L):
                if sa == L:
                    y = ya
                elif sb == L:
                    y = yb
                else:
                    y = ya + (yb - ya) * (L - sa) / (sb - sa)
                hits.append((L, y, 1 if left_of(a, L) else -1))
        hits.sort(key=lambda h: h[0] * h[2])
        out.extend(hits)
    return out


def _rebuild(strip: _Strip, points, cyclic: bool) -> list[Crossing]:
    hits = _cut(points, cyclic)
    m = strip.m

    def endpoint(pt):
        s, y = pt
        cell = s.__floor__()
        local = 0 if y == 0 else 2
        return cell, local, s - cell

    stops = []
    for L, y, d in hits:
        # leaving cell (L - 1) via right side when d > 0, else cell L via left side
        before = (L - 1, 1, y) if d > 0 else (L, 3, y)
        after = (L, 3, y) if d > 0 else (L - 1, 1, y)
        stops.append((before, after))
    out = []
    if cyclic:
        if not stops:
            raise PageError("closed curve inside a single tile")
        for k in range(len(stops)):
            start = stops[k - 1][1]
            end = stops[k][0]
            # cells agree mod m after going round the strip
            out.append(strip.crossing(start, (start[0], end[1], end[2]) if (end[0] - start[0]) % m == 0 else end))
        # the first chord wraps around from the last stop
        out = out[1:] + out[:1]
        return out
    current = endpoint(points[0])
    for before, after in stops:
        out.append(strip.crossing(current, before))
        current = after
    out.append(strip.crossing(current, endpoint(points[-1])))
    return out


def dehn_twist(page: CombinatorialPage, c: CombPath, sign: int, paths: Sequence[CombPath]) -> list[CombPath]:
    """Apply the Dehn twist along ``c`` to every path.

    The twist is the shear ``(s, y) -> (s + sign * m * y, y)`` of the tile
    annulus around ``c`` (``m`` tiles long, ``y`` measured from the side on
    the right of ``c``); ``sign = +1`` is the right-handed twist.  Chords
    are straightened afterwards, which is an isotopy inside each tile.
    """
    if sign not in (1, -1):
        raise PageError("twist sign must be +1 or -1")
    strip = _Strip(twist_annulus(page, c))
    return [_twist_path(strip, sign, p) for p in paths]


def _twist_path(strip: _Strip, sign: int, p: CombPath) -> CombPath:
    cs = list(p.crossings)
    n = len(cs)
    if not any(x.tile in strip.pos for x in cs):
        return p
    linked = [strip.is_s_link(x) for x in cs]  # link from cs[k] to cs[k+1]
    if p.closed:
        breaks = [k for k in range(n) if not linked[k - 1]]
        if not breaks:
            return CombPath(tuple(_shear_run(strip, sign, cs, cyclic=True)), True)
        cs = cs[breaks[0]:] + cs[:breaks[0]]
        linked = linked[breaks[0]:] + linked[:breaks[0]]
    out: list[Crossing] = []
    k = 0
    while k < n:
        if cs[k].tile not in strip.pos:
            out.append(cs[k])
            k += 1
            continue
        j = k
        while j < n - 1 and linked[j]:
            j += 1
        out.extend(_shear_run(strip, sign, cs[k:j + 1], cyclic=False))
        k = j + 1
    return CombPath(tuple(out), p.closed)


def _shear_run(strip: _Strip, sign: int, run: list[Crossing], cyclic: bool) -> list[Crossing]:
    pts = strip.lift(run)
    m = strip.m
    sheared = [(s + sign * m * y, y) for s, y in pts]
    if cyclic:
        sheared = sheared[:-1] + [sheared[-1]]
    return _rebuild(strip, sheared, cyclic)


def apply_monodromy(page: CombinatorialPage, word, curves: Mapping[str, CombPath | None],
                    paths: Sequence[CombPath]) -> list[CombPath]:
    """Apply a :class:`~obd.openbook.TwistWord` right to left.

    ``curves`` maps curve ids to closed paths; ``None`` marks a curve that
    bounds a disk, whose twist is isotopic to the identity.
    """
    paths = list(paths)
    for cid, sign in reversed(word.flat()):
        if cid not in curves:
            raise PageError(f"curve {cid!r} has no realization on this page")
        c = curves[cid]
        if c is None:
            continue
        paths = dehn_twist(page, c, sign, paths)
    return paths


# -- general position repair ---------------------------------------------------

def separate(page: CombinatorialPage, moving: Sequence[CombPath],
             fixed: Sequence[CombPath] = ()) -> list[CombPath]:
    """Nudge points of ``moving`` off points already used by other paths.

    Each offending point slides along its side by less than half the gap to
    its neighbours, which is an isotopy of that path alone.
    """
    used: dict[Side, list[Fraction]] = defaultdict(list)
    for p in list(fixed) + list(moving):
        for s, t in path_points(page, p):
            used[s].append(t)
    seen: set = set()
    for p in fixed:
        seen.update(path_points(page, p))
    out = []
    for p in moving:
        cs = list(p.crossings)
        pts = path_points(page, p)
        changed = False
        for k, pt in enumerate(pts):
            if pt not in seen:
                seen.add(pt)
                continue
            s, t = pt
            above = [x for x in used[s] if x > t]
            gap = (min(above) if above else Fraction(1)) - t
            new_t = t + gap / 3
            while (s, new_t) in seen:
                gap /= 3
                new_t = t + gap / 3
            used[s].append(new_t)
            seen.add((s, new_t))
            cs = _move_point(page, cs, p.closed, k, s, new_t)
            changed = True
        out.append(CombPath(tuple(cs), p.closed) if changed else p)
    return out


def _move_point(page, cs, closed, k, side, t):
    """Move the ``k``-th point of a path (see :func:`path_points`) to ``(side, t)``."""
    cs = list(cs)

    def local(tile, s):
        return t if (tile, s) == side else 1 - t

    if not closed and k == 0:
        c = cs[0]
        cs[0] = replace(c, entry=(c.entry[0], local(c.tile, c.entry[0])))
        return cs
    idx = k - 1 if not closed else k
    c = cs[idx]
    cs[idx] = replace(c, exit=(c.exit[0], local(c.tile, c.exit[0])))
    nxt = idx + 1
    if nxt == len(cs):
        if not closed:
            return cs
        nxt = 0
    d = cs[nxt]
    cs[nxt] = replace(d, entry=(d.entry[0], local(d.tile, d.entry[0])))
    return cs


# -- pushoffs ------------------------------------------------------------------

def _min_gap(page: CombinatorialPage, paths: Sequence[CombPath]) -> Fraction:
    by_side: dict[Side, list[Fraction]] = defaultdict(list)
    for p in paths:
        for s, t in path_points(page, p):
            by_side[s].append(t)
    gap = Fraction(1)
    for ts in by_side.values():
        ts = sorted([Fraction(0)] + ts + [Fraction(1)])
        gap = min(gap, min(b - a for a, b in zip(ts, ts[1:])))
    return gap


def pushoff(page: CombinatorialPage, a: CombPath, context: Sequence[CombPath] = (),
            eps: Fraction | None = None) -> CombPath:
    """Parallel copy of the arc ``a`` to its left, meeting ``a`` once.

    Both endpoints slide along the boundary in the direction of the boundary
    orientation, so the copy starts on the right of ``a`` and crosses it
    inside the first tile.
    """
    if a.closed:
        raise PageError("pushoff needs an open arc")
    check_path(page, a)
    if not is_embedded(a):
        raise PageError("arc is not embedded")
    if eps is None:
        eps = _min_gap(page, [a, *context]) / 4
    out = []
    for k, c in enumerate(a.crossings):
        et = c.entry[1] + eps if k == 0 else c.entry[1] - eps
        out.append(Crossing(c.tile, (c.entry[0], et), (c.exit[0], c.exit[1] + eps)))
    return CombPath(tuple(out))


def pushoffs(page: CombinatorialPage, arcs: Sequence[CombPath],
             context: Sequence[CombPath] = ()) -> list[CombPath]:
    eps = _min_gap(page, [*arcs, *context]) / 4
    return [pushoff(page, a, eps=eps) for a in arcs]


# -- reductions ------------------------------------------------------------------

def normalize(page: CombinatorialPage, p: CombPath) -> tuple[tuple[int, int, int], ...]:
    """Tile/side sequence of ``p`` after cancelling back-and-forth crossings.

    A chord entering and leaving its tile through the same side is removed
    together with the matching step on the other side.
    """
    seq = [(c.tile, c.entry[0], c.exit[0]) for c in p.crossings]
    changed = True
    while changed:
        changed = False
        for k in range(1, len(seq) - 1):
            tile, e_in, e_out = seq[k]
            if e_in == e_out:
                prev, nxt = seq[k - 1], seq[k + 1]
                seq[k - 1:k + 2] = [(prev[0], prev[1], nxt[2])]
                changed = True
                break
        if not changed and p.closed and len(seq) > 2:
            for k in (0, len(seq) - 1):
                tile, e_in, e_out = seq[k]
                if e_in == e_out:
                    prev, nxt = seq[k - 1], seq[(k + 1) % len(seq)]
                    merged = (prev[0], prev[1], nxt[2])
                    idx = {k - 1 if k else len(seq) - 1, k, (k + 1) % len(seq)}
                    rest = [s for i, s in enumerate(seq) if i not in idx]
                    seq = rest + [merged]
                    changed = True
                    break
    if p.closed and seq:
        # rotate to a canonical starting point
        rots = [tuple(seq[k:] + seq[:k]) for k in range(len(seq))]
        return min(rots)
    return tuple(seq)


# -- serialization ---------------------------------------------------------------

def _q(t: Fraction) -> str:
    return f"{t.numerator}/{t.denominator}"


def page_to_json(page: CombinatorialPage) -> dict:
    pairs = sorted((a, b) for a, b in page.gluing.items() if a < b)
    return {
        "schema": "obd/1",
        "kind": "page",
        "tiles": page.ntiles,
        "gluings": [[list(a), list(b), -1] for a, b in pairs],
        "boundary": {name: list(cyc[0]) for name, cyc in page.boundary.items()},
    }


def page_from_json(data: dict) -> CombinatorialPage:
    pairs = []
    for a, b, *orient in data["gluings"]:
        if orient and orient[0] != -1:
            raise PageError("only orientation-reversing side gluings give an oriented surface")
        pairs.append((tuple(a), tuple(b)))
    names = {tuple(side): name for name, side in data.get("boundary", {}).items()}
    return CombinatorialPage.build(data["tiles"], pairs, names)


def path_to_json(p: CombPath) -> dict:
    return {
        "closed": p.closed,
        "crossings": [[c.tile, [c.entry[0], _q(c.entry[1])], [c.exit[0], _q(c.exit[1])]] for c in p.crossings],
    }


def path_from_json(data: dict) -> CombPath:
    cs = tuple(
        Crossing(tile, (entry[0], Fraction(entry[1])), (exit_[0], Fraction(exit_[1])))
        for tile, entry, exit_ in data["crossings"]
    )
    return CombPath(cs, bool(data.get("closed", False)))
