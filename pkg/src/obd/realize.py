"""Concrete tiled pages for abstract open books, and the diagrams they give.

Only a few page types are realized: annuli and the genus-one page with four
boundary components obtained by summing two annuli along both binding
pairs.  That covers the worked examples; anything else raises
:class:`RealizationError`.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from obd.heegaard import HeegaardDiagram, _tile_faces, diagram_from_curves
from obd.openbook import OpenBook, TwistWord
from obd.page import (
    BOTTOM, LEFT, RIGHT, TOP, CombinatorialPage, CombPath, Crossing, apply_monodromy,
    check_path, core_curve, intersections, is_embedded, path, pushoffs, separate,
)


class RealizationError(ValueError):
    pass


@dataclass
class RealizedPage:
    page: CombinatorialPage
    curves: dict[str, CombPath | None]
    arcs: list[CombPath]
    notes: dict = field(default_factory=dict)


HALF = Fraction(1, 2)


def annulus_page(width: int = 3) -> CombinatorialPage:
    pairs = [((i, RIGHT), ((i + 1) % width, LEFT)) for i in range(width)]
    return CombinatorialPage.build(width, pairs, {(0, BOTTOM): "b0", (0, TOP): "b1"})


def realize_annulus(ob: OpenBook, width: int = 3) -> RealizedPage:
    page = annulus_page(width)
    core = core_curve(page, range(width), [LEFT] * width)
    curves = {}
    for cid, decl in ob.curves.items():
        curves[cid] = None if decl.homology == "disk" else core
    arc = path([(0, BOTTOM, HALF, TOP, HALF)])
    return RealizedPage(page, curves, [arc])


def _annulus_with_holes(width, rows, holes, offset):
    """Grid annulus with some tiles removed; returns tile ids and gluing pairs."""
    ids = {}
    for r in range(rows):
        for c in range(width):
            if (c, r) not in holes:
                ids[(c, r)] = offset + len(ids)
    pairs = []
    for (c, r), t in ids.items():
        right = ids.get(((c + 1) % width, r))
        if right is not None:
            pairs.append(((t, RIGHT), (right, LEFT)))
        up = ids.get((c, r + 1))
        if up is not None:
            pairs.append(((t, TOP), (up, BOTTOM)))
    return ids, pairs


def _hole_sides(ids, width, c, r):
    """Sides around a removed tile, in the order bottom, right, top, left."""
    return [
        (ids[(c, r - 1)], TOP),
        (ids[((c + 1) % width, r)], LEFT),
        (ids[(c, r + 1)], BOTTOM),
        (ids[((c - 1) % width, r)], RIGHT),
    ]


def _vertical(ids, c, rows, up=True):
    """Steps through column ``c`` across ``rows``, bottom to top when ``up``."""
    steps = [(ids[(c, r)], BOTTOM, HALF, TOP, HALF) for r in rows]
    if not up:
        steps = [(t, TOP, HALF, BOTTOM, HALF) for t, *_ in reversed(steps)]
    return steps


def t3_page(width: int = 4) -> RealizedPage:
    """Two annuli joined by two tubes, with named twist curves and a 5-arc basis."""
    rows = 6
    h0, h1 = 1, 2  # hole columns in rows 1 and 4
    holes = {(h0, 1), (h1, rows - 2)}
    ids1, pairs = _annulus_with_holes(width, rows, holes, 0)
    ids2, pairs2 = _annulus_with_holes(width, rows, holes, len(ids1))
    pairs += pairs2
    n = len(ids1) + len(ids2)
    tubes = []
    for k, (c, r) in enumerate([(h0, 1), (h1, rows - 2)]):
        tiles = [n + 4 * k + i for i in range(4)]
        tubes.append(tiles)
        low = _hole_sides(ids1, width, c, r)
        high = _hole_sides(ids2, width, c, r)
        for i, t in enumerate(tiles):
            pairs.append(((t, RIGHT), (tiles[(i + 1) % 4], LEFT)))
            pairs.append(((t, BOTTOM), low[i]))
            pairs.append(((t, TOP), high[(-i) % 4]))
    names = {
        (ids1[(0, 0)], BOTTOM): "1.b0", (ids1[(0, rows - 1)], TOP): "1.b1",
        (ids2[(0, 0)], BOTTOM): "2.b0", (ids2[(0, rows - 1)], TOP): "2.b1",
    }
    page = CombinatorialPage.build(n + 8, pairs, names)

    def row(ids, r):
        return core_curve(page, [ids[(c, r)] for c in range(width)], [LEFT] * width)

    curves = {}
    for tag, ids in (("1", ids1), ("2", ids2)):
        curves[f"{tag}.c"] = row(ids, 2)
        for k, (near, far) in enumerate([(0, 2), (rows - 1, rows - 3)]):
            b = f"{tag}.b{k}"
            curves[f"{b}.bd"] = row(ids, near)
            curves[f"{b}.far"] = row(ids, far)
            curves[f"{b}.navel"] = core_curve(page, tubes[k], [LEFT] * 4)
    c1 = width - 1
    a1 = path(_vertical(ids1, c1, range(rows)))
    a2 = path(_vertical(ids2, c1, range(rows)))
    # through the first tube: up out of A1's bottom row, down into A2's bottom row
    a3 = path([(ids1[(h0, 0)], BOTTOM, HALF, TOP, HALF), (tubes[0][0], BOTTOM, HALF, TOP, HALF),
               (ids2[(h0, 0)], TOP, HALF, BOTTOM, HALF)])
    # through the second tube, from A1's top row to A2's top row
    a4 = path([(ids1[(h1, rows - 1)], TOP, HALF, BOTTOM, HALF), (tubes[1][2], BOTTOM, HALF, TOP, HALF),
               (ids2[(h1, rows - 1)], BOTTOM, HALF, TOP, HALF)])
    # from A1's bottom up into the second tube, then down to A2's bottom
    a5 = path(_vertical(ids1, h1, range(rows - 2)) + [(tubes[1][0], BOTTOM, HALF, TOP, HALF)]
              + _vertical(ids2, h1, range(rows - 2), up=False))
    arcs = [a1, a2, a3, a4, a5]
    return RealizedPage(page, curves, arcs)


def realize(ob: OpenBook) -> RealizedPage:
    pg = ob.page
    if pg.genus == 0 and len(pg.boundary) == 2:
        rp = realize_annulus(ob)
        renamed = dict(zip(("b0", "b1"), pg.boundary))
        rp.notes["boundary"] = renamed
        return rp
    if pg.genus == 1 and set(pg.boundary) == {"1.b0", "1.b1", "2.b0", "2.b1"}:
        rp = t3_page()
        missing = set(ob.curves) - set(rp.curves)
        if missing:
            raise RealizationError(f"no realization for curves {sorted(missing)}")
        return rp
    raise RealizationError(f"no tiled realization for a genus {pg.genus} page with {len(pg.boundary)} boundary components")


# -- basis check ---------------------------------------------------------------

def cut_pieces(page: CombinatorialPage, arcs: Sequence[CombPath]) -> int:
    """Number of components of the page cut along pairwise disjoint arcs."""
    per_tile = defaultdict(list)
    for i, a in enumerate(arcs):
        for k, x in enumerate(a.crossings):
            per_tile[x.tile].append(((i, k), "a", *x.chord()))
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    arc_face = {}
    for tile in range(page.ntiles):
        for f, (bd_arcs, _) in enumerate(_tile_faces(per_tile.get(tile, []), {})):
            find((tile, f))
            for u0, u1 in bd_arcs:
                arc_face[(tile, u0, u1)] = (tile, f)
    for (tile, u0, u1), fid in arc_face.items():
        side = int(u0)
        other = page.gluing.get((tile, side))
        if other is None:
            continue
        b, f = other
        t0, t1 = u0 - side, u1 - side
        rb = find(arc_face[(b, f + 1 - t1, f + 1 - t0)])
        ra = find(fid)
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in arc_face.values()})


def is_basis(page: CombinatorialPage, arcs: Sequence[CombPath]) -> bool:
    """Disjoint embedded arcs cutting the page into a single disk."""
    if len(arcs) != 1 - page.euler_characteristic:
        return False
    for a in arcs:
        if a.closed:
            return False
        check_path(page, a)
        if not is_embedded(a):
            return False
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if intersections(arcs[i], arcs[j]):
                return False
    return cut_pieces(page, arcs) == 1


# -- the doubled surface -----------------------------------------------------

MIRROR = {BOTTOM: BOTTOM, RIGHT: LEFT, TOP: TOP, LEFT: RIGHT}


def double(page: CombinatorialPage) -> tuple[CombinatorialPage, list]:
    """The page glued to its mirror image along the boundary.

    Tile ``t`` of the mirror copy is ``t + ntiles``.  Returns the closed
    surface and the list of original boundary sides.
    """
    n = page.ntiles
    pairs = []
    for (a, e), (b, f) in page.gluing.items():
        if (a, e) < (b, f):
            pairs.append(((a, e), (b, f)))
            pairs.append(((a + n, MIRROR[e]), (b + n, MIRROR[f])))
    rim = [s for cyc in page.boundary.values() for s in cyc]
    for a, e in rim:
        pairs.append(((a, e), (a + n, MIRROR[e])))
    return CombinatorialPage.build(2 * n, pairs), rim


def mirror(page: CombinatorialPage, p: CombPath) -> CombPath:
    n = page.ntiles
    return CombPath(tuple(
        Crossing(c.tile + n, (MIRROR[c.entry[0]], 1 - c.entry[1]), (MIRROR[c.exit[0]], 1 - c.exit[1]))
        for c in p.crossings
    ), p.closed)


def _rim_points(p: CombPath):
    c0, c1 = p.crossings[0], p.crossings[-1]
    return [((c0.tile, c0.entry[0]), c0.entry[1]), ((c1.tile, c1.exit[0]), c1.exit[1])]


def _close(page: CombinatorialPage, upper: CombPath, lower: CombPath) -> CombPath:
    """``upper`` on the page followed by the mirror of ``lower`` run backwards."""
    return CombPath(upper.crossings + mirror(page, lower).reversed().crossings, True)


@dataclass
class BuiltDiagram:
    diagram: HeegaardDiagram
    surface: CombinatorialPage
    alphas: list[CombPath]
    betas: list[CombPath]
    images: list[CombPath]


def build_diagram(rp: RealizedPage, word: TwistWord) -> BuiltDiagram:
    """Heegaard diagram of the open book ``(page, word)`` from an arc basis.

    ``alpha_i`` is ``a_i`` on the page glued to its mirror copy; ``beta_i``
    is the pushoff ``b_i`` glued to the mirror of its monodromy image.  Every
    region touching the binding carries a basepoint, and the contact
    generator is made of the points where ``a_i`` meets ``b_i`` on the page.

    The single basepoint sits on the binding just before the start of
    ``a_1``, outside the thin strips between the ``a_i`` and ``b_i``.
    """
    page = rp.page
    if not rp.arcs:
        raise RealizationError("the page has no arcs; the diagram would have genus 0")
    if not is_basis(page, rp.arcs):
        raise RealizationError("arcs do not form a basis of the page")
    bs = pushoffs(page, rp.arcs)
    images = apply_monodromy(page, word, rp.curves, bs)
    images = separate(page, images, fixed=rp.arcs)
    surface, _ = double(page)
    alphas = [_close(page, a, a) for a in rp.arcs]
    betas = [_close(page, b, phi_b) for b, phi_b in zip(bs, images)]
    contact = [(0, 0)] * len(alphas)
    first = rp.arcs[0].crossings[0]
    side, t = first.entry
    below = [u for p in [*rp.arcs, *bs] for s_, u in _rim_points(p) if s_ == (first.tile, side) and u < t]
    z = (first.tile, side, (max(below, default=Fraction(0)) + t) / 2)
    d = diagram_from_curves(surface, alphas, betas, basepoints=[z], contact=contact)
    return BuiltDiagram(d, surface, alphas, betas, images)
