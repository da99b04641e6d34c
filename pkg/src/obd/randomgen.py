"""Seeded random nice diagrams and random twist data for property tests.

Diagrams live on a torus tiled by a ``W x H`` grid.  The alphas are
parallel copies of a random curve running rightwards through every column,
the betas parallel copies of one running upwards through every row.  Every
region that is not a bigon or square gets a basepoint, and further
basepoints are added until no periodic domain avoids them.
"""
from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from obd.heegaard import HeegaardDiagram, diagram_from_curves, periodic_domains_mod2
from obd.page import (
    BOTTOM, LEFT, RIGHT, TOP, CombinatorialPage, CombPath, Crossing, core_curve, dehn_twist, separate,
)
from obd import gf2


def torus_grid(w: int, h: int) -> CombinatorialPage:
    tid = lambda c, r: (r % h) * w + (c % w)  # noqa: E731
    pairs = [((tid(c, r), RIGHT), (tid(c + 1, r), LEFT)) for c in range(w) for r in range(h)]
    pairs += [((tid(c, r), TOP), (tid(c, r + 1), BOTTOM)) for c in range(w) for r in range(h)]
    return CombinatorialPage.build(w * h, pairs)


def _walk_curve(rng: random.Random, w: int, h: int, horizontal: bool) -> CombPath:
    """A closed curve crossing every column (or row) once, drifting at random."""
    if not horizontal:
        # walk on the transposed grid, then map tiles and sides back
        c = _walk_curve(rng, h, w, True)
        rot = {LEFT: BOTTOM, RIGHT: TOP, BOTTOM: LEFT, TOP: RIGHT}

        def conv(tile, side, t):
            col, row = tile % h, tile // h
            return (col * w + row, rot[side], 1 - t)

        out = []
        for x in c.crossings:
            t0, s0, u0 = conv(x.tile, *x.entry)
            _, s1, u1 = conv(x.tile, *x.exit)
            out.append(Crossing(t0, (s0, u0), (s1, u1)))
        return CombPath(tuple(out), True)
    # crossing heights are 1 mod 4 in 32nds and vertical passages 3 mod 4, so
    # the transposed family never meets this one at a tile side
    heights = [Fraction(4 * rng.randint(0, 7) + 1, 32) for _ in range(w)]
    # row changes per column; each column must visit distinct tiles
    wind = rng.choice((0, 0, 1, -1)) if h > 1 else 0
    while True:
        deltas = [rng.choice((-1, 0, 0, 1)) if h > 1 else 0 for _ in range(w)]
        if sum(deltas) == wind * h and all(abs(x) < h for x in deltas):
            break
        if h > 1 and rng.random() < 0.3:
            wind = 0
    rows = [0]
    for x in deltas:
        rows.append(rows[-1] + x)
    steps = []
    for col in range(w):
        r, r_next = rows[col], rows[col + 1]
        y_in, y_out = heights[col], heights[(col + 1) % w]
        if r == r_next:
            steps.append(((r % h) * w + col, (LEFT, 1 - y_in), (RIGHT, y_out)))
            continue
        up = r_next > r
        x = Fraction(19, 32)
        cur = r
        first = True
        while cur != r_next:
            tile = (cur % h) * w + col
            entry = (LEFT, 1 - y_in) if first else ((BOTTOM, x) if up else (TOP, 1 - x))
            steps.append((tile, entry, (TOP, 1 - x) if up else (BOTTOM, x)))
            cur += 1 if up else -1
            first = False
        tile = (cur % h) * w + col
        steps.append((tile, (BOTTOM, x) if up else (TOP, 1 - x), (RIGHT, y_out)))
    return CombPath(tuple(Crossing(t, (e[0], e[1]), (x[0], x[1])) for t, e, x in steps), True)


def _parallel(c: CombPath, k: int, eps: Fraction) -> CombPath:
    """The ``k``-th parallel copy to the left of a closed curve."""
    return CombPath(tuple(
        Crossing(x.tile, (x.entry[0], x.entry[1] - k * eps), (x.exit[0], x.exit[1] + k * eps))
        for x in c.crossings
    ), True)


def mark_regions(d: HeegaardDiagram) -> HeegaardDiagram:
    """Basepoint every non-elementary region, then break all periodic domains."""
    regions = [replace(r, basepoint=not (r.is_bigon or r.is_square)) for r in d.regions]
    while True:
        marked = [k for k, r in enumerate(regions) if r.basepoint]
        d = HeegaardDiagram(d.genus, d.points, d.alphas, d.betas, regions, d.contact, d.anchors)
        periodic = periodic_domains_mod2(d, avoid=marked)
        if not periodic:
            return d
        k = gf2.bits(periodic[0])[0]
        regions[k] = replace(regions[k], basepoint=True)


def random_nice_diagram(rng: random.Random, max_curves: int = 3, max_size: int = 3) -> HeegaardDiagram:
    w = rng.randint(1, max_size)
    h = rng.randint(1, max_size)
    surface = torus_grid(w, h)
    n = rng.randint(1, max_curves)
    eps = Fraction(1, 256)
    a = _walk_curve(rng, w, h, True)
    b = _walk_curve(rng, w, h, False)
    alphas = [_parallel(a, k, eps) for k in range(n)]
    betas = [_parallel(b, k, eps) for k in range(n)]
    return mark_regions(diagram_from_curves(surface, alphas, betas))


# -- random curves and paths on grid pages for twist laws --------------------------

def random_twist_triple(rng: random.Random):
    """A torus grid, a row or column core curve ``c``, and two random closed
    curves ``x`` and ``y`` in general position with each other and ``c``."""
    w = rng.randint(1, 4)
    h = rng.randint(1, 4)
    page = torus_grid(w, h)
    if rng.random() < 0.5:
        r = rng.randrange(h)
        c = core_curve(page, [r * w + col for col in range(w)], [LEFT] * w)
    else:
        col = rng.randrange(w)
        c = core_curve(page, [r * w + col for r in range(h)], [BOTTOM] * h)
    x = _walk_curve(rng, w, h, True)
    y = _walk_curve(rng, w, h, False)
    for _ in range(rng.randint(0, 2)):
        # scramble x with twists along grid lines
        if rng.random() < 0.5:
            r = rng.randrange(h)
            other = core_curve(page, [r * w + k for k in range(w)], [LEFT] * w)
        else:
            k = rng.randrange(w)
            other = core_curve(page, [r * w + k for r in range(h)], [BOTTOM] * h)
        x = dehn_twist(page, other, rng.choice((1, -1)), [x])[0]
    x = separate(page, [x], fixed=[c, y])[0]
    return page, c, x, y
