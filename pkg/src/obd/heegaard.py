"""Heegaard diagrams as combinatorial data.

A diagram records its intersection points with signs, the cyclic order of
points along every alpha and beta curve, and the complementary regions with
their corners and Euler characteristics.  A corner is ``(point, quadrant)``;
quadrants name the sides of the two curves: ``N``/``S`` is left/right of
alpha, ``W``/``E`` is left/right of beta.  At a positive point beta crosses
alpha from right to left.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from obd import gf2
from obd.page import (
    CombinatorialPage, CombPath, PageError, _order_along, check_general_position,
    check_path, chord_sign, intersections, is_embedded,
)
from obd.snf import AbelianGroup, cokernel

QUADRANTS = ("NE", "NW", "SW", "SE")

# leaving a corner with the region on the left
_LEAVE = {
    1: {"NE": ("a", 1), "NW": ("b", 1), "SW": ("a", -1), "SE": ("b", -1)},
    -1: {"NW": ("a", 1), "NE": ("b", -1), "SE": ("a", -1), "SW": ("b", 1)},
}
# arriving at a point along (family, direction): the corner that continues the region
_ARRIVE = {
    1: {("a", 1): "NW", ("a", -1): "SE", ("b", 1): "SW", ("b", -1): "NE"},
    -1: {("a", 1): "NE", ("a", -1): "SW", ("b", 1): "NW", ("b", -1): "SE"},
}


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    id: int
    alpha: int
    beta: int
    sign: int


@dataclass(frozen=True)
class Region:
    cycles: tuple[tuple[tuple[int, str], ...], ...]
    euler: int
    basepoint: bool = False

    @property
    def ncorners(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def is_bigon(self) -> bool:
        return self.euler == 1 and len(self.cycles) == 1 and self.ncorners == 2

    @property
    def is_square(self) -> bool:
        return self.euler == 1 and len(self.cycles) == 1 and self.ncorners == 4

    @property
    def euler_measure(self) -> float:
        return self.euler - self.ncorners / 4


@dataclass
class HeegaardDiagram:
    genus: int
    points: list[Point]
    alphas: list[list[int]]
    betas: list[list[int]]
    regions: list[Region]
    contact: tuple[int, ...] | None = None
    anchors: tuple[tuple[int, int], ...] | None = None
    corner_region: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.corner_region = {}
        for r, reg in enumerate(self.regions):
            for cyc in reg.cycles:
                for corner in cyc:
                    self.corner_region[corner] = r

    @property
    def n(self) -> int:
        return len(self.alphas)

    def segments(self) -> list[tuple[str, int, int, int, int]]:
        """``(family, curve, k, start, end)`` for every arc between consecutive points."""
        out = []
        for fam, curves in (("a", self.alphas), ("b", self.betas)):
            for i, seq in enumerate(curves):
                for k in range(len(seq)):
                    out.append((fam, i, k, seq[k], seq[(k + 1) % len(seq)]))
        return out

    def left_right(self, fam: str, start: int) -> tuple[int, int]:
        """Regions to the left and right of the segment leaving ``start`` forwards."""
        s = self.points[start].sign
        if fam == "a":
            return self.corner_region[(start, "NE" if s > 0 else "NW")], self.corner_region[(start, "SE" if s > 0 else "SW")]
        return self.corner_region[(start, "NW" if s > 0 else "SW")], self.corner_region[(start, "NE" if s > 0 else "SE")]

    def next_on(self, fam: str, point: int, direction: int) -> int:
        p = self.points[point]
        seq = self.alphas[p.alpha] if fam == "a" else self.betas[p.beta]
        k = seq.index(point)
        return seq[(k + direction) % len(seq)]


# -- combinatorial region traversal --------------------------------------------

def trace_cycles(d: HeegaardDiagram) -> list[tuple[tuple[int, str], ...]]:
    """Boundary cycles of all regions, computed from curve orders and signs alone."""
    seen: set = set()
    cycles = []
    for p in d.points:
        for q in QUADRANTS:
            if (p.id, q) in seen:
                continue
            cyc = []
            corner = (p.id, q)
            while corner not in seen:
                seen.add(corner)
                cyc.append(corner)
                pid, quad = corner
                fam, direction = _LEAVE[d.points[pid].sign][quad]
                nxt = d.next_on(fam, pid, direction)
                corner = (nxt, _ARRIVE[d.points[nxt].sign][(fam, direction)])
            if corner != cyc[0]:
                raise DiagramError("region boundary traversal is not a permutation")
            cycles.append(tuple(cyc))
    return cycles


def validate(d: HeegaardDiagram) -> list[str]:
    """Consistency report; an empty list means the diagram is well formed."""
    problems = []
    if len(d.alphas) != len(d.betas) or not d.alphas:
        problems.append(f"{len(d.alphas)} alphas but {len(d.betas)} betas")
    for k, p in enumerate(d.points):
        if p.id != k:
            problems.append(f"point {k} has id {p.id}")
        if p.sign not in (1, -1):
            problems.append(f"point {k} has sign {p.sign}")
    for fam, curves, attr in (("alpha", d.alphas, "alpha"), ("beta", d.betas, "beta")):
        counts = defaultdict(int)
        for i, seq in enumerate(curves):
            for pid in seq:
                counts[pid] += 1
                if getattr(d.points[pid], attr) != i:
                    problems.append(f"point {pid} listed on {fam} {i}")
        for p in d.points:
            if counts[p.id] != 1:
                problems.append(f"point {p.id} appears {counts[p.id]} times on the {fam}s")
    if problems:
        return problems
    corner_count = defaultdict(int)
    for reg in d.regions:
        for cyc in reg.cycles:
            for c in cyc:
                corner_count[c] += 1
    for p in d.points:
        for q in QUADRANTS:
            if corner_count[(p.id, q)] != 1:
                problems.append(f"corner {(p.id, q)} appears {corner_count[(p.id, q)]} times")
    if problems:
        return problems
    try:
        traced = trace_cycles(d)
    except DiagramError as exc:
        return [str(exc)]
    listed = {frozenset(cyc): r for r, reg in enumerate(d.regions) for cyc in reg.cycles}
    for cyc in traced:
        if frozenset(cyc) not in listed:
            problems.append(f"traced boundary cycle {cyc[:4]}... is not a listed region cycle")
    n_points = len(d.points)
    n_edges = sum(len(s) for s in d.alphas + d.betas)
    chi = n_points - n_edges + sum(reg.euler for reg in d.regions)
    if chi != 2 - 2 * d.genus:
        problems.append(f"Euler characteristic {chi} does not match genus {d.genus}")
    if d.contact is not None:
        for i, pid in enumerate(d.contact):
            p = d.points[pid]
            if (p.alpha, p.beta) != (i, i):
                problems.append(f"contact point {pid} is not on alpha {i} and beta {i}")
    return problems


def is_nice(d: HeegaardDiagram) -> tuple[bool, int | None]:
    """Whether every region without a basepoint is a bigon or a square.

    On failure the index of an offending region is returned as certificate.
    """
    for r, reg in enumerate(d.regions):
        if not reg.basepoint and not (reg.is_bigon or reg.is_square):
            return False, r
    return True, None


def intersection_matrix(d: HeegaardDiagram) -> list[list[int]]:
    m = [[0] * len(d.betas) for _ in d.alphas]
    for p in d.points:
        m[p.alpha][p.beta] += p.sign
    return m


def h1(d: HeegaardDiagram) -> AbelianGroup:
    return cokernel(intersection_matrix(d))


def periodic_domains_mod2(d: HeegaardDiagram, avoid: Iterable[int] = ()) -> list[int]:
    """F2 basis of region sets avoiding ``avoid`` whose boundary is a sum of whole curves.

    Each basis element is a bitset over region indices.
    """
    avoid = set(avoid)
    free = [r for r in range(len(d.regions)) if r not in avoid]
    col = {r: k for k, r in enumerate(free)}

    def coef(fam, start):
        row = 0
        for r in d.left_right(fam, start):
            if r in col:
                row ^= 1 << col[r]
        return row

    rows = []
    for fam, curves in (("a", d.alphas), ("b", d.betas)):
        for seq in curves:
            # the boundary multiplicity is constant along each curve
            for k in range(1, len(seq)):
                rows.append(coef(fam, seq[k]) ^ coef(fam, seq[k - 1]))
    return [gf2.mask_of(free[k] for k in gf2.bits(v)) for v in gf2.nullspace(rows, len(free))]


# -- generator notation ----------------------------------------------------------

def _anchors(d: HeegaardDiagram) -> tuple[tuple[int, int], ...]:
    if d.anchors is not None:
        return d.anchors
    if d.contact is not None:
        return tuple((pid, 1) for pid in d.contact)
    return tuple((seq[0], 1) for seq in d.alphas)


def tuple_of(d: HeegaardDiagram, generator: Sequence[int]) -> tuple[int, ...]:
    """Positions of a generator's points along each alpha, counted from 1 at the anchor."""
    out = []
    for i, ((anchor, direction), pid) in enumerate(zip(_anchors(d), generator)):
        seq = d.alphas[i]
        out.append((seq.index(pid) - seq.index(anchor)) * direction % len(seq) + 1)
    return tuple(out)


def generator_of(d: HeegaardDiagram, positions: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i, ((anchor, direction), pos) in enumerate(zip(_anchors(d), positions)):
        seq = d.alphas[i]
        out.append(seq[(seq.index(anchor) + direction * (pos - 1)) % len(seq)])
    return tuple(out)


# -- extraction from curves on a tiled surface ----------------------------------

def _quadrant(h1, h2) -> str:
    """Sector from half-edge ``h1`` counter-clockwise to ``h2`` at a crossing."""
    fam1, fwd1 = h1
    fam2, fwd2 = h2
    if fam1 == "a":
        return ("N" if fwd1 else "S") + ("E" if fwd2 else "W")
    return ("S" if fwd2 else "N") + ("W" if fwd1 else "E")


def _tile_faces(chords: list[tuple], crossings: dict):
    """Faces of the chord arrangement inside one tile.

    ``chords`` holds ``(key, family, u0, u1)``; ``crossings`` maps a pair of
    chord indices ``(alpha, beta)`` to ``(point id, sign)``.  Returns the
    inner faces, each as ``(boundary arcs, corners)`` where arcs are
    ``(u_start, u_end)`` on the tile boundary.
    """
    bpts = sorted({u for _, _, u0, u1 in chords for u in (u0, u1)} | {0, 1, 2, 3})
    nb = len(bpts)
    pos = {u: k for k, u in enumerate(bpts)}
    # half-edges: origin, dest, label; twins are stored at index ^ 1
    origin, dest, label = [], [], []

    def add(u, v, lab_fwd, lab_back):
        origin.extend([u, v])
        dest.extend([v, u])
        label.extend([lab_fwd, lab_back])
        return len(origin) - 2

    rot: dict = defaultdict(dict)  # vertex -> slot -> half-edge
    for k in range(nb):
        h = add(("u", k), ("u", (k + 1) % nb), ("bd", True), ("bd", False))
        rot[("u", k)][0] = h
        rot[("u", (k + 1) % nb)][2] = h + 1
    by_chord = defaultdict(list)
    for (ia, ib), (pid, sign) in crossings.items():
        by_chord[ia].append((ib, pid, sign))
        by_chord[ib].append((ia, pid, sign))
    for ci, (key, fam, u0, u1) in enumerate(chords):
        hits = by_chord.get(ci, [])
        order = _order_along((u0, u1), [chords[o][2:] for o, _, _ in hits])
        verts = [("u", pos[u0])] + [("x", hits[k][1]) for k in order] + [("u", pos[u1])]
        signs = [None] + [hits[k][2] for k in order] + [None]
        for s in range(len(verts) - 1):
            h = add(verts[s], verts[s + 1], (fam, True), (fam, False))
            # slot numbers give the counter-clockwise order at each vertex
            if s == 0:
                rot[verts[s]][1] = h
            else:
                rot[verts[s]][_slot(fam, True, signs[s])] = h
            if s + 1 == len(verts) - 1:
                rot[verts[s + 1]][1] = h + 1
            else:
                rot[verts[s + 1]][_slot(fam, False, signs[s + 1])] = h + 1
    order_at = {v: [slots[k] for k in sorted(slots)] for v, slots in rot.items()}
    where = {}
    for v, hs in order_at.items():
        for k, h in enumerate(hs):
            where[h] = (v, k)

    def nxt(h):
        v, k = where[h ^ 1]
        hs = order_at[v]
        return hs[(k - 1) % len(hs)]

    seen = set()
    faces = []
    for h0 in range(len(origin)):
        if h0 in seen:
            continue
        cyc = []
        h = h0
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            h = nxt(h)
        if any(label[h] == ("bd", False) for h in cyc):
            continue
        arcs, corners = [], []
        for h in cyc:
            if label[h] == ("bd", True):
                arcs.append((bpts[origin[h][1]], bpts[dest[h][1]] if dest[h][1] else 4))
            hn = nxt(h)
            if dest[h][0] == "x":
                corners.append((dest[h][1], _quadrant(label[hn], label[h ^ 1])))
        faces.append((arcs, corners))
    return faces


def _slot(fam: str, fwd: bool, sign: int) -> int:
    if fam == "a":
        return 0 if fwd else 2
    if sign > 0:
        return 1 if fwd else 3
    return 3 if fwd else 1


def diagram_from_curves(surface: CombinatorialPage, alphas: Sequence[CombPath], betas: Sequence[CombPath],
                        basepoints: Iterable = (), contact: Sequence[tuple[int, int]] | None = None,
                        anchors=None) -> HeegaardDiagram:
    """Read a Heegaard diagram off closed curves on a closed tiled surface.

    ``basepoints`` are surface points ``(tile, side, t)`` off the curves; the
    regions containing them get a basepoint.  ``contact``
    optionally names the contact points as ``(alpha crossing index, beta
    crossing index)`` pairs in the i-th alpha and beta.
    """
    if not surface.closed:
        raise DiagramError("Heegaard surface must be closed")
    curves = list(alphas) + list(betas)
    for c in curves:
        if not c.closed:
            raise DiagramError("attaching curves must be closed")
        check_path(surface, c)
        if not is_embedded(c):
            raise DiagramError("attaching curve is not embedded")
    try:
        check_general_position(surface, curves)
    except PageError as exc:
        raise DiagramError(str(exc)) from None
    for fam in (alphas, betas):
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                if intersections(fam[i], fam[j]):
                    raise DiagramError(f"curves {i} and {j} of the same family meet")
    # points, ordered along the alphas
    point_of = {}
    points = []
    alpha_seq = []
    for i, a in enumerate(alphas):
        seq = []
        hits = []
        for j, b in enumerate(betas):
            for ka, kb, s in intersections(a, b):
                hits.append((ka, j, kb, s))
        # order along alpha: by crossing, then along the chord
        by_k = defaultdict(list)
        for h in hits:
            by_k[h[0]].append(h)
        for ka in range(len(a.crossings)):
            group = by_k.get(ka, [])
            if len(group) > 1:
                order = _order_along(a.crossings[ka].chord(), [betas[j].crossings[kb].chord() for _, j, kb, _ in group])
                group = [group[o] for o in order]
            for _, j, kb, s in group:
                pid = len(points)
                points.append(Point(pid, i, j, s))
                point_of[(i, ka, j, kb)] = pid
                seq.append(pid)
        alpha_seq.append(seq)
    beta_seq = []
    for j, b in enumerate(betas):
        seq = []
        for kb in range(len(b.crossings)):
            group = [(i, ka) for (i, ka, jj, kk) in point_of if jj == j and kk == kb]
            if len(group) > 1:
                order = _order_along(b.crossings[kb].chord(), [alphas[i].crossings[ka].chord() for i, ka in group])
                group = [group[o] for o in order]
            seq += [point_of[(i, ka, j, kb)] for i, ka in group]
        beta_seq.append(seq)
    # faces per tile
    per_tile = defaultdict(list)
    for fam, fam_curves in (("a", alphas), ("b", betas)):
        for i, c in enumerate(fam_curves):
            for k, x in enumerate(c.crossings):
                per_tile[x.tile].append(((fam, i, k), fam, *x.chord()))
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    arc_face = {}
    face_corners = {}
    corner_face = {}
    for tile in range(surface.ntiles):
        chords = per_tile.get(tile, [])
        cross = {}
        for ia, ca in enumerate(chords):
            if ca[1] != "a":
                continue
            for ib, cb in enumerate(chords):
                if cb[1] != "b":
                    continue
                s = chord_sign(ca[2:], cb[2:])
                if s:
                    (_, i, ka), (_, j, kb) = ca[0], cb[0]
                    cross[(ia, ib)] = (point_of[(i, ka, j, kb)], s)
        for f, (arcs, corners) in enumerate(_tile_faces(chords, cross)):
            fid = (tile, f)
            find(fid)
            face_corners[fid] = corners
            for u0, u1 in arcs:
                arc_face[(tile, u0, u1)] = fid
            for u in (0, 1, 2, 3):
                if any(u0 == u for u0, _ in arcs):
                    corner_face[(tile, u)] = fid
    marked = defaultdict(list)
    for tile, side, t in basepoints:
        marked[(tile, side)].append(t)
    marked_faces = set()
    for (tile, u0, u1), fid in arc_face.items():
        side = int(u0)
        t0, t1 = u0 - side, u1 - side
        if any(t0 < t < t1 for t in marked.get((tile, side), ())):
            marked_faces.add(fid)
        b, f = surface.gluing[(tile, side)]
        union(fid, arc_face[(b, f + 1 - t1, f + 1 - t0)])
    roots: dict = {}
    region_of = {fid: roots.setdefault(find(fid), len(roots)) for fid in face_corners}
    nreg = len(roots)
    faces_n = [0] * nreg
    for fid, r in region_of.items():
        faces_n[r] += 1
    edges_n = [0] * nreg
    for (tile, u0, u1), fid in arc_face.items():
        edges_n[region_of[fid]] += 1
    vclass = surface.vertex_classes()
    verts = [set() for _ in range(nreg)]
    for (tile, u), fid in corner_face.items():
        verts[region_of[fid]].add(vclass[(tile, u)])
    euler = [faces_n[r] - edges_n[r] // 2 + len(verts[r]) for r in range(nreg)]
    basepointed = {region_of[f] for f in marked_faces}
    corner_to_region = {}
    for fid, corners in face_corners.items():
        for c in corners:
            corner_to_region[c] = region_of[fid]
    d = HeegaardDiagram(surface.genus, points, alpha_seq, beta_seq, [], None, anchors)
    grouped = defaultdict(list)
    for cyc in trace_cycles(d):
        regs = {corner_to_region[c] for c in cyc}
        if len(regs) != 1:
            raise DiagramError("a traced boundary cycle spans several regions")
        grouped[regs.pop()].append(cyc)
    regions = [Region(tuple(grouped.get(r, ())), euler[r], r in basepointed) for r in range(nreg)]
    contact_ids = None
    if contact is not None:
        contact_ids = tuple(point_of[(i, ka, i, kb)] for i, (ka, kb) in enumerate(contact))
    return HeegaardDiagram(surface.genus, points, alpha_seq, beta_seq, regions, contact_ids, anchors)


# -- serialization ---------------------------------------------------------------

def diagram_to_json(d: HeegaardDiagram) -> dict:
    return {
        "schema": "obd/1",
        "kind": "diagram",
        "genus": d.genus,
        "points": [[p.alpha, p.beta, p.sign] for p in d.points],
        "alphas": d.alphas,
        "betas": d.betas,
        "regions": [
            {"cycles": [[[pid, q] for pid, q in cyc] for cyc in reg.cycles],
             "euler": reg.euler, "basepoint": reg.basepoint}
            for reg in d.regions
        ],
        "contact_points": list(d.contact) if d.contact is not None else None,
        "anchors": [list(a) for a in d.anchors] if d.anchors is not None else None,
    }


def diagram_from_json(data: dict) -> HeegaardDiagram:
    points = [Point(k, a, b, s) for k, (a, b, s) in enumerate(data["points"])]
    regions = [
        Region(tuple(tuple((pid, q) for pid, q in cyc) for cyc in r["cycles"]), r["euler"], r.get("basepoint", False))
        for r in data["regions"]
    ]
    raw = data.get("contact_points", data.get("contact"))
    contact = tuple(raw) if raw is not None else None
    anchors = tuple(tuple(a) for a in data["anchors"]) if data.get("anchors") is not None else None
    return HeegaardDiagram(data["genus"], points, [list(s) for s in data["alphas"]],
                           [list(s) for s in data["betas"]], regions, contact, anchors)
