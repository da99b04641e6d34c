"""Heegaard Floer chain complexes over F2.

A :class:`ChainComplex` is a list of generators and a list of
:class:`DomainArrow` objects.  Complexes come either from a nice Heegaard
diagram (:func:`complex_of`) or straight from a JSON arrow list such as the
bundled ``table1.json`` data.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from obd import gf2

SCHEMA = "obd/1"


class NotACycle(ValueError):
    """Raised when a target chain is required to be a cycle but is not."""


class NotNice(ValueError):
    """Raised when a counting operation is handed a non-nice diagram."""


@dataclass(frozen=True)
class DomainArrow:
    source: Hashable
    target: Hashable
    shape: str
    support: tuple[int, ...] = ()
    jplus: int | None = None
    name: str | None = None


@dataclass
class ChainComplex:
    generators: list
    arrows: list[DomainArrow]
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise ValueError("duplicate generators")
        for a in self.arrows:
            if a.source not in self.index or a.target not in self.index:
                raise ValueError(f"arrow {a.source} -> {a.target} uses an unknown generator")

    def outgoing(self, g) -> list[DomainArrow]:
        return [a for a in self.arrows if a.source == g]

    def boundary(self, chain: Iterable) -> frozenset:
        """``∂`` of a chain by summing arrows directly, mod 2."""
        chain = set(chain)
        out: set = set()
        for a in self.arrows:
            if a.source in chain:
                out ^= {a.target}
        return frozenset(out)

    def mask(self, chain: Iterable) -> int:
        try:
            return gf2.mask_of(self.index[g] for g in set(chain))
        except KeyError as exc:
            raise ValueError(f"unknown generator {exc.args[0]}") from None

    def chain(self, mask: int) -> frozenset:
        return frozenset(self.generators[i] for i in gf2.bits(mask))


def differential(cx: ChainComplex) -> list[int]:
    """Column ``j`` is ``∂`` of generator ``j`` as a bitset over generators."""
    cols = [0] * len(cx.generators)
    for a in cx.arrows:
        cols[cx.index[a.source]] ^= 1 << cx.index[a.target]
    return cols


def d_squared_zero(cx: ChainComplex) -> tuple[bool, tuple | None]:
    """Check ``∂∘∂ = 0``; on failure return ``(x, z)`` with ``<∂∂x, z> = 1``."""
    cols = differential(cx)
    for j, g in enumerate(cx.generators):
        dd = gf2.apply(cols, cols[j])
        if dd:
            return False, (g, cx.generators[gf2.bits(dd)[0]])
    return True, None


@dataclass(frozen=True)
class Vanishing:
    """Either ``witness`` with ``∂ witness = c`` or a cocycle ``certificate``
    pairing to 1 with ``c``."""

    witness: frozenset | None
    certificate: frozenset | None

    @property
    def vanishes(self) -> bool:
        return self.witness is not None


def decide_vanishing(cx: ChainComplex, c: Iterable) -> Vanishing:
    cols = differential(cx)
    target = cx.mask(c)
    if gf2.apply(cols, target):
        raise NotACycle("target chain is not a cycle")
    rows = gf2.transpose(cols, len(cx.generators))
    sol = gf2.solve(rows, target)
    if sol.feasible:
        return Vanishing(cx.chain(sol.x), None)
    return Vanishing(None, cx.chain(sol.certificate))


def verify_chain(cx: ChainComplex, b: Iterable, c: Iterable) -> bool:
    return cx.boundary(b) == frozenset(c)


def pairs_to_zero_with_image(cx: ChainComplex, cocycle: Iterable) -> bool:
    """True iff ``cocycle`` vanishes on every ``∂x``."""
    z = set(cocycle)
    return all(len(cx.boundary([g]) & z) % 2 == 0 for g in cx.generators)


def changed_coordinates(a: DomainArrow) -> int:
    return sum(1 for s, t in zip(a.source, a.target) if s != t)


# -- nice diagrams ------------------------------------------------------------

def _require_nice(d) -> None:
    from obd.heegaard import is_nice

    ok, bad = is_nice(d)
    if not ok:
        raise NotNice(f"region {bad} is neither a bigon nor a square and carries no basepoint")


def enumerate_generators(d, check: bool = True) -> list[tuple[int, ...]]:
    """All generators as point-id tuples, ordered lexicographically in tuple notation."""
    from obd.heegaard import tuple_of

    if check:
        _require_nice(d)
    n = d.n
    # order each alpha's points by their tuple position
    by_alpha = []
    for i in range(n):
        probe = lambda pid: tuple_of(d, [pid if k == i else d.alphas[k][0] for k in range(n)])[i]  # noqa: E731
        by_alpha.append(sorted(d.alphas[i], key=probe))
    out = []
    chosen: list[int] = []
    used: set[int] = set()

    def rec(i):
        if i == n:
            out.append(tuple(chosen))
            return
        for pid in by_alpha[i]:
            b = d.points[pid].beta
            if b not in used:
                used.add(b)
                chosen.append(pid)
                rec(i + 1)
                chosen.pop()
                used.discard(b)

    rec(0)
    return out


class _Domains:
    """Region adjacency data for walking and filling candidate domains."""

    def __init__(self, d):
        self.d = d
        self.seg_lr = {}
        self.touch = defaultdict(list)
        for fam, c, k, start, _ in d.segments():
            key = (fam, c, k)
            lr = d.left_right(fam, start)
            self.seg_lr[key] = lr
            for r in set(lr):
                self.touch[r].append(key)
        self.pos = {}
        for fam, curves in (("a", d.alphas), ("b", d.betas)):
            for c, seq in enumerate(curves):
                for k, pid in enumerate(seq):
                    self.pos[(fam, pid)] = (c, k, len(seq))

    def step(self, fam, pid, direction):
        """Segment key, orientation and next point when leaving ``pid``."""
        c, k, n = self.pos[(fam, pid)]
        seq = self.d.alphas[c] if fam == "a" else self.d.betas[c]
        if direction > 0:
            return (fam, c, k), 1, seq[(k + 1) % n]
        return (fam, c, (k - 1) % n), -1, seq[(k - 1) % n]

    def fill(self, loop: dict):
        """Region set bounded by ``loop`` on its left, or ``None``."""
        first, orient = next(iter(loop.items()))
        left, right = self.seg_lr[first]
        start = left if orient > 0 else right
        regions = {start}
        stack = [start]
        while stack:
            r = stack.pop()
            for key in self.touch[r]:
                if key in loop:
                    continue
                for other in self.seg_lr[key]:
                    if other not in regions:
                        regions.add(other)
                        stack.append(other)
        boundary = {}
        for key, (l, r) in self.seg_lr.items():
            v = (l in regions) - (r in regions)
            if v:
                boundary[key] = v
        if boundary != loop:
            return None
        d = self.d
        if any(d.regions[r].basepoint for r in regions):
            return None
        on_loop = set()
        for (fam, c, k) in loop:
            seq = d.alphas[c] if fam == "a" else d.betas[c]
            on_loop.update((seq[k], seq[(k + 1) % len(seq)]))
        inner_points = [
            p.id for p in d.points
            if p.id not in on_loop and all(d.corner_region[(p.id, q)] in regions for q in ("NE", "NW", "SW", "SE"))
        ]
        inner_segs = sum(1 for key, (l, r) in self.seg_lr.items() if key not in loop and (l in regions or r in regions))
        chi = sum(d.regions[r].euler for r in regions) - inner_segs + len(inner_points)
        if chi != 1:
            return None
        return frozenset(regions), set(inner_points)


def _walk(dom: _Domains, fam, start, direction, loop):
    """Points met walking from ``start``; extends ``loop`` as it goes."""
    pid = start
    while True:
        key, orient, nxt = dom.step(fam, pid, direction)
        if key in loop:
            return
        loop[key] = orient
        yield nxt
        pid = nxt
        if pid == start:
            return


def _close_beta(dom, start, direction, goal, loop):
    for q in _walk(dom, "b", start, direction, loop):
        if q == goal:
            return True
    return False


def _arrows_from(d, dom: _Domains, x: tuple[int, ...]) -> list[tuple[tuple, str, frozenset]]:
    out = []
    on_beta = {d.points[pid].beta: i for i, pid in enumerate(x)}
    xs = set(x)
    for i, p in enumerate(x):
        sign_p = d.points[p].sign
        for a_dir in (1, -1):
            loop: dict = {}
            for r1 in _walk(dom, "a", p, a_dir, loop):
                if r1 == p:
                    break
                b_dir = a_dir * d.points[r1].sign
                beta = d.points[r1].beta
                if beta == d.points[p].beta:
                    # bigon: back along the same beta to p
                    lp = dict(loop)
                    if _close_beta(dom, r1, b_dir, p, lp) and -b_dir * sign_p == a_dir:
                        hit = dom.fill(lp)
                        if hit and not (hit[1] & xs):
                            y = list(x)
                            y[i] = r1
                            out.append((tuple(y), "bigon", hit[0]))
                    continue
                j = on_beta[beta]
                r2 = x[j]
                lp = dict(loop)
                if not _close_beta(dom, r1, b_dir, r2, lp):
                    continue
                a2_dir = -b_dir * d.points[r2].sign
                lp2 = dict(lp)
                for r3 in _walk(dom, "a", r2, a2_dir, lp2):
                    if r3 == r2:
                        break
                    if d.points[r3].beta != d.points[p].beta:
                        continue
                    b2_dir = a2_dir * d.points[r3].sign
                    lp3 = dict(lp2)
                    if not _close_beta(dom, r3, b2_dir, p, lp3) or -b2_dir * sign_p != a_dir:
                        continue
                    hit = dom.fill(lp3)
                    if hit and not (hit[1] & xs):
                        y = list(x)
                        y[i], y[j] = r1, r3
                        out.append((tuple(y), "rectangle", hit[0]))
    return out


def enumerate_arrows(d, generators: list | None = None) -> list[DomainArrow]:
    """Empty embedded bigons and rectangles, as arrows between point-id tuples.

    The complex is the one in which contact classes live: a domain whose
    alpha boundary runs from ``y`` to ``x`` (with the domain on its left)
    gives an arrow ``x -> y``.  This is the usual differential of the
    diagram with its surface orientation reversed.
    """
    _require_nice(d)
    if generators is None:
        generators = enumerate_generators(d, check=False)
    dom = _Domains(d)
    order = {g: k for k, g in enumerate(generators)}
    found = set()
    for y in generators:
        for x, shape, support in _arrows_from(d, dom, y):
            if x in order:
                found.add((order[x], order[y], shape, tuple(sorted(support))))
    return [DomainArrow(generators[i], generators[j], shape, support)
            for i, j, shape, support in sorted(found)]


def complex_of(d, notation: str = "tuple") -> ChainComplex:
    """The chain complex of a nice diagram, in tuple notation by default."""
    from obd.heegaard import tuple_of

    gens = enumerate_generators(d)
    arrows = enumerate_arrows(d, gens)
    if notation == "points":
        return ChainComplex(gens, arrows)
    conv = {g: tuple_of(d, g) for g in gens}
    return ChainComplex(
        [conv[g] for g in gens],
        [DomainArrow(conv[a.source], conv[a.target], a.shape, a.support) for a in arrows],
    )


def contact_class(d, notation: str = "tuple") -> tuple[int, ...]:
    from obd.heegaard import tuple_of

    if d.contact is None:
        raise ValueError("diagram carries no contact points")
    return tuple_of(d, d.contact) if notation == "tuple" else tuple(d.contact)


# -- serialization ---------------------------------------------------------

def _key(g):
    return tuple(g) if isinstance(g, list) else g


def complex_from_json(data: dict) -> ChainComplex:
    gens = [_key(g) for g in data["generators"]]
    arrows = [
        DomainArrow(
            _key(a["from"]), _key(a["to"]), a.get("shape", "unknown"),
            tuple(a.get("support", ())), a.get("jplus"), a.get("name"),
        )
        for a in data["arrows"]
    ]
    return ChainComplex(gens, arrows)


def complex_to_json(cx: ChainComplex) -> dict:
    def arrow(a: DomainArrow) -> dict:
        d = {"from": list(a.source), "to": list(a.target), "shape": a.shape}
        if a.support:
            d["support"] = list(a.support)
        if a.jplus is not None:
            d["jplus"] = a.jplus
        if a.name:
            d["name"] = a.name
        return d

    return {
        "schema": SCHEMA,
        "kind": "complex",
        "generators": [list(g) for g in cx.generators],
        "arrows": [arrow(a) for a in cx.arrows],
    }
