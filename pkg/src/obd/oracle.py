"""Brute-force arrow oracle for small nice diagrams.

Enumerates every set of unmarked regions, keeps those whose boundary splits
into an alpha part and a beta part joining two generators, and selects the
domains of Maslov index one with no source point inside.  Shares no search
code with :mod:`obd.floer`; it only reads the diagram's region data.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from obd.floer import DomainArrow

QUADS = ("NE", "NW", "SW", "SE")


def _generators(d) -> list[tuple[int, ...]]:
    cells = {}
    for p in d.points:
        cells.setdefault((p.alpha, p.beta), []).append(p.id)
    out = []
    for perm in itertools.permutations(range(len(d.betas))):
        choices = [cells.get((i, j), []) for i, j in enumerate(perm)]
        out.extend(itertools.product(*choices))
    return out


def oracle_arrows(d, max_regions: int = 12) -> set[tuple]:
    """``{(x, y, support)}`` for all index-one positive domains with multiplicities at most one.

    Arrows follow the same direction convention as
    :func:`obd.floer.enumerate_arrows`: the alpha boundary runs from ``y`` to ``x``.
    """
    free = [r for r, reg in enumerate(d.regions) if not reg.basepoint]
    if len(free) > max_regions:
        raise ValueError(f"{len(free)} unmarked regions exceed the oracle limit {max_regions}")
    segs = []
    for fam, curves in (("a", d.alphas), ("b", d.betas)):
        for seq in curves:
            for k in range(len(seq)):
                p, q = seq[k], seq[(k + 1) % len(seq)]
                segs.append((fam, p, q, d.left_right(fam, p)))
    gens = _generators(d)
    gen_set = set(gens)
    by_point: dict = {}
    for g in gens:
        for pid in g:
            by_point.setdefault(pid, []).append(g)
    measure = {r: Fraction(d.regions[r].euler) - Fraction(d.regions[r].ncorners, 4) for r in free}
    out = set()
    for size in range(1, len(free) + 1):
        for support in itertools.combinations(free, size):
            dom = set(support)
            ends = {"a": Counter(), "b": Counter()}
            for fam, p, q, (left, right) in segs:
                c = (left in dom) - (right in dom)
                if c:
                    ends[fam][q] += c
                    ends[fam][p] -= c
            da = {k: v for k, v in ends["a"].items() if v}
            db = {k: v for k, v in ends["b"].items() if v}
            if not da or any(abs(v) != 1 for v in da.values()):
                continue
            if {k: -v for k, v in db.items()} != da:
                continue
            xs = {k for k, v in da.items() if v > 0}
            ys = {k for k, v in da.items() if v < 0}
            mult = {p.id: Fraction(sum(d.corner_region[(p.id, q)] in dom for q in QUADS), 4) for p in d.points}
            e = sum(measure[r] for r in dom)
            candidates = by_point.get(next(iter(xs)), [])
            for x in candidates:
                if not xs <= set(x):
                    continue
                y = tuple(sorted((set(x) - xs) | ys, key=lambda pid: d.points[pid].alpha))
                if y not in gen_set:
                    continue
                mu = e + sum(mult[p] for p in x) + sum(mult[p] for p in y)
                if mu != 1:
                    continue
                if any(mult[p] == 1 for p in x):
                    continue
                out.add((x, y, tuple(sorted(dom))))
    return out


def arrow_set(arrows: list[DomainArrow]) -> set[tuple]:
    return {(a.source, a.target, tuple(a.support)) for a in arrows}
