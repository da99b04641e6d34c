"""Weighted differentials and spectral-order upper bounds.

An arrow carrying ``J+ = 2i`` contributes to ``∂_i``.  A bound
``o(M, ξ) <= k`` is certified by chains ``b_0, ..., b_k`` satisfying the
layer equations

    sum_{i >= 0} ∂_i b_{n+i} = c_n      for 0 <= n <= k,

with ``c_0 = c`` and ``c_n = 0`` for ``n >= 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping

from obd import gf2
from obd.floer import ChainComplex, DomainArrow, NotACycle, SCHEMA


class AnnotationError(ValueError):
    pass


@dataclass(frozen=True)
class FilteredComplex:
    generators: tuple
    arrows: tuple[tuple[Hashable, Hashable, int], ...]  # (source, target, weight)

    @property
    def max_weight(self) -> int:
        return max((w for _, _, w in self.arrows), default=0)

    def layer(self, i: int, chain: Iterable) -> frozenset:
        """``∂_i`` of a chain by direct summation."""
        chain = set(chain)
        out: set = set()
        for s, t, w in self.arrows:
            if w == i and s in chain:
                out ^= {t}
        return frozenset(out)

    def total(self, chain: Iterable) -> frozenset:
        chain = set(chain)
        out: set = set()
        for s, t, _ in self.arrows:
            if s in chain:
                out ^= {t}
        return frozenset(out)


@dataclass(frozen=True)
class FilteredWitness:
    chains: tuple[frozenset, ...]
    target: frozenset

    @property
    def k(self) -> int:
        return len(self.chains) - 1


@dataclass(frozen=True)
class OrderBound:
    bound: int | None
    witness: FilteredWitness | None
    kmax: int


Annotation = Mapping[tuple, int] | Callable[[DomainArrow], int | None]


def attach_weights(cx: ChainComplex, annotations: Annotation | None = None) -> FilteredComplex:
    """Turn ``J+`` annotations into weights ``i = J+ / 2``.

    ``annotations`` maps ``(source, target)`` to ``J+`` or is a callable on
    arrows; by default the arrows' own ``jplus`` fields are used.
    """
    if annotations is None:
        lookup = lambda a: a.jplus  # noqa: E731
    elif callable(annotations):
        lookup = annotations
    else:
        lookup = lambda a: annotations.get((a.source, a.target))  # noqa: E731
    weighted = []
    for a in cx.arrows:
        j = lookup(a)
        if j is None:
            raise AnnotationError(f"missing J+ for {a.source} -> {a.target}")
        if j < 0 or j % 2:
            raise AnnotationError(f"J+ = {j} for {a.source} -> {a.target} is not a non-negative even integer")
        weighted.append((a.source, a.target, j // 2))
    return FilteredComplex(tuple(cx.generators), tuple(weighted))


def layer_residues(fc: FilteredComplex, w: FilteredWitness) -> list[frozenset]:
    """``sum_i ∂_i b_{n+i} - c_n`` for each layer ``n``; all empty iff valid."""
    out = []
    k = len(w.chains) - 1
    for n in range(k + 1):
        acc: set = set(w.target) if n == 0 else set()
        for i in range(k - n + 1):
            acc ^= fc.layer(i, w.chains[n + i])
        out.append(frozenset(acc))
    return out


def verify_filtered_witness(fc: FilteredComplex, w: FilteredWitness) -> bool:
    return all(not r for r in layer_residues(fc, w))


def _layer_system(fc: FilteredComplex, index: dict, target: int, k: int) -> tuple[list[int], int]:
    n_gen = len(index)
    rows = [0] * ((k + 1) * n_gen)
    for s, t, w in fc.arrows:
        si, ti = index[s], index[t]
        for j in range(w, k + 1):
            # ∂_w b_j lands in layer j - w
            rows[(j - w) * n_gen + ti] ^= 1 << (j * n_gen + si)
    return rows, target


def order_upper_bound(fc: FilteredComplex, c: Iterable, kmax: int | None = None) -> OrderBound:
    """Least ``k <= kmax`` whose layer system is solvable, with a witness."""
    index = {g: i for i, g in enumerate(fc.generators)}
    c = frozenset(c)
    if fc.total(c):
        raise NotACycle("target chain is not a cycle")
    target = gf2.mask_of(index[g] for g in c)
    if kmax is None:
        weights = {w for _, _, w in fc.arrows} or {0}
        kmax = len(weights) * len(fc.generators)
    n_gen = len(fc.generators)
    for k in range(kmax + 1):
        rows, rhs = _layer_system(fc, index, target, k)
        sol = gf2.solve(rows, rhs)
        if sol.feasible:
            chains = tuple(
                frozenset(fc.generators[i] for i in gf2.bits((sol.x >> (j * n_gen)) & ((1 << n_gen) - 1)))
                for j in range(k + 1)
            )
            return OrderBound(k, FilteredWitness(chains, c), kmax)
    return OrderBound(None, None, kmax)


def feasible(fc: FilteredComplex, c: Iterable, k: int) -> bool:
    index = {g: i for i, g in enumerate(fc.generators)}
    target = gf2.mask_of(index[g] for g in set(c))
    rows, rhs = _layer_system(fc, index, target, k)
    return gf2.solve(rows, rhs).feasible


def witness_from_json(data: dict) -> FilteredWitness:
    chains = []
    k = 0
    while f"b{k}" in data:
        chains.append(frozenset(tuple(g) for g in data[f"b{k}"]))
        k += 1
    return FilteredWitness(tuple(chains), frozenset([tuple(data["target"])]))


def bound_to_json(ob: OrderBound) -> dict:
    if ob.bound is None:
        return {"schema": SCHEMA, "bound": None, "kmax": ob.kmax}
    return {
        "schema": SCHEMA,
        "bound": ob.bound,
        "witness": {f"b{j}": sorted(list(g) for g in ch) for j, ch in enumerate(ob.witness.chains)},
    }
