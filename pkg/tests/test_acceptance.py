"""Acceptance criteria, one test each.

Every test records a PASS, FAIL or SKIP line in ``RESULTS``; the conftest
hook prints them at the end of the run.  Transcription-dependent items read the
``fig*`` dataset slots and skip while those still require transcription.
"""
import random
import time
from collections import Counter

import pytest

from obd import floer as F
from obd import openbook as ob
from obd import page as P
from obd import spectral as S
from obd.datasets import PLACEHOLDER, bundled_datasets, load
from obd.heegaard import diagram_from_json, h1, is_nice
from obd.oracle import arrow_set, oracle_arrows
from obd.randomgen import random_nice_diagram, random_twist_triple
from obd.realize import build_diagram, realize
from obd.snf import cokernel

CONTACT = (1, 1, 1, 1, 1)
RESULTS: list[str] = []


def record(number, title, ok, detail, seconds=None, limit=None):
    timing = f" [{seconds:.2f}s / limit {limit}s]" if seconds is not None else ""
    status = "PASS" if ok else "FAIL"
    if ok and seconds is not None and limit is not None and seconds >= limit:
        status = "FAIL"
        detail += " (over time limit)"
    RESULTS.append(f"ACCEPTANCE {number} {status}: {title}: {detail}{timing}")
    return status == "PASS"


def record_skip(number, title, reason):
    RESULTS.append(f"ACCEPTANCE {number} SKIP: {title}: {reason}")
    pytest.skip(reason)


def slot(name):
    entry = next(d for d in bundled_datasets() if d.name == name)
    return None if entry.status == PLACEHOLDER else load(entry.path)


@pytest.fixture(scope="module")
def table():
    return F.complex_from_json(load("table1.json"))


@pytest.fixture(scope="module")
def chain():
    return frozenset(tuple(g) for g in load("paper_chain.json")["chain"])


@pytest.fixture(scope="module")
def random_diagrams(request):
    seed = request.config.getoption("--seed")
    rng = random.Random(seed)
    return [random_nice_diagram(rng) for _ in range(1000)]


def test_1_chain_verification(table, chain):
    t = time.perf_counter()
    ok = F.verify_chain(table, chain, [CONTACT])
    hits = Counter(a.target for a in table.arrows if a.source in chain)
    odd = {g for g, n in hits.items() if n % 2}
    ok = ok and odd == {CONTACT}
    dt = time.perf_counter() - t
    assert record(1, "chain verification on the table1 complex", ok,
                  f"{len(chain)}-term chain, odd-count targets {sorted(odd)}", dt, 1)


def test_2_order_bound_two(table):
    t = time.perf_counter()
    fc = S.attach_weights(table)
    res = S.order_upper_bound(fc, [CONTACT])
    w = S.witness_from_json(load("witness_b012.json"))
    b0, b1, b2 = w.chains
    layers = fc.layer(0, b1) == fc.layer(1, b2) and not fc.layer(0, b2)
    ok = res.bound == 2 and S.verify_filtered_witness(fc, res.witness) and S.verify_filtered_witness(fc, w) and layers
    dt = time.perf_counter() - t
    assert record(2, "spectral order bound", ok,
                  f"bound {res.bound}, computed witness ok, printed b0 b1 b2 ok, layer identities {layers}", dt, 1)


def test_3_no_bound_one(table):
    t = time.perf_counter()
    res = S.order_upper_bound(S.attach_weights(table), [CONTACT], kmax=1)
    dt = time.perf_counter() - t
    assert record(3, "obstruction at k = 1", res.bound is None, f"bound {res.bound} with kmax 1", dt, 1)


def _bundled_nice():
    out = {}
    for d in bundled_datasets():
        if d.kind == "diagram" and d.available:
            dg = diagram_from_json(load(d.path))
            if is_nice(dg)[0]:
                out[d.name] = dg
    return out


def test_4_d_squared(random_diagrams):
    t = time.perf_counter()
    bad = [k for k, d in enumerate(random_diagrams) if not F.d_squared_zero(F.complex_of(d, notation="points"))[0]]
    bundled = _bundled_nice()
    bad += [name for name, d in bundled.items() if not F.d_squared_zero(F.complex_of(d))[0]]
    dt = time.perf_counter() - t
    assert record(4, "d^2 = 0", not bad,
                  f"{len(random_diagrams)} random + {len(bundled)} bundled nice diagrams, failures {bad[:5]}", dt, 60)


def test_5_oracle(random_diagrams):
    t = time.perf_counter()
    compared, small, mismatches = 0, 0, []
    for k, d in enumerate(random_diagrams):
        free = sum(not r.basepoint for r in d.regions)
        if free > 12:
            continue
        # every diagram with at most 12 regions in total is among these
        small += len(d.regions) <= 12
        gens = F.enumerate_generators(d)
        if arrow_set(F.enumerate_arrows(d, gens)) != oracle_arrows(d):
            mismatches.append(k)
        compared += 1
    dt = time.perf_counter() - t
    assert record(5, "oracle equivalence", not mismatches and compared > 0,
                  f"{compared} diagrams compared ({small} with at most 12 regions), mismatches {mismatches[:5]}", dt, 120)


def _built(o):
    return build_diagram(realize(o), o.monodromy).diagram


def test_6_h1():
    checks = []
    t = time.perf_counter()
    checks.append(("annulus Id", str(h1(_built(ob.annulus(0)))), "Z"))
    for n in (1, 2, 3):
        got = h1(_built(ob.annulus(n)))
        checks.append((f"annulus tau^{n}", str(got), str(cokernel([[n]]))))
    lens = _built(ob.from_json(load("openbooks/lens_destabilized.json")))
    checks.append(("destabilized two-band sum", str(h1(lens)), "Z/2"))
    dt = time.perf_counter() - t
    bad = [c for c in checks if c[1] != c[2]]
    detail = ", ".join(f"{name} -> {got}" for name, got, _ in checks)
    fig5 = slot("fig5_t3")
    if fig5 is None:
        detail += "; fig5_t3 item SKIPPED (requires transcription)"
    else:
        got = str(h1(diagram_from_json(fig5)))
        detail += f"; fig5_t3 -> {got}"
        bad += [("fig5_t3", got, "Z + Z + Z")] if got != "Z + Z + Z" else []
    assert record(6, "H1 suite", not bad, detail, dt, len(checks) + 1)


def test_6_extra_constructed_t3():
    # not a transcription: our own tiled T3 sum page and five-arc basis
    t = time.perf_counter()
    got = str(h1(diagram_from_json(load("diagrams/t3_sum_constructed.json"))))
    dt = time.perf_counter() - t
    assert record("6-extra", "constructed T3 sum diagram (own realization)", got == "Z + Z + Z",
                  f"H1 = {got}", dt, 1)


def test_7_transcribed_diagrams(table, chain):
    torsion, genus1 = slot("fig6to9_torsion"), slot("fig10_genus1")
    if torsion is None or genus1 is None:
        record_skip(7, "transcription-gated checks", "fig6to9_torsion and fig10_genus1 require transcription")
    d = diagram_from_json(torsion)
    cx = F.complex_of(d)
    got = {(a.source, a.target) for a in cx.arrows if a.source in chain}
    want = {(a.source, a.target) for a in table.arrows}
    extra = {a.target for a in cx.outgoing((9, 11, 2, 3, 2))}
    v = F.decide_vanishing(cx, [F.contact_class(d)])
    d10 = diagram_from_json(genus1)
    cx10 = F.complex_of(d10)
    ok = (
        is_nice(d)[0] and F.contact_class(d) == CONTACT and got == want
        and v.vanishes and F.verify_chain(cx, v.witness, [CONTACT])
        and {(16, 4, 2, 3, 2), (3, 5, 2, 3, 2), (9, 12, 2, 2, 2)} <= extra
        and F.verify_chain(cx10, chain, [F.contact_class(d10)])
    )
    assert record(7, "transcription-gated checks", ok, "nice, contact tuple, table arrows, witness, extra rectangles")


def test_8_picard_lefschetz(request):
    rng = random.Random(request.config.getoption("--seed") + 8)
    t = time.perf_counter()
    failures, nontrivial = 0, 0
    for _ in range(500):
        page, c, x, y = random_twist_triple(rng)
        cx, cy = P.algebraic_intersection(c, x), P.algebraic_intersection(c, y)
        nontrivial += cx * cy != 0
        for s in (1, -1):
            tx = P.separate(page, P.dehn_twist(page, c, s, [x]), fixed=[y])[0]
            if P.algebraic_intersection(tx, y) != P.algebraic_intersection(x, y) + s * cx * cy:
                failures += 1
    dt = time.perf_counter() - t
    assert record(8, "Picard-Lefschetz crossing counts", failures == 0,
                  f"500 triples x 2 signs ({nontrivial} with nonzero correction), failures {failures}", dt, 30)
