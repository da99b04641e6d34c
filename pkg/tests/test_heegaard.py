from dataclasses import replace
from itertools import product

import pytest

from obd import heegaard as H
from obd import openbook as ob
from obd import page as P
from obd.datasets import load
from obd.floer import enumerate_generators
from obd.randomgen import torus_grid
from obd.realize import build_diagram, realize


def built(o):
    return build_diagram(realize(o), o.monodromy).diagram


@pytest.fixture(scope="module")
def annuli():
    return {n: built(ob.annulus(n)) for n in range(-2, 4)}


@pytest.fixture(scope="module")
def t3():
    return H.diagram_from_json(load("diagrams/t3_sum_constructed.json"))



def test_annulus_diagrams_validate(annuli):
    for d in annuli.values():
        assert H.validate(d) == []
        assert d.genus == 1 and d.n == 1


@pytest.mark.parametrize("n, group", [(0, "Z"), (1, "0"), (2, "Z/2"), (3, "Z/3"), (-1, "0"), (-2, "Z/2")])
def test_annulus_h1(annuli, n, group):
    assert str(H.h1(annuli[n])) == group


@pytest.mark.parametrize("n", [1, 2, 3])
def test_annulus_h1_matches_one_by_one_presentation(annuli, n):
    from obd.snf import cokernel

    assert H.h1(annuli[n]) == cokernel([[n]])


@pytest.mark.parametrize("n, count", [(0, 2), (1, 1), (2, 2), (3, 3), (-1, 3), (-2, 4)])
def test_annulus_point_count(annuli, n, count):
    d = annuli[n]
    assert len(d.points) == count
    assert len(enumerate_generators(d)) == count


def test_annulus_diagrams_are_nice(annuli):
    assert all(H.is_nice(d)[0] for d in annuli.values())


def test_identity_contact_point_is_the_pushoff_point(annuli):
    d = annuli[0]
    assert d.contact is not None and len(d.contact) == 1
    assert H.tuple_of(d, d.contact) == (1,)


def test_destabilized_lens_sum_is_rp3():
    d = built(ob.from_json(load("openbooks/lens_destabilized.json")))
    assert H.validate(d) == []
    assert str(H.h1(d)) == "Z/2"


def test_constructed_t3(t3):
    assert t3.genus == 5 and t3.n == 5
    assert H.validate(t3) == []
    assert str(H.h1(t3)) == "Z + Z + Z"
    nice, bad = H.is_nice(t3)
    assert not nice and bad is not None and not t3.regions[bad].basepoint


def test_contact_tuple_is_all_ones(t3):
    assert H.tuple_of(t3, t3.contact) == (1,) * 5


def test_tuple_roundtrip(annuli, t3):
    for d in (*annuli.values(), t3):
        for g in enumerate_generators(d, check=False)[:200]:
            assert H.generator_of(d, H.tuple_of(d, g)) == g


def test_removed_corner_reported(annuli):
    d = annuli[2]
    reg = d.regions[0]
    cyc = reg.cycles[0][1:]
    broken = H.HeegaardDiagram(d.genus, d.points, d.alphas, d.betas,
                               [replace(reg, cycles=(cyc, *reg.cycles[1:])), *d.regions[1:]], d.contact)
    report = H.validate(broken)
    assert any("corner" in msg for msg in report)


def test_genus_mismatch_reported(annuli):
    d = annuli[3]
    wrong = H.HeegaardDiagram(d.genus + 1, d.points, d.alphas, d.betas, d.regions, d.contact)
    assert any("Euler" in msg or "euler" in msg for msg in H.validate(wrong))


def test_toy_torus_is_nice():
    page = torus_grid(1, 1)
    a = P.core_curve(page, [0], [P.LEFT])
    b = P.core_curve(page, [0], [P.BOTTOM])
    d = H.diagram_from_curves(page, [a], [b])
    assert len(d.points) == 1 and len(d.regions) == 1
    assert d.regions[0].is_square
    assert H.is_nice(d)[0]
    assert str(H.h1(d)) == "0"


def test_mod2_periodic_domains_track_h1_mod2(annuli):
    # mod 2 periodic domains avoiding the basepoint exist exactly when H1(Y; F2) is nonzero
    for d in annuli.values():
        g = H.h1(d)
        marked = [k for k, r in enumerate(d.regions) if r.basepoint]
        expected = g.rank > 0 or any(t % 2 == 0 for t in g.torsion)
        assert bool(H.periodic_domains_mod2(d, avoid=marked)) == expected


def test_json_roundtrip(annuli, t3):
    for d in (*annuli.values(), t3):
        back = H.diagram_from_json(H.diagram_to_json(d))
        assert back.points == d.points and back.alphas == d.alphas and back.betas == d.betas
        assert back.regions == d.regions and back.contact == d.contact


@pytest.mark.parametrize("name", ["annulus_tau0", "annulus_tau1", "annulus_tau2", "annulus_tau3"])
def test_bundled_diagrams_match_rebuild(name):
    n = int(name[len("annulus_tau"):])
    d = H.diagram_from_json(load(f"diagrams/{name}.json"))
    fresh = built(ob.annulus(n))
    assert d.points == fresh.points and d.regions == fresh.regions
