from dataclasses import replace

import pytest

from obd import floer as F
from obd import gf2
from obd import openbook as ob
from obd.datasets import load
from obd.heegaard import diagram_from_json
from obd.realize import build_diagram, realize

CONTACT = (1, 1, 1, 1, 1)


@pytest.fixture(scope="module")
def table():
    return F.complex_from_json(load("table1.json"))


@pytest.fixture(scope="module")
def chain():
    return frozenset(tuple(g) for g in load("paper_chain.json")["chain"])


def homology_rank(cx):
    cols = F.differential(cx)
    return len(cx.generators) - 2 * gf2.rank(cols)


def annulus_complex(n):
    o = ob.annulus(n)
    d = build_diagram(realize(o), o.monodromy).diagram
    return d, F.complex_of(d)


def test_table_shape(table, chain):
    assert len(table.arrows) == 25
    assert len({(a.source, a.target) for a in table.arrows}) == 25
    assert len(chain) == 12
    assert all(a.source in chain for a in table.arrows)


@pytest.mark.parametrize("source, targets", [
    ((1, 2, 2, 1, 1), {((1, 1, 1, 1, 1), "rectangle"), ((1, 3, 2, 1, 1), "bigon")}),
    ((18, 1, 5, 6, 2), {((18, 1, 9, 2, 2), "rectangle")}),
    ((9, 11, 2, 5, 1), {((9, 14, 2, 2, 1), "rectangle"), ((16, 4, 2, 5, 1), "rectangle"),
                        ((3, 5, 2, 5, 1), "rectangle")}),
])
def test_outgoing_arrows(table, source, targets):
    assert {(a.target, a.shape) for a in table.outgoing(source)} == targets


def test_chain_kills_contact_generator(table, chain):
    assert F.verify_chain(table, chain, [CONTACT])


def test_dropping_any_chain_element_breaks_it(table, chain):
    for g in chain:
        assert not F.verify_chain(table, chain - {g}, [CONTACT])


def test_decide_vanishing_on_table(table, chain):
    v = F.decide_vanishing(table, [CONTACT])
    assert v.vanishes and F.verify_chain(table, v.witness, [CONTACT])


def test_zero_target_has_zero_witness(table):
    v = F.decide_vanishing(table, [])
    assert v.vanishes and v.witness == frozenset()


def test_non_cycle_rejected(table):
    with pytest.raises(F.NotACycle):
        F.decide_vanishing(table, [(1, 2, 2, 1, 1)])


def test_corrupted_arrow_breaks_d2():
    cx = F.ChainComplex(["x", "y", "z"], [F.DomainArrow("x", "y", "bigon"), F.DomainArrow("x", "z", "bigon")])
    extra = F.ChainComplex(cx.generators, cx.arrows + [F.DomainArrow("y", "z", "bigon")])
    assert not F.d_squared_zero(extra)[0]
    good = F.ChainComplex(["x", "y", "z", "w"], [
        F.DomainArrow("x", "y", "bigon"), F.DomainArrow("x", "z", "bigon"),
        F.DomainArrow("y", "w", "bigon"), F.DomainArrow("z", "w", "bigon"),
    ])
    assert F.d_squared_zero(good) == (True, None)
    broken = F.ChainComplex(good.generators, good.arrows[:-1])
    ok, witness = F.d_squared_zero(broken)
    assert not ok and witness == ("x", "w")


def test_certificate_pairs_to_one():
    _, cx = annulus_complex(0)
    v = F.decide_vanishing(cx, [cx.generators[0]])
    assert not v.vanishes
    assert F.pairs_to_zero_with_image(cx, v.certificate)
    assert cx.generators[0] in v.certificate


@pytest.mark.parametrize("n, rank", [(0, 2), (1, 1), (2, 2), (3, 3), (-1, 1), (-2, 2)])
def test_annulus_hat_rank(n, rank):
    # S1 x S2 has rank 2 and lens spaces have rank |H1|
    _, cx = annulus_complex(n)
    assert F.d_squared_zero(cx)[0]
    assert homology_rank(cx) == rank


@pytest.mark.parametrize("n, vanishes", [(0, False), (1, False), (2, False), (3, False), (-1, True), (-2, True)])
def test_annulus_contact_class(n, vanishes):
    d, cx = annulus_complex(n)
    c = F.contact_class(d)
    assert not cx.boundary([c])
    assert F.decide_vanishing(cx, [c]).vanishes is vanishes


def test_points_notation_matches_tuples():
    d, cx = annulus_complex(3)
    raw = F.complex_of(d, notation="points")
    assert len(raw.generators) == len(cx.generators) and len(raw.arrows) == len(cx.arrows)


def test_non_nice_rejected():
    d = diagram_from_json(load("diagrams/t3_sum_constructed.json"))
    with pytest.raises(F.NotNice):
        F.enumerate_arrows(d)


def test_generators_without_check_on_t3():
    d = diagram_from_json(load("diagrams/t3_sum_constructed.json"))
    gens = F.enumerate_generators(d, check=False)
    assert tuple(d.contact) in gens


def test_complex_json_roundtrip(table):
    back = F.complex_from_json(F.complex_to_json(table))
    assert back.generators == table.generators and back.arrows == table.arrows


def test_unknown_generator_rejected():
    with pytest.raises(ValueError):
        F.ChainComplex(["x"], [F.DomainArrow("x", "y", "bigon")])
