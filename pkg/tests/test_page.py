from fractions import Fraction

import pytest

from obd import openbook as ob
from obd import page as P
from obd.randomgen import random_twist_triple, torus_grid
from obd.realize import is_basis, realize, realize_annulus


@pytest.fixture(scope="module")
def annulus():
    rp = realize_annulus(ob.annulus(0))
    return rp.page, rp.curves["c"], rp.arcs[0]


@pytest.fixture(scope="module")
def t3():
    o = ob.binding_sum(ob.annulus(0), ob.annulus(0), ob.BindingSumSpec((("b0", "b0"), ("b1", "b1"))))
    return realize(o)


def pl_holds(page, c, x, y, s):
    tx = P.separate(page, P.dehn_twist(page, c, s, [x]), fixed=[y])[0]
    expected = P.algebraic_intersection(x, y) + s * P.algebraic_intersection(c, x) * P.algebraic_intersection(c, y)
    return P.algebraic_intersection(tx, y) == expected


def test_gluing_is_involution():
    g = torus_grid(3, 2)
    assert all(g.gluing[g.gluing[s]] == s for s in g.gluing)
    assert g.closed and g.genus == 1


def test_annulus_page_topology(annulus):
    page, _, _ = annulus
    assert page.euler_characteristic == 0 and len(page.boundary) == 2


def test_t3_page_topology(t3):
    page = t3.page
    assert (page.genus, len(page.boundary), page.euler_characteristic) == (1, 4, -4)
    assert len(t3.arcs) == 5 and is_basis(page, t3.arcs)


def test_twist_disjoint_is_identity(annulus):
    page, c, a = annulus
    parallel = P.core_curve(page, [0, 1, 2], [P.LEFT] * 3)
    moved = P.CombPath(tuple(
        P.Crossing(x.tile, (x.entry[0], Fraction(1, 4)), (x.exit[0], Fraction(3, 4))) for x in parallel.crossings
    ), True)
    assert P.dehn_twist(page, c, 1, [moved]) == [moved]


def test_twist_inverse_normalizes(annulus):
    page, c, a = annulus
    for s in (1, -1):
        back = P.dehn_twist(page, c, -s, P.dehn_twist(page, c, s, [a]))[0]
        assert P.normalize(page, back) == P.normalize(page, a)


@pytest.mark.parametrize("n", range(-3, 4))
def test_annulus_power_count(annulus, n):
    page, c, a = annulus
    img = [a]
    for _ in range(abs(n)):
        img = P.dehn_twist(page, c, 1 if n > 0 else -1, img)
    img = P.separate(page, img, fixed=[a])[0]
    # the separated copy starts as a pushoff, which contributes the constant 1
    assert P.algebraic_intersection(a, img) == 1 - n
    assert P.algebraic_intersection(img, a) == n - 1


def test_apply_monodromy_empty_word(annulus):
    page, c, a = annulus
    assert P.apply_monodromy(page, ob.TwistWord(), {"c": c}, [a]) == [a]


def test_apply_monodromy_matches_twists(annulus):
    page, c, a = annulus
    word = ob.annulus(2).monodromy
    assert P.apply_monodromy(page, word, {"c": c}, [a]) == P.dehn_twist(page, c, 1, P.dehn_twist(page, c, 1, [a]))


def test_navel_word_acts_trivially_on_homology(t3):
    # the three navel letters act with net zero on intersection numbers
    page, curves = t3.page, t3.curves
    basis = [curves["1.c"], curves["2.c"]]
    word = ob.TwistWord.of(("1.b0.navel", -1), ("1.b0.bd", 1), ("1.b0.far", -1))
    for arc in t3.arcs:
        img = P.separate(page, P.apply_monodromy(page, word, curves, [arc]), fixed=basis)[0]
        for h in basis:
            assert P.algebraic_intersection(img, h) == P.algebraic_intersection(arc, h)


def test_pushoff_meets_once(annulus):
    page, _, a = annulus
    b = P.pushoff(page, a)
    assert len(P.intersections(a, b)) == 1


def test_pushoffs_of_basis(t3):
    page, arcs = t3.page, t3.arcs
    pushed = P.pushoffs(page, arcs)
    for i, a in enumerate(arcs):
        for j, b in enumerate(pushed):
            assert len(P.intersections(a, b)) == (i == j)
    for i in range(len(pushed)):
        for j in range(i + 1, len(pushed)):
            assert not P.intersections(pushed[i], pushed[j])


def test_intersection_antisymmetric(rng):
    for _ in range(100):
        page, c, x, y = random_twist_triple(rng)
        assert P.algebraic_intersection(x, y) == -P.algebraic_intersection(y, x)
        assert P.algebraic_intersection(c, x) == -P.algebraic_intersection(x, c)


def test_picard_lefschetz_sample(rng):
    for _ in range(60):
        page, c, x, y = random_twist_triple(rng)
        assert pl_holds(page, c, x, y, 1) and pl_holds(page, c, x, y, -1)


def test_general_position_detected():
    page = torus_grid(1, 1)
    a = P.core_curve(page, [0], [P.LEFT])
    with pytest.raises(P.GeneralPositionError):
        P.check_general_position(page, [a, a])


def test_json_roundtrip(t3):
    page = P.page_from_json(P.page_to_json(t3.page))
    assert page.gluing == t3.page.gluing and page.boundary == t3.page.boundary
    for a in t3.arcs:
        assert P.path_from_json(P.path_to_json(a)) == a


def test_bad_orientation_rejected(t3):
    data = P.page_to_json(t3.page)
    data["gluings"][0][2] = 1
    with pytest.raises(P.PageError):
        P.page_from_json(data)


def test_closed_curve_inside_strip_landing_on_tile_side():
    # a closed curve that never leaves the twist annulus, whose sheared
    # vertices fall exactly on tile sides
    page = torus_grid(4, 1)
    c = P.core_curve(page, [0, 1, 2, 3], [P.LEFT] * 4)
    q = Fraction
    x = P.CombPath((
        P.Crossing(1, (P.LEFT, q(3, 4)), (P.RIGHT, q(5, 29))),
        P.Crossing(2, (P.LEFT, q(24, 29)), (P.RIGHT, q(13, 32))),
        P.Crossing(3, (P.LEFT, q(19, 32)), (P.RIGHT, q(1, 3))),
        P.Crossing(0, (P.LEFT, q(2, 3)), (P.RIGHT, q(1, 4))),
    ), True)
    for s in (1, -1):
        img = P.dehn_twist(page, c, s, [x])[0]
        P.check_path(page, img)
        assert P.normalize(page, P.dehn_twist(page, c, -s, [img])[0]) == P.normalize(page, x)
