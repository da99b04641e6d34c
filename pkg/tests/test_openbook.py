import pytest
from hypothesis import given, settings, strategies as st

from obd import openbook as ob
from obd.openbook import BindingSumSpec, OpenBookError


def both(a="b0", b="b1"):
    return BindingSumSpec(((a, a), (b, b)))


def t3_sum():
    return ob.binding_sum(ob.annulus(0), ob.annulus(0), both())


def test_navel_word_signs():
    w = ob.navel_word(ob.disk(), "b")
    assert len(w) == 3
    assert [s for _, s in w.flat()] == [-1, 1, -1]
    assert w.isotopic_to_identity is True


def test_navel_words_on_distinct_boundaries_are_disjoint():
    a = ob.annulus(0)
    w0, w1 = ob.navel_word(a, "b0"), ob.navel_word(a, "b1")
    assert not (w0.curves() & w1.curves())


def test_sum_marks_navel_not_identity():
    s = ob.binding_sum(ob.disk(), ob.disk(), BindingSumSpec((("b", "b"),)))
    assert s.navels and all(w.isotopic_to_identity is False for w in s.navels.values())


def test_disk_sum_is_annulus():
    s = ob.binding_sum(ob.disk(), ob.disk(), BindingSumSpec((("b", "b"),)))
    assert ob.page_invariants(s) == (0, 2, 0, 6)


@pytest.mark.parametrize("g", [0, 1, 2])
def test_surface_plus_annulus(g):
    s = ob.binding_sum(ob.surface(g, 2), ob.annulus(0), both())
    genus, nb, _, _ = ob.page_invariants(s)
    assert (genus, nb) == (g + 1, 4)


def test_zero_pairs_rejected():
    with pytest.raises(OpenBookError):
        BindingSumSpec(())


def test_unknown_boundary_rejected():
    with pytest.raises(OpenBookError):
        ob.binding_sum(ob.disk(), ob.disk(), BindingSumSpec((("x", "b"),)))


def test_stabilize_disk_is_positive_hopf_band():
    a = ob.positive_stabilize(ob.disk(), ("b", "b"))
    assert ob.page_invariants(a) == (0, 2, 0, 1)
    [(curve, sign)] = a.monodromy.flat()
    assert sign == 1 and a.curves[curve].homology == "core"


def test_stabilize_then_destabilize():
    a = ob.positive_stabilize(ob.disk(), ("b", "b"))
    core = next(iter(a.monodromy.curves()))
    assert ob.destabilize(a, core) == ob.disk()


def test_disjoint_stabilizations_commute_up_to_relabeling():
    base = ob.annulus(0)
    x = ob.positive_stabilize(ob.positive_stabilize(base, ("b0", "b0")), ("b1", "b1"))
    y = ob.positive_stabilize(ob.positive_stabilize(base, ("b1", "b1")), ("b0", "b0"))
    assert ob.page_invariants(x) == ob.page_invariants(y)
    assert sorted(x.page.boundary) == sorted(y.page.boundary)


def test_destabilize_negative_twist_rejected():
    a = ob.annulus(-1)
    a = ob.declare_destabilizable(a, "c", ("b0", "b1"))
    with pytest.raises(OpenBookError):
        ob.destabilize(a, "c")


def test_destabilize_undeclared_rejected():
    with pytest.raises(OpenBookError):
        ob.destabilize(ob.annulus(1), "c")


def lens_destabilized():
    a = ob.positive_stabilize(ob.disk(), ("b", "b"))
    s = ob.binding_sum(a, a, BindingSumSpec((("b", "b"),)))
    for k in ("1", "2"):
        s = ob.declare_destabilizable(s, f"{k}.b.bd", (f"{k}.b~1", f"{k}.b"))
        s = ob.destabilize(s, f"{k}.b.bd")
    return s


def test_two_hopf_bands_destabilized_to_annulus():
    s = lens_destabilized()
    assert ob.page_invariants(s)[:3] == (0, 2, 0)
    assert s.page.boundary == ("1.b~1", "2.b~1")
    signs = [sg for _, sg in s.monodromy.flat()]
    assert signs == [1, -1, -1, 1, -1, -1]


@pytest.mark.parametrize("n", [-2, 0, 1, 3])
def test_annulus_invariants(n):
    assert ob.page_invariants(ob.annulus(n)) == (0, 2, 0, abs(n))


def test_t3_sum_invariants():
    assert ob.page_invariants(t3_sum()) == (1, 4, -4, 12)


def test_empty_word_length():
    assert ob.page_invariants(ob.surface(2, 1))[3] == 0


@pytest.mark.parametrize("src, expected", [
    (ob.annulus(0), (1, 6, -6, 18)),
    (ob.surface(1, 2), (2, 6, -8, 18)),
    (ob.surface(2, 2), (3, 6, -10, 18)),
    (ob.surface(0, 3), (1, 7, -7, 18)),
])
def test_giroux_presentation(src, expected):
    assert ob.page_invariants(ob.giroux_torsion_presentation(src)) == expected


def test_giroux_rejects_disk():
    with pytest.raises(OpenBookError):
        ob.giroux_torsion_presentation(ob.disk())


def test_json_roundtrip():
    for o in (t3_sum(), lens_destabilized(), ob.annulus(-2), ob.disk()):
        back = ob.from_json(ob.to_json(o))
        assert back == o and back.curves == o.curves


@settings(max_examples=150, deadline=None)
@given(
    g1=st.integers(0, 3), n1=st.integers(1, 4),
    g2=st.integers(0, 3), n2=st.integers(1, 4),
    p=st.integers(1, 4),
)
def test_euler_additivity(g1, n1, g2, n2, p):
    p = min(p, n1, n2)
    a, b = ob.surface(g1, n1), ob.surface(g2, n2)
    pairs = tuple((f"b{i}", f"b{i}") for i in range(p))
    s = ob.binding_sum(a, b, BindingSumSpec(pairs))
    chi = a.page.euler_characteristic + b.page.euler_characteristic - 2 * p
    assert s.page.euler_characteristic == chi
    assert len(s.page.boundary) == n1 + n2
    assert len(s.monodromy) == 6 * p
