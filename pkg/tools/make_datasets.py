"""Regenerate the constructed datasets under src/obd/data.

Run from the repository root: ``python3 tools/make_datasets.py``.
"""
import json
from pathlib import Path

from obd import openbook as ob
from obd.heegaard import diagram_to_json
from obd.page import page_to_json, path_to_json
from obd.realize import build_diagram, realize

DATA = Path(__file__).resolve().parents[1] / "src" / "obd" / "data"


def dump(rel, obj):
    p = DATA / rel
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def book(rel, o, provenance):
    data = ob.to_json(o)
    data["provenance"] = provenance
    dump(f"openbooks/{rel}.json", data)


def lens_sum():
    a = ob.positive_stabilize(ob.disk(), ("b", "b"))
    return ob.binding_sum(a, a, ob.BindingSumSpec((("b", "b"),)))


def lens_destabilized():
    s = lens_sum()
    for k in ("1", "2"):
        s = ob.declare_destabilizable(s, f"{k}.b.bd", (f"{k}.b~1", f"{k}.b"))
        s = ob.destabilize(s, f"{k}.b.bd")
    return s


def t3_sum():
    return ob.binding_sum(ob.annulus(0), ob.annulus(0), ob.BindingSumSpec((("b0", "b0"), ("b1", "b1"))))


def main():
    book("disk_id", ob.disk(), "the disk with identity monodromy")
    for n in range(-2, 4):
        book(f"annulus_tau{n}", ob.annulus(n), f"annulus with the core twist to the power {n}")
    book("lens_sum", lens_sum(), "sum of two positive stabilizations of the disk along their original boundaries")
    book("lens_destabilized", lens_destabilized(), "the previous sum with both boundary-parallel twists destabilized")
    book("t3_sum", t3_sum(), "two annuli with identity monodromy summed along both boundary pairs")
    for g in (1, 2):
        fam = ob.binding_sum(ob.surface(g, 2), ob.annulus(0), ob.BindingSumSpec((("b0", "b0"), ("b1", "b1"))))
        book(f"family_g{g}", fam, f"genus {g} page with two boundary components summed with an annulus on both")
    o = t3_sum()
    rp = realize(o)
    built = build_diagram(rp, o.monodromy)
    d = diagram_to_json(built.diagram)
    d["provenance"] = "constructed: tiled realization of t3_sum with its own five-arc basis"
    dump("diagrams/t3_sum_constructed.json", d)
    dump("pages/t3_sum_page.json", {
        **page_to_json(rp.page),
        "provenance": "tiled page for t3_sum",
        "curves": {k: path_to_json(v) if v is not None else None for k, v in rp.curves.items()},
        "arcs": [path_to_json(a) for a in rp.arcs],
    })
    for n in (0, 1, 2, 3):
        o = ob.annulus(n)
        built = build_diagram(realize(o), o.monodromy)
        d = diagram_to_json(built.diagram)
        d["provenance"] = f"constructed: annulus with twist power {n}, one spanning arc"
        dump(f"diagrams/annulus_tau{n}.json", d)
    for name, what in (("fig5_t3", "five-curve diagram of the T3 sum before nicefication"),
                       ("fig6to9_torsion", "nice five-curve diagram carrying the 25 tabulated domains"),
                       ("fig10_genus1", "genus-one member of the family")):
        dump(f"{name}.json", {"schema": "obd/1", "kind": "diagram", "status": "requires transcription",
                              "provenance": what})


if __name__ == "__main__":
    main()
