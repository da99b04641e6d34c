"""``obd`` command line.

Exit codes: 0 success, 1 invalid input, 2 a verification that came out
false, 64 usage errors.  ``--json`` switches every report to JSON on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from obd import datasets, floer, heegaard, openbook, page, spectral
from obd.datasets import PLACEHOLDER

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- file plumbing -------------------------------------------------------------

def _resolve(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    # fall back to the bundled data directory, with or without a data/ prefix
    rel = p.parts[1:] if p.parts and p.parts[0] == "data" else p.parts
    q = datasets.data_dir().joinpath(*rel) if rel else p
    if q.exists():
        return q
    raise InputError(f"no such file: {name}")


def _load(name: str) -> dict:
    try:
        with open(_resolve(name)) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name}: not valid JSON ({exc})") from None
    if data.get("status") == PLACEHOLDER:
        raise InputError(f"{name}: dataset {PLACEHOLDER}")
    return data


def _save(obj: dict, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            json.dump(obj, fh, indent=1)
            fh.write("\n")


def _tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad generator {text!r}; expected comma-separated integers") from None


def _gen_text(g) -> str:
    return "(" + ",".join(str(x) for x in g) + ")"


class Report:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, payload, text: str | None = None) -> None:
        if self.as_json:
            print(json.dumps(payload))
        else:
            print(text if text is not None else json.dumps(payload, indent=1))


# -- openbook ----------------------------------------------------------------------

def cmd_openbook(args, rep: Report) -> int:
    ob = openbook.from_json(_load(args.inp))
    if args.action == "show":
        g, nb, chi, length = openbook.page_invariants(ob)
        rep.emit(
            {"genus": g, "boundary": nb, "euler": chi, "word_length": length},
            f"genus {g}, {nb} boundary components, euler characteristic {chi}, word length {length}",
        )
        return EXIT_OK
    spec = _load(args.spec) if args.spec else {}
    if args.action == "sum":
        if not args.in2:
            raise InputError("sum needs --in2")
        pairs = tuple(tuple(p) for p in spec.get("pairs", ()))
        res = openbook.binding_sum(ob, openbook.from_json(_load(args.in2)), openbook.BindingSumSpec(pairs))
    elif args.action == "stabilize":
        res = openbook.positive_stabilize(ob, tuple(spec["attach"]))
    else:
        curve = spec["curve"]
        if "merge" in spec:
            ob = openbook.declare_destabilizable(ob, curve, tuple(spec["merge"]))
        res = openbook.destabilize(ob, curve)
    data = openbook.to_json(res)
    _save(data, args.out)
    g, nb, chi, length = openbook.page_invariants(res)
    rep.emit(data, f"genus {g}, {nb} boundary components, euler characteristic {chi}, word length {length}")
    return EXIT_OK


# -- page ---------------------------------------------------------------------------

def _page_bundle(name: str):
    data = _load(name)
    pg = page.page_from_json(data)
    curves = {k: (page.path_from_json(v) if v is not None else None) for k, v in data.get("curves", {}).items()}
    arcs = [page.path_from_json(a) for a in data.get("arcs", ())]
    return pg, curves, arcs


def _pick(curves, arcs, name: str):
    if name.startswith("arc") and name[3:].isdigit():
        k = int(name[3:])
        if k >= len(arcs):
            raise InputError(f"page has {len(arcs)} arcs; {name} is out of range")
        return arcs[k]
    if name not in curves or curves[name] is None:
        raise InputError(f"no realized curve {name!r} on this page")
    return curves[name]


def cmd_page(args, rep: Report) -> int:
    pg, curves, arcs = _page_bundle(args.page)
    if args.action == "intersect":
        p, q = _pick(curves, arcs, args.path), _pick(curves, arcs, args.path2)
        pts = page.intersections(p, q)
        n = sum(s for _, _, s in pts)
        rep.emit({"algebraic": n, "geometric": len(pts), "points": [list(x) for x in pts]},
                 f"algebraic {n}, geometric {len(pts)}")
        return EXIT_OK
    if args.action == "pushoff":
        res = [page.pushoff(pg, _pick(curves, arcs, args.path))]
    elif args.action == "twist":
        c = _pick(curves, arcs, args.curve)
        res = page.dehn_twist(pg, c, args.sign, [_pick(curves, arcs, args.path)])
    else:
        word = openbook.from_json(_load(args.openbook)).monodromy
        targets = [_pick(curves, arcs, args.path)] if args.path else arcs
        res = page.apply_monodromy(pg, word, curves, targets)
    data = {"schema": "obd/1", "kind": "paths", "paths": [page.path_to_json(p) for p in res]}
    _save(data, args.out)
    rep.emit(data, "\n".join(f"path {k}: {len(p.crossings)} crossings" for k, p in enumerate(res)))
    return EXIT_OK


# -- diagram ------------------------------------------------------------------------

def _diagram(name: str) -> heegaard.HeegaardDiagram:
    return heegaard.diagram_from_json(_load(name))


def cmd_diagram(args, rep: Report) -> int:
    if args.action == "build":
        from obd.realize import build_diagram, realize

        ob = openbook.from_json(_load(args.openbook))
        d = build_diagram(realize(ob), ob.monodromy).diagram
        data = heegaard.diagram_to_json(d)
        _save(data, args.out)
        rep.emit(data if args.json else None, f"genus {d.genus}, {len(d.points)} points, {len(d.regions)} regions")
        return EXIT_OK
    d = _diagram(args.diagram)
    if args.action == "validate":
        errs = heegaard.validate(d)
        rep.emit({"valid": not errs, "errors": errs}, "valid" if not errs else "\n".join(errs))
        return EXIT_OK if not errs else EXIT_VERIFY
    if args.action == "nice":
        ok, bad = heegaard.is_nice(d)
        rep.emit({"nice": ok, "region": bad}, "true" if ok else f"false (region {bad})")
        return EXIT_OK
    if args.action == "h1":
        g = heegaard.h1(d)
        rep.emit({"rank": g.rank, "torsion": list(g.torsion), "group": str(g)}, str(g))
        return EXIT_OK
    gens = floer.enumerate_generators(d, check=False)
    tuples = sorted(heegaard.tuple_of(d, g) for g in gens)
    payload = {"generators": [list(t) for t in tuples]}
    if d.contact is not None:
        payload["contact"] = list(heegaard.tuple_of(d, d.contact))
    rep.emit(payload, "\n".join(_gen_text(t) for t in tuples))
    return EXIT_OK


# -- floer --------------------------------------------------------------------------

def _complex(args):
    """The complex and its default target (the contact class when known)."""
    if bool(args.diagram) == bool(args.complex):
        raise InputError("give exactly one of --diagram and --complex")
    if args.complex:
        return floer.complex_from_json(_load(args.complex)), None
    d = _diagram(args.diagram)
    return floer.complex_of(d), (floer.contact_class(d) if d.contact is not None else None)


def _chain(name: str) -> frozenset:
    data = _load(name)
    return frozenset(tuple(g) for g in data["chain"])


def cmd_floer(args, rep: Report) -> int:
    cx, contact = _complex(args)
    target = _tuple(args.target) if args.target else contact
    if args.action == "gens":
        rep.emit({"generators": [list(g) for g in cx.generators]}, "\n".join(_gen_text(g) for g in cx.generators))
        return EXIT_OK
    if args.action == "arrows":
        data = floer.complex_to_json(cx)
        _save(data, args.out)
        rep.emit(data, "\n".join(f"{_gen_text(a.source)} -> {_gen_text(a.target)}  {a.shape}" for a in cx.arrows) or "no arrows")
        return EXIT_OK
    if args.action == "diff":
        chain = _chain(args.chain) if args.chain else None
        if chain is not None:
            out = sorted(cx.boundary(chain))
            rep.emit({"boundary": [list(g) for g in out]}, " + ".join(map(_gen_text, out)) or "0")
        else:
            rows = {g: sorted(cx.boundary([g])) for g in cx.generators}
            rep.emit({"differential": [{"from": list(g), "to": [list(t) for t in ts]} for g, ts in rows.items()]},
                     "\n".join(f"d{_gen_text(g)} = {' + '.join(map(_gen_text, ts)) or '0'}" for g, ts in rows.items()))
        return EXIT_OK
    if args.action == "d2":
        ok, bad = floer.d_squared_zero(cx)
        rep.emit({"d2_zero": ok, "witness": [list(x) for x in bad] if bad else None},
                 "true" if ok else f"false: <dd{_gen_text(bad[0])}, {_gen_text(bad[1])}> = 1")
        return EXIT_OK if ok else EXIT_VERIFY
    if target is None:
        raise InputError("--target is required for a complex without a contact class")
    if target not in cx.index:
        raise InputError(f"target {_gen_text(target)} is not a generator")
    if args.action == "vanish":
        v = floer.decide_vanishing(cx, [target])
        if v.vanishes:
            rep.emit({"vanishes": True, "witness": sorted(list(g) for g in v.witness)},
                     f"vanishes: {len(v.witness)}-term chain")
        else:
            rep.emit({"vanishes": False, "certificate": sorted(list(g) for g in v.certificate)},
                     f"survives: cocycle with {len(v.certificate)} terms")
        return EXIT_OK
    if not args.chain:
        raise InputError("verify needs --chain")
    ok = floer.verify_chain(cx, _chain(args.chain), [target])
    rep.emit({"verified": ok}, "true" if ok else "false")
    return EXIT_OK if ok else EXIT_VERIFY


# -- spectral -----------------------------------------------------------------------

def cmd_spectral(args, rep: Report) -> int:
    fc = spectral.attach_weights(floer.complex_from_json(_load(args.complex)))
    if args.action == "bound":
        if not args.contact:
            raise InputError("bound needs --contact")
        res = spectral.order_upper_bound(fc, [_tuple(args.contact)], args.kmax)
        rep.emit(spectral.bound_to_json(res),
                 f"bound {res.bound}" if res.bound is not None else f"no bound up to k = {res.kmax}")
        return EXIT_OK
    if not args.witness:
        raise InputError("verify needs --witness")
    w = spectral.witness_from_json(_load(args.witness))
    residues = spectral.layer_residues(fc, w)
    ok = all(not r for r in residues)
    rep.emit({"verified": ok, "k": w.k, "residues": [sorted(list(g) for g in r) for r in residues]},
             "true" if ok else "false")
    return EXIT_OK if ok else EXIT_VERIFY


# -- data ---------------------------------------------------------------------------

def cmd_data(args, rep: Report) -> int:
    rows = datasets.bundled_datasets()
    rep.emit(
        [{"name": d.name, "kind": d.kind, "path": d.path, "status": d.status, "provenance": d.provenance} for d in rows],
        "\n".join(f"{d.name:32} {d.kind:10} {d.status}" for d in rows),
    )
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = _Parser(prog="obd", description="Open books, nice diagrams and contact classes.", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    ob = sub.add_parser("openbook", parents=[common], help="open book operations")
    ob.add_argument("action", choices=["sum", "stabilize", "destabilize", "show"])
    ob.add_argument("--in", dest="inp", required=True)
    ob.add_argument("--in2")
    ob.add_argument("--spec")
    ob.add_argument("--out")
    ob.set_defaults(func=cmd_openbook)

    pg = sub.add_parser("page", parents=[common], help="curves and arcs on a tiled page")
    pg.add_argument("action", choices=["twist", "apply", "pushoff", "intersect"])
    pg.add_argument("--page", required=True)
    pg.add_argument("--curve", help="twist curve id")
    pg.add_argument("--sign", type=int, choices=[1, -1], default=1)
    pg.add_argument("--path", help="curve id or arcN")
    pg.add_argument("--path2", help="second path for intersect")
    pg.add_argument("--openbook", help="open book whose monodromy to apply")
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_page)

    dg = sub.add_parser("diagram", parents=[common], help="Heegaard diagram checks")
    dg.add_argument("action", choices=["build", "validate", "nice", "h1", "tuples"])
    dg.add_argument("--diagram")
    dg.add_argument("--openbook")
    dg.add_argument("--out")
    dg.set_defaults(func=cmd_diagram)

    fl = sub.add_parser("floer", parents=[common], help="hat chain complexes")
    fl.add_argument("action", choices=["gens", "arrows", "diff", "d2", "vanish", "verify"])
    fl.add_argument("--diagram")
    fl.add_argument("--complex")
    fl.add_argument("--chain")
    fl.add_argument("--target")
    fl.add_argument("--out")
    fl.set_defaults(func=cmd_floer)

    sp = sub.add_parser("spectral", parents=[common], help="spectral order bounds")
    sp.add_argument("action", choices=["bound", "verify"])
    sp.add_argument("--complex", default="table1.json")
    sp.add_argument("--contact")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--witness")
    sp.set_defaults(func=cmd_spectral)

    da = sub.add_parser("data", parents=[common], help="bundled datasets")
    da.add_argument("action", choices=["list"])
    da.set_defaults(func=cmd_data)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.command == "diagram" and args.action != "build" and not args.diagram:
        print("obd diagram: --diagram is required", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "diagram" and args.action == "build" and not args.openbook:
        print("obd diagram build: --openbook is required", file=sys.stderr)
        return EXIT_USAGE
    rep = Report(args.json)
    try:
        return args.func(args, rep)
    except (InputError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        if args.json:
            print(json.dumps({"error": str(msg)}))
        print(f"obd: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
