"""Symbolic abstract open books.

Pages are tracked only by genus and boundary ids; monodromies are words in
signed Dehn twists along named curves.  Words are never simplified.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

SCHEMA = "obd/1"


class OpenBookError(ValueError):
    pass


@dataclass(frozen=True)
class PageDescriptor:
    genus: int
    boundary: tuple[str, ...]
    label: str = ""

    def __post_init__(self):
        if self.genus < 0:
            raise OpenBookError("genus must be non-negative")
        if not self.boundary:
            raise OpenBookError("an open book page needs at least one boundary component")
        if len(set(self.boundary)) != len(self.boundary):
            raise OpenBookError("boundary ids must be distinct")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)


@dataclass(frozen=True)
class CurveDecl:
    """Structural data about a twist curve.

    ``homology`` is a free annotation used when a page is realized
    combinatorially: ``"disk"`` (bounds a disk), ``"core"``, ``"neck"``, ...
    ``band`` is set on curves that may be destabilized and records how the
    page changes when the band is removed.
    """

    kind: str  # "boundary_parallel" | "interior"
    boundary: str | None = None
    homology: str | None = None
    band: Mapping | None = None

    def __post_init__(self):
        if self.kind not in ("boundary_parallel", "interior"):
            raise OpenBookError(f"unknown curve kind {self.kind!r}")
        if self.kind == "boundary_parallel" and self.boundary is None:
            raise OpenBookError("boundary-parallel curve needs a boundary id")

    @property
    def destabilizable(self) -> bool:
        return self.band is not None


@dataclass(frozen=True)
class Twist:
    curve: str
    sign: int
    mult: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise OpenBookError("twist sign must be +1 or -1")
        if self.mult < 1:
            raise OpenBookError("twist multiplicity must be positive")


@dataclass(frozen=True)
class TwistWord:
    """Word in Dehn twists, applied right to left.

    Equality compares flattened words.  ``declarations`` carries curves a
    constructor such as :func:`navel_word` declared fresh.
    """

    letters: tuple[Twist, ...] = ()
    isotopic_to_identity: bool | None = field(default=None, compare=False)
    declarations: Mapping[str, CurveDecl] = field(default_factory=dict, compare=False, hash=False)

    def flat(self) -> tuple[tuple[str, int], ...]:
        return tuple((t.curve, t.sign) for t in self.letters for _ in range(t.mult))

    def __eq__(self, other):
        if not isinstance(other, TwistWord):
            return NotImplemented
        return self.flat() == other.flat()

    def __hash__(self):
        return hash(self.flat())

    def __len__(self):
        return sum(t.mult for t in self.letters)

    def __add__(self, other: TwistWord) -> TwistWord:
        return TwistWord(self.letters + other.letters)

    def curves(self) -> set[str]:
        return {t.curve for t in self.letters}

    @classmethod
    def of(cls, *letters) -> TwistWord:
        return cls(tuple(Twist(*l) for l in letters))


@dataclass(frozen=True)
class OpenBook:
    page: PageDescriptor
    curves: Mapping[str, CurveDecl] = field(default_factory=dict, hash=False)
    monodromy: TwistWord = TwistWord()
    navels: Mapping[str, TwistWord] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for cid, decl in self.curves.items():
            if decl.kind == "boundary_parallel" and decl.boundary not in self.page.boundary:
                raise OpenBookError(f"curve {cid} is parallel to unknown boundary {decl.boundary}")
        missing = self.monodromy.curves() - set(self.curves)
        if missing:
            raise OpenBookError(f"monodromy uses undeclared curves {sorted(missing)}")


@dataclass(frozen=True)
class BindingSumSpec:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.pairs:
            raise OpenBookError("a binding sum needs at least one pair of boundary components")
        left = [a for a, _ in self.pairs]
        right = [b for _, b in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise OpenBookError("each boundary component may be summed at most once")


# -- constructors ----------------------------------------------------------

def disk(label: str = "D2") -> OpenBook:
    return OpenBook(PageDescriptor(0, ("b",), label))


def annulus(n: int = 0, label: str | None = None) -> OpenBook:
    """``(S^1 x [0,1], τ^n)`` with core curve ``c``."""
    curves = {"c": CurveDecl("interior", homology="core")}
    word = TwistWord((Twist("c", 1 if n > 0 else -1, abs(n)),)) if n else TwistWord()
    return OpenBook(PageDescriptor(0, ("b0", "b1"), label or f"annulus,tau^{n}"), curves, word)


def surface(genus: int, nboundary: int, label: str | None = None) -> OpenBook:
    """``(Σ_{g,b}, Id)``."""
    ids = tuple(f"b{i}" for i in range(nboundary))
    return OpenBook(PageDescriptor(genus, ids, label or f"Sigma_{genus},{nboundary}"))


# -- operations ------------------------------------------------------------

def navel_word(ob: OpenBook, k: str) -> TwistWord:
    """Klukas' three-twist word ``f_K`` at boundary component ``k``.

    Letters, in order: negative twist around the navel point, positive twist
    parallel to ``k``, negative twist parallel to ``k`` beyond the point.
    """
    if k not in ob.page.boundary:
        raise OpenBookError(f"unknown boundary id {k!r}")
    point, near, far = f"{k}.navel", f"{k}.bd", f"{k}.far"
    taken = set(ob.curves) & {point, near, far}
    if taken:
        raise OpenBookError(f"navel curves already declared: {sorted(taken)}")
    decls = {
        point: CurveDecl("interior", homology="disk"),
        near: CurveDecl("boundary_parallel", boundary=k),
        far: CurveDecl("boundary_parallel", boundary=k, homology="beyond-navel"),
    }
    letters = (Twist(point, -1), Twist(near, 1), Twist(far, -1))
    return TwistWord(letters, isotopic_to_identity=True, declarations=decls)


def _prefixed(ob: OpenBook, tag: str):
    def b(x: str) -> str:
        return f"{tag}.{x}"

    curves = {}
    for cid, d in ob.curves.items():
        band = None
        if d.band is not None:
            band = {key: [b(x) for x in val] if isinstance(val, (list, tuple)) else val
                    for key, val in d.band.items()}
        curves[b(cid)] = replace(d, boundary=b(d.boundary) if d.boundary else None, band=band)
    word = TwistWord(tuple(replace(t, curve=b(t.curve)) for t in ob.monodromy.letters))
    return b, curves, word


def binding_sum(ob1: OpenBook, ob2: OpenBook, spec: BindingSumSpec) -> OpenBook:
    """Klukas' open book for the binding sum along ``spec.pairs``.

    Every id of summand ``s`` is prefixed ``"s."``.  Summed boundary
    components stay page boundary, so the page has genus ``g1 + g2 + p - 1``
    and ``b1 + b2`` boundary components.
    """
    for a, b in spec.pairs:
        if a not in ob1.page.boundary:
            raise OpenBookError(f"{a!r} is not a boundary component of the first summand")
        if b not in ob2.page.boundary:
            raise OpenBookError(f"{b!r} is not a boundary component of the second summand")
    p = len(spec.pairs)
    pre1, curves1, word1 = _prefixed(ob1, "1")
    pre2, curves2, word2 = _prefixed(ob2, "2")
    curves = {**curves1, **curves2}
    navels: dict[str, TwistWord] = {}
    words = []
    for side, (ob, pre, word) in enumerate(((ob1, pre1, word1), (ob2, pre2, word2))):
        parts = [word]
        for pair_no, pair in enumerate(spec.pairs):
            k = pair[side]
            f = navel_word(ob, k)
            renamed = {pre(cid): d for cid, d in f.declarations.items()}
            neck = f"neck{pair_no}"
            for cid, d in renamed.items():
                if d.homology == "disk":
                    d = CurveDecl("interior", homology=neck)
                elif d.homology == "beyond-navel":
                    d = CurveDecl("interior", homology=f"encloses:{pre(k)}+{neck}")
                else:
                    d = replace(d, boundary=pre(d.boundary))
                curves[cid] = d
            fw = TwistWord(
                tuple(replace(t, curve=pre(t.curve)) for t in f.letters),
                isotopic_to_identity=False,
            )
            navels[pre(k)] = fw
            parts.append(fw)
        for w in parts:
            words.append(w)
    monodromy = TwistWord(tuple(t for w in words for t in w.letters))
    page = PageDescriptor(
        ob1.page.genus + ob2.page.genus + p - 1,
        tuple(pre1(x) for x in ob1.page.boundary) + tuple(pre2(x) for x in ob2.page.boundary),
        f"({ob1.page.label}) # ({ob2.page.label})",
    )
    return OpenBook(page, curves, monodromy, navels)


def _fresh(existing: Iterable[str], stem: str) -> str:
    existing = set(existing)
    n = 1
    while f"{stem}{n}" in existing:
        n += 1
    return f"{stem}{n}"


def positive_stabilize(ob: OpenBook, attach: tuple[str, str]) -> OpenBook:
    """Plumb a positive Hopf band along an arc with endpoints on ``attach``.

    Endpoints on one boundary component split it in two; endpoints on two
    components merge them and raise the genus.  The new core twist is
    appended to the monodromy.
    """
    a, b = attach
    bd = list(ob.page.boundary)
    if a not in bd or b not in bd:
        raise OpenBookError(f"invalid attachment endpoints {attach}")
    core = _fresh(ob.curves, "band")
    if a == b:
        new = _fresh(bd, f"{a}~")
        band = {"merge": [a, new]}
        page = PageDescriptor(ob.page.genus, tuple(bd + [new]), ob.page.label)
        homology = "core" if ob.page.genus == 0 and len(bd) == 1 else None
    else:
        if any(d.boundary == b for d in ob.curves.values()):
            raise OpenBookError(f"boundary {b!r} carries declared curves and cannot be merged")
        band = {"split": [a, b], "position": [bd.index(b)]}
        page = PageDescriptor(ob.page.genus + 1, tuple(x for x in bd if x != b), ob.page.label)
        homology = None
    curves = {**ob.curves, core: CurveDecl("interior", homology=homology, band=band)}
    return OpenBook(page, curves, ob.monodromy + TwistWord.of((core, 1)), ob.navels)


def declare_destabilizable(ob: OpenBook, curve: str, merge: tuple[str, str]) -> OpenBook:
    """Record that ``curve`` is the core of a Hopf band whose removal merges
    boundary components ``merge``.  Only the declaration is checked."""
    if curve not in ob.curves:
        raise OpenBookError(f"unknown curve {curve!r}")
    if any(m not in ob.page.boundary for m in merge) or merge[0] == merge[1]:
        raise OpenBookError(f"invalid boundary pair {merge}")
    curves = dict(ob.curves)
    curves[curve] = replace(curves[curve], band={"merge": list(merge)})
    return replace(ob, curves=curves)


def destabilize(ob: OpenBook, curve: str) -> OpenBook:
    decl = ob.curves.get(curve)
    if decl is None or not decl.destabilizable:
        raise OpenBookError(f"curve {curve!r} is not declared destabilizable")
    uses = [t for t in ob.monodromy.letters if t.curve == curve]
    if len(uses) != 1 or uses[0].sign != 1 or uses[0].mult != 1:
        raise OpenBookError(f"curve {curve!r} must occur exactly once as a positive twist")
    bd = list(ob.page.boundary)
    band = decl.band
    if "merge" in band:
        keep, gone = band["merge"]
        if any(d.boundary == gone for c, d in ob.curves.items() if c != curve):
            raise OpenBookError(f"boundary {gone!r} carries declared curves")
        page = PageDescriptor(ob.page.genus, tuple(x for x in bd if x != gone), ob.page.label)
    else:
        if ob.page.genus < 1:
            raise OpenBookError("band splits a boundary but the page has genus 0")
        keep, restored = band["split"]
        pos = band.get("position", [len(bd)])[0]
        bd.insert(pos, restored)
        page = PageDescriptor(ob.page.genus - 1, tuple(bd), ob.page.label)
    curves = {c: d for c, d in ob.curves.items() if c != curve}
    word = TwistWord(tuple(t for t in ob.monodromy.letters if t.curve != curve))
    return OpenBook(page, curves, word, ob.navels)


def page_invariants(ob: OpenBook) -> tuple[int, int, int, int]:
    """``(genus, boundary count, euler characteristic, word length)``."""
    p = ob.page
    return p.genus, len(p.boundary), p.euler_characteristic, len(ob.monodromy)


def giroux_torsion_presentation(ob: OpenBook) -> OpenBook:
    """Sum ``ob`` with two copies of ``(S^1 x [0,1], Id)`` in a cycle.

    The first two boundary components of ``ob`` are joined through the two
    annuli: ``K1 -- A -- B -- K2``.
    """
    if len(ob.page.boundary) < 2:
        raise OpenBookError("need at least two boundary components")
    k1, k2 = ob.page.boundary[:2]
    a = surface(0, 2, "A")
    first = binding_sum(ob, a, BindingSumSpec(((k1, "b0"),)))
    return binding_sum(
        first, surface(0, 2, "B"),
        BindingSumSpec((("2.b1", "b0"), (f"1.{k2}", "b1"))),
    )


# -- serialization ---------------------------------------------------------

def to_json(ob: OpenBook) -> dict:
    curves = {}
    for cid, d in ob.curves.items():
        entry: dict = {"kind": d.kind}
        if d.boundary is not None:
            entry["boundary"] = d.boundary
        if d.homology is not None:
            entry["homology"] = d.homology
        if d.band is not None:
            entry["band"] = {k: list(v) for k, v in d.band.items()}
        curves[cid] = entry
    return {
        "schema": SCHEMA,
        "kind": "openbook",
        "page": {"genus": ob.page.genus, "boundary": list(ob.page.boundary), "label": ob.page.label},
        "curves": curves,
        "monodromy": [[t.curve, t.sign, t.mult] for t in ob.monodromy.letters],
    }


def from_json(data: dict) -> OpenBook:
    page = data["page"]
    curves = {
        cid: CurveDecl(d["kind"], d.get("boundary"), d.get("homology"), d.get("band"))
        for cid, d in data.get("curves", {}).items()
    }
    word = TwistWord(tuple(Twist(c, s, m) for c, s, m in data.get("monodromy", [])))
    return OpenBook(PageDescriptor(page["genus"], tuple(page["boundary"]), page.get("label", "")), curves, word)


def summed_components(spec: BindingSumSpec) -> int:
    return 2 * len(spec.pairs)
