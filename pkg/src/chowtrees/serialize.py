"""JSON codecs for every exchanged type. Rationals travel as ``"a/b"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .classes import KunnethClass
from .contraction import ComponentConfiguration, ConfigurationCycle
from .curves import CrossRatioValue, MultilinearForm, monomial_name, monomials
from .degeneration import FamilyConfiguration
from .errors import DimensionMismatch, MalformedInput
from .exact import HyperplaneDirection, RationalPoly
from .group import Configuration, GroupElement
from .trees import StableTree, Vertex

# ---------------------------------------------------------------------------
# scalars


def dump_rational(x) -> str:
    return str(Fraction(x))


def load_rational(obj, where="") -> Fraction:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise MalformedInput(f"expected a rational string, got {obj!r}", where)
    try:
        return Fraction(obj)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput(f"not a rational: {obj!r}", where) from None


def _list(obj, where):
    if not isinstance(obj, list):
        raise MalformedInput(f"expected a list, got {type(obj).__name__}", where)
    return obj


def _obj(obj, where, keys):
    if not isinstance(obj, dict):
        raise MalformedInput(f"expected an object, got {type(obj).__name__}", where)
    for k in keys:
        if k not in obj:
            raise MalformedInput(f"missing field {k!r}", where)
    return obj


def _int(obj, where):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise MalformedInput(f"expected an integer, got {obj!r}", where)
    return obj


def _vertex_id(obj, where):
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise MalformedInput(f"vertex ids are integers or strings, got {obj!r}", where)
    return obj


def dump_point(p) -> list:
    return [dump_rational(x) for x in p]


def load_point(obj, where="") -> tuple:
    return tuple(load_rational(x, f"{where}[{i}]") for i, x in enumerate(_list(obj, where)))


def dump_poly(p: RationalPoly) -> list:
    return [dump_rational(c) for c in p.coeffs]


def load_poly(obj, where="") -> RationalPoly:
    return RationalPoly(load_point(obj, where))


# ---------------------------------------------------------------------------
# group and configurations


def dump_group_element(g: GroupElement) -> dict:
    return {"w": dump_rational(g.w), "u": dump_point(g.u)}


def load_group_element(obj, where="group") -> GroupElement:
    _obj(obj, where, ("w", "u"))
    w = load_rational(obj["w"], f"{where}.w")
    if w == 0:
        raise MalformedInput("w must be nonzero", f"{where}.w")
    return GroupElement(w, load_point(obj["u"], f"{where}.u"))


def dump_configuration(c: Configuration) -> dict:
    pts = []
    for p in c.points:
        if isinstance(p, HyperplaneDirection):
            pts.append({"infinity": dump_point(p.coords)})
        else:
            pts.append({"affine": dump_point(p)})
    return {"d": c.d, "points": pts}


def _load_entry(obj, where):
    if not isinstance(obj, dict) or len(obj) != 1 or not ({"affine", "infinity"} & set(obj)):
        raise MalformedInput('expected {"affine": [...]} or {"infinity": [...]}', where)
    if "affine" in obj:
        return load_point(obj["affine"], f"{where}.affine")
    coords = load_point(obj["infinity"], f"{where}.infinity")
    if all(x == 0 for x in coords):
        raise MalformedInput("direction is zero", f"{where}.infinity")
    return HyperplaneDirection(coords)


def load_configuration(obj, where="config") -> Configuration:
    _obj(obj, where, ("d", "points"))
    d = _int(obj["d"], f"{where}.d")
    pts = [_load_entry(p, f"{where}.points[{i}]") for i, p in enumerate(_list(obj["points"], f"{where}.points"))]
    try:
        return Configuration(d, tuple(pts))
    except DimensionMismatch as e:
        raise MalformedInput(str(e), f"{where}.points") from None


def dump_cycle(z: ConfigurationCycle) -> list:
    return [{"vertex": m.vertex, **dump_configuration(m.config)} for m in z]


def load_cycle(obj, where="cycle") -> ConfigurationCycle:
    members = []
    for i, rec in enumerate(_list(obj, where)):
        w = f"{where}[{i}]"
        _obj(rec, w, ("vertex",))
        vid = _vertex_id(rec["vertex"], f"{w}.vertex")
        members.append(ComponentConfiguration(vid, load_configuration(rec, w)))
    return ConfigurationCycle(tuple(members))


# ---------------------------------------------------------------------------
# trees


def dump_tree(t: StableTree) -> dict:
    return {
        "d": t.d,
        "n": t.n,
        "root": t.root,
        "vertices": [
            {
                "id": v.id,
                "parent": v.parent,
                "marks": [{"label": l, "at": dump_point(p)} for l, p in v.marks],
                "children": [{"id": c, "at": dump_point(p)} for c, p in v.children],
            }
            for v in t.vertices
        ],
    }


def load_tree(obj, where="tree") -> StableTree:
    _obj(obj, where, ("d", "n", "root", "vertices"))
    d = _int(obj["d"], f"{where}.d")
    n = _int(obj["n"], f"{where}.n")
    root = _vertex_id(obj["root"], f"{where}.root")
    vertices = []
    for i, rec in enumerate(_list(obj["vertices"], f"{where}.vertices")):
        w = f"{where}.vertices[{i}]"
        _obj(rec, w, ("id", "parent", "marks", "children"))
        vid = _vertex_id(rec["id"], f"{w}.id")
        parent = None if rec["parent"] is None else _vertex_id(rec["parent"], f"{w}.parent")
        marks = []
        for j, m in enumerate(_list(rec["marks"], f"{w}.marks")):
            mw = f"{w}.marks[{j}]"
            _obj(m, mw, ("label", "at"))
            marks.append((_int(m["label"], f"{mw}.label"), load_point(m["at"], f"{mw}.at")))
        children = []
        for j, c in enumerate(_list(rec["children"], f"{w}.children")):
            cw = f"{w}.children[{j}]"
            _obj(c, cw, ("id", "at"))
            children.append((_vertex_id(c["id"], f"{cw}.id"), load_point(c["at"], f"{cw}.at")))
        vertices.append(Vertex(vid, parent, tuple(marks), tuple(children)))
    return StableTree(d, n, root, tuple(vertices))


# ---------------------------------------------------------------------------
# classes, families, forms, cross-ratios


def dump_class(k: KunnethClass) -> list:
    return [{"m": list(m), "coeff": c} for m, c in sorted(k.coeffs)]


def load_class(obj, d, n, where="class") -> KunnethClass:
    table = {}
    for i, rec in enumerate(_list(obj, where)):
        w = f"{where}[{i}]"
        _obj(rec, w, ("m", "coeff"))
        m = tuple(_int(x, f"{w}.m") for x in _list(rec["m"], f"{w}.m"))
        table[m] = _int(rec["coeff"], f"{w}.coeff")
    return KunnethClass.from_dict(d, n, table)


def dump_family(f: FamilyConfiguration) -> dict:
    return {"d": f.d, "points": [[dump_poly(q) for q in p] for p in f.points]}


def load_family(obj, where="family") -> FamilyConfiguration:
    _obj(obj, where, ("d", "points"))
    d = _int(obj["d"], f"{where}.d")
    pts = []
    for i, p in enumerate(_list(obj["points"], f"{where}.points")):
        w = f"{where}.points[{i}]"
        coords = tuple(load_poly(q, f"{w}[{j}]") for j, q in enumerate(_list(p, w)))
        if len(coords) != d:
            raise MalformedInput(f"expected {d} coordinates, got {len(coords)}", w)
        pts.append(coords)
    return FamilyConfiguration(d, tuple(pts))


def dump_form(f: MultilinearForm) -> dict:
    return {
        "degree": list(f.degree),
        "monomials": [monomial_name(m) for m in monomials(f.degree)],
        "coefficients": [dump_rational(c) for c in f.coeffs],
    }


def load_form(obj, where="form") -> MultilinearForm:
    _obj(obj, where, ("degree", "coefficients"))
    degree = tuple(_int(k, f"{where}.degree") for k in _list(obj["degree"], f"{where}.degree"))
    coeffs = load_point(obj["coefficients"], f"{where}.coefficients")
    try:
        return MultilinearForm(degree, coeffs)
    except ValueError as e:
        raise MalformedInput(str(e), where) from None


def dump_cross_ratio(v: CrossRatioValue) -> str:
    return str(v)


def load_cross_ratio(obj, where="value") -> CrossRatioValue:
    if obj == "inf":
        return CrossRatioValue.infinity()
    return CrossRatioValue(load_rational(obj, where))


# ---------------------------------------------------------------------------
# text


def parse_json(text: str, source="input"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"invalid JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}") from None


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
