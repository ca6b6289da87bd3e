"""The line case d = 1: trees as stable pointed rational curves.

A tree with n marks is a stable curve with n + 1 marked points, the extra one
being the root hyperplane. Forgetting marks and contracting unstable
components gives maps to the three-mark space, a copy of P^1 coordinatized by
``(p_c - p_a) / (p_b - p_a)``. For n = 3 the orbit closures are hypersurfaces
of multidegree (1, 1, 1) in (P^1)^3, written out here as explicit forms.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .contraction import ConfigurationCycle
from .errors import BadLabels, ClassMismatch, InvalidTree, NotFullDimensional, ShapeMismatch
from .exact import INF, HyperplaneDirection, RationalPoly, rational
from .group import Configuration, stabilizer_dimension
from .trees import StableTree, Vertex, validate

# ---------------------------------------------------------------------------
# stabilization


def _require_line(tree: StableTree):
    if tree.d != 1:
        raise ShapeMismatch(f"line-case operation called with d = {tree.d}")


def forget(tree: StableTree, keep) -> StableTree:
    """Keep the marks in ``keep`` (relabelled 1..k in that order) and stabilize.

    Vertices left with a single special point are contracted until none remain:
    a lone mark moves to the parent's attachment point, a lone child is spliced
    into its grandparent at the same point. For d = 1 the gluing at an
    attachment is a point of P^0, so splicing never changes coordinates.
    """
    _require_line(tree)
    keep = tuple(keep)
    if len(set(keep)) != len(keep) or len(keep) < 2:
        raise BadLabels(f"need at least two distinct labels, got {keep}")
    if any(l not in range(1, tree.n + 1) for l in keep):
        raise BadLabels(f"labels {keep} outside 1..{tree.n}")
    relabel = {l: i for i, l in enumerate(keep, start=1)}

    parent = {v.id: v.parent for v in tree.vertices}
    marks = {v.id: {relabel[l]: p for l, p in v.marks if l in relabel} for v in tree.vertices}
    kids = {v.id: dict(v.children) for v in tree.vertices}
    root = tree.root

    changed = True
    while changed:
        changed = False
        for vid in list(marks):
            count = len(marks[vid]) + len(kids[vid])
            if count >= 2:
                continue
            up = parent[vid]
            if up is None:
                if count == 1 and kids[vid]:
                    (child,) = kids[vid]
                    parent[child] = None
                    root = child
                    del marks[vid], kids[vid], parent[vid]
                    changed = True
                continue
            at = kids[up].pop(vid)
            if marks[vid]:
                (label, _), = marks[vid].items()
                marks[up][label] = at
            elif kids[vid]:
                (child,) = kids[vid]
                kids[up][child] = at
                parent[child] = up
            del marks[vid], kids[vid], parent[vid]
            changed = True

    vertices = tuple(
        Vertex(vid, parent[vid], tuple(sorted(marks[vid].items())), tuple(kids[vid].items()))
        for vid in sorted(marks, key=lambda x: (str(type(x)), x))
    )
    return StableTree(1, len(keep), root, vertices)


# ---------------------------------------------------------------------------
# triple invariants


@dataclass(frozen=True)
class CrossRatioValue:
    """A point of P^1: a rational, or ``None`` for infinity."""

    value: Fraction | None

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def finite(cls, x):
        return cls(rational(x))

    def is_infinite(self):
        return self.value is None

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


def _interior_ratio(pa, pb, pc):
    return CrossRatioValue((pc - pa) / (pb - pa))


def _check_triple(tree: StableTree, triple):
    triple = tuple(triple)
    if len(triple) != 3 or len(set(triple)) != 3:
        raise BadLabels(f"need three distinct labels, got {triple}")
    if any(not isinstance(l, int) or not 1 <= l <= tree.n for l in triple):
        raise BadLabels(f"labels {triple} outside 1..{tree.n}")
    return triple


def triple_invariant(tree: StableTree, triple) -> CrossRatioValue:
    """Coordinate of the image of ``tree`` under forgetting all but three marks."""
    _require_line(tree)
    triple = _check_triple(tree, triple)
    problems = validate(tree)
    if problems:
        raise InvalidTree(problems[0])
    small = forget(tree, triple)
    if len(small.vertices) == 1:
        pos = dict(small.vertex(small.root).marks)
        return _interior_ratio(pos[1][0], pos[2][0], pos[3][0])
    (child,) = small.vertex(small.root).child_ids
    pair = small.labels_below(child)
    if pair == {1, 3}:
        return CrossRatioValue.finite(0)
    if pair == {2, 3}:
        return CrossRatioValue.finite(1)
    return CrossRatioValue.infinity()


def triple_invariant_by_meets(tree: StableTree, triple) -> CrossRatioValue:
    """The same coordinate read off at the meet of the three marks.

    At the meet, each mark sits on (or below) a special point. If the three
    special points are distinct the ratio of their positions is the answer;
    otherwise two marks share a branch and have collided.
    """
    _require_line(tree)
    a, b, c = _check_triple(tree, triple)
    va, vb, vc = (tree.mark_vertex(l) for l in (a, b, c))
    top = tree.meet(tree.meet(va, vb), vc)

    def position(label, w):
        if w == top:
            return tree.mark_position(label)
        path = tree.path_to_root(w)
        below = path[path.index(top) - 1]
        return tree.vertex(top).attachments[below]

    xa, xb, xc = position(a, va), position(b, vb), position(c, vc)
    if xa == xc:
        return CrossRatioValue.finite(0)
    if xb == xc:
        return CrossRatioValue.finite(1)
    if xa == xb:
        return CrossRatioValue.infinity()
    return _interior_ratio(xa[0], xb[0], xc[0])


def all_triples(n):
    return list(itertools.combinations(range(1, n + 1), 3))


def triple_vector(tree: StableTree) -> tuple:
    """All triple invariants, in lexicographic order of the triples."""
    return tuple(triple_invariant(tree, t) for t in all_triples(tree.n))


def separates(t1: StableTree, t2: StableTree) -> bool:
    """True iff some triple invariant differs between the two trees."""
    _require_line(t1)
    _require_line(t2)
    if t1.n != t2.n:
        raise ShapeMismatch(f"n = {t1.n} vs {t2.n}")
    return any(triple_invariant(t1, t) != triple_invariant(t2, t) for t in all_triples(t1.n))


# ---------------------------------------------------------------------------
# boundary divisors of the curve moduli space


def on_boundary_divisor(tree: StableTree, side) -> bool:
    """Whether the node splitting off ``side`` exists (labels in 1..n+1, n+1 = root)."""
    side = frozenset(side)
    root_label = tree.n + 1
    if root_label in side:
        side = frozenset(range(1, tree.n + 2)) - side
    return any(tree.labels_below(v.id) == side for v in tree.vertices if v.parent is not None)


def quadruple_split(tree: StableTree, labels):
    """Stabilize to four labels (root label n+1 among them).

    Returns None when the result is a single component, else the pair of labels
    that split off together away from the root. Read off the triple coordinate:
    a boundary value 0, 1 or infinity names the collided pair.
    """
    root_label = tree.n + 1
    marks = sorted(l for l in labels if l != root_label)
    if len(marks) != 3 or len(set(labels)) != 4:
        raise BadLabels(f"need four labels including {root_label}, got {sorted(labels)}")
    return _split_from_value(marks, triple_invariant_by_meets(tree, marks))


def _split_from_value(marks, value):
    a, b, c = marks
    if value.value == 0:
        return frozenset((a, c))
    if value.value == 1:
        return frozenset((b, c))
    if value.is_infinite():
        return frozenset((a, b))
    return None


def divisor_witness(tree: StableTree, K, L, interior=True):
    """Pairs K' in K, L' in L, with the root label among them, or None.

    With ``interior`` the four labels must stabilize to a single component;
    otherwise it is enough that they avoid the divisor splitting K' from L'.
    """
    root_label = tree.n + 1
    for kp in itertools.combinations(sorted(K), 2):
        for lp in itertools.combinations(sorted(L), 2):
            labels = set(kp) | set(lp)
            if root_label not in labels:
                continue
            split = quadruple_split(tree, labels)
            if split is None or (not interior and split not in (frozenset(kp), frozenset(lp))):
                return kp, lp
    return None


def divisor_witness_failures(tree: StableTree, interior=True) -> list:
    """Partitions (K, L) off the tree's boundary divisors that admit no witness."""
    _require_line(tree)
    everything = range(1, tree.n + 2)
    failures = []
    for size in range(2, tree.n):
        for K in itertools.combinations(everything, size):
            if 1 not in K:
                continue  # each unordered partition once
            K = frozenset(K)
            L = frozenset(everything) - K
            if on_boundary_divisor(tree, K):
                continue
            if divisor_witness(tree, K, L, interior) is None:
                failures.append((K, L))
    return failures


# ---------------------------------------------------------------------------
# marked curves


@dataclass(frozen=True)
class MarkedCurve:
    """A nodal chain of P^1's: ``points[c]`` maps special-point keys to (x : z) pairs.

    Keys are ``("mark", label)`` or ``("node", edge_index)``; ``edges[i]`` is the
    pair of components joined by node i.
    """

    n_marks: int
    points: dict
    edges: tuple

    def is_stable(self):
        return all(len(pts) >= 3 for pts in self.points.values())


def _proj(pair):
    x, z = (rational(c) for c in pair)
    if x == 0 and z == 0:
        raise ValueError("(0 : 0) is not a point")
    return (x / z, Fraction(1)) if z != 0 else (Fraction(1), Fraction(0))


def to_marked_curve(tree: StableTree) -> MarkedCurve:
    _require_line(tree)
    points = {}
    edges = []
    for v in tree.vertices:
        points[v.id] = {("mark", l): (p[0], Fraction(1)) for l, p in v.marks}
    points[tree.root][("mark", tree.n + 1)] = (Fraction(1), Fraction(0))
    for v in tree.vertices:
        for c, p in v.children:
            key = ("node", len(edges))
            edges.append((v.id, c))
            points[v.id][key] = (p[0], Fraction(1))
            points[c][key] = (Fraction(1), Fraction(0))
    return MarkedCurve(tree.n, points, tuple(edges))


def _moebius(m, pair):
    a, b, c, d = m
    x, z = pair
    return _proj((a * x + b * z, c * x + d * z))


def scramble(curve: MarkedCurve, seed) -> MarkedCurve:
    """Apply an independent random Moebius map to every component."""
    rng = random.Random(seed)
    points = {}
    for comp in sorted(curve.points, key=str):
        while True:
            m = tuple(Fraction(rng.randint(-9, 9)) for _ in range(4))
            if m[0] * m[3] - m[1] * m[2] != 0:
                break
        points[comp] = {k: _moebius(m, p) for k, p in curve.points[comp].items()}
    return MarkedCurve(curve.n_marks, points, curve.edges)


def from_marked_curve(curve: MarkedCurve) -> StableTree:
    """Root at the component with the last mark; send each hyperplane point to infinity."""
    root_key = ("mark", curve.n_marks + 1)
    root = next(c for c, pts in curve.points.items() if root_key in pts)
    vertices = []
    stack = [(root, None, root_key)]
    while stack:
        comp, parent, at_infinity = stack.pop()
        hx, hz = curve.points[comp][at_infinity]

        def coordinate(pair):
            x, z = pair
            den = x * hz - z * hx
            num = x if hz == 0 else z
            return (num / den,)

        marks, children = [], []
        for key, pair in curve.points[comp].items():
            if key == at_infinity:
                continue
            if key[0] == "mark":
                marks.append((key[1], coordinate(pair)))
            else:
                a, b = curve.edges[key[1]]
                other = b if a == comp else a
                children.append((other, coordinate(pair)))
                stack.append((other, comp, key))
        vertices.append(Vertex(comp, parent, tuple(sorted(marks)), tuple(children)))
    return StableTree(1, curve.n_marks, root, tuple(vertices))


# ---------------------------------------------------------------------------
# multilinear forms on (P^1)^3


def monomials(degree) -> list:
    """Exponent tuples ((a1, b1), (a2, b2), ...) for x_i^a z_i^b; x before z per slot."""
    per_slot = [[(k - j, j) for j in range(k + 1)] for k in degree]
    return list(itertools.product(*per_slot))


def monomial_name(mono) -> str:
    parts = []
    for i, (a, b) in enumerate(mono, start=1):
        parts += [f"x{i}"] * a + [f"z{i}"] * b
    return "".join(parts) or "1"


@dataclass(frozen=True)
class MultilinearForm:
    """A multihomogeneous form on (P^1)^3 up to scale (first nonzero coefficient 1).

    ``coeffs`` follows :func:`monomials` of ``degree``; for degree (1, 1, 1)
    that is x1x2x3, x1x2z3, ..., z1z2z3.
    """

    degree: tuple
    coeffs: tuple

    def __init__(self, degree, coeffs):
        degree = tuple(int(k) for k in degree)
        coeffs = tuple(rational(c) for c in coeffs)
        if len(coeffs) != len(monomials(degree)):
            raise ValueError(f"degree {degree} needs {len(monomials(degree))} coefficients")
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            raise ValueError("the zero form")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", tuple(c / lead for c in coeffs))

    def terms(self):
        return dict(zip(monomials(self.degree), self.coeffs))

    def __mul__(self, other):
        if len(self.degree) != len(other.degree):
            raise ValueError("forms on different products")
        degree = tuple(a + b for a, b in zip(self.degree, other.degree))
        out = {m: Fraction(0) for m in monomials(degree)}
        for m1, c1 in self.terms().items():
            if not c1:
                continue
            for m2, c2 in other.terms().items():
                if c2:
                    m = tuple((a1 + a2, b1 + b2) for (a1, b1), (a2, b2) in zip(m1, m2))
                    out[m] += c1 * c2
        return MultilinearForm(degree, [out[m] for m in monomials(degree)])

    def __call__(self, points):
        """Value at homogeneous coordinates ``[(x1, z1), (x2, z2), (x3, z3)]``."""
        total = Fraction(0)
        for mono, c in self.terms().items():
            if c:
                term = c
                for (a, b), (x, z) in zip(mono, points):
                    term *= rational(x) ** a * rational(z) ** b
                total += term
        return total

    def __str__(self):
        out = []
        for mono, c in self.terms().items():
            if c:
                out.append(f"{c}*{monomial_name(mono)}")
        return " + ".join(out)


def unit_form(slots=3):
    return MultilinearForm((0,) * slots, (1,))


def interior_form_coefficients(p1, p2, p3) -> tuple:
    """Unnormalized (1,1,1) coefficients of the orbit closure of three line points."""
    p1, p2, p3 = (rational(p) for p in (p1, p2, p3))
    table = dict.fromkeys(monomials((1, 1, 1)), Fraction(0))
    table[((1, 0), (0, 1), (0, 1))] = p2 - p3
    table[((0, 1), (1, 0), (0, 1))] = p3 - p1
    table[((0, 1), (0, 1), (1, 0))] = p1 - p2
    return tuple(table[m] for m in monomials((1, 1, 1)))


def _slot_form(slot, terms, slots=3):
    """Form supported on the given slots, from {exponent tuple over those slots: coeff}."""
    degree = tuple(1 if i in slot else 0 for i in range(slots))
    full = {}
    for key, c in terms.items():
        mono = []
        it = iter(key)
        for i in range(slots):
            mono.append(next(it) if i in slot else (0, 0))
        full[tuple(mono)] = c
    return MultilinearForm(degree, [full.get(m, 0) for m in monomials(degree)])


def chow_form_111(c: Configuration) -> MultilinearForm:
    """Defining form of the orbit closure of a full-dimensional line configuration of three points."""
    if c.d != 1 or c.n != 3:
        raise ShapeMismatch(f"need d = 1, n = 3; got d = {c.d}, n = {c.n}")
    if stabilizer_dimension(c) != 0:
        raise NotFullDimensional("orbit is not full-dimensional")
    form = unit_form()
    affine = {}
    for i, p in enumerate(c.points):
        if isinstance(p, HyperplaneDirection):
            # the orbit closure lies in {z_i = 0}
            form = form * _slot_form({i}, {((0, 1),): 1})
        else:
            affine.setdefault(p[0], []).append(i)
    if len(affine) == 3:
        return MultilinearForm((1, 1, 1), interior_form_coefficients(*(c.points[i][0] for i in range(3))))
    for group in affine.values():
        if len(group) == 2:
            i, j = group
            form = form * _slot_form({i, j}, {((1, 0), (0, 1)): 1, ((0, 1), (1, 0)): -1})
    return form


def chow_form_of_cycle(z: ConfigurationCycle) -> MultilinearForm:
    """Product of the member forms; the total must have multidegree (1, 1, 1)."""
    form = unit_form()
    for member in z:
        form = form * chow_form_111(member.config)
    if form.degree != (1, 1, 1):
        raise ClassMismatch(f"cycle form has multidegree {form.degree}")
    return form


def family_form_limit(points) -> MultilinearForm:
    """t -> 0 limit of the forms of a family of three line points (polynomials in t)."""
    p1, p2, p3 = (q if isinstance(q, RationalPoly) else RationalPoly(q) for q in points)
    raw = dict.fromkeys(monomials((1, 1, 1)), RationalPoly())
    raw[((1, 0), (0, 1), (0, 1))] = p2 - p3
    raw[((0, 1), (1, 0), (0, 1))] = p3 - p1
    raw[((0, 1), (0, 1), (1, 0))] = p1 - p2
    polys = [raw[m] for m in monomials((1, 1, 1))]
    k = min(q.valuation() for q in polys)
    if k == INF:
        raise ValueError("family has coincident points identically")
    return MultilinearForm((1, 1, 1), [q.coeff(k) for q in polys])


__all__ = [
    "CrossRatioValue",
    "MarkedCurve",
    "MultilinearForm",
    "all_triples",
    "divisor_witness_failures",
    "divisor_witness",
    "chow_form_111",
    "chow_form_of_cycle",
    "family_form_limit",
    "forget",
    "from_marked_curve",
    "interior_form_coefficients",
    "monomial_name",
    "monomials",
    "on_boundary_divisor",
    "quadruple_split",
    "scramble",
    "separates",
    "to_marked_curve",
    "triple_invariant",
    "triple_invariant_by_meets",
    "triple_vector",
]
