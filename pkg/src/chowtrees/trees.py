"""Stable rooted trees of pointed P^d's: data model, validation, combinatorics.

Each vertex stores its special points in the affine chart of its blow-down,
with the vertex hyperplane at infinity. A child attached at ``p`` has its
hyperplane glued to the exceptional divisor over ``p`` by the standard
identification: direction ``y`` at ``p`` is the child's point ``(0 : y)``.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidShape, NotAncestor, UnknownVertex
from .exact import affine_point, rational
from .group import Configuration, canonical_form as canonical_configuration


@dataclass(frozen=True)
class Vertex:
    id: object
    parent: object
    marks: tuple  # ((label, point), ...)
    children: tuple  # ((child_id, attachment point), ...)

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple((int(l), affine_point(p)) for l, p in self.marks))
        object.__setattr__(self, "children", tuple((c, affine_point(p)) for c, p in self.children))

    @property
    def attachments(self):
        return dict(self.children)

    @property
    def child_ids(self):
        return [c for c, _ in self.children]

    def special_points(self):
        return [p for _, p in self.marks] + [p for _, p in self.children]


@dataclass(frozen=True)
class StableTree:
    d: int
    n: int
    root: object
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @cached_property
    def _index(self):
        return {v.id: v for v in self.vertices}

    def vertex(self, vid) -> Vertex:
        try:
            return self._index[vid]
        except (KeyError, TypeError):
            raise UnknownVertex(f"no vertex {vid!r}") from None

    def __contains__(self, vid):
        try:
            return vid in self._index
        except TypeError:
            return False

    @cached_property
    def _mark_vertex(self):
        return {label: v.id for v in self.vertices for label, _ in v.marks}

    def mark_vertex(self, label):
        return self._mark_vertex[label]

    def mark_position(self, label):
        v = self.vertex(self.mark_vertex(label))
        return dict(v.marks)[label]

    def path_to_root(self, vid):
        """[vid, parent, ..., root]."""
        path = [vid]
        v = self.vertex(vid)
        while v.parent is not None:
            path.append(v.parent)
            v = self.vertex(v.parent)
        return path

    def depth(self, vid):
        return len(self.path_to_root(vid)) - 1

    def meet(self, v, w):
        """Deepest common ancestor."""
        anc = set(self.path_to_root(v))
        for x in self.path_to_root(w):
            if x in anc:
                return x
        raise UnknownVertex("vertices are not in a common tree")

    def labels_below(self, vid):
        """Mark labels carried at or below vertex ``vid``."""
        out = set()
        stack = [vid]
        while stack:
            v = self.vertex(stack.pop())
            out.update(l for l, _ in v.marks)
            stack.extend(v.child_ids)
        return frozenset(out)

    def preorder(self):
        """Root first; children ordered by attachment point."""
        order = []
        stack = [self.root]
        while stack:
            vid = stack.pop()
            order.append(vid)
            kids = sorted(self.vertex(vid).children, key=lambda c: c[1])
            stack.extend(c for c, _ in reversed(kids))
        return order

    @property
    def edges(self):
        return [(v.parent, v.id) for v in self.vertices if v.parent is not None]


# ---------------------------------------------------------------------------
# validation


def validate(tree: StableTree) -> list:
    """Return the list of violated conditions; empty means valid."""
    errs = []
    if tree.d < 1:
        errs.append(f"dimension d={tree.d} must be >= 1")
    if tree.n < 2:
        errs.append(f"n={tree.n} must be >= 2")
    ids = [v.id for v in tree.vertices]
    if len(set(ids)) != len(ids):
        errs.append("duplicate vertex ids")
        return errs
    index = {v.id: v for v in tree.vertices}
    if tree.root not in index:
        errs.append(f"root {tree.root!r} is not a vertex")
        return errs
    if index[tree.root].parent is not None:
        errs.append("root has a parent")
    for v in tree.vertices:
        if v.id != tree.root:
            if v.parent is None:
                errs.append(f"vertex {v.id!r} has no parent but is not the root")
            elif v.parent not in index:
                errs.append(f"vertex {v.id!r} has unknown parent {v.parent!r}")
            elif v.id not in index[v.parent].child_ids:
                errs.append(f"vertex {v.id!r} is not listed among the children of {v.parent!r}")
        kids = v.child_ids
        if len(set(kids)) != len(kids):
            errs.append(f"vertex {v.id!r} lists a child twice")
        for c in kids:
            if c not in index:
                errs.append(f"vertex {v.id!r} has unknown child {c!r}")
            elif index[c].parent != v.id:
                errs.append(f"child {c!r} of {v.id!r} names parent {index[c].parent!r}")
    if errs:
        return errs
    # connectivity / acyclicity from the root
    seen = set()
    stack = [tree.root]
    while stack:
        vid = stack.pop()
        if vid in seen:
            errs.append(f"cycle through vertex {vid!r}")
            return errs
        seen.add(vid)
        stack.extend(index[vid].child_ids)
    if seen != set(ids):
        errs.append("dual graph is not a tree rooted at the root vertex")
        return errs

    labels = [l for v in tree.vertices for l, _ in v.marks]
    if sorted(labels) != list(range(1, tree.n + 1)):
        errs.append(f"mark labels {sorted(labels)} do not partition 1..{tree.n}")
    for v in tree.vertices:
        pts = v.special_points()
        for p in pts:
            if len(p) != tree.d:
                errs.append(f"vertex {v.id!r}: point {tuple(map(str, p))} has wrong dimension")
        if len(set(pts)) != len(pts):
            errs.append(f"vertex {v.id!r}: special points are not distinct")
        if len(pts) < 2:
            errs.append(f"vertex {v.id!r}: needs at least two special points, has {len(pts)}")
    return errs


def is_valid(tree: StableTree) -> bool:
    return not validate(tree)


# ---------------------------------------------------------------------------
# order and combinatorics


class Order(enum.Enum):
    EQUAL = "Equal"
    ANCESTOR = "Ancestor"
    DESCENDANT = "Descendant"
    INCOMPARABLE = "Incomparable"


def partial_order(tree: StableTree, v, w) -> Order:
    """How ``v`` relates to ``w``: ANCESTOR means v < w (root is minimal)."""
    tree.vertex(v), tree.vertex(w)
    if v == w:
        return Order.EQUAL
    if v in tree.path_to_root(w):
        return Order.ANCESTOR
    if w in tree.path_to_root(v):
        return Order.DESCENDANT
    return Order.INCOMPARABLE


def daughter_toward(tree: StableTree, v, w):
    """The daughter of ``v`` determined by ``w`` (requires v < w)."""
    path = tree.path_to_root(w)
    if v == w or v not in path:
        raise NotAncestor(f"{v!r} is not a strict ancestor of {w!r}")
    return path[path.index(v) - 1]


def determined_attachment(tree: StableTree, v, w):
    """Point of the blow-down at ``v`` determined by the descendant ``w``."""
    return tree.vertex(v).attachments[daughter_toward(tree, v, w)]


def boundary_decomposition(tree: StableTree) -> list:
    """One label set per edge: the marks at or below the child endpoint."""
    return [tree.labels_below(vid) for vid in tree.preorder() if vid != tree.root]


def is_maximally_degenerate(tree: StableTree) -> bool:
    return all(len(v.marks) + len(v.children) == 2 for v in tree.vertices)


# ---------------------------------------------------------------------------
# strata shapes


@dataclass(frozen=True)
class Shape:
    """Coordinate-free stratum signature: marks on a vertex plus child shapes."""

    marks: tuple
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(sorted(self.marks)))
        kids = tuple(sorted(self.children, key=lambda s: min(s.labels())))
        object.__setattr__(self, "children", kids)

    def labels(self):
        out = set(self.marks)
        for c in self.children:
            out |= c.labels()
        return frozenset(out)

    def num_vertices(self):
        return 1 + sum(c.num_vertices() for c in self.children)

    def problems(self):
        out = []
        if len(self.marks) + len(self.children) < 2:
            out.append(f"vertex with marks {list(self.marks)} has fewer than two special points")
        for c in self.children:
            out.extend(c.problems())
        seen = list(self.marks)
        for c in self.children:
            seen.extend(c.labels())
        if len(seen) != len(set(seen)):
            out.append("a label occurs twice")
        return out

    def is_valid(self):
        return not self.problems()

    def __str__(self):
        inner = ",".join(map(str, self.marks))
        kids = "".join(f"[{c}]" for c in self.children)
        return f"{{{inner}}}{kids}"


def signature(tree: StableTree) -> Shape:
    def build(vid):
        v = tree.vertex(vid)
        return Shape(tuple(l for l, _ in v.marks), tuple(build(c) for c in v.child_ids))

    return build(tree.root)


def _blocks_at_least_two(items):
    """All set partitions of ``items`` into blocks of size >= 2."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k in range(1, len(rest) + 1):
        for mates in itertools.combinations(rest, k):
            remaining = [x for x in rest if x not in mates]
            for tail in _blocks_at_least_two(remaining):
                yield [(first,) + mates] + tail


def enumerate_shapes(labels) -> list:
    """Every stable shape on the given label set (|labels| >= 2)."""
    labels = tuple(sorted(labels))
    out = []
    for r in range(len(labels) + 1):
        for marks in itertools.combinations(labels, r):
            rest = [x for x in labels if x not in marks]
            for blocks in _blocks_at_least_two(rest):
                if len(marks) + len(blocks) < 2:
                    continue
                for kids in itertools.product(*(enumerate_shapes(b) for b in blocks)):
                    out.append(Shape(marks, kids))
    return out


def enumerate_binary_shapes(labels) -> list:
    """Shapes where every vertex has exactly two special points."""
    labels = tuple(sorted(labels))
    if len(labels) == 2:
        return [Shape(labels)]
    out = []
    first, rest = labels[0], labels[1:]
    # split into two nonempty branches; `first` lives in the left branch
    for k in range(0, len(rest)):
        for mates in itertools.combinations(rest, k):
            left = (first,) + mates
            right = tuple(x for x in rest if x not in mates)
            for a in _branch(left):
                for b in _branch(right):
                    marks = tuple(x for x in (a, b) if isinstance(x, int))
                    kids = tuple(x for x in (a, b) if isinstance(x, Shape))
                    out.append(Shape(marks, kids))
    return out


def _branch(labels):
    if len(labels) == 1:
        return [labels[0]]
    return enumerate_binary_shapes(labels)


def random_shape(labels, rng: random.Random) -> Shape:
    labels = list(labels)
    if len(labels) < 2:
        raise InvalidShape("need at least two labels")
    while True:
        rng.shuffle(labels)
        n_marks = rng.randint(0, len(labels))
        marks, rest = labels[:n_marks], labels[n_marks:]
        blocks = []
        while len(rest) >= 2:
            size = rng.randint(2, len(rest))
            blocks.append(rest[:size])
            rest = rest[size:]
        marks += rest
        if len(marks) + len(blocks) >= 2:
            return Shape(tuple(marks), tuple(random_shape(b, rng) for b in blocks))


def _random_coord(rng):
    return rational(rng.randint(-40, 40)) / rng.randint(1, 6)


def random_tree(d: int, n: int, shape: Shape, seed) -> StableTree:
    """Stable tree of the given shape with random distinct rational coordinates."""
    problems = shape.problems()
    if sorted(shape.labels()) != list(range(1, n + 1)):
        problems.append(f"shape labels {sorted(shape.labels())} are not 1..{n}")
    if problems:
        raise InvalidShape("; ".join(problems))
    rng = random.Random(seed)
    vertices = []
    counter = itertools.count()

    def build(sh, parent):
        vid = next(counter)
        pts = []
        while len(pts) < len(sh.marks) + len(sh.children):
            p = tuple(_random_coord(rng) for _ in range(d))
            if p not in pts:
                pts.append(p)
        marks = tuple(zip(sh.marks, pts))
        slot = len(sh.marks)
        children = []
        for i, child in enumerate(sh.children):
            children.append((build(child, vid), pts[slot + i]))
        vertices.append(Vertex(vid, parent, marks, tuple(children)))
        return vid

    root = build(shape, None)
    vertices.sort(key=lambda v: v.id)
    return StableTree(d, n, root, tuple(vertices))


# ---------------------------------------------------------------------------
# equality up to isomorphism


def canonical_form(tree: StableTree):
    """Hashable key equal for two trees iff they are isomorphic.

    Isomorphisms act on each vertex chart by an element of G, independently per
    vertex, so the key canonicalizes each vertex's special points (ordered by
    smallest label reached through them) and recurses into children.
    """

    def key(vid):
        v = tree.vertex(vid)
        entries = [(l, ("mark", l), p) for l, p in v.marks]
        for c, p in v.children:
            entries.append((min(tree.labels_below(c)), ("child", key(c)), p))
        entries.sort(key=lambda e: e[0])
        conf = canonical_configuration(Configuration(tree.d, tuple(p for _, _, p in entries)))
        return tuple((tag, pt) for (_, tag, _), pt in zip(entries, conf.points))

    return (tree.d, tree.n, key(tree.root))


def trees_equal(t1: StableTree, t2: StableTree) -> bool:
    return canonical_form(t1) == canonical_form(t2)
