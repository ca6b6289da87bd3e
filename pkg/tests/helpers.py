"""Shared builders and small independent oracles for the tests."""

import itertools
import random
from fractions import Fraction

from chowtrees.degeneration import FamilyConfiguration
from chowtrees.exact import HyperplaneDirection, RationalPoly
from chowtrees.group import Configuration, GroupElement
from chowtrees.trees import Shape, StableTree, Vertex


def F(x):
    return Fraction(x)


def two_vertex_tree():
    """Mark 3 on the root at 1, marks 1 and 2 on a child attached at 0."""
    return StableTree(
        1, 3, 0,
        (Vertex(0, None, ((3, (1,)),), ((1, (0,)),)), Vertex(1, 0, ((1, (0,)), (2, (1,))), ())),
    )


def branched_tree(d=2):
    """Root with two branches: A holds mark 3 and a leaf with marks 1, 2; B holds marks 4, 5."""
    z = (0,) * (d - 1)
    return StableTree(
        d, 5, "R",
        (
            Vertex("R", None, (), (("A", (0,) + z), ("B", (1,) + z))),
            Vertex("A", "R", ((3, (1,) + z),), (("C", (0,) + z),)),
            Vertex("B", "R", ((4, (0,) + z), (5, (1,) + z)), ()),
            Vertex("C", "A", ((1, (0,) + z), (2, (1,) + z)), ()),
        ),
    )


def interior_tree(points):
    d = len(points[0])
    marks = tuple((i + 1, p) for i, p in enumerate(points))
    return StableTree(d, len(points), 0, (Vertex(0, None, marks, ()),))


def random_group_element(rng, d, span=9):
    w = Fraction(rng.choice([x for x in range(-span, span + 1) if x]), rng.randint(1, 4))
    u = tuple(Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(d))
    return GroupElement(w, u)


def random_configuration(rng, d, n, p_inf=0.2, span=5):
    pts = []
    for _ in range(n):
        if rng.random() < p_inf:
            y = [0] * d
            while all(c == 0 for c in y):
                y = [rng.randint(-3, 3) for _ in range(d)]
            pts.append(HyperplaneDirection(y))
        else:
            pts.append(tuple(Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(d)))
    return Configuration(d, tuple(pts))


def reparametrize(tree, seed):
    """Apply an independent random G element to every vertex chart (an isomorphic tree)."""
    rng = random.Random(seed)
    gs = {v.id: random_group_element(rng, tree.d) for v in tree.vertices}
    verts = []
    for v in tree.vertices:
        g = gs[v.id]
        verts.append(
            Vertex(v.id, v.parent, tuple((l, g.apply(p)) for l, p in v.marks),
                   tuple((c, g.apply(p)) for c, p in v.children))
        )
    rng.shuffle(verts)
    return StableTree(tree.d, tree.n, tree.root, tuple(verts))


def leibniz_det(M):
    """Determinant by the permutation expansion (small matrices only)."""
    k = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(k):
            term *= M[i][perm[i]]
        total += term
    return total


def minor_rank(M):
    """Largest r with a nonzero r x r minor."""
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    for r in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), r):
            for ci in itertools.combinations(range(cols), r):
                if leibniz_det([[M[i][j] for j in ci] for i in ri]) != 0:
                    return r
    return 0


def random_poly(rng, max_degree=4, span=6):
    return RationalPoly([Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(rng.randint(0, max_degree) + 1)])


def stepwise_contract(tree, v):
    """Component configuration by walking every mark up to the meet and down toward v.

    Going down an edge attached at p, an affine point q != p becomes the direction
    q - p on the child's hyperplane; a direction stays the same direction.
    """
    out = []
    down = list(reversed(tree.path_to_root(v)))  # root ... v
    for label in range(1, tree.n + 1):
        w = tree.mark_vertex(label)
        pos = tree.mark_position(label)
        path = tree.path_to_root(w)
        a = next(x for x in path if x in down)
        # climb from w to a
        cur, item = w, pos
        while cur != a:
            parent = tree.vertex(cur).parent
            item = tree.vertex(parent).attachments[cur]
            cur = parent
        # descend from a toward v
        for x, y in zip(down[down.index(a):], down[down.index(a) + 1:]):
            p = tree.vertex(x).attachments[y]
            if not isinstance(item, HyperplaneDirection):
                item = HyperplaneDirection(tuple(qi - pi for qi, pi in zip(item, p)))
        out.append(item)
    return Configuration(tree.d, tuple(out))


def family_from_shape(shape: Shape, d, rng, noise=True):
    """Points p_i(t) = sum over the path to label i of t^depth * (special point at that depth).

    Distinct special points per vertex make the limit tree have exactly this shape.
    """
    points = {}

    def walk(sh, depth, acc):
        pts = []
        while len(pts) < len(sh.marks) + len(sh.children):
            p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(d))
            if p not in pts:
                pts.append(p)
        here = [tuple(a + RationalPoly.t_power(depth, c) for a, c in zip(acc, p)) for p in pts]
        for label, q in zip(sh.marks, here):
            if noise and depth + 1 <= 4:
                q = tuple(a + RationalPoly.t_power(rng.randint(depth + 1, 4), rng.randint(-3, 3)) for a in q)
            points[label] = q
        for child, q in zip(sh.children, here[len(sh.marks):]):
            walk(child, depth + 1, q)

    walk(shape, 0, tuple(RationalPoly() for _ in range(d)))
    return FamilyConfiguration(d, tuple(points[i] for i in sorted(points)))


def random_small_family(rng, d, n):
    """Coefficients in {-1, 0, 1}, degree <= 4, so collisions happen by chance."""
    while True:
        pts = tuple(
            tuple(RationalPoly([rng.randint(-1, 1) for _ in range(rng.randint(1, 5))]) for _ in range(d))
            for _ in range(n)
        )
        if len(set(pts)) == n:
            return FamilyConfiguration(d, pts)


def nested_families():
    P = RationalPoly
    t = P.t_power
    return [
        FamilyConfiguration(1, ((P(),), (t(3),), (t(2),), (t(1),))),
        FamilyConfiguration(2, ((P(), P()), (t(3), P()), (P(), t(2)), (t(1), t(1)), (P([1]), P([1])))),
        FamilyConfiguration(3, ((P(), P(), P()), (t(4), t(4), P()), (t(3), P(), P()), (P(), t(2), P()),
                                (P(), P(), t(1)), (P([2]), P(), P()))),
        FamilyConfiguration(2, ((t(1), P()), (t(1) + t(2), P()), (t(1), t(3)), (P([1]), P()),
                                (P([1]) + t(2), P()), (P(), P([1])))),
    ]
