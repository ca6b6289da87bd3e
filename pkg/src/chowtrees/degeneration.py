"""Limits of one-parameter polynomial families of distinct affine configurations.

At each cluster S of labels, with base point b = p_min(S), rescale
``(p_i - b) / t^k`` with k the minimal valuation of a difference in S and set
t = 0. Labels with equal limits form sub-clusters, each of which becomes a child
attached at the common limit; this is the usual screens construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .contraction import contract
from .errors import DimensionMismatch, NotGenericallyDistinct, UnknownVertex
from .exact import INF, HyperplaneDirection, RationalPoly, rational, vector_valuation
from .group import Configuration, canonical_form
from .trees import StableTree, Vertex


@dataclass(frozen=True)
class FamilyConfiguration:
    d: int
    points: tuple  # n tuples of d RationalPolys

    def __post_init__(self):
        pts = []
        for p in self.points:
            p = tuple(q if isinstance(q, RationalPoly) else RationalPoly(q) for q in p)
            if len(p) != self.d:
                raise DimensionMismatch(f"family point has {len(p)} coordinates, expected {self.d}")
            pts.append(p)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def n(self):
        return len(self.points)

    def at(self, t) -> Configuration:
        """The member of the family at a rational parameter value."""
        return Configuration(self.d, tuple(tuple(q(rational(t)) for q in p) for p in self.points))


def from_rational_functions(d, points, denominators) -> FamilyConfiguration:
    """Clear denominators: point i has coordinates ``points[i][j] / denominators[i]``.

    Every point is multiplied by the product of all denominators. That is a
    homothety over the function field, so the limit tree is unchanged.
    """
    dens = [q if isinstance(q, RationalPoly) else RationalPoly(q) for q in denominators]
    if len(dens) != len(points):
        raise ValueError("one denominator per point")
    if any(not q for q in dens):
        raise ValueError("zero denominator")
    one = RationalPoly.constant(1)
    cleared = []
    for i, coords in enumerate(points):
        others = reduce(lambda a, b: a * b, (q for j, q in enumerate(dens) if j != i), one)
        cleared.append(tuple((c if isinstance(c, RationalPoly) else RationalPoly(c)) * others for c in coords))
    return FamilyConfiguration(d, tuple(cleared))


def _diff(p, q):
    return tuple(a - b for a, b in zip(p, q))


def _scaled_value(v, k):
    """Value at t = 0 of v / t^k (requires valuation >= k)."""
    return tuple(q.coeff(k) for q in v)


@dataclass(frozen=True)
class _Node:
    vid: int
    labels: tuple
    base: int  # label of the base point
    k: int


def lowest_label(labels):
    return labels[0]


def _build(f: FamilyConfiguration, choose_base=lowest_label):
    """Recursive cluster-and-rescale; returns (StableTree, {vid: _Node}).

    ``choose_base`` picks the base label of a cluster from its sorted labels.
    """
    for i in range(f.n):
        for j in range(i + 1, f.n):
            if f.points[i] == f.points[j]:
                raise NotGenericallyDistinct(f"labels {i + 1} and {j + 1} coincide identically")
    vertices, nodes = [], {}
    counter = itertools.count()

    def node(labels, parent):
        vid = next(counter)
        base = choose_base(labels)
        b = f.points[base - 1]
        diffs = {i: _diff(f.points[i - 1], b) for i in labels}
        k = min(vector_valuation(diffs[i]) for i in labels if i != base)
        assert k < INF
        limits = {i: _scaled_value(diffs[i], k) for i in labels}
        clusters = {}
        for i in labels:
            clusters.setdefault(limits[i], []).append(i)
        assert len(clusters) >= 2
        marks, children = [], []
        for q, members in sorted(clusters.items(), key=lambda kv: kv[1][0]):
            if len(members) == 1:
                marks.append((members[0], q))
            else:
                children.append((node(tuple(members), vid), q))
        nodes[vid] = _Node(vid, tuple(labels), base, k)
        vertices.append(Vertex(vid, parent, tuple(marks), tuple(children)))
        return vid

    root = node(tuple(range(1, f.n + 1)), None)
    vertices.sort(key=lambda v: v.id)
    return StableTree(f.d, f.n, root, tuple(vertices)), nodes


def limit_tree(f: FamilyConfiguration, choose_base=lowest_label) -> StableTree:
    if f.n < 2:
        raise ValueError("need at least two points")
    return _build(f, choose_base)[0]


@dataclass(frozen=True)
class ScaledLimit:
    vertex: int
    base: tuple
    exponent: int
    limit: Configuration


def _scaled_limit(f, node: _Node) -> ScaledLimit:
    b = f.points[node.base - 1]
    pts = []
    for p in f.points:
        diff = _diff(p, b)
        val = vector_valuation(diff)
        if val >= node.k:
            pts.append(_scaled_value(diff, node.k))
        else:
            pts.append(HyperplaneDirection(_scaled_value(diff, val)))
    return ScaledLimit(node.vid, b, node.k, Configuration(f.d, tuple(pts)))


def scaled_limit(f: FamilyConfiguration, v) -> ScaledLimit:
    """All n labels under the rescaling ``(x - b_v) / t^k_v`` of vertex v at t = 0."""
    _, nodes = _build(f)
    if v not in nodes:
        raise UnknownVertex(f"no vertex {v!r} in the limit tree")
    return _scaled_limit(f, nodes[v])


def check_limit_compatibility(f: FamilyConfiguration) -> bool:
    """Every component configuration of the limit tree is a rescaled limit of the family."""
    tree, nodes = _build(f)
    for vid, nd in nodes.items():
        lhs = canonical_form(_scaled_limit(f, nd).limit)
        rhs = canonical_form(contract(tree, vid).config)
        if lhs != rhs:
            return False
    return True


def clear_t_power(v):
    """Divide a vector of polynomials by the largest common power of t and set t = 0."""
    k = vector_valuation(v)
    if k == INF:
        raise ValueError("zero vector has no limit")
    return tuple(q.coeff(k) for q in v)


__all__ = [
    "FamilyConfiguration",
    "ScaledLimit",
    "from_rational_functions",
    "limit_tree",
    "scaled_limit",
    "check_limit_compatibility",
    "clear_t_power",
]
