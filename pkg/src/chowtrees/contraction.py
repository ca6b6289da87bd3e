"""Component configurations pi_v and the configuration cycle Z(X).

The map onto the v-th component blows that component down, collapses
everything above v to the attachment points of v, and sends every mark outside
the subtree of v to the hyperplane at infinity. A mark whose path to v leaves
through the meet ``a < v`` first collapses to a point x of the blow-down at a,
then is projected from the attachment p of the branch toward v, landing at the
direction ``x - p``. Further projections along the chain fix points of H, so
that direction is final.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractionDegenerate, UnknownVertex
from .exact import HyperplaneDirection, is_zero, sub
from .group import Configuration, canonical_form, stabilizer_dimension
from .trees import StableTree, determined_attachment


@dataclass(frozen=True)
class ComponentConfiguration:
    vertex: object
    config: Configuration


@dataclass(frozen=True)
class ConfigurationCycle:
    members: tuple  # ComponentConfiguration, canonical orbit forms

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def multiset_key(self):
        """Order-free key: the cycle as a multiset of orbit closures."""
        return tuple(sorted(_config_key(m.config) for m in self.members))


def _config_key(c: Configuration):
    return tuple(
        ("inf", p.coords) if isinstance(p, HyperplaneDirection) else ("aff", p) for p in c.points
    )


def _collapse_at(tree: StableTree, a, w, q):
    """Where a mark at position q on vertex w lands in the blow-down at its ancestor a."""
    return q if w == a else determined_attachment(tree, a, w)


def contract(tree: StableTree, v) -> ComponentConfiguration:
    if v not in tree:
        raise UnknownVertex(f"no vertex {v!r}")
    points = []
    for label in range(1, tree.n + 1):
        w = tree.mark_vertex(label)
        q = tree.mark_position(label)
        a = tree.meet(w, v)
        x = _collapse_at(tree, a, w, q)
        if a == v:
            points.append(x)
            continue
        p = determined_attachment(tree, a, v)
        direction = sub(x, p)
        if is_zero(direction):
            raise ContractionDegenerate(f"label {label} collapses onto the center at vertex {a!r}")
        points.append(HyperplaneDirection(direction))
    return ComponentConfiguration(v, Configuration(tree.d, tuple(points)))


def configuration_cycle(tree: StableTree) -> ConfigurationCycle:
    members = []
    for vid in tree.preorder():
        cc = contract(tree, vid)
        members.append(ComponentConfiguration(vid, canonical_form(cc.config)))
    return ConfigurationCycle(tuple(members))


@dataclass(frozen=True)
class SupportProfile:
    affine_groups: tuple  # frozensets of labels sharing an affine image, by smallest label
    infinity: frozenset

    @property
    def groups(self):
        return self.affine_groups


def support_profile(cc) -> SupportProfile:
    config = cc.config if isinstance(cc, ComponentConfiguration) else cc
    groups = {}
    infinity = set()
    for label, p in enumerate(config.points, start=1):
        if isinstance(p, HyperplaneDirection):
            infinity.add(label)
        else:
            groups.setdefault(p, set()).add(label)
    ordered = sorted((frozenset(g) for g in groups.values()), key=min)
    return SupportProfile(tuple(ordered), frozenset(infinity))


def is_full_dimensional(cc: ComponentConfiguration) -> bool:
    return stabilizer_dimension(cc.config) == 0
