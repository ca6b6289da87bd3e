"""The group G of projectivities of P^d fixing the hyperplane x_0 = 0 pointwise.

On the chart x_0 = 1 an element acts as the homothety-translation
``x -> w*x + u``; on H it acts trivially. We keep ``(w, u)`` as coordinates
since they are rational whenever the projectivity is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotFullDimensional
from .exact import HyperplaneDirection, affine_point, nullity, rational, sub


@dataclass(frozen=True)
class GroupElement:
    w: Fraction
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", rational(self.w))
        object.__setattr__(self, "u", affine_point(self.u))
        if self.w == 0:
            raise ValueError("homothety factor must be nonzero")

    @property
    def d(self):
        return len(self.u)

    @classmethod
    def identity(cls, d):
        return cls(1, (0,) * d)

    def inverse(self):
        w = 1 / self.w
        return GroupElement(w, tuple(-w * c for c in self.u))

    def apply(self, x):
        """Image of a single configuration entry."""
        if isinstance(x, HyperplaneDirection):
            return x
        return tuple(self.w * a + b for a, b in zip(x, self.u))


def compose(g2: GroupElement, g1: GroupElement) -> GroupElement:
    """The element acting as ``g2`` after ``g1``."""
    if g1.d != g2.d:
        raise DimensionMismatch(f"cannot compose d={g2.d} with d={g1.d}")
    return GroupElement(g2.w * g1.w, tuple(g2.w * a + b for a, b in zip(g1.u, g2.u)))


def _exact_root(x: Fraction, k: int):
    """The rational k-th root of x if it exists, else None."""
    if x < 0 and k % 2 == 0:
        return None
    sign = -1 if x < 0 else 1

    def iroot(a):
        lo, hi = 0, 1 << (a.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < a:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**k == a else None

    num, den = iroot(abs(x.numerator)), iroot(x.denominator)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def to_projective_matrix(g: GroupElement):
    """(d+1)x(d+1) matrix, up to scale, of the projectivity; acts on column vectors."""
    d = g.d
    rows = [[Fraction(1)] + [Fraction(0)] * d]
    for i in range(d):
        row = [g.u[i]] + [Fraction(0)] * d
        row[i + 1] = g.w
        rows.append(row)
    return rows


def unimodular_matrix(g: GroupElement):
    """Determinant-one representative ``[[t^-d, 0], [s, t*I]]`` or None.

    Exists over Q only when w has a rational (d+1)-st root t; then s = u / t^d.
    """
    d = g.d
    t = _exact_root(g.w, d + 1)
    if t is None:
        return None
    scale = 1 / t**d
    return [[x * scale for x in row] for row in to_projective_matrix(g)]


@dataclass(frozen=True)
class Configuration:
    """n labeled points of P^d; entries are affine tuples or HyperplaneDirections.

    Label i (1-based) is ``points[i - 1]``.
    """

    d: int
    points: tuple

    def __post_init__(self):
        pts = []
        for p in self.points:
            if isinstance(p, HyperplaneDirection):
                if p.dim != self.d:
                    raise DimensionMismatch(f"direction {p} is not in dimension {self.d}")
                pts.append(p)
            else:
                p = affine_point(p)
                if len(p) != self.d:
                    raise DimensionMismatch(f"point {p} is not in dimension {self.d}")
                pts.append(p)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def n(self):
        return len(self.points)

    def affine_labels(self):
        return [i + 1 for i, p in enumerate(self.points) if not isinstance(p, HyperplaneDirection)]

    def infinity_labels(self):
        return [i + 1 for i, p in enumerate(self.points) if isinstance(p, HyperplaneDirection)]

    def affine_support(self):
        """Distinct affine points in order of first appearance."""
        seen = []
        for p in self.points:
            if not isinstance(p, HyperplaneDirection) and p not in seen:
                seen.append(p)
        return seen


def act(g: GroupElement, c: Configuration) -> Configuration:
    if g.d != c.d:
        raise DimensionMismatch(f"group element has d={g.d}, configuration d={c.d}")
    return Configuration(c.d, tuple(g.apply(p) for p in c.points))


def stabilizer_dimension(c: Configuration) -> int:
    k = len(c.affine_support())
    if k == 0:
        return c.d + 1
    return 1 if k == 1 else 0


def stabilizer_kernel_dimension(c: Configuration) -> int:
    """Kernel dimension of ``{w*p_i + u = 0}`` over affine entries, in unknowns (w, u).

    The stabilizer is the affine solution set of ``w*p_i + u = p_i`` through (1, 0);
    its tangent directions are this kernel. Used to cross-check the support count.
    """
    d = c.d
    rows = []
    for p in c.points:
        if isinstance(p, HyperplaneDirection):
            continue
        for j in range(d):
            row = [p[j]] + [Fraction(0)] * d
            row[j + 1] = Fraction(1)
            rows.append(row)
    return nullity(rows, d + 1)


def canonicalize(c: Configuration):
    """Return ``(c_star, g)`` with ``act(g, c) == c_star`` the canonical orbit representative.

    The first affine entry goes to the origin and the first affine entry distinct
    from it gets first nonzero coordinate 1.
    """
    support = c.affine_support()
    if len(support) < 2:
        raise NotFullDimensional("configuration has fewer than two distinct affine points")
    p0, p1 = support[0], support[1]
    diff = sub(p1, p0)
    lead = next(x for x in diff if x != 0)
    w = 1 / lead
    g = GroupElement(w, tuple(-w * x for x in p0))
    return act(g, c), g


def canonical_form(c: Configuration) -> Configuration:
    return canonicalize(c)[0]


def same_orbit(c1: Configuration, c2: Configuration) -> bool:
    if c1.d != c2.d or c1.n != c2.n:
        return False
    return canonical_form(c1) == canonical_form(c2)
