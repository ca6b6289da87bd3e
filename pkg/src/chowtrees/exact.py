"""Exact rational substrate: points, linear solving and polynomials in ``t``.

Rationals are :class:`fractions.Fraction`. Affine points are plain tuples of
Fractions; projective points and hyperplane directions are normalized so that
equality is structural.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import ValuationTooLow

Rational = Fraction
AffinePoint = tuple  # tuple[Fraction, ...]

INF = math.inf  # valuation of the zero polynomial


def rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings; floats are refused."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    return str(x)


def affine_point(coords) -> AffinePoint:
    return tuple(rational(c) for c in coords)


def _normalize_first_nonzero(coords):
    coords = tuple(rational(c) for c in coords)
    for c in coords:
        if c != 0:
            return tuple(x / c for x in coords)
    raise ValueError("all coordinates are zero")


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^d stored with its first nonzero homogeneous coordinate equal to 1."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", _normalize_first_nonzero(coords))

    @property
    def dim(self):
        return len(self.coords) - 1

    @classmethod
    def from_affine(cls, p):
        return cls((1,) + tuple(p))

    @classmethod
    def from_direction(cls, y):
        return cls((0,) + tuple(y.coords if isinstance(y, HyperplaneDirection) else y))

    def is_at_infinity(self):
        return self.coords[0] == 0

    def __str__(self):
        return "(" + " : ".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class HyperplaneDirection:
    """The point (0 : y_1 : ... : y_d) of the hyperplane H = V(x_0)."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", _normalize_first_nonzero(coords))

    @property
    def dim(self):
        return len(self.coords)


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def is_zero(v):
    return all(c == 0 for c in v)


# ---------------------------------------------------------------------------
# linear algebra


class Verdict(enum.Enum):
    UNIQUE = "UniqueSolution"
    NONE = "NoSolution"
    INFINITE = "InfinitelyMany"


class LinearSolution(NamedTuple):
    verdict: Verdict
    solution: tuple | None = None


def _integer_row(row):
    """Scale a row of rationals to integers (by the lcm of denominators)."""
    if all(type(x) is int for x in row):
        return list(row), 1
    row = [rational(x) for x in row]
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in row], den


def _bareiss(rows, ncols):
    """Fraction-free row echelon form in place; returns pivot (row, col) list.

    Only the first ``ncols`` columns are used for pivoting; entries stay integers
    because every intermediate is a minor of the input.
    """
    m = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        width = len(rows[r])
        for i in range(r + 1, m):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, width):
                ri[j] = (p * ri[j] - a * rr[j]) // prev
            ri[c] = 0
        # rows above r are left alone; only echelon form is needed
        pivots.append((r, c))
        prev = p
        r += 1
    return pivots


def solve_affine_linear(A: Sequence[Sequence], b: Sequence) -> LinearSolution:
    """Exact verdict for the square system ``A x = b``."""
    k = len(A)
    if any(len(row) != k for row in A) or len(b) != k:
        raise ValueError("A must be square and match b")
    if k == 0:
        return LinearSolution(Verdict.UNIQUE, ())
    rows = [_integer_row(list(row) + [bi])[0] for row, bi in zip(A, b)]
    pivots = _bareiss(rows, k)
    rank = len(pivots)
    if rank == k:
        x = [Fraction(0)] * k
        for i in range(k - 1, -1, -1):
            s = Fraction(rows[i][k])
            for j in range(i + 1, k):
                if rows[i][j]:
                    s -= rows[i][j] * x[j]
            x[i] = s / rows[i][i]
        return LinearSolution(Verdict.UNIQUE, tuple(x))
    if any(rows[i][k] != 0 for i in range(rank, k)):
        return LinearSolution(Verdict.NONE)
    return LinearSolution(Verdict.INFINITE)


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    ncols = len(M[0])
    rows = [_integer_row(row)[0] for row in M]
    return len(_bareiss(rows, ncols))


def nullity(M: Sequence[Sequence], ncols: int | None = None) -> int:
    """Dimension of the kernel of ``M`` (``ncols`` needed when ``M`` has no rows)."""
    if ncols is None:
        ncols = len(M[0])
    return ncols - rank(M)


def determinant(M: Sequence[Sequence]) -> Fraction:
    k = len(M)
    if k == 0:
        return Fraction(1)
    scaled = [_integer_row(row) for row in M]
    rows = [r for r, _ in scaled]
    scale = math.prod(s for _, s in scaled)
    sign = 1
    # track row swaps by running Bareiss on a copy with explicit swap counting
    prev = 1
    for c in range(k):
        piv = next((i for i in range(c, k) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, k):
            a = rows[i][c]
            for j in range(c + 1, k):
                rows[i][j] = (p * rows[i][j] - a * rows[c][j]) // prev
            rows[i][c] = 0
        prev = p
    return Fraction(sign * rows[k - 1][k - 1], scale)


# ---------------------------------------------------------------------------
# polynomials in the deformation parameter t


class RationalPoly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def t_power(cls, k, c=1):
        return cls((0,) * k + (c,))

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def _lift(self, other):
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly.constant(other)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def valuation(self):
        return valuation(self)


def valuation(p: RationalPoly):
    """Order of vanishing at t = 0; ``math.inf`` for the zero polynomial."""
    for i, c in enumerate(p.coeffs):
        if c != 0:
            return i
    return INF


def shift_eval(p: RationalPoly, k: int):
    """Return ``(p / t**k, (p / t**k)(0))``; requires ``valuation(p) >= k``."""
    if valuation(p) < k:
        raise ValuationTooLow(f"valuation {valuation(p)} < {k}")
    q = RationalPoly(p.coeffs[k:])
    return q, q.coeff(0)


def vector_valuation(v):
    return min((valuation(p) for p in v), default=INF)
