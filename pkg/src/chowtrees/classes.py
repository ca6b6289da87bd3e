"""Kunneth classes of G-orbit closures and configuration cycles in (P^d)^n.

The coefficient of ``[P^m1] x ... x [P^mn]`` in the class of a full-dimensional
orbit closure is 1 exactly when, for general linear subspaces L_i of
codimension m_i, a unique g in G moves every p_i into L_i. In the unknowns
``(w, u)`` each hyperplane condition ``c0 + sum_j c_j (w p_ij + u_j) = 0`` is
linear, so one exact (d+1)x(d+1) solve per trial decides a coefficient.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .contraction import ConfigurationCycle, configuration_cycle
from .errors import GenericityFailure, NotFullDimensional, ShapeMismatch
from .exact import HyperplaneDirection, Verdict, solve_affine_linear
from .group import Configuration, stabilizer_dimension

FORM_BOUND = 10**6
ESCALATION_FACTOR = 10**3
MAX_ESCALATIONS = 5
DEFAULT_TRIALS = 3


def weight_vectors(d: int, n: int) -> list:
    """All (m_1..m_n) with sum d+1 and 0 <= m_i <= d, lexicographically sorted."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for x in range(min(d, remaining) + 1):
            rec(prefix + [x], remaining - x, slots - 1)

    rec([], d + 1, n)
    return out


def weight_vector_count(d: int, n: int) -> int:
    """Closed form: compositions of d+1 into n parts minus the n with a part d+1."""
    return math.comb(d + n, n - 1) - n


@dataclass(frozen=True)
class KunnethClass:
    d: int
    n: int
    coeffs: tuple  # ((m, coefficient), ...) sorted by m
    escalations: int = field(default=0, compare=False)

    @classmethod
    def from_dict(cls, d, n, table, escalations=0):
        return cls(d, n, tuple(sorted((tuple(m), int(c)) for m, c in table.items())), escalations)

    def as_dict(self):
        return dict(self.coeffs)

    def __getitem__(self, m):
        return self.as_dict()[tuple(m)]

    def __add__(self, other):
        if (self.d, self.n) != (other.d, other.n):
            raise ShapeMismatch("classes live in different (P^d)^n")
        a, b = self.as_dict(), other.as_dict()
        table = {m: a.get(m, 0) + b.get(m, 0) for m in set(a) | set(b)}
        return KunnethClass.from_dict(self.d, self.n, table, self.escalations + other.escalations)

    def is_all_ones(self):
        return all(c == 1 for _, c in self.coeffs) and len(self.coeffs) == weight_vector_count(
            self.d, self.n
        )


def zero_class(d, n):
    return KunnethClass.from_dict(d, n, {m: 0 for m in weight_vectors(d, n)})


def _trial_rng(seed, m, level, trial):
    return random.Random(f"{seed}|{','.join(map(str, m))}|{level}|{trial}")


def _integer_points(c: Configuration):
    """Each affine point as (D, numerators) with p = numerators / D; None on H."""
    out = []
    for p in c.points:
        if isinstance(p, HyperplaneDirection):
            out.append(None)
            continue
        den = 1
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append((den, tuple(x.numerator * (den // x.denominator) for x in p)))
    return out


def _incidence_verdict(ipoints, m, rng, bound) -> int:
    """One randomized incidence test: 1 iff a unique g in G meets the random subspaces.

    Rows are scaled by the point denominator D so the system stays integral:
    ``(sum c_j a_j) w + D c.u = -D c0``.
    """
    A, b = [], []
    randint = rng.randint
    for ip, mi in zip(ipoints, m):
        if not mi:
            continue
        den, num = ip
        for _ in range(mi):
            c0 = randint(-bound, bound)
            cs = [randint(-bound, bound) for _ in num]
            A.append([sum(cj * aj for cj, aj in zip(cs, num))] + [den * cj for cj in cs])
            b.append(-den * c0)
    sol = solve_affine_linear(A, b)
    return int(sol.verdict is Verdict.UNIQUE and sol.solution[0] != 0)


def orbit_coefficient(c: Configuration, m, trials=DEFAULT_TRIALS, seed=0, _ipoints=None):
    """``(coefficient, escalations)`` for one weight vector."""
    ipoints = _ipoints if _ipoints is not None else _integer_points(c)
    if any(mi > 0 and isinstance(p, HyperplaneDirection) for p, mi in zip(c.points, m)):
        # G fixes H pointwise, so a point of H never meets a general subspace
        return 0, 0
    bound = FORM_BOUND
    for level in range(MAX_ESCALATIONS + 1):
        verdicts = {
            _incidence_verdict(ipoints, m, _trial_rng(seed, m, level, t), bound) for t in range(trials)
        }
        if len(verdicts) == 1:
            return verdicts.pop(), level
        bound *= ESCALATION_FACTOR
    raise GenericityFailure(f"trials disagree for weight {m} after {MAX_ESCALATIONS} escalations")


def _require_full(c: Configuration):
    if stabilizer_dimension(c) != 0:
        raise NotFullDimensional("orbit is not full-dimensional")


def orbit_class(c: Configuration, trials=DEFAULT_TRIALS, seed=0) -> KunnethClass:
    _require_full(c)
    table = {}
    escalations = 0
    ipoints = _integer_points(c)
    for m in weight_vectors(c.d, c.n):
        coeff, esc = orbit_coefficient(c, m, trials, seed, ipoints)
        assert coeff in (0, 1), "single orbit closure coefficient outside {0, 1}"
        table[m] = coeff
        escalations += esc
    return KunnethClass.from_dict(c.d, c.n, table, escalations)


def orbit_class_deterministic(c: Configuration) -> KunnethClass:
    """Support-count classifier: weight must avoid H and load at least two affine points."""
    _require_full(c)
    slots = {}
    for i, p in enumerate(c.points):
        if not isinstance(p, HyperplaneDirection):
            slots.setdefault(p, []).append(i)
    table = {}
    for m in weight_vectors(c.d, c.n):
        on_h = any(mi > 0 and isinstance(p, HyperplaneDirection) for p, mi in zip(c.points, m))
        loaded = sum(1 for idx in slots.values() if sum(m[i] for i in idx) > 0)
        table[m] = int(not on_h and loaded >= 2)
    return KunnethClass.from_dict(c.d, c.n, table)


def cycle_class(z: ConfigurationCycle, trials=DEFAULT_TRIALS, seed=0) -> KunnethClass:
    members = list(z)
    if not members:
        raise ValueError("empty cycle")
    d, n = members[0].config.d, members[0].config.n
    total = zero_class(d, n)
    for k, member in enumerate(members):
        total = total + orbit_class(member.config, trials, f"{seed}|member{k}")
    return total


def tree_class(tree, trials=DEFAULT_TRIALS, seed=0) -> KunnethClass:
    return cycle_class(configuration_cycle(tree), trials, seed)


def separates_boundary(t1, t2) -> bool:
    """True iff the two trees have different configuration cycles."""
    if (t1.d, t1.n) != (t2.d, t2.n):
        raise ShapeMismatch(f"(d, n) = {(t1.d, t1.n)} vs {(t2.d, t2.n)}")
    return configuration_cycle(t1).multiset_key() != configuration_cycle(t2).multiset_key()
