"""Acceptance criteria, each run at exact arithmetic with a printed status line.

Run alone with ``pytest tests/test_acceptance.py -v``; the status lines also
appear in the terminal summary of a full run.
"""

import itertools
import random
import time
from fractions import Fraction

from acceptance_report import report
from helpers import (
    family_from_shape,
    nested_families,
    random_configuration,
    random_group_element,
    random_small_family,
    reparametrize,
)

from chowtrees.classes import (
    orbit_class,
    orbit_class_deterministic,
    separates_boundary,
    tree_class,
)
from chowtrees.contraction import configuration_cycle
from chowtrees.curves import (
    divisor_witness_failures,
    chow_form_111,
    chow_form_of_cycle,
    family_form_limit,
    interior_form_coefficients,
    separates,
    triple_vector,
)
from chowtrees.degeneration import check_limit_compatibility, limit_tree
from chowtrees.exact import HyperplaneDirection
from chowtrees.group import (
    Configuration,
    GroupElement,
    act,
    canonical_form as canonical_configuration,
    canonicalize,
    compose,
    stabilizer_dimension,
    stabilizer_kernel_dimension,
)
from chowtrees.trees import (
    Shape,
    canonical_form,
    enumerate_binary_shapes,
    enumerate_shapes,
    is_valid,
    random_shape,
    random_tree,
)

# ---------------------------------------------------------------------------
# 1. every coefficient of every tree class is 1


def test_criterion_1_all_ones():
    start = time.time()
    cases = []
    for n in range(2, 6):
        for i, shape in enumerate(enumerate_shapes(range(1, n + 1))):
            for d in (1, 2, 3):
                cases.append((d, n, shape, f"c1|{d}|{n}|{i}"))
    six = enumerate_shapes(range(1, 7))
    for i, shape in enumerate(six):
        for d in (1, 2):
            cases.append((d, 6, shape, f"c1|{d}|6|{i}"))
    rng = random.Random("criterion-1")
    for i in range(300):
        cases.append((3, 6, rng.choice(six), f"c1|3|6|r{i}"))

    bad = []
    escalated = 0
    for d, n, shape, seed in cases:
        tree = random_tree(d, n, shape, seed)
        k = tree_class(tree, seed=seed)
        escalated += k.escalations
        if not k.is_all_ones():
            bad.append((d, n, str(shape)))
    elapsed = time.time() - start
    ok = not bad
    report(1, ok, f"{len(cases)} trees, {len(cases) - len(bad)} all-ones, "
                  f"{escalated} escalations, {elapsed:.0f}s")
    assert ok, bad[:5]
    assert len(cases) >= 200


# ---------------------------------------------------------------------------
# 2. deterministic classifier on maximally degenerate trees


def test_criterion_2_maximally_degenerate():
    compared = mismatched = escalated = 0
    for n in range(2, 7):
        for i, shape in enumerate(enumerate_binary_shapes(range(1, n + 1))):
            for d in (1, 2, 3):
                tree = random_tree(d, n, shape, f"c2|{d}|{n}|{i}")
                for member in configuration_cycle(tree):
                    k = orbit_class(member.config, trials=3, seed=f"c2|{d}|{n}|{i}")
                    compared += 1
                    escalated += k.escalations
                    if k.as_dict() != orbit_class_deterministic(member.config).as_dict():
                        mismatched += 1
    ok = mismatched == 0 and escalated == 0
    report(2, ok, f"{compared} component configurations, {mismatched} mismatches, "
                  f"{escalated} escalations")
    assert ok


# ---------------------------------------------------------------------------
# 3. limit compatibility on polynomial families


def test_criterion_3_limit_compatibility():
    start = time.time()
    rng = random.Random("criterion-3")
    families = []
    for i in range(80):
        d, n = rng.randint(1, 3), rng.randint(2, 6)
        families.append(family_from_shape(random_shape(range(1, n + 1), rng), d, rng))
    for i in range(60):
        families.append(random_small_family(rng, rng.randint(1, 3), rng.randint(2, 6)))
    nested = nested_families()
    families += nested
    deep = sum(1 for f in nested if max(limit_tree(f).depth(v.id) for v in limit_tree(f).vertices) >= 2)

    bad = [f for f in families if not (is_valid(limit_tree(f)) and check_limit_compatibility(f))]
    elapsed = time.time() - start
    ok = not bad and deep == len(nested)
    report(3, ok, f"{len(families)} families ({len(nested)} nested, all with >= 3 levels: "
                  f"{deep == len(nested)}), {len(bad)} incompatible, {elapsed:.0f}s")
    assert ok


# ---------------------------------------------------------------------------
# 4. separation by triple invariants (d = 1)


def line_trees():
    out = []
    for n in range(3, 6):
        for i, shape in enumerate(enumerate_shapes(range(1, n + 1))):
            for s in range(2):
                out.append(random_tree(1, n, shape, f"c4|{n}|{i}|{s}"))
    for i, shape in enumerate(enumerate_shapes(range(1, 7))):
        out.append(random_tree(1, 6, shape, f"c4|6|{i}"))
    return out


def test_criterion_4_separation():
    start = time.time()
    trees = line_trees()
    seen = {}
    for t in trees:
        seen.setdefault((t.n, triple_vector(t)), set()).add(canonical_form(t))
    collisions = [k for k, forms in seen.items() if len(forms) > 1]
    distinct = sum(len(f) for f in seen.values())

    # explicit pairwise check, including isomorphic copies that must not separate
    rng = random.Random("criterion-4")
    sample = [t for t in trees if t.n == 5]
    sample = rng.sample(sample, 40) + [reparametrize(t, k) for k, t in enumerate(rng.sample(sample, 10))]
    wrong = 0
    for a, b in itertools.combinations(sample, 2):
        if separates(a, b) != (canonical_form(a) != canonical_form(b)):
            wrong += 1
    elapsed = time.time() - start
    ok = not collisions and wrong == 0
    report("4a", ok, f"{distinct} distinct trees (n <= 6, every shape), {len(collisions)} unseparated "
                     f"groups; {len(sample) * (len(sample) - 1) // 2} explicit pairs, {wrong} wrong, "
                     f"{elapsed:.0f}s")
    assert ok


def test_criterion_4_divisor_witnesses():
    """Pairs K', L' whose four labels stabilize to the open stratum, for each partition off the tree's divisors."""
    start = time.time()
    failing_trees = 0
    example = None
    total = 0
    for n in range(3, 7):
        for i, shape in enumerate(enumerate_shapes(range(1, n + 1))):
            tree = random_tree(1, n, shape, f"c4b|{n}|{i}")
            total += 1
            failures = divisor_witness_failures(tree)
            if failures:
                failing_trees += 1
                if example is None:
                    K, L = failures[0]
                    example = f"shape {shape}, K={sorted(K)}, L={sorted(L)}"
    weak = sum(1 for n in range(3, 7) for i, shape in enumerate(enumerate_shapes(range(1, n + 1)))
               if divisor_witness_failures(random_tree(1, n, shape, f"c4b|{n}|{i}"), interior=False))
    elapsed = time.time() - start
    ok = failing_trees == 0
    report("4b", ok, f"{total} trees, {failing_trees} without an interior witness for some partition"
                     + (f"; first: {example}" if example else "")
                     + f"; off-divisor witness missing on {weak}; {elapsed:.0f}s")
    assert ok


# ---------------------------------------------------------------------------
# 5. Chow forms of three points on the line


def homogeneous(p):
    if isinstance(p, HyperplaneDirection):
        return (Fraction(1), Fraction(0))
    return (p[0], Fraction(1))


def test_criterion_5_chow_forms():
    rng = random.Random("criterion-5")
    frac = lambda: Fraction(rng.randint(-20, 20), rng.randint(1, 5))  # noqa: E731

    # (a) linearity of the raw coefficient vector
    linear = 0
    for _ in range(100):
        p, q = [frac() for _ in range(3)], [frac() for _ in range(3)]
        lam = frac()
        add_ok = interior_form_coefficients(*(a + b for a, b in zip(p, q))) == tuple(
            x + y for x, y in zip(interior_form_coefficients(*p), interior_form_coefficients(*q)))
        hom_ok = interior_form_coefficients(*(lam * a for a in p)) == tuple(
            lam * x for x in interior_form_coefficients(*p))
        linear += add_ok and hom_ok

    # (b) cycle form of the limit tree equals the limit of the forms
    families = []
    for _ in range(30):
        families.append(family_from_shape(random_shape(range(1, 4), rng), 1, rng))
    while len(families) < 50:
        families.append(random_small_family(rng, 1, 3))
    limits = 0
    for f in families:
        lhs = chow_form_of_cycle(configuration_cycle(limit_tree(f)))
        rhs = family_form_limit([p[0] for p in f.points])
        limits += lhs == rhs

    # (c) every form vanishes along the orbit of its configuration
    configs = []
    while len(configs) < 30:
        c = random_configuration(rng, 1, 3, p_inf=0.25)
        if stabilizer_dimension(c) == 0:
            configs.append(c)
    for i in range(3, 6):
        configs += [m.config for m in configuration_cycle(random_tree(1, 3, random_shape(range(1, 4), rng), i))]
    vanish = 0
    for c in configs:
        form = chow_form_111(c)
        hits = 0
        for _ in range(100):
            g = random_group_element(rng, 1)
            slots = [homogeneous(p) for p in act(g, c).points]
            pad = [(Fraction(rng.randint(-5, 5)), Fraction(1))] * 3
            pts = [slots[i] if form.degree[i] else pad[i] for i in range(3)]
            hits += form(pts) == 0
        vanish += hits == 100

    ok = linear == 100 and limits == len(families) and vanish == len(configs)
    report(5, ok, f"(a) {linear}/100 linear, (b) {limits}/{len(families)} limits agree, "
                  f"(c) {vanish}/{len(configs)} forms vanish on 100 orbit samples")
    assert ok


# ---------------------------------------------------------------------------
# 6. group and action algebra


def small_group(d):
    ws = [Fraction(x) for x in (1, -1, 2, -2)] + [Fraction(1, 2)]
    us = list(itertools.product([Fraction(v) for v in (-1, 0, 1)], repeat=d))
    return [GroupElement(w, u) for w in ws for u in us]


def small_configs(d, n):
    entries = [tuple(Fraction(v) for v in p) for p in itertools.product((0, 1), repeat=d)]
    entries += [HyperplaneDirection(y) for y in itertools.product((0, 1), repeat=d) if any(y)]
    return [Configuration(d, pts) for pts in itertools.product(entries, repeat=n)]


def test_criterion_6_group_algebra():
    checks = failures = 0

    def check(cond):
        nonlocal checks, failures
        checks += 1
        failures += not cond

    rng = random.Random("criterion-6")
    for d in (1, 2):
        group = small_group(d)
        e = GroupElement.identity(d)
        for g in group:
            check(compose(g, e) == g == compose(e, g))
            check(compose(g, g.inverse()) == e)
        triples = itertools.product(group, repeat=3) if d == 1 else (
            tuple(rng.choice(group) for _ in range(3)) for _ in range(3000))
        for a, b, c in triples:
            check(compose(a, compose(b, c)) == compose(compose(a, b), c))
        for n in (1, 2, 3):
            for conf in small_configs(d, n):
                check(stabilizer_dimension(conf) == stabilizer_kernel_dimension(conf))
                g1, g2 = rng.choice(group), rng.choice(group)
                check(act(g2, act(g1, conf)) == act(compose(g2, g1), conf))
                moved = act(g1, conf)
                check(all(p == q for p, q in zip(conf.points, moved.points)
                          if isinstance(p, HyperplaneDirection)))
                if stabilizer_dimension(conf) == 0:
                    star, g = canonicalize(conf)
                    check(act(g, conf) == star)
                    check(canonical_configuration(star) == star)
                    check(canonical_configuration(moved) == star)
    # randomized, larger dimensions and counts
    for _ in range(400):
        d, n = rng.randint(1, 4), rng.randint(2, 6)
        conf = random_configuration(rng, d, n)
        g1, g2 = random_group_element(rng, d), random_group_element(rng, d)
        check(act(g2, act(g1, conf)) == act(compose(g2, g1), conf))
        check(stabilizer_dimension(conf) == stabilizer_kernel_dimension(conf))
        if stabilizer_dimension(conf) == 0:
            star = canonical_configuration(conf)
            check(canonical_configuration(act(g1, conf)) == star == canonical_configuration(star))
    ok = failures == 0
    report(6, ok, f"{checks} checks, {failures} failures")
    assert ok


# ---------------------------------------------------------------------------
# 7. configuration cycles separate boundary trees


def boundary_trees(d, n, samples=3):
    labels = list(range(1, n + 1))
    out = []
    for s in range(samples):
        out.append(random_tree(d, n, Shape(tuple(labels), ()), f"c7|{d}|{n}|interior|{s}"))
    for size in range(2, n):
        for lower in itertools.combinations(labels, size):
            upper = tuple(l for l in labels if l not in lower)
            shape = Shape(upper, (Shape(lower, ()),))
            for s in range(samples):
                out.append(random_tree(d, n, shape, f"c7|{d}|{n}|{lower}|{s}"))
    return out


def vary_one_component(tree, seed):
    """Re-randomize the chart of a single vertex; the rest of the tree is untouched."""
    from chowtrees.trees import StableTree, Vertex

    rng = random.Random(seed)
    target = rng.choice(tree.vertices).id
    verts = []
    for v in tree.vertices:
        if v.id == target:
            pts = set()
            while len(pts) < len(v.marks) + len(v.children):
                pts.add(tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in range(tree.d)))
            pts = sorted(pts)
            v = Vertex(v.id, v.parent, tuple((l, pts[i]) for i, (l, _) in enumerate(v.marks)),
                       tuple((c, pts[len(v.marks) + i]) for i, (c, _) in enumerate(v.children)))
        verts.append(v)
    return StableTree(tree.d, tree.n, tree.root, tuple(verts))


def test_criterion_7_boundary_separation():
    pairs = wrong = 0
    for d in (1, 2):
        for n in range(3, 6):
            trees = boundary_trees(d, n)
            trees += [vary_one_component(t, k) for k, t in enumerate(trees) if len(t.vertices) > 1]
            trees += [reparametrize(t, k) for k, t in enumerate(trees[:10])]
            keys = [canonical_form(t) for t in trees]
            for (a, ka), (b, kb) in itertools.combinations(zip(trees, keys), 2):
                pairs += 1
                if separates_boundary(a, b) != (ka != kb):
                    wrong += 1
    ok = wrong == 0
    report(7, ok, f"{pairs} pairs over d <= 2, n <= 5, {wrong} wrong")
    assert ok
