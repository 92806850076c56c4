"""Randomized and bundled property checks behind ``prympair verify``.

Every property is a function ``check(rng)`` that raises AssertionError (or
a library error) on failure.  Random instances come from a ``random.Random``
seeded by the caller, so runs are reproducible.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import gcd, prod

from . import intmat, pryms
from .classification import (
    HurwitzParams,
    classify_range,
    derive_params,
    family_a_test,
    family_b_test,
    prym_tyurin_equations,
)
from .covers import (
    BranchedCover,
    PairDiagram,
    Permutation,
    fiber_product,
    orbits,
    relative_ramification,
)
from .coverspec import dump_diagram, parse
from .groups import deck_group
from .report import regime_of
from .homology import build_cw, homology, pushforward, transfer
from .witness import family_a_witness, family_b_witness, witness_search

DEFAULT_SEED = 20240607


# random instances

def random_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_monodromy(rng, n, k, max_tries=1000):
    """``k`` permutations of degree ``n`` with identity product and transitive action."""
    for _ in range(max_tries):
        perms = [random_perm(rng, n) for _ in range(k - 1)]
        prodp = Permutation.identity(n)
        for p in perms:
            prodp = prodp * p
        perms.append(prodp.inverse())
        if len(orbits(n, perms)) == 1:
            return perms
    raise RuntimeError("could not draw a transitive tuple")


def random_cover(rng, max_degree=6, max_labels=12):
    n = rng.randint(1, max_degree)
    k = rng.randint(2 if n > 1 else 0, max_labels)
    return BranchedCover.from_perms(n, random_monodromy(rng, n, k))


def random_fiber_morphisms(rng, max_labels=12):
    """A random component of a fibre product of degree <= 6, with both projections."""
    d1, d2 = rng.choice([(2, 2), (2, 3), (3, 2), (2, 1), (3, 1), (3, 2)])
    k = rng.randint(2, max_labels)
    g1 = BranchedCover.from_perms(d1, random_monodromy(rng, d1, k))
    g2 = BranchedCover.from_perms(d2, random_monodromy(rng, d2, k))
    comps = fiber_product(g1, g2)
    return rng.choice(comps)


def random_polarized_lattice(rng, max_rank=12, bound=20):
    """A nondegenerate alternating integer form with entries in ``[-bound, bound]``."""
    while True:
        n = 2 * rng.randint(1, max_rank // 2)
        form = intmat.zeros(n, n)
        for i in range(n):
            for j in range(i + 1, n):
                x = rng.randint(-bound, bound)
                form[i, j], form[j, i] = x, -x
        if intmat.det(form) != 0:
            return pryms.PolarizedLattice(form)


def random_sublattice(rng, lattice, bound=3):
    """A saturated sublattice of even rank on which the form is nondegenerate."""
    n = lattice.rank
    while True:
        k = 2 * rng.randint(0, n // 2)
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]
        b = intmat.as_matrix(rows, n)
        if intmat.rank(b) != k:
            continue
        s = pryms.Sublattice(lattice, intmat.saturation(b, n) if k else b)
        if intmat.det(s.restricted_form) != 0:
            return s


# properties

def prop_type_chain(rng, count=30):
    for _ in range(count):
        lat = random_polarized_lattice(rng, 10, 20)
        t = pryms.restricted_type(lat.full())
        d = t.divisors
        assert all(b % a == 0 for a, b in zip(d, d[1:]))
        assert prod(d) ** 2 == intmat.det(lat.form)


def prop_complement_involution(rng, count=30):
    for _ in range(count):
        lat = random_polarized_lattice(rng, 10, 20)
        a = random_sublattice(rng, lat)
        p = pryms.complement(a)
        assert pryms.complement(p).same_span(a)
        assert p.saturated


def prop_complement_orders(rng, count=30):
    for _ in range(count):
        lat = random_polarized_lattice(rng, 12, 20)
        a = random_sublattice(rng, lat)
        pryms.verify_complement_orders(a)
        pryms.verify_kernel_sequence(a)


def prop_cover_structure(rng, count=30):
    for _ in range(count):
        X, f1, f2 = random_fiber_morphisms(rng)
        s = build_cw(X)
        assert s.euler_characteristic == 2 - 2 * X.genus
        h = homology(X)
        assert h.rank == 2 * X.genus
        for f in (f1, f2):
            assert f.source.genus == f.degree * (f.target.genus - 1) + 1 + relative_ramification(f) // 2
            transfer(f)  # checks Nm f^* = deg and form scaling
            pf = pushforward(f).matrix
            assert intmat.rank(pf) == 2 * f.target.genus


def prop_fiber_degrees(rng, count=50):
    for _ in range(count):
        d1, d2 = rng.randint(1, 4), rng.randint(1, 4)
        k = rng.randint(2, 6)
        g1 = BranchedCover.from_perms(d1, random_monodromy(rng, d1, k))
        g2 = BranchedCover.from_perms(d2, random_monodromy(rng, d2, k))
        assert sum(X.degree for X, _, _ in fiber_product(g1, g2)) == d1 * d2
        for X, f1, f2 in fiber_product(g1, g2):
            if f1.degree == 2:
                assert deck_group(f1).order == 2


def _family_witnesses():
    return [family_a_witness(6), family_a_witness(7), family_b_witness(7), family_b_witness(8)]


WITNESS_PARAMS = [
    (3, 2, 3, 2, 2, 2), (3, 2, 5, 4, 4, 2), (3, 2, 6, 5, 5, 2), (3, 2, 7, 6, 6, 2),
    (3, 2, 4, 4, 4, 0), (3, 2, 6, 6, 6, 0), (3, 2, 7, 7, 7, 0),
    (3, 2, 6, 5, 6, 3), (3, 2, 7, 6, 7, 3), (5, 2, 4, 1, 1, 4),
    (5, 3, 6, 3, 3, 6), (4, 3, 5, 3, 4, 7), (4, 3, 4, 3, 2, 2),
]


def _searched_witnesses():
    return [witness_search(HurwitzParams(*t), budget=50000, regime="any") for t in WITNESS_PARAMS]


def prop_kernel_splitting(rng):
    for d in _family_witnesses() + _searched_witnesses():
        r = pryms.verify_kernel_splitting(d)
        assert r["splitting"] and r["mirror_splitting"]


def prop_family_biconditional(rng):
    for d in _family_witnesses() + _searched_witnesses():
        p = derive_params(d)
        regime = regime_of(d)
        lat = pryms.diagram_lattices(d)
        assert lat.dim == p.dim_p
        if regime == "other" or lat.dim == 0:
            continue
        pt = pryms.prym_tyurin_check(lat.prym, p.d1 * p.d2)
        assert pt == prym_tyurin_equations(p, regime), (p, regime)
        family = family_a_test(p)[0] if regime == "ramified" else family_b_test(p)[0]
        assert family == (pt and (p.d1, p.d2) == (3, 2) and lat.dim >= (4 if regime == "ramified" else 5))


def prop_exponent_endomorphism(rng):
    for d in _family_witnesses():
        _, r = pryms.exponent_endomorphism(d)
        assert r["ok"]


def prop_params_relation(rng, count=20):
    for _ in range(count):
        X, f1, f2 = random_fiber_morphisms(rng)
        if gcd(f1.target.degree, f2.target.degree) != 1 or X.degree != f1.target.degree * f2.target.degree:
            continue
        d = PairDiagram(f1.target, f2.target, X, f1, f2)
        p = derive_params(d)
        assert p.s2 == p.d2 * p.r1 - p.d1 * p.r2 + p.s1
        assert pryms.diagram_lattices(d).dim == p.dim_p


def prop_classification(rng):
    out = classify_range(8, 30, 0)
    for fd in out:
        if fd.family != "none":
            assert fd.dim_p == fd.params.r1 - 2
    assert out == sorted(reversed(out))


def prop_round_trip(rng):
    for t in [(3, 2, 6, 5, 5, 2), (3, 2, 7, 7, 7, 0)]:
        p = HurwitzParams(*t)
        d = witness_search(p)
        g1, g2 = parse(dump_diagram(d))
        assert derive_params(PairDiagram.from_covers(g1, g2)) == p


@dataclass
class Property:
    name: str
    check: object


PROPERTIES = [
    Property("polarization type is a divisibility chain with product^2 = det", prop_type_chain),
    Property("complement is an involution on saturated sublattices", prop_complement_involution),
    Property("complement and kernel-sequence order identities", prop_complement_orders),
    Property("cell structure, genus and transfer on random covers", prop_cover_structure),
    Property("fibre product degrees and degree-2 deck groups", prop_fiber_degrees),
    Property("s2 = d2 r1 - d1 r2 + s1 and lattice dim P on random diagrams", prop_params_relation),
    Property("kernel splitting and its mirror on witnesses", prop_kernel_splitting),
    Property("family conditions match the Prym-Tyurin check on witnesses", prop_family_biconditional),
    Property("exponent endomorphism on family witnesses", prop_exponent_endomorphism),
    Property("classified families have dim P = r1 - 2", prop_classification),
    Property("search output round-trips through the file format", prop_round_trip),
]


def run(seed=DEFAULT_SEED, stop_on_failure=True, out=print):
    """Run every property; returns the list of ``(name, ok, seconds, error)``."""
    results = []
    for k, prop in enumerate(PROPERTIES):
        rng = random.Random(f"{seed}:{k}")
        t0 = time.perf_counter()
        try:
            prop.check(rng)
            err = None
        except Exception as e:  # report any failure as a failed property
            err = f"{type(e).__name__}: {e}"
        dt = time.perf_counter() - t0
        results.append((prop.name, err is None, dt, err))
        if out:
            out(f"{'PASS' if err is None else 'FAIL'}  {prop.name}  ({dt:.2f}s)" + (f"\n      {err}" if err else ""))
        if err and stop_on_failure:
            break
    return results
