"""End-to-end acceptance gate.

Every criterion records one PASS/FAIL line; conftest prints them in the
terminal summary.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from oracles import hyperelliptic, sympy_det, sympy_rank
from prympair import intmat, pryms
from prympair.classification import CASE_BOUNDS, HurwitzParams, case_bound_report, classify_range, derive_params
from prympair.covers import CoverMorphism, is_etale
from prympair.groups import block_systems, deck_group, quotient
from prympair.homology import build_cw, homology, pushforward, transfer
from prympair.pryms import (
    complement,
    exponent_endomorphism,
    restricted_type,
    seshadri_upper_bound,
    verify_kernel_sequence,
    verify_kernel_splitting,
)
from prympair.suite import random_cover, random_fiber_morphisms, random_polarized_lattice, random_sublattice
from prympair.witness import family_a_witness, family_b_witness, witness_search

SEED = 20240607
RESULTS = []


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert limit is None or elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}  ({elapsed:.2f}s)"
        RESULTS.append(line)
        print(line)


def genus_of_form(form):
    return intmat.rank(form) // 2


def test_criterion_1_riemann_hurwitz():
    with criterion(1, "hyperelliptic covers have genus g for g = 0..5", limit=1):
        for g in range(6):
            c = hyperelliptic(g)
            assert len(c.labels) == 2 * g + 2
            assert c.genus == g
            assert homology(c).rank == 2 * g


def test_criterion_2_family_a():
    with criterion(2, "family A at (3,2,6,5,5,2) has type (6,6,6,6)", limit=60):
        d = witness_search(HurwitzParams(3, 2, 6, 5, 5, 2))
        p = derive_params(d)
        assert (p.genus_x1, p.genus_x2, p.genus_x, p.dim_p) == (4, 4, 12, 4)
        # genera also read off the lattices, independently of Riemann-Hurwitz
        assert genus_of_form(homology(d.X).intersection) == 12
        lat = pryms.diagram_lattices(d)
        assert lat.dim == 4
        assert restricted_type(lat.prym).divisors == (6, 6, 6, 6)


def test_criterion_3_family_b():
    with criterion(3, "family B at (3,2,7,7,7,0): type (6,6,6,6,6), S3 closure", limit=60):
        assert derive_params(witness_search(HurwitzParams(3, 2, 7, 7, 7, 0))).as_tuple() == (3, 2, 7, 7, 7, 0)
        d = family_b_witness(7)
        p = derive_params(d)
        assert (p.genus_x1, p.genus_x2, p.genus_x, p.dim_p) == (5, 6, 16, 5)
        assert restricted_type(pryms.diagram_lattices(d).prym).divisors == (6,) * 5
        assert is_etale(d.f2) and d.f2.degree == 3
        f2 = deck_group(d.f2)
        assert f2.order == 3 and f2.is_cyclic and f2.is_galois
        comp = deck_group(d.composed())
        assert comp.order == 6 and comp.is_galois and not comp.is_abelian


def test_criterion_4_kernel_splitting():
    with criterion(4, "K(L_P) splits as K(L) + K(L_A) on both families, mirror agrees"):
        for d, g1 in ((family_a_witness(6), 4), (family_b_witness(7), 5)):
            r = verify_kernel_splitting(d)
            assert r["K(L)"] == [2] * (2 * g1)
            assert r["K(L_A)"] == [3] * (2 * g1)
            assert sorted(r["K(L_P)"]) == [6] * (2 * g1)
            # elementary divisors merge prime by prime: Z/2 + Z/3 = Z/6
            kp = pryms.KernelGroup(tuple(r["K(L_P)"]))
            assert kp.is_isomorphic_to_sum(pryms.KernelGroup(tuple(r["K(L)"])), pryms.KernelGroup(tuple(r["K(L_A)"])))
            assert r["splitting"] and r["mirror_splitting"]


def test_criterion_5_complement_orders():
    with criterion(5, "200 random complementary pairs satisfy both order identities", limit=120):
        rng = random.Random(SEED)
        done = 0
        while done < 200:
            lat = random_polarized_lattice(rng, 12, 20)
            assert lat.rank <= 12 and int(np.abs(lat.form).max()) <= 20
            a = random_sublattice(rng, lat)
            if a.rank in (0, lat.rank):
                continue
            p = complement(a)
            # orders from sympy determinants, independent of the library's normal forms
            k_l = abs(sympy_det(lat.form))
            k_a = sympy_det(a.restricted_form)
            k_p = sympy_det(p.restricted_form)
            meet = abs(sympy_det(np.concatenate([a.basis, p.basis])))
            assert k_p * k_a == meet**2 * k_l
            r = verify_kernel_sequence(a)
            assert r["K(L_P)"] == k_p and r["A cap P"] == meet
            assert k_p == r["K(L) cap P"] * meet
            done += 1


def test_criterion_6_classification():
    with criterion(6, "classification in dim >= 5 and ramified dim >= 4, case bounds empty above", limit=120):
        out = classify_range(30, 100, 5)
        got = {(fd.family, fd.params.as_tuple()) for fd in out}
        want = {("A", (3, 2, r, r - 1, r - 1, 2)) for r in range(7, 101)}
        want |= {("B", (3, 2, r, r, r, 0)) for r in range(7, 101)}
        assert got == want
        ram = classify_range(30, 100, 4, regime="ramified")
        assert {(fd.family, fd.params.as_tuple()) for fd in ram} == {
            ("A", (3, 2, r, r - 1, r - 1, 2)) for r in range(6, 101)
        }
        report = case_bound_report(classify_range(30, 100, 0))
        for tag, bound in CASE_BOUNDS.items():
            assert report[tag]["max_dim"] is not None and report[tag]["max_dim"] <= bound, tag


def test_criterion_7_exponent_endomorphism():
    with criterion(7, "epsilon^2 = 6 epsilon, E-symmetric, rank 2 dim P on both families", limit=10):
        for d in (family_a_witness(6), family_b_witness(7)):
            e, _ = exponent_endomorphism(d)
            m = e.matrix
            # rebuild epsilon from the norm and pullback maps
            n = m.shape[0]
            rebuilt = 6 * intmat.identity(n)
            for f, c in ((d.f1, 3), (d.f2, 2)):
                rebuilt = rebuilt - c * intmat.matmul(pushforward(f).matrix, transfer(f).matrix)
            assert np.array_equal(rebuilt, m)
            assert np.array_equal(intmat.matmul(m, m), 6 * m)
            form = homology(d.X).intersection
            assert np.array_equal(intmat.matmul(m, form), intmat.matmul(form, m.T))
            assert sympy_rank(m) == 2 * derive_params(d).dim_p


def _maps_out_of(rng, k):
    """A random cover of degree <= 6 with <= 12 labels, and some maps out of it."""
    if k % 2:
        X, f1, f2 = random_fiber_morphisms(rng)
        maps = [f1, f2]
    else:
        X = random_cover(rng, 6, 12)
        maps = [CoverMorphism.to_line(X)]
        for system in block_systems(X):
            if 1 < len(system) < X.degree:
                maps.append(quotient(X, system)[1])
    return X, maps


def test_criterion_8_structural_invariants():
    with criterion(8, "100 random covers: Euler characteristic, unimodular form, transfer identities", limit=120):
        rng = random.Random(SEED)
        for k in range(100):
            X, maps = _maps_out_of(rng, k)
            assert X.degree <= 6 and len(X.labels) <= 12
            assert build_cw(X).euler_characteristic == 2 - 2 * X.genus
            h = homology(X)
            g = h.intersection
            assert h.rank == 2 * X.genus
            assert intmat.is_zero(g + g.T) and all(g[i, i] == 0 for i in range(h.rank))
            assert sympy_det(g) == 1
            for f in maps:
                tr, pf = transfer(f).matrix, pushforward(f).matrix
                hy = homology(f.target)
                assert np.array_equal(intmat.matmul(tr, pf), f.degree * intmat.identity(hy.rank))
                assert np.array_equal(intmat.matmul(tr, g, tr.T), f.degree * hy.intersection)


def test_criterion_9_seshadri():
    with criterion(9, "Seshadri bounds 2, 13/6, 16/7"):
        assert seshadri_upper_bound(4, "A") == Fraction(2)
        assert seshadri_upper_bound(5, "A") == Fraction(13, 6)
        assert seshadri_upper_bound(5, "B") == Fraction(16, 7)
        # closed forms, recomputed
        assert Fraction(3) - Fraction(5, 4 + 1) == 2 and Fraction(3) - Fraction(5, 5 + 2) == Fraction(16, 7)
