import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hyperelliptic
from prympair.covers import (
    BranchedCover,
    CoverMorphism,
    MonodromyTuple,
    PairDiagram,
    Permutation,
    align,
    cycle_type,
    fiber_product,
    genus,
    is_etale,
    merge_labels,
    ramification_degree,
    relative_ramification,
)
from prympair.errors import DivisibilityError, InconsistentDiagram, NegativeGenus, ParityError
from prympair.groups import (
    block_systems,
    common_factorization_exists,
    cyclic_etale_factorization_exists,
    deck_group,
)
from prympair.suite import random_monodromy


def cyc(n, *cycles):
    return Permutation.from_cycles(cycles, n)


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(3)) == (1, 1, 1)
    assert cycle_type(cyc(2, (0, 1))) == (2,)
    assert cycle_type(cyc(6, (0, 1, 2))) == (3, 1, 1, 1)


def test_composition_is_left_to_right():
    a, b = cyc(3, (0, 1)), cyc(3, (1, 2))
    # a first: 0 -> 1, then b: 1 -> 2
    assert (a * b)(0) == 2
    assert (b * a)(0) == 1
    assert (a * a.inverse()).is_identity()


def test_cycle_string_is_one_based():
    assert str(cyc(4, (0, 1), (2, 3))) == "(1 2)(3 4)"
    assert str(Permutation.identity(3)) == "()"


def test_monodromy_validation():
    t = cyc(2, (0, 1))
    with pytest.raises(ValueError, match="identity"):
        MonodromyTuple(2, ("a",), (t,))
    with pytest.raises(ValueError, match="transitive"):
        MonodromyTuple(3, ("a", "b"), (cyc(3, (0, 1)), cyc(3, (0, 1))))
    with pytest.raises(ValueError, match="distinct"):
        MonodromyTuple(2, ("a", "a"), (t, t))
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_ramification_degree_examples():
    assert ramification_degree(hyperelliptic(2)) == 6
    assert ramification_degree(BranchedCover.trivial(("a", "b"))) == 0


def test_genus_examples():
    assert genus(hyperelliptic(3)) == 3
    # degree 3 with delta = 12 has genus r1 - d1 + 1 = 4
    a, b = cyc(3, (0, 1, 2)), cyc(3, (0, 2, 1))
    c = BranchedCover.from_perms(3, [a, b] + [cyc(3, (0, 1))] * 8)
    assert ramification_degree(c) == 12 and genus(c) == 4


def test_genus_errors_on_corrupt_counts():
    c = hyperelliptic(0)
    # bypass validation to feed inconsistent data
    object.__setattr__(c.monodromy, "perms", c.perms[:1])
    with pytest.raises(ParityError):
        ramification_degree(c)
    d = BranchedCover.trivial(())
    object.__setattr__(d.monodromy, "degree", 3)
    with pytest.raises(NegativeGenus):
        genus(d)


def test_fiber_product_examples():
    g1 = BranchedCover.from_perms(3, [cyc(3, (0, 1, 2)), cyc(3, (0, 2, 1))] + [cyc(3, (0, 1))] * 2)
    g2 = BranchedCover.from_perms(2, [cyc(2, (0, 1))] * 4)
    comps = fiber_product(g1, g2)
    assert [X.degree for X, _, _ in comps] == [6]

    h = hyperelliptic(1)
    comps = fiber_product(h, h)
    assert [X.degree for X, _, _ in comps] == [2, 2]
    # diagonal first: it contains the pair (0, 0)
    X, f1, f2 = comps[0]
    assert f1.sheet_map == (0, 1)

    line = BranchedCover.trivial(h.labels)
    ((X, f1, f2),) = fiber_product(h, line)
    assert X.perms == h.perms and f1.sheet_map == (0, 1)
    assert relative_ramification(f1) == 0


def test_relative_ramification_family_b(family_b):
    assert relative_ramification(family_b.f2) == 0
    assert relative_ramification(family_b.f1) == 14
    assert is_etale(family_b.f2)
    assert not is_etale(CoverMorphism.to_line(hyperelliptic(1)))
    assert is_etale(CoverMorphism.identity(hyperelliptic(1)))


def test_relative_ramification_rejects_bad_map():
    # a 3-cycle cannot map onto a 2-cycle: only reachable by bypassing validation
    big = BranchedCover.from_perms(3, [cyc(3, (0, 1, 2)), cyc(3, (0, 2, 1))])
    g = CoverMorphism.to_line(big)
    object.__setattr__(g, "target", BranchedCover.from_perms(2, [cyc(2, (0, 1))] * 2))
    object.__setattr__(g, "sheet_map", (0, 0, 1))
    with pytest.raises(DivisibilityError):
        relative_ramification(g)


def test_morphism_validation():
    h = hyperelliptic(1)
    with pytest.raises(ValueError):
        CoverMorphism(h, h, (0, 0))


def test_merge_labels_and_align():
    assert merge_labels(("a", "b"), ("b", "c")) == ("a", "b", "c")
    with pytest.raises(ValueError):
        merge_labels(("a", "b"), ("b", "a"))
    g1 = BranchedCover.from_perms(2, [cyc(2, (0, 1))] * 2, labels=("a", "b"))
    g2 = BranchedCover.from_perms(2, [cyc(2, (0, 1))] * 2, labels=("c", "d"))
    a1, a2 = align(g1, g2)
    assert a1.labels == a2.labels == ("a", "b", "c", "d")
    assert a1.perms[2].is_identity()


def test_pair_diagram_requires_coprime_and_connected():
    h = hyperelliptic(1)
    with pytest.raises(InconsistentDiagram):
        PairDiagram.from_covers(h, h)
    with pytest.raises(InconsistentDiagram):
        PairDiagram.from_covers(h, h, coprime=False)
    d = PairDiagram.from_covers(h, h, component=0, coprime=False)
    assert d.X.degree == 2


def test_degree_one_second_factor():
    g1 = BranchedCover.from_perms(3, [cyc(3, (0, 1, 2)), cyc(3, (0, 2, 1))] + [cyc(3, (0, 1))] * 4)
    line = BranchedCover.trivial(g1.labels)
    d = PairDiagram.from_covers(g1, line)
    assert d.f1.sheet_map == tuple(range(3))
    p = d.params
    # X = X1, so f1 is unramified and f2 = g1
    assert (p.r2, p.s1, p.s2) == (0, 0, p.r1)
    assert p.dim_p == 0


def test_deck_group_examples(family_b):
    dg = deck_group(family_b.composed())
    assert (dg.order, dg.is_cyclic, dg.is_galois) == (6, False, True)
    assert not dg.is_abelian
    order, cyclic, galois = deck_group(family_b.f2)
    assert (order, cyclic, galois) == (3, True, True)
    assert tuple(deck_group(CoverMorphism.to_line(hyperelliptic(2)))) == (2, True, True)


def test_cyclic_etale_factorization_examples(family_a, family_b):
    assert cyclic_etale_factorization_exists(family_b.f2)
    assert not cyclic_etale_factorization_exists(family_b.f1)
    assert not cyclic_etale_factorization_exists(family_a.f2)
    assert not cyclic_etale_factorization_exists(CoverMorphism.identity(hyperelliptic(1)))
    # prime degree with branching: no proper intermediate cover, not unramified
    assert not cyclic_etale_factorization_exists(CoverMorphism.to_line(hyperelliptic(2)))


def test_common_factorization_examples(family_a):
    h = hyperelliptic(1)
    assert common_factorization_exists(h, h)
    assert not common_factorization_exists(family_a.g1, family_a.g2)


def test_block_systems_of_imprimitive_cover():
    # dihedral action on a square: blocks {0,2},{1,3}
    r = cyc(4, (0, 1, 2, 3))
    s = cyc(4, (1, 3))
    c = BranchedCover.from_perms(4, [r, r.inverse(), s, s])
    systems = block_systems(c)
    assert ((0, 2), (1, 3)) in systems
    assert systems[0] == ((0,), (1,), (2,), (3,))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 4), st.integers(2, 6))
def test_fiber_product_degrees_and_riemann_hurwitz(seed, d1, d2, k):
    rng = random.Random(seed)
    g1 = BranchedCover.from_perms(d1, random_monodromy(rng, d1, k))
    g2 = BranchedCover.from_perms(d2, random_monodromy(rng, d2, k))
    comps = fiber_product(g1, g2)
    assert sum(X.degree for X, _, _ in comps) == d1 * d2
    for X, f1, f2 in comps:
        for f in (f1, f2):
            assert X.genus == f.degree * (f.target.genus - 1) + 1 + relative_ramification(f) // 2
            if f.degree == 2:
                assert deck_group(f).order == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 3), st.integers(2, 8))
def test_params_relation_on_random_diagrams(seed, d1, d2, k):
    if d1 == d2:
        d2 = 5 - d1
    rng = random.Random(seed)
    g1 = BranchedCover.from_perms(d1, random_monodromy(rng, d1, k))
    g2 = BranchedCover.from_perms(d2, random_monodromy(rng, d2, k))
    p = PairDiagram.from_covers(g1, g2).params
    assert p.s2 == p.d2 * p.r1 - p.d1 * p.r2 + p.s1
