from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prympair.classification import (
    CASE_BOUNDS,
    HurwitzParams,
    case_bound_report,
    classify_range,
    derive_params,
    family_a_test,
    family_b_test,
    family_moduli_dimension,
    prym_tyurin_equations,
)
from prympair.errors import InconsistentDiagram, OutOfRange


def test_derive_params_family_witnesses(family_a, family_b):
    a = derive_params(family_a)
    assert a.as_tuple() == (3, 2, 6, 5, 5, 2) and a.dim_p == 4
    b = derive_params(family_b)
    assert b.as_tuple() == (3, 2, 7, 7, 7, 0) and b.dim_p == 5
    assert (b.genus_x, b.genus_x1, b.genus_x2) == (16, 5, 6)


def test_derive_params_rejects_corrupt_diagram(family_a):
    from dataclasses import replace

    bad = replace(family_a)
    object.__setattr__(bad, "X", family_a.g1)
    with pytest.raises(InconsistentDiagram):
        derive_params(bad)


def test_params_violations():
    assert HurwitzParams(3, 2, 6, 5, 5, 2).violations() == []
    assert "s2 != d2*r1 - d1*r2 + s1" in HurwitzParams(3, 2, 6, 5, 5, 3).violations()
    assert HurwitzParams(3, 2, 1, 1, 0, 0).violations()


def test_family_a_examples():
    ok, der = family_a_test(HurwitzParams(3, 2, 6, 5, 5, 2))
    assert ok and not der["failed"]
    ok, der = family_a_test(HurwitzParams(3, 2, 6, 5, 5, 3))
    assert not ok and der["failed"] == ["s2 = (3-d1)r1 + (d1-3)d1 + 2"]
    # satisfies all three equations but sits on the d1 >= 5, d2 = 2 branch
    p = HurwitzParams(5, 2, 4, 1, 1, 4)
    ok, der = family_a_test(p)
    assert not ok and not der["failed"]
    assert der["case_tag"] == "ramified:d2=2,d1>=5" and der["dim_bound"] == 2 and p.dim_p <= 2
    # order of the degrees does not matter
    assert family_a_test(HurwitzParams(2, 3, 5, 6, 2, 5))[0]


def test_family_b_examples():
    ok, der = family_b_test(HurwitzParams(3, 2, 7, 7, 7, 0))
    assert ok
    p = HurwitzParams(3, 4, 6, 8, 0, 0)
    ok, der = family_b_test(p)
    assert not ok and not der["failed"] and der["dim_bound"] == 4 and p.dim_p == 4
    ok, der = family_b_test(HurwitzParams(3, 7, 3, 8, 3, 0))
    assert not ok and der["r1_bound"] == 3 and der["dim_bound"] == 1
    # system holds, positivity fails
    ok, der = family_b_test(HurwitzParams(3, 7, 4, 9, -1, 0))
    assert not ok and der["positivity"] < 0


def test_classify_dimension_five():
    out = classify_range(30, 100, 5)
    a = [fd for fd in out if fd.family == "A"]
    b = [fd for fd in out if fd.family == "B"]
    assert len(a) + len(b) == len(out)
    assert [fd.params.as_tuple() for fd in a] == [(3, 2, r, r - 1, r - 1, 2) for r in range(7, 101)]
    assert [fd.params.as_tuple() for fd in b] == [(3, 2, r, r, r, 0) for r in range(7, 101)]
    assert all(fd.dim_p == fd.params.r1 - 2 and fd.exponent == 6 for fd in out)


def test_classify_dimension_four_ramified():
    out = classify_range(30, 100, 4, regime="ramified")
    assert {fd.family for fd in out} == {"A"}
    assert [fd.params.r1 for fd in out] == list(range(6, 101))


def test_small_range_has_tagged_non_family_tuples():
    out = classify_range(4, 10, 1)
    none = [fd for fd in out if fd.family == "none"]
    assert none
    for fd in none:
        assert fd.case_tag
        threshold = 4 if fd.regime == "ramified" else 5
        if fd.params.as_tuple()[:2] == (3, 2):
            assert fd.dim_p < threshold


def test_case_bounds_are_attained_and_respected():
    report = case_bound_report(classify_range(30, 100, 0))
    for tag, row in report.items():
        assert row["ok"], tag
        assert row["max_dim"] == CASE_BOUNDS[tag]


def test_classification_is_order_independent():
    whole = classify_range(9, 25, 0)
    parts = classify_range(9, 25, 0, "etale") + classify_range(9, 25, 0, "ramified")
    assert whole == sorted(parts)


def loop_oracle(max_d, max_r):
    """Plain nested loops over the genus formulas, independent of the numpy grid."""
    found = set()
    for d1 in range(2, max_d + 1):
        for d2 in range(2, max_d + 1):
            if gcd(d1, d2) != 1:
                continue
            for r1 in range(max_r + 1):
                for r2 in range(max_r + 1):
                    for s1 in range(max_r + 1):
                        s2 = d2 * r1 - d1 * r2 + s1
                        if s2 < 0:
                            continue
                        g1, g2 = r1 - d1 + 1, r2 - d2 + 1
                        gx = d2 * (r1 - d1) + s1 + 1
                        if min(g1, g2, gx) < 0:
                            continue
                        dim = gx - g1 - g2
                        if d1 > d2 and dim == g1 == g2:
                            found.add(("ramified", (d1, d2, r1, r2, s1, s2)))
                        if s2 == 0 and d1 == 3 and dim == g1 == g2 - 1:
                            found.add(("etale", (d1, d2, r1, r2, s1, s2)))
    return found


def test_grid_matches_loop_oracle():
    got = {(fd.regime, fd.params.as_tuple()) for fd in classify_range(7, 14, 0)}
    assert got == loop_oracle(7, 14)


@settings(max_examples=200)
@given(st.integers(2, 9), st.integers(2, 9), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_genus_criterion_matches_equation_systems(d1, d2, r1, r2, s1):
    if gcd(d1, d2) != 1:
        return
    p = HurwitzParams(d1, d2, r1, r2, s1, d2 * r1 - d1 * r2 + s1)
    if p.violations():
        return
    if d1 > d2:
        assert (p.dim_p == p.genus_x1 == p.genus_x2) == prym_tyurin_equations(p, "ramified")
    if p.s2 == 0:
        etale = d1 == 3 and p.dim_p == p.genus_x1 == p.genus_x2 - 1
        assert etale == prym_tyurin_equations(p, "etale")


def test_moduli_dimension():
    assert family_moduli_dimension(4) == 9
    assert family_moduli_dimension(5) == 11
    assert family_moduli_dimension(5, "B") == 11
    with pytest.raises(OutOfRange):
        family_moduli_dimension(3)
    with pytest.raises(OutOfRange):
        family_moduli_dimension(4, "B")
