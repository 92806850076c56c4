"""Ramification parameters of a pair diagram and the exponent-6 families.

A diagram ``X -> X_i -> line`` (i = 1, 2) is summarized by the degrees
``d_i = deg g_i`` and the halves of the ramification degrees,
``delta(g_i) = 2 r_i`` and ``delta(f_i) = 2 s_i``.

Two regimes are classified by brute force over all parameter tuples:

* ramified: neither projection factors through a cyclic unramified cover;
  ``P`` is Prym-Tyurin exactly when ``dim P = g(X1) = g(X2)``.  Degrees are
  normalized to ``d1 > d2``.
* etale: ``f2`` is cyclic unramified (``s2 = 0``); ``P`` is Prym-Tyurin exactly
  when ``d1 = 3`` and ``dim P = g(X1) = g(X2) - 1``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

import numpy as np

from .covers import PairDiagram, ramification_degree, relative_ramification
from .errors import InconsistentDiagram, OutOfRange

FAMILY_MIN_DIM = {"A": 4, "B": 5}

# largest dim P allowed on each excluded branch of the case analysis
CASE_BOUNDS = {
    "ramified:d2>=4": 2,
    "ramified:d2=3": 3,
    "ramified:d2=2,d1>=5": 2,
    "etale:d2=4": 4,
    "etale:d2=5,6": 2,
    "etale:d2>=7": 1,
}


@dataclass(frozen=True, order=True)
class HurwitzParams:
    d1: int
    d2: int
    r1: int
    r2: int
    s1: int
    s2: int

    @property
    def genus_x1(self):
        return self.r1 - self.d1 + 1

    @property
    def genus_x2(self):
        return self.r2 - self.d2 + 1

    @property
    def genus_x(self):
        return self.d2 * (self.r1 - self.d1) + self.s1 + 1

    @property
    def dim_p(self):
        d1, d2 = self.d1, self.d2
        return d2 * self.r1 - d1 * d2 + d1 + d2 - self.r1 - self.r2 + self.s1 - 1

    def violations(self):
        """Failed consistency conditions, as readable strings (empty when valid)."""
        out = []
        if self.d1 < 1 or self.d2 < 1:
            out.append("degrees must be positive")
        if min(self.r1, self.r2, self.s1, self.s2) < 0:
            out.append("r_i and s_i must be nonnegative")
        if self.s2 != self.d2 * self.r1 - self.d1 * self.r2 + self.s1:
            out.append("s2 != d2*r1 - d1*r2 + s1")
        if self.genus_x1 < 0 or self.genus_x2 < 0:
            out.append("negative genus for X1 or X2")
        if self.genus_x < 0:
            out.append("negative genus for X")
        if self.dim_p < 0:
            out.append("negative dim P")
        return out

    def swapped(self):
        return HurwitzParams(self.d2, self.d1, self.r2, self.r1, self.s2, self.s1)

    def as_tuple(self):
        return (self.d1, self.d2, self.r1, self.r2, self.s1, self.s2)


@dataclass(frozen=True, order=True)
class FamilyDescriptor:
    params: HurwitzParams
    regime: str  # "ramified" or "etale"
    family: str  # "A", "B" or "none"
    dim_p: int
    exponent: int
    case_tag: str

    def row(self):
        return (*self.params.as_tuple(), self.dim_p, self.family, self.case_tag)

    def to_dict(self):
        out = asdict(self.params)
        out.update(regime=self.regime, family=self.family, dim_p=self.dim_p,
                   exponent=self.exponent, case_tag=self.case_tag)
        return out


def derive_params(d: PairDiagram) -> HurwitzParams:
    """Read ``(d1, d2, r1, r2, s1, s2)`` off a diagram and check it against the genera."""
    p = HurwitzParams(
        d.d1,
        d.d2,
        ramification_degree(d.g1) // 2,
        ramification_degree(d.g2) // 2,
        relative_ramification(d.f1) // 2,
        relative_ramification(d.f2) // 2,
    )
    bad = p.violations()
    if d.g1.genus != p.genus_x1 or d.g2.genus != p.genus_x2:
        bad.append("genera of X1, X2 disagree with r_i - d_i + 1")
    alt = p.d1 * (p.r2 - p.d2) + p.s2 + 1
    if d.X.genus != p.genus_x or d.X.genus != alt:
        bad.append("genus of X disagrees with the two projection formulas")
    if bad:
        raise InconsistentDiagram("; ".join(bad))
    return p


def case_tag(regime, d1, d2):
    """Name of the branch of the case analysis that a degree pair falls into."""
    if regime == "ramified":
        if d2 >= 4:
            return "ramified:d2>=4"
        if d2 == 3:
            return "ramified:d2=3"
        if d2 == 2 and d1 >= 5:
            return "ramified:d2=2,d1>=5"
        return f"ramified:d1={d1},d2={d2}"
    if d1 != 3:
        return "etale:d1!=3"
    if d2 == 4:
        return "etale:d2=4"
    if d2 in (5, 6):
        return "etale:d2=5,6"
    if d2 >= 7:
        return "etale:d2>=7"
    return f"etale:d2={d2}"


def _normalized(p):
    return p.swapped() if p.d1 < p.d2 else p


def family_a_test(p: HurwitzParams):
    """Whether ``p`` lies in the ramified exponent-6 family; returns ``(ok, derivation)``.

    Prym-Tyurin in the ramified regime amounts to three linear equations; the
    family is the part of their solution set of dimension at least 4.
    """
    p = _normalized(p)
    d1, d2, r1 = p.d1, p.d2, p.r1
    eqs = {
        "r2 = r1 + d2 - d1": p.r2 == r1 + d2 - d1,
        "s1 = (3-d2)r1 + (d2-3)d1 + 2": p.s1 == (3 - d2) * r1 + (d2 - 3) * d1 + 2,
        "s2 = (3-d1)r1 + (d1-3)d1 + 2": p.s2 == (3 - d1) * r1 + (d1 - 3) * d1 + 2,
    }
    tag = case_tag("ramified", d1, d2)
    derivation = {
        "params": p.as_tuple(),
        "equations": eqs,
        "failed": [k for k, v in eqs.items() if not v],
        "case_tag": tag,
        "dim_p": p.dim_p,
        "dim_bound": CASE_BOUNDS.get(tag),
    }
    ok = gcd(d1, d2) == 1 and not derivation["failed"] and p.dim_p >= FAMILY_MIN_DIM["A"]
    return ok, derivation


def family_b_test(p: HurwitzParams):
    """Whether ``p`` lies in the exponent-6 family with ``f2`` cyclic unramified.

    Returns ``(ok, derivation)``.  Here ``d2`` is the degree of the unramified
    map's target cover, so no normalization of the degree order takes place.
    """
    d1, d2, r1 = p.d1, p.d2, p.r1
    eqs = {
        "d1 = 3": d1 == 3,
        "s2 = 0": p.s2 == 0,
        "r2 = d2 + r1 - 2": p.r2 == d2 + r1 - 2,
        "s1 = 3 r2 - d2 r1": p.s1 == 3 * p.r2 - d2 * r1,
    }
    # s1 >= 0 under the system reads (d2 - 3)(3 - r1) + 3 >= 0
    slack = (d2 - 3) * (3 - r1) + 3
    r1_bound = None if d2 <= 3 else 3 + 3 // (d2 - 3)
    tag = case_tag("etale", d1, d2)
    derivation = {
        "params": p.as_tuple(),
        "equations": eqs,
        "failed": [k for k, v in eqs.items() if not v],
        "positivity": slack,
        "r1_bound": r1_bound,
        "case_tag": tag,
        "dim_p": p.dim_p,
        "dim_bound": None if r1_bound is None else r1_bound - 2,
    }
    ok = (
        gcd(d1, d2) == 1
        and not derivation["failed"]
        and slack >= 0
        and d2 == 2
        and p.dim_p >= FAMILY_MIN_DIM["B"]
    )
    return ok, derivation


def _grid_pt(d1, d2, max_r, regime):
    """All valid Prym-Tyurin parameter tuples for one degree pair (numpy brute force)."""
    # r_i < d_i - 1 would make g(X_i) negative, so those rows are skipped outright
    r1 = np.arange(max(d1 - 1, 0), max_r + 1, dtype=np.int64)
    r2 = np.arange(max(d2 - 1, 0), max_r + 1, dtype=np.int64)
    if regime == "ramified":
        r1, r2, s1 = r1[:, None, None], r2[None, :, None], np.arange(max_r + 1, dtype=np.int64)[None, None, :]
        s2 = d2 * r1 - d1 * r2 + s1
    else:
        r1, r2 = r1[:, None], r2[None, :]
        s1 = d1 * r2 - d2 * r1  # s2 = 0 solved for s1
        s2 = np.zeros_like(s1)
    g1 = r1 - d1 + 1
    g2 = r2 - d2 + 1
    dim = d2 * r1 - d1 * d2 + d1 + d2 - r1 - r2 + s1 - 1
    if regime == "ramified":
        pt = (dim == g1) & (dim == g2)
    else:
        pt = (dim == g1) & (dim == g2 - 1) & (d1 == 3)
    gx = d2 * (r1 - d1) + s1 + 1
    mask = pt & (s1 >= 0) & (s2 >= 0) & (s1 <= max_r) & (gx >= 0) & (dim >= 0)
    shape = mask.shape
    cols = [np.broadcast_to(a, shape)[mask] for a in (r1, r2, s1, s2, dim)]
    return np.stack(cols, axis=1)


def _degree_pairs(max_d, regime):
    for d1 in range(2, max_d + 1):
        for d2 in range(2, max_d + 1):
            if gcd(d1, d2) != 1:
                continue
            if regime == "ramified" and d1 <= d2:
                continue
            yield d1, d2


def classify_range(max_d: int, max_r: int, min_dim: int, regime: str = "both"):
    """Every Prym-Tyurin parameter tuple with degrees and ``r1, r2, s1`` in range.

    Coprime degree pairs ``2 <= d_i <= max_d`` and ``0 <= r1, r2, s1 <= max_r``
    are enumerated exhaustively; ``s2`` follows from the other five.  Tuples
    with ``dim P >= min_dim`` are returned sorted, each marked with its family
    (``"none"`` below the family's dimension threshold) and case tag.
    """
    if max_d < 1 or max_r < 0 or min_dim < 0:
        raise ValueError("bounds must be nonnegative")
    regimes = ("ramified", "etale") if regime == "both" else (regime,)
    out = []
    for reg in regimes:
        if reg not in ("ramified", "etale"):
            raise ValueError(f"unknown regime {reg!r}")
        test = family_a_test if reg == "ramified" else family_b_test
        for d1, d2 in _degree_pairs(max_d, reg):
            for r1, r2, s1, s2, dim in _grid_pt(d1, d2, max_r, reg).tolist():
                if dim < min_dim:
                    continue
                p = HurwitzParams(d1, d2, r1, r2, s1, s2)
                ok, der = test(p)
                family = ("A" if reg == "ramified" else "B") if ok else "none"
                out.append(FamilyDescriptor(p, reg, family, dim, d1 * d2, der["case_tag"]))
    out.sort()
    return out


def case_bound_report(descriptors):
    """Largest observed ``dim P`` per case tag, against the bound from the case analysis."""
    seen = {}
    for fd in descriptors:
        seen[fd.case_tag] = max(seen.get(fd.case_tag, -1), fd.dim_p)
    report = {}
    for tag, bound in CASE_BOUNDS.items():
        top = seen.get(tag)
        report[tag] = {"max_dim": top, "bound": bound, "ok": top is None or top <= bound}
    return report


def prym_tyurin_equations(p: HurwitzParams, regime: str) -> bool:
    """The parameter form of the Prym-Tyurin criterion, without any dimension gate."""
    if regime == "ramified":
        return not family_a_test(p)[1]["failed"]
    if regime == "etale":
        return not family_b_test(p)[1]["failed"]
    raise ValueError(f"unknown regime {regime!r}")


def family_moduli_dimension(d: int, family: str = "A") -> int:
    """Parameter count ``2d + 1`` of the exponent-6 family in dimension ``d``."""
    if d < FAMILY_MIN_DIM[family]:
        raise OutOfRange(f"family {family} starts in dimension {FAMILY_MIN_DIM[family]}")
    return 2 * d + 1
