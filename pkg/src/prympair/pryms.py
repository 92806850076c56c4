"""Polarized integer lattices and Prym sublattices.

An abelian subvariety of a polarized abelian variety is modelled by a
saturated sublattice of its period lattice on which the alternating form is
nondegenerate.  Every group order below is an exact Python integer.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod

import numpy as np

from . import intmat
from .covers import CoverMorphism, PairDiagram
from .errors import (
    DegenerateForm,
    GcdViolated,
    IdentityViolated,
    NotComplementary,
    NotExponentSix,
    OutOfRange,
    SymmetryMismatch,
    WrongRegime,
)
from .homology import homology, pushforward, transfer


def _check_alternating(form):
    n = form.shape[0]
    if form.shape != (n, n):
        raise ValueError("form must be square")
    if any(form[i, i] != 0 for i in range(n)) or not intmat.is_zero(form + form.T):
        raise ValueError("form is not alternating")


@dataclass(eq=False)
class PolarizedLattice:
    """``Z^n`` with a nondegenerate alternating integer form."""

    form: np.ndarray

    def __post_init__(self):
        self.form = intmat.as_matrix(self.form)
        _check_alternating(self.form)
        if intmat.det(self.form) == 0:
            raise DegenerateForm("polarization form is degenerate")

    @property
    def rank(self):
        return self.form.shape[0]

    @property
    def is_principal(self):
        return abs(intmat.det(self.form)) == 1

    def full(self) -> "Sublattice":
        return Sublattice(self, intmat.identity(self.rank))


@dataclass(eq=False)
class Sublattice:
    ambient: PolarizedLattice
    basis: np.ndarray

    def __post_init__(self):
        self.basis = intmat.as_matrix(self.basis, self.ambient.rank)
        if self.basis.shape[1] != self.ambient.rank:
            raise ValueError("basis vectors have the wrong length")
        if intmat.rank(self.basis) != self.basis.shape[0]:
            raise ValueError("basis rows are linearly dependent")

    @property
    def rank(self):
        return self.basis.shape[0]

    @property
    def saturated(self):
        return intmat.full_rank_index(self.basis) == 1

    @property
    def restricted_form(self):
        return intmat.matmul(self.basis, self.ambient.form, self.basis.T)

    def polarized(self) -> PolarizedLattice:
        """This sublattice as a lattice in its own right, in basis coordinates."""
        return PolarizedLattice(self.restricted_form)

    def coordinates(self, vectors):
        return intmat.solve_left(self.basis, vectors)

    def inside(self, parent: "Sublattice") -> "Sublattice":
        """Re-express this sublattice in the coordinates of ``parent``."""
        return Sublattice(parent.polarized(), parent.coordinates(self.basis))

    def lift(self, parent: "Sublattice") -> "Sublattice":
        """Inverse of :meth:`inside`: back to the ambient of ``parent``."""
        return Sublattice(parent.ambient, intmat.matmul(self.basis, parent.basis))

    def same_span(self, other: "Sublattice") -> bool:
        """Equal rational spans."""
        if self.rank != other.rank:
            return False
        both = np.concatenate([self.basis, other.basis]) if self.rank else self.basis
        return intmat.rank(both) == self.rank

    def contains(self, other: "Sublattice") -> bool:
        try:
            self.coordinates(other.basis)
        except ValueError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Sublattice):
            return NotImplemented
        return np.array_equal(intmat.hnf(self.basis), intmat.hnf(other.basis)) and \
            self.basis.shape == other.basis.shape

    __hash__ = None


@dataclass(frozen=True)
class PolarizationType:
    divisors: tuple

    def __post_init__(self):
        d = tuple(int(x) for x in self.divisors)
        object.__setattr__(self, "divisors", d)
        if any(x < 1 for x in d):
            raise ValueError("divisors must be positive")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"{d} is not a divisibility chain")

    def __len__(self):
        return len(self.divisors)

    def __iter__(self):
        return iter(self.divisors)

    def __str__(self):
        return "(" + ", ".join(map(str, self.divisors)) + ")"


def _prime_powers(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class KernelGroup:
    """``K(L) = (Z/d1 x ... x Z/dh)^2`` for a polarization of type ``(d1, ..., dh)``."""

    invariants: tuple  # nontrivial invariant factors, each listed twice

    @classmethod
    def of_type(cls, ptype: PolarizationType):
        return cls(tuple(sorted(d for d in ptype.divisors if d > 1 for _ in range(2))))

    @property
    def order(self):
        return prod(self.invariants)

    @property
    def exponent(self):
        return max(self.invariants, default=1)

    def primary_parts(self):
        """Prime-power cyclic factors, sorted: the isomorphism class of the group."""
        return tuple(sorted(q for d in self.invariants for q in _prime_powers(d)))

    def is_isomorphic_to_sum(self, *others):
        parts = Counter()
        for g in others:
            parts.update(g.primary_parts())
        return Counter(self.primary_parts()) == parts


def skew_normal_form(form):
    """Integral symplectic reduction of an alternating matrix.

    Returns ``(divisors, basis, nullity)``: ``basis`` is unimodular and
    ``basis @ form @ basis.T`` is block diagonal with blocks
    ``[[0, d], [-d, 0]]`` for ``d`` in ``divisors`` (a divisibility chain),
    followed by a zero block of size ``nullity``.
    """
    g = intmat.as_matrix(form).copy()
    _check_alternating(g)
    n = g.shape[0]
    p = intmat.identity(n)

    def addmul(i, j, c):
        # basis_i += c * basis_j
        p[i, :] += c * p[j, :]
        g[i, :] += c * g[j, :]
        g[:, i] += c * g[:, j]

    def swap(i, j):
        p[[i, j], :] = p[[j, i], :]
        g[[i, j], :] = g[[j, i], :]
        g[:, [i, j]] = g[:, [j, i]]

    divisors = []
    k = 0
    while 2 * k + 1 < n:
        a, b = 2 * k, 2 * k + 1
        while True:
            best = None
            for i in range(a, n):
                for j in range(i + 1, n):
                    v = g[i, j]
                    if v != 0 and (best is None or abs(v) < abs(g[best])):
                        best = (i, j)
            if best is None:
                return divisors, p, n - 2 * k
            i, j = best
            if i != a:
                swap(a, i)
                if j == a:
                    j = i
            if j != b:
                swap(b, j)
            if g[a, b] < 0:
                swap(a, b)
            piv = g[a, b]
            clean = True
            for l in range(b + 1, n):
                q = g[a, l] // piv
                if q:
                    addmul(l, b, -q)
                q = g[b, l] // piv
                if q:
                    addmul(l, a, q)
                if g[a, l] or g[b, l]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (l for l in range(b + 1, n) for m in range(b + 1, n) if g[l, m] % piv),
                None,
            )
            if bad is None:
                break
            addmul(a, bad, 1)
        divisors.append(int(g[a, b]))
        k += 1
    return divisors, p, n - 2 * k


def saturate(s: Sublattice) -> Sublattice:
    return Sublattice(s.ambient, intmat.saturation(s.basis, s.ambient.rank))


def restricted_type(s: Sublattice) -> PolarizationType:
    """Type of the ambient polarization restricted to ``s``."""
    divisors, _, nullity = skew_normal_form(s.restricted_form)
    if nullity:
        raise DegenerateForm(f"restricted form has a kernel of rank {nullity}")
    return PolarizationType(tuple(divisors))


def kernel_group(s) -> KernelGroup:
    if isinstance(s, PolarizedLattice):
        s = s.full()
    return KernelGroup.of_type(restricted_type(s))


def complement(a: Sublattice, within: Sublattice | None = None) -> Sublattice:
    """Vectors of ``within`` (default: everything) orthogonal to ``a`` under the form."""
    divisors, _, nullity = skew_normal_form(a.restricted_form)
    if nullity:
        raise DegenerateForm("cannot take the complement of a degenerate sublattice")
    amb = a.ambient
    if within is None:
        within = amb.full()
    elif not within.contains(a):
        raise ValueError("sublattice is not contained in the enclosing lattice")
    pairing = intmat.matmul(within.basis, amb.form, a.basis.T)
    k = intmat.left_kernel(pairing)
    out = Sublattice(amb, intmat.hnf(intmat.matmul(k, within.basis)))
    if out.rank != within.rank - a.rank:
        raise DegenerateForm("enclosing lattice is degenerate on the complement")
    return out


def intersection_order(a: Sublattice, p: Sublattice) -> int:
    """``|A cap P| = [ambient : lattice(A) + lattice(P)]`` for complementary sublattices."""
    if a.ambient is not p.ambient:
        raise NotComplementary("sublattices live in different ambient lattices")
    if a.rank + p.rank != a.ambient.rank:
        raise NotComplementary(f"ranks {a.rank} + {p.rank} != {a.ambient.rank}")
    d = intmat.det(np.concatenate([a.basis, p.basis]))
    if d == 0:
        raise NotComplementary("sublattices share a rational direction")
    return abs(d)


def kernel_meet_order(p: Sublattice) -> int:
    """``|K(L) cap P|`` as the index of ``lattice(P)`` in ``dual(ambient) cap span(P)``."""
    return intmat.full_rank_index(intmat.matmul(p.basis, p.ambient.form))


def verify_complement_orders(a: Sublattice) -> dict:
    """``|K(L_P)| |K(L_A)| = |A cap P|^2 |K(L)|`` for ``P`` the complement of ``A``."""
    p = complement(a)
    kp = kernel_group(p).order
    ka = kernel_group(a).order
    meet = intersection_order(a, p)
    kl = abs(intmat.det(a.ambient.form))
    report = {"K(L_P)": kp, "K(L_A)": ka, "A cap P": meet, "K(L)": kl}
    if kp * ka != meet * meet * kl:
        raise IdentityViolated(f"complement order identity fails: {report}")
    return report


def verify_kernel_sequence(a: Sublattice) -> dict:
    """``|K(L_P)| = |K(L) cap P| |A cap P|``, and the same with ``A`` and ``P`` exchanged."""
    p = complement(a)
    kp = kernel_group(p).order
    ka = kernel_group(a).order
    meet = intersection_order(a, p)
    kl_p = kernel_meet_order(p)
    kl_a = kernel_meet_order(a)
    report = {"K(L_P)": kp, "K(L) cap P": kl_p, "A cap P": meet, "K(L_A)": ka, "K(L) cap A": kl_a}
    if kp != kl_p * meet or ka != kl_a * meet:
        raise IdentityViolated(f"kernel sequence orders fail: {report}")
    return report


@dataclass(eq=False)
class DiagramLattices:
    """All lattices attached to a pair diagram, inside ``H_1(X)``."""

    diagram: PairDiagram
    ambient: PolarizedLattice
    prym_f1: Sublattice
    prym_f2: Sublattice
    pullback_f1: Sublattice
    pullback_f2: Sublattice
    prym: Sublattice
    chain_maps: dict = field(repr=False)

    @property
    def dim(self):
        return self.prym.rank // 2


def prym_lattice(f: CoverMorphism) -> Sublattice:
    """Saturated kernel of the norm map."""
    amb = PolarizedLattice(homology(f.source).intersection)
    return Sublattice(amb, intmat.left_kernel(pushforward(f).matrix))


def pullback_lattice(f: CoverMorphism) -> Sublattice:
    """Saturated image of the pullback: the lattice of ``f^* J_target``."""
    amb = PolarizedLattice(homology(f.source).intersection)
    return Sublattice(amb, intmat.saturation(transfer(f).matrix, amb.rank))


@lru_cache(maxsize=64)
def diagram_lattices(d: PairDiagram) -> DiagramLattices:
    d = d.pruned()
    hx = homology(d.X)
    amb = PolarizedLattice(hx.intersection)
    maps = {
        "pushforward_f1": pushforward(d.f1).matrix,
        "pushforward_f2": pushforward(d.f2).matrix,
        "transfer_f1": transfer(d.f1).matrix,
        "transfer_f2": transfer(d.f2).matrix,
    }
    p1 = Sublattice(amb, intmat.left_kernel(maps["pushforward_f1"]))
    p2 = Sublattice(amb, intmat.left_kernel(maps["pushforward_f2"]))
    a1 = Sublattice(amb, intmat.saturation(maps["transfer_f1"], amb.rank))
    a2 = Sublattice(amb, intmat.saturation(maps["transfer_f2"], amb.rank))
    prym = complement(a2, within=p1)
    mirror = complement(a1, within=p2)
    if not (prym.same_span(mirror) and prym == mirror):
        raise SymmetryMismatch("the two constructions of the pair Prym lattice differ")
    return DiagramLattices(d, amb, p1, p2, a1, a2, prym, maps)


def prym_pair_lattice(d: PairDiagram) -> Sublattice:
    """Complement of ``f2^* J_{X2}`` inside the Prym lattice of ``f1``."""
    return diagram_lattices(d).prym


def verify_kernel_splitting(d: PairDiagram) -> dict:
    """``K(L_P) = K(L) + K(L|f2^*J_{X2})`` with ``L`` the form on the Prym lattice of ``f1``.

    The mirror statement with the roles of the two projections exchanged is
    checked as well.
    """
    if gcd(d.d1, d.d2) != 1:
        raise GcdViolated(f"gcd({d.d1}, {d.d2}) != 1")
    lat = diagram_lattices(d)
    k_p = kernel_group(lat.prym)
    k_l = kernel_group(lat.prym_f1)
    k_a2 = kernel_group(lat.pullback_f2)
    k_m = kernel_group(lat.prym_f2)
    k_a1 = kernel_group(lat.pullback_f1)
    # inside the Prym lattice of f1, A = f2^* J_{X2} meets K(L) trivially
    a2_in = lat.pullback_f2.inside(lat.prym_f1)
    meet = intersection_order(a2_in, complement(a2_in))
    report = {
        "K(L_P)": list(k_p.invariants),
        "K(L)": list(k_l.invariants),
        "K(L_A)": list(k_a2.invariants),
        "K(M)": list(k_m.invariants),
        "K(M_A)": list(k_a1.invariants),
        "A cap P": meet,
        "K(L) cap A": kernel_meet_order(a2_in),
        "splitting": k_p.is_isomorphic_to_sum(k_l, k_a2),
        "mirror_splitting": k_p.is_isomorphic_to_sum(k_m, k_a1),
    }
    if not (report["splitting"] and report["mirror_splitting"]):
        raise IdentityViolated(f"kernel splitting fails: {report}")
    if report["K(L) cap A"] != 1 or meet != k_a2.order:
        raise IdentityViolated(f"K(L_A) is not A cap P: {report}")
    return report


def prym_tyurin_check(s: Sublattice, q: int) -> bool:
    return all(d == q for d in restricted_type(s).divisors)


@dataclass(eq=False)
class Endomorphism:
    """Integer endomorphism of ``H_1`` acting on row vectors."""

    matrix: np.ndarray


def exponent_endomorphism(d: PairDiagram, check=True):
    """``e = 6 - 3 f1^* Nm_f1 - 2 f2^* Nm_f2`` on ``H_1(X)`` for degrees ``(3, 2)``.

    Returns ``(Endomorphism, report)``; on a Prym-Tyurin diagram ``e^2 = 6e``,
    ``e`` is self-adjoint for the form and its image spans the pair Prym
    lattice.  With ``check`` a failed assertion raises NotExponentSix.
    """
    if (d.d1, d.d2) != (3, 2):
        raise WrongRegime(f"degrees ({d.d1}, {d.d2}) are not (3, 2)")
    lat = diagram_lattices(d)
    m = lat.chain_maps
    n = lat.ambient.rank
    eps = (
        6 * intmat.identity(n)
        - 3 * intmat.matmul(m["pushforward_f1"], m["transfer_f1"])
        - 2 * intmat.matmul(m["pushforward_f2"], m["transfer_f2"])
    )
    form = lat.ambient.form
    image = Sublattice(lat.ambient, intmat.saturation(eps, n)) if not intmat.is_zero(eps) else None
    report = {
        "square_is_6e": bool(np.array_equal(intmat.matmul(eps, eps), 6 * eps)),
        "image_is_prym": image is not None and image == lat.prym,
        "rank": intmat.rank(eps),
        "rank_is_2dimP": intmat.rank(eps) == lat.prym.rank,
        "self_adjoint": bool(np.array_equal(intmat.matmul(eps, form), intmat.matmul(form, eps.T))),
    }
    report["ok"] = all(report[k] for k in ("square_is_6e", "image_is_prym", "rank_is_2dimP", "self_adjoint"))
    if check and not report["ok"]:
        raise NotExponentSix(f"exponent endomorphism checks fail: {report}")
    return Endomorphism(eps), report


def seshadri_upper_bound(dim_p: int, family: str) -> Fraction:
    """Upper bound for the Seshadri constant of the Prym-Tyurin variety of a family member."""
    shift = {"A": 1, "B": 2}[family]
    least = {"A": 4, "B": 5}[family]
    if dim_p < least:
        raise OutOfRange(f"family {family} starts in dimension {least}")
    return 3 - Fraction(5, dim_p + shift)
