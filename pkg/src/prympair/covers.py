"""Branched covers of the projective line encoded by permutation monodromy.

Sheets are ``0 .. n-1``.  Permutations compose left to right: ``p * q``
applies ``p`` first, so lifting the loop ``g1 g2`` from sheet ``s`` ends on
sheet ``(p1 * p2)(s)``.  A monodromy tuple lists one permutation per branch
label, and the product in label order is the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .errors import (
    DivisibilityError,
    InconsistentDiagram,
    NegativeGenus,
    ParityError,
)


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles, n):
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for k, i in enumerate(cyc):
                if not 0 <= i < n or i in seen:
                    raise ValueError(f"bad cycle {cyc} on {n} points")
                seen.add(i)
                images[i] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        """``self`` first, then ``other``."""
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self):
        """All cycles, fixed points included, each starting at its minimum."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def relabel(self, pi):
        """Conjugate by the relabelling ``i -> pi[i]``."""
        new = [0] * len(self.images)
        for i, j in enumerate(self.images):
            new[pi[i]] = pi[j]
        return Permutation(tuple(new))

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


def cycle_type(p: Permutation) -> tuple:
    """Cycle lengths of ``p`` in nonincreasing order, fixed points included."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def orbits(degree, perms):
    """Orbits of the group generated by ``perms``, each sorted, in order of minimum."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p.images):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(degree):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass(frozen=True)
class MonodromyTuple:
    degree: int
    labels: tuple
    perms: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if len(self.labels) != len(perms):
            raise ValueError("one permutation per label is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("branch labels must be distinct")
        for lab, p in zip(self.labels, perms):
            if p.degree != self.degree:
                raise ValueError(f"permutation at {lab!r} has degree {p.degree}, expected {self.degree}")
        if not self.product().is_identity():
            raise ValueError("product of the monodromy permutations is not the identity")
        if len(orbits(self.degree, perms)) != 1:
            raise ValueError("monodromy is not transitive (disconnected cover)")

    def product(self):
        out = Permutation.identity(self.degree)
        for p in self.perms:
            out = out * p
        return out

    def perm(self, label):
        return self.perms[self.labels.index(label)]

    def restrict(self, labels):
        """Re-index onto ``labels``: missing ones become identities, absent-from-list ones must be trivial."""
        labels = tuple(labels)
        table = dict(zip(self.labels, self.perms))
        for lab, p in table.items():
            if lab not in labels and not p.is_identity():
                raise ValueError(f"cannot drop nontrivial label {lab!r}")
        ident = Permutation.identity(self.degree)
        return MonodromyTuple(self.degree, labels, tuple(table.get(lab, ident) for lab in labels))

    def relabel(self, pi):
        return MonodromyTuple(self.degree, self.labels, tuple(p.relabel(pi) for p in self.perms))


@dataclass(frozen=True)
class BranchedCover:
    monodromy: MonodromyTuple

    @classmethod
    def from_perms(cls, degree, perms, labels=None):
        perms = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in perms)
        if labels is None:
            labels = tuple(f"t{i + 1}" for i in range(len(perms)))
        return cls(MonodromyTuple(degree, tuple(labels), perms))

    @classmethod
    def trivial(cls, labels=()):
        """The line itself, as the degree-1 cover over ``labels``."""
        return cls(MonodromyTuple(1, tuple(labels), tuple(Permutation.identity(1) for _ in labels)))

    @property
    def degree(self):
        return self.monodromy.degree

    @property
    def labels(self):
        return self.monodromy.labels

    @property
    def perms(self):
        return self.monodromy.perms

    @cached_property
    def ramification_degree(self):
        return ramification_degree(self)

    @cached_property
    def genus(self):
        return genus(self)

    def restrict(self, labels):
        return BranchedCover(self.monodromy.restrict(labels))

    def nontrivial_labels(self):
        return tuple(lab for lab, p in zip(self.labels, self.perms) if not p.is_identity())


def ramification_degree(c: BranchedCover) -> int:
    """Degree of the ramification divisor of ``c`` over the line."""
    delta = sum(c.degree - len(p.cycles()) for p in c.perms)
    if delta % 2:
        raise ParityError(f"ramification degree {delta} is odd")
    return delta


def genus(c: BranchedCover) -> int:
    g = 1 - c.degree + ramification_degree(c) // 2
    if g < 0:
        raise NegativeGenus(f"Riemann-Hurwitz gives genus {g}")
    return g


@dataclass(frozen=True)
class CoverMorphism:
    """A map of covers commuting with the projections to the line."""

    source: BranchedCover
    target: BranchedCover
    sheet_map: tuple

    def __post_init__(self):
        object.__setattr__(self, "sheet_map", tuple(int(i) for i in self.sheet_map))
        src, tgt = self.source, self.target
        if src.labels != tgt.labels:
            raise ValueError("source and target must share one branch label list")
        if len(self.sheet_map) != src.degree:
            raise ValueError("sheet map must have one entry per source sheet")
        if src.degree % tgt.degree:
            raise ValueError("target degree does not divide source degree")
        for p, q in zip(src.perms, tgt.perms):
            for s in range(src.degree):
                if self.sheet_map[p(s)] != q(self.sheet_map[s]):
                    raise ValueError("sheet map is not equivariant")
        deg = src.degree // tgt.degree
        counts = [0] * tgt.degree
        for v in self.sheet_map:
            counts[v] += 1
        if any(c != deg for c in counts):
            raise ValueError("fibres of the sheet map have unequal sizes")

    @property
    def degree(self):
        return self.source.degree // self.target.degree

    @classmethod
    def identity(cls, cover):
        return cls(cover, cover, tuple(range(cover.degree)))

    @classmethod
    def to_line(cls, cover):
        return cls(cover, BranchedCover.trivial(cover.labels), (0,) * cover.degree)

    def fibre(self, v):
        return [s for s, w in enumerate(self.sheet_map) if w == v]

    def restrict(self, labels):
        return CoverMorphism(self.source.restrict(labels), self.target.restrict(labels), self.sheet_map)


def relative_ramification(f: CoverMorphism) -> int:
    """Degree of the ramification divisor of ``f`` itself."""
    total = 0
    for p, q in zip(f.source.perms, f.target.perms):
        tlen = {}
        for cyc in q.cycles():
            for v in cyc:
                tlen[v] = len(cyc)
        for cyc in p.cycles():
            below = tlen[f.sheet_map[cyc[0]]]
            if len(cyc) % below:
                raise DivisibilityError(
                    f"source cycle of length {len(cyc)} over target cycle of length {below}"
                )
            total += len(cyc) // below - 1
    return total


def is_etale(f: CoverMorphism) -> bool:
    return relative_ramification(f) == 0


def merge_labels(first, second):
    """Shortest common label order; shared labels must appear in the same order."""
    set1, set2 = set(first), set(second)
    out = []
    i = j = 0
    while i < len(first) or j < len(second):
        if i < len(first) and first[i] not in set2:
            out.append(first[i])
            i += 1
        elif j < len(second) and second[j] not in set1:
            out.append(second[j])
            j += 1
        elif i < len(first) and j < len(second) and first[i] == second[j]:
            out.append(first[i])
            i += 1
            j += 1
        else:
            raise ValueError("shared branch labels occur in conflicting orders")
    return tuple(out)


def align(g1: BranchedCover, g2: BranchedCover):
    """Pad both covers with identity permutations onto a common label list."""
    labels = merge_labels(g1.labels, g2.labels)
    return g1.restrict(labels), g2.restrict(labels)


def fiber_product(g1: BranchedCover, g2: BranchedCover):
    """Components of the normalized fibre product over the line.

    Returns ``[(X, f1, f2), ...]`` with ``f_i: X -> g_i``, components sorted
    by their smallest sheet pair ``(i, j)``.
    """
    g1, g2 = align(g1, g2)
    d1, d2 = g1.degree, g2.degree
    pair_perms = [
        Permutation(tuple(a(i) * d2 + b(j) for i in range(d1) for j in range(d2)))
        for a, b in zip(g1.perms, g2.perms)
    ]
    out = []
    for orbit in orbits(d1 * d2, pair_perms):
        index = {x: k for k, x in enumerate(orbit)}
        perms = tuple(Permutation(tuple(index[p(x)] for x in orbit)) for p in pair_perms)
        X = BranchedCover(MonodromyTuple(len(orbit), g1.labels, perms))
        f1 = CoverMorphism(X, g1, tuple(x // d2 for x in orbit))
        f2 = CoverMorphism(X, g2, tuple(x % d2 for x in orbit))
        out.append((X, f1, f2))
    return out


@dataclass(frozen=True)
class PairDiagram:
    """Two covers of the line together with one component of their fibre product."""

    g1: BranchedCover
    g2: BranchedCover
    X: BranchedCover
    f1: CoverMorphism
    f2: CoverMorphism
    coprime: bool = True

    @classmethod
    def from_covers(cls, g1, g2, component=None, coprime=True):
        g1, g2 = align(g1, g2)
        if coprime and gcd(g1.degree, g2.degree) != 1:
            raise InconsistentDiagram(
                f"degrees {g1.degree} and {g2.degree} are not coprime"
            )
        comps = fiber_product(g1, g2)
        if component is None:
            if len(comps) != 1:
                raise InconsistentDiagram(
                    f"fibre product has {len(comps)} components; select one explicitly"
                )
            component = 0
        X, f1, f2 = comps[component]
        return cls(g1, g2, X, f1, f2, coprime)

    def __post_init__(self):
        if not (self.g1.labels == self.g2.labels == self.X.labels):
            raise InconsistentDiagram("covers of a diagram must share one label list")
        if self.f1.target != self.g1 or self.f2.target != self.g2:
            raise InconsistentDiagram("projections do not land on g1 and g2")
        if self.f1.source != self.X or self.f2.source != self.X:
            raise InconsistentDiagram("projections do not start at X")
        if self.coprime and gcd(self.g1.degree, self.g2.degree) != 1:
            raise InconsistentDiagram("degrees must be coprime")

    @property
    def d1(self):
        return self.g1.degree

    @property
    def d2(self):
        return self.g2.degree

    @property
    def is_fiber_product(self):
        """X is a full transitive orbit of the product action."""
        return self.X.degree == self.d1 * self.d2

    @property
    def params(self):
        from .classification import derive_params

        return derive_params(self)

    def pruned(self):
        """The same diagram over the labels where X actually branches."""
        labels = self.X.nontrivial_labels()
        X = self.X.restrict(labels)
        g1, g2 = self.g1.restrict(labels), self.g2.restrict(labels)
        return PairDiagram(
            g1,
            g2,
            X,
            CoverMorphism(X, g1, self.f1.sheet_map),
            CoverMorphism(X, g2, self.f2.sheet_map),
            self.coprime,
        )

    def composed(self):
        """The composed cover X -> line, as a morphism to the degree-1 cover."""
        return CoverMorphism.to_line(self.X)
