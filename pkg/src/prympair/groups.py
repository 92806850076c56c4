"""Small-degree permutation group computations on covers.

Everything here is exhaustive search: block systems are found by testing
candidate blocks, deck transformations by propagating an initial choice
along the generators.  That is adequate for small degrees (the pair
diagrams of interest have total degree 6) and is guarded by explicit budgets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .covers import (
    BranchedCover,
    CoverMorphism,
    MonodromyTuple,
    Permutation,
    relative_ramification,
)
from .errors import SearchBudgetExceeded

GROUP_ORDER_LIMIT = 10**6
MAX_BLOCK_DEGREE = 16


def group_elements(perms, degree, limit=GROUP_ORDER_LIMIT):
    """All elements of the group generated by ``perms`` (as image tuples)."""
    ident = tuple(range(degree))
    gens = [p.images for p in perms if not p.is_identity()]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = tuple(h[i] for i in g)
                if x not in seen:
                    seen.add(x)
                    if len(seen) > limit:
                        raise SearchBudgetExceeded(f"monodromy group order exceeds {limit}")
                    nxt.append(x)
        frontier = nxt
    return seen


def monodromy_group_order(cover: BranchedCover, limit=GROUP_ORDER_LIMIT) -> int:
    return len(group_elements(cover.perms, cover.degree, limit))


@dataclass(frozen=True)
class DeckGroup:
    order: int
    is_cyclic: bool
    is_galois: bool
    is_abelian: bool
    elements: tuple = ()

    def __iter__(self):
        # unpacks as (order, is_cyclic, is_galois)
        return iter((self.order, self.is_cyclic, self.is_galois))


def _deck_transformations(f: CoverMorphism):
    src = f.source
    n = src.degree
    perms = [p.images for p in src.perms]
    out = []
    for image0 in f.fibre(f.sheet_map[0]):
        phi = [None] * n
        phi[0] = image0
        stack = [0]
        ok = True
        while stack and ok:
            s = stack.pop()
            for p in perms:
                a, b = p[s], p[phi[s]]
                if phi[a] is None:
                    phi[a] = b
                    stack.append(a)
                elif phi[a] != b:
                    ok = False
                    break
        if ok and sorted(phi) == list(range(n)) and all(
            f.sheet_map[phi[s]] == f.sheet_map[s] for s in range(n)
        ):
            out.append(tuple(phi))
    return out


def _compose(g, h):
    return tuple(h[i] for i in g)


def _element_order(g):
    ident = tuple(range(len(g)))
    k, x = 1, g
    while x != ident:
        x = _compose(x, g)
        k += 1
    return k


def deck_group(f: CoverMorphism, limit=GROUP_ORDER_LIMIT) -> DeckGroup:
    """Automorphisms of ``f.source`` over ``f.target``.

    ``f`` is Galois exactly when the deck group order equals ``deg f``.
    """
    monodromy_group_order(f.source, limit)
    elems = _deck_transformations(f)
    order = len(elems)
    is_abelian = all(_compose(a, b) == _compose(b, a) for a in elems for b in elems)
    is_cyclic = any(_element_order(g) == order for g in elems)
    return DeckGroup(order, is_cyclic, order == f.degree, is_abelian, tuple(sorted(elems)))


def _block_images(block, perms):
    """The system of images of ``block``, or None if it is not a block."""
    blocks = {block}
    owner = {x: block for x in block}
    frontier = [block]
    while frontier:
        nxt = []
        for b in frontier:
            for p in perms:
                img = frozenset(p[x] for x in b)
                hit = {owner.get(x) for x in img}
                if hit == {img}:
                    continue
                if hit != {None}:
                    return None
                blocks.add(img)
                for x in img:
                    owner[x] = img
                nxt.append(img)
        frontier = nxt
    return blocks


def block_systems(cover: BranchedCover, within=None):
    """Invariant partitions of the sheets of a transitive cover.

    ``within`` optionally restricts the block containing sheet 0 to a subset
    (e.g. a fibre of a morphism).  Each system is a tuple of sorted tuples,
    ordered by minimum; the list runs from finest to coarsest block size.
    """
    n = cover.degree
    if n > MAX_BLOCK_DEGREE:
        raise SearchBudgetExceeded(f"block enumeration limited to degree {MAX_BLOCK_DEGREE}")
    perms = [p.images for p in cover.perms]
    pool = sorted(set(within) - {0}) if within is not None else list(range(1, n))
    found = []
    for size in range(0, len(pool) + 1):
        if n % (size + 1):
            continue
        for extra in combinations(pool, size):
            blocks = _block_images(frozenset((0,) + extra), perms)
            if blocks is None or sum(len(b) for b in blocks) != n:
                continue
            found.append(tuple(sorted(tuple(sorted(b)) for b in blocks)))
    return found


def quotient(cover: BranchedCover, system):
    """The intermediate cover defined by a block system, with the map onto it."""
    index = {x: k for k, b in enumerate(system) for x in b}
    perms = tuple(
        Permutation(tuple(index[p(b[0])] for b in system)) for p in cover.perms
    )
    Z = BranchedCover(MonodromyTuple(len(system), cover.labels, perms))
    return Z, CoverMorphism(cover, Z, tuple(index[s] for s in range(cover.degree)))


def intermediate_covers(f: CoverMorphism):
    """Factorizations ``source -> Z -> target`` with ``Z -> target`` of degree >= 2.

    Yields ``(Z, source -> Z, Z -> target)``.
    """
    fibre = f.fibre(f.sheet_map[0])
    for system in block_systems(f.source, within=fibre):
        if len(system[0]) == len(fibre):
            continue
        Z, to_z = quotient(f.source, system)
        down = CoverMorphism(Z, f.target, tuple(f.sheet_map[b[0]] for b in system))
        yield Z, to_z, down


def cyclic_etale_factorization_exists(f: CoverMorphism, limit=GROUP_ORDER_LIMIT) -> bool:
    """Whether ``f`` factors through a cyclic unramified cover of degree >= 2."""
    monodromy_group_order(f.source, limit)
    for _, _, down in intermediate_covers(f):
        if relative_ramification(down) != 0:
            continue
        dg = deck_group(down, limit)
        if dg.is_galois and dg.is_cyclic:
            return True
    return False


def isomorphic(c1: BranchedCover, c2: BranchedCover) -> bool:
    """Covers over the same labels with simultaneously conjugate monodromy."""
    if c1.degree != c2.degree or c1.labels != c2.labels:
        return False
    n = c1.degree
    p1 = [p.images for p in c1.perms]
    p2 = [p.images for p in c2.perms]
    for image0 in range(n):
        phi = [None] * n
        phi[0] = image0
        stack = [0]
        ok = True
        while stack and ok:
            s = stack.pop()
            for a, b in zip(p1, p2):
                x, y = a[s], b[phi[s]]
                if phi[x] is None:
                    phi[x] = y
                    stack.append(x)
                elif phi[x] != y:
                    ok = False
                    break
        if ok and sorted(phi) == list(range(n)):
            return True
    return False


def quotients_of_line_cover(cover: BranchedCover):
    """Covers ``Y' -> line`` of degree >= 2 through which ``cover`` factors."""
    out = []
    for system in block_systems(cover):
        if len(system) >= 2:
            out.append(quotient(cover, system)[0])
    return out


def common_factorization_exists(g1: BranchedCover, g2: BranchedCover, limit=GROUP_ORDER_LIMIT) -> bool:
    """Whether ``g1`` and ``g2`` both factor through one cover of degree >= 2."""
    from .covers import align

    g1, g2 = align(g1, g2)
    monodromy_group_order(g1, limit)
    monodromy_group_order(g2, limit)
    q1 = quotients_of_line_cover(g1)
    q2 = quotients_of_line_cover(g2)
    return any(isomorphic(a, b) for a in q1 for b in q2)
