"""Constructing pair diagrams with prescribed ramification parameters.

Each branch label carries a pair ``(a, b)`` of permutations, one for ``g1``
and one for ``g2``.  Its contribution to ``(delta g1, delta g2, delta f1,
delta f2)`` depends only on the two cycle types: cycles of lengths ``x`` and
``y`` give ``gcd(x, y)`` points of ``X`` with ramification ``lcm(x, y)``.

The search first splits the target vector into a multiset of local cycle
type pairs, then fills labels with actual permutations of those types.  Types
are placed in a fixed sorted order: braid moves reorder the labels of any
monodromy tuple without changing its group or local types, so this loses no
existence information.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from math import gcd

from .classification import HurwitzParams, derive_params
from .covers import BranchedCover, PairDiagram, Permutation, cycle_type, is_etale, orbits
from .errors import InconsistentParams, NotFound
from .groups import cyclic_etale_factorization_exists, deck_group

DEFAULT_BUDGET = 200_000


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def local_contribution(ta, tb):
    """``(delta g1, delta g2, delta f1, delta f2)`` of one label with cycle types ``ta``, ``tb``."""
    dg1 = sum(x - 1 for x in ta)
    dg2 = sum(y - 1 for y in tb)
    df1 = df2 = 0
    for x in ta:
        for y in tb:
            g = gcd(x, y)
            l = x * y // g
            df1 += g * (l // x - 1)
            df2 += g * (l // y - 1)
    return dg1, dg2, df1, df2


@lru_cache(maxsize=None)
def _local_types(d1, d2):
    out = []
    for ta in _partitions(d1):
        for tb in _partitions(d2):
            v = local_contribution(ta, tb)
            if any(v[:2]):
                out.append(((ta, tb), v))
    return tuple(out)


def type_multisets(params: HurwitzParams):
    """Multisets of local type pairs summing to ``(2 r1, 2 r2, 2 s1, 2 s2)``.

    Yields lists of ``((ta, tb), count)``, fewest labels first.
    """
    types = _local_types(params.d1, params.d2)
    target = (2 * params.r1, 2 * params.r2, 2 * params.s1, 2 * params.s2)

    @lru_cache(maxsize=None)
    def solve(i, rem):
        if i == len(types):
            return [()] if not any(rem) else []
        t, v = types[i]
        out = []
        k = 0
        while all(r - k * x >= 0 for r, x in zip(rem, v)):
            left = tuple(r - k * x for r, x in zip(rem, v))
            for tail in solve(i + 1, left):
                out.append((((t, k),) if k else ()) + tail)
            k += 1
        return out

    sols = solve(0, target)
    yield from sorted(sols, key=lambda s: (sum(k for _, k in s), s))


@lru_cache(maxsize=None)
def _perms_of_type(d, ctype):
    return tuple(
        Permutation(p) for p in permutations(range(d)) if cycle_type(Permutation(p)) == ctype
    )


def canonical_form(perms1, perms2):
    """Least representative under independent relabelling of the sheets of ``g1`` and ``g2``."""
    def least(perms):
        if not perms:
            return ()
        d = perms[0].degree
        return min(tuple(p.relabel(pi).images for p in perms) for pi in permutations(range(d)))

    return least(tuple(perms1)), least(tuple(perms2))


def _regime_ok(diagram, regime):
    if regime == "etale":
        if not is_etale(diagram.f2):
            return False
        dg = deck_group(diagram.f2)
        return dg.is_galois and dg.is_cyclic and not cyclic_etale_factorization_exists(diagram.f1)
    if regime == "ramified":
        return not (
            cyclic_etale_factorization_exists(diagram.f1)
            or cyclic_etale_factorization_exists(diagram.f2)
        )
    return True


def _check_params(params):
    bad = params.violations()
    if bad:
        raise InconsistentParams("; ".join(bad))
    if gcd(params.d1, params.d2) != 1:
        raise InconsistentParams("degrees must be coprime")


def iter_witnesses(params: HurwitzParams, budget=DEFAULT_BUDGET, regime="auto", stats=None):
    """Pair diagrams realizing ``params``, pairwise non-isomorphic, in search order.

    ``stats`` (a dict) receives ``nodes`` and ``exhausted`` when the generator
    stops.
    """
    _check_params(params)
    if regime == "auto":
        regime = "etale" if params.s2 == 0 else "ramified"
    d1, d2 = params.d1, params.d2
    stats = {} if stats is None else stats
    stats.update(nodes=0, exhausted=False)
    seen = set()
    id1, id2 = Permutation.identity(d1), Permutation.identity(d2)

    for ms in type_multisets(params):
        seq = [t for t, k in ms for _ in range(k)]
        n = len(seq)
        choices = [
            [(a, b) for a in _perms_of_type(d1, ta) for b in _perms_of_type(d2, tb)]
            for ta, tb in seq
        ]
        # relabelling both sheet sets fixes the first label up to one representative per orbit
        choices[0] = _first_label_reps(choices[0])
        chosen = []

        def dfs(i, pa, pb):
            stats["nodes"] += 1
            if stats["nodes"] > budget:
                raise _Budget
            if i == n - 1:
                a, b = pa.inverse(), pb.inverse()
                ta, tb = seq[i]
                if cycle_type(a) == ta and cycle_type(b) == tb:
                    yield chosen + [(a, b)]
                return
            for a, b in choices[i]:
                chosen.append((a, b))
                yield from dfs(i + 1, pa * a, pb * b)
                chosen.pop()

        try:
            for labels in dfs(0, id1, id2):
                p1 = [a for a, _ in labels]
                p2 = [b for _, b in labels]
                if len(orbits(d1, p1)) != 1 or len(orbits(d2, p2)) != 1:
                    continue
                key = canonical_form(p1, p2)
                if key in seen:
                    continue
                seen.add(key)
                diagram = PairDiagram.from_covers(
                    BranchedCover.from_perms(d1, p1), BranchedCover.from_perms(d2, p2)
                )
                if derive_params(diagram) != params or not _regime_ok(diagram, regime):
                    continue
                yield diagram
        except _Budget:
            return
    stats["exhausted"] = True


class _Budget(Exception):
    pass


def _first_label_reps(pairs):
    out, seen = [], set()
    for a, b in pairs:
        key = canonical_form([a], [b])
        if key not in seen:
            seen.add(key)
            out.append((a, b))
    return out


def witness_search(params: HurwitzParams, budget=DEFAULT_BUDGET, regime="auto") -> PairDiagram:
    """First diagram realizing ``params`` in the requested regime.

    ``regime`` is ``"etale"`` (``f2`` cyclic unramified), ``"ramified"``
    (neither projection factors through a cyclic unramified cover), ``"any"``
    or ``"auto"`` (etale exactly when ``s2 = 0``).  Raises NotFound, whose
    ``exhausted`` flag tells a complete negative search from a budget stop.
    """
    stats = {}
    for d in iter_witnesses(params, budget, regime, stats):
        return d
    raise NotFound(
        f"no witness for {params.as_tuple()} "
        + ("(search space exhausted)" if stats["exhausted"] else f"within {budget} nodes"),
        exhausted=stats["exhausted"],
        nodes=stats["nodes"],
    )


def _cyc(n, *cycles):
    return Permutation.from_cycles(cycles, n)


def family_a_witness(r1: int) -> PairDiagram:
    """Explicit diagram with parameters ``(3, 2, r1, r1-1, r1-1, 2)``.

    Two labels carry mutually inverse 3-cycles, the others cancelling pairs of
    transpositions; ``g2`` has a transposition at every label.
    """
    if r1 < 2:
        raise ValueError("needs r1 >= 2")
    t = [_cyc(3, (0, 1)), _cyc(3, (0, 2))]
    a = [_cyc(3, (0, 1, 2)), _cyc(3, (0, 2, 1))]
    for k in range(r1 - 2):
        a += [t[k % 2]] * 2
    b = [_cyc(2, (0, 1))] * len(a)
    return PairDiagram.from_covers(BranchedCover.from_perms(3, a), BranchedCover.from_perms(2, b))


def family_b_witness(r1: int) -> PairDiagram:
    """Explicit diagram with parameters ``(3, 2, r1, r1, r1, 0)``.

    All ``2 r1`` labels carry a transposition of the three sheets of ``g1``
    paired with the sign on ``g2``; the transpositions come in cancelling
    pairs and generate the full symmetric group, which then acts regularly on
    the six sheets of ``X``.
    """
    if r1 < 2:
        raise ValueError("needs r1 >= 2")
    t01, t02 = _cyc(3, (0, 1)), _cyc(3, (0, 2))
    a = [t01, t01, t02, t02] + [t01] * (2 * r1 - 4)
    b = [_cyc(2, (0, 1))] * len(a)
    return PairDiagram.from_covers(BranchedCover.from_perms(3, a), BranchedCover.from_perms(2, b))
