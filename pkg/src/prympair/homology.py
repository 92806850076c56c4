"""First homology of a branched cover as a unimodular alternating lattice.

The base sphere is cut into one vertex, one loop per branch label, one small
disc per branch point and one big disc.  At the base vertex the loop ``t``
leaves just before and returns just after its branch point, so the
counterclockwise rotation of half-edges reads

    out_1, in_1, out_2, in_2, ..., out_k, in_k

and the cover inherits this rotation at every sheet.  Faces are traced from
the rotation, then checked against the expected count (one small face per
cycle of each permutation, one big face per sheet) and Euler characteristic.

Intersection numbers are computed by pushing the second cycle off to its
right near each vertex.  For edge vectors ``a``, ``b`` this gives

    a.b = sum_e a_e b_e + sum_v sum_{h before h' at v} eps(h) a(h) eps(h') b(h')

where ``eps`` is +1 on outgoing and -1 on incoming half-edges; the formula is
a homology invariant whenever ``a`` is a cycle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import intmat
from .covers import BranchedCover, CoverMorphism, genus
from .errors import (
    CompositionMismatch,
    EulerMismatch,
    NonUnimodular,
    NotACycleImage,
    TorsionFound,
)


@dataclass(frozen=True)
class CWSurface:
    degree: int
    nlabels: int
    edges: tuple  # edge t*n + s runs from s to sigma_t(s)
    faces: tuple  # each a tuple of (edge, +1 | -1)
    rotation: tuple  # per vertex, half-edges (edge, 0 = tail | 1 = head), counterclockwise

    @property
    def euler_characteristic(self):
        return self.degree - len(self.edges) + len(self.faces)

    def boundary_1(self):
        d = intmat.zeros(len(self.edges), self.degree)
        for e, (u, v) in enumerate(self.edges):
            d[e, v] += 1
            d[e, u] -= 1
        return d

    def boundary_2(self):
        d = intmat.zeros(len(self.faces), len(self.edges))
        for i, face in enumerate(self.faces):
            for e, sign in face:
                d[i, e] += sign
        return d


def build_cw(c: BranchedCover) -> CWSurface:
    n, k = c.degree, len(c.perms)
    edges = tuple((s, p(s)) for p in c.perms for s in range(n))
    rotation = []
    for s in range(n):
        darts = []
        for t, p in enumerate(c.perms):
            darts.append((t * n + s, 0))
            darts.append((t * n + p.inverse()(s), 1))
        rotation.append(tuple(darts))
    where = {h: (v, i) for v, rot in enumerate(rotation) for i, h in enumerate(rot)}

    def successor(dart):
        e, sign = dart
        v, i = where[(e, 1 if sign > 0 else 0)]
        rot = rotation[v]
        e2, end = rot[(i - 1) % len(rot)]
        return (e2, 1 if end == 0 else -1)

    faces = []
    used = set()
    for e in range(len(edges)):
        for sign in (1, -1):
            if (e, sign) in used:
                continue
            face = []
            dart = (e, sign)
            while dart not in used:
                used.add(dart)
                face.append(dart)
                dart = successor(dart)
            faces.append(tuple(face))
    if not edges:
        faces = [()] * n
    surface = CWSurface(n, k, edges, tuple(faces), tuple(rotation))

    expected_faces = sum(len(p.cycles()) for p in c.perms) + n
    chi = 2 - 2 * genus(c)
    if len(faces) != expected_faces or surface.euler_characteristic != chi:
        raise EulerMismatch(
            f"V-E+F = {surface.euler_characteristic} with {len(faces)} faces; "
            f"expected {chi} with {expected_faces} faces"
        )
    return surface


def intersection_form_on_edges(s: CWSurface) -> np.ndarray:
    """Matrix of the edge-level pairing whose restriction to cycles is the intersection form."""
    m = len(s.edges)
    omega = intmat.identity(m)
    for rot in s.rotation:
        signed = [(e, 1 if end == 0 else -1) for e, end in rot]
        for i, (e, a) in enumerate(signed):
            for e2, b in signed[i + 1:]:
                omega[e, e2] += a * b
    return omega


def _spanning_tree(s: CWSurface):
    """BFS tree from sheet 0; returns (tree edge set, path vector from root per vertex)."""
    n, m = s.degree, len(s.edges)
    adj = [[] for _ in range(n)]
    for e, (u, v) in enumerate(s.edges):
        adj[u].append((e, v, 1))
        adj[v].append((e, u, -1))
    path = [None] * n
    path[0] = intmat.zeros(1, m)[0]
    tree = set()
    queue = [0]
    for u in queue:
        for e, v, sign in adj[u]:
            if path[v] is None:
                path[v] = path[u].copy()
                path[v][e] += sign
                tree.add(e)
                queue.append(v)
    return tree, path


@dataclass(eq=False)
class HomologyLattice:
    """H_1 of a cover with an integral symplectic-type basis choice.

    ``cycles`` holds the basis cycles as edge vectors (rows); ``intersection``
    is the Gram matrix of the intersection pairing in that basis.
    """

    surface: CWSurface
    cycles: np.ndarray
    intersection: np.ndarray
    _cotree: list = field(repr=False)
    _coord: np.ndarray = field(repr=False)

    @property
    def rank(self):
        return self.cycles.shape[0]

    @property
    def genus(self):
        return self.rank // 2

    def coordinates(self, chains) -> np.ndarray:
        """Homology coordinates of 1-cycles given as edge vectors (rows)."""
        chains = intmat.as_matrix(chains, len(self.surface.edges))
        if not intmat.is_zero(intmat.matmul(chains, self.surface.boundary_1())):
            raise NotACycleImage("chain is not closed")
        return intmat.matmul(chains[:, self._cotree], self._coord)


def homology_basis(s: CWSurface) -> HomologyLattice:
    m = len(s.edges)
    tree, path = _spanning_tree(s)
    cotree = [e for e in range(m) if e not in tree]
    fundamental = intmat.zeros(len(cotree), m)
    for i, e in enumerate(cotree):
        u, v = s.edges[e]
        fundamental[i, :] = path[u] - path[v]
        fundamental[i, e] += 1

    faces = s.boundary_2()[:, cotree]
    h, u, uinv, piv = intmat.echelon(faces.T, inverse=True)
    r = len(piv)
    torsion = intmat.full_rank_index(h[:r])
    if torsion != 1:
        raise TorsionFound(f"H_1 has torsion of order {torsion}")
    coord = u[r:].T
    cycles = intmat.matmul(uinv[:, r:].T, fundamental)
    omega = intersection_form_on_edges(s)
    gram = intmat.matmul(cycles, omega, cycles.T)
    lattice = HomologyLattice(s, cycles, gram, cotree, coord)
    intersection_matrix(s, lattice.cycles, gram)
    return lattice


def intersection_matrix(s: CWSurface, cycles, gram=None) -> np.ndarray:
    """Algebraic intersection numbers of the closed edge paths ``cycles``.

    Raises NonUnimodular unless the result is alternating with determinant 1
    and ``cycles`` span all of H_1.
    """
    cycles = intmat.as_matrix(cycles, len(s.edges))
    if gram is None:
        gram = intmat.matmul(cycles, intersection_form_on_edges(s), cycles.T)
    n = gram.shape[0]
    if any(gram[i, i] != 0 for i in range(n)) or not intmat.is_zero(gram + gram.T):
        raise NonUnimodular("intersection matrix is not alternating")
    d = intmat.det(gram)
    if d != 1:
        raise NonUnimodular(f"intersection matrix has determinant {d}")
    return gram


@lru_cache(maxsize=256)
def homology(cover: BranchedCover) -> HomologyLattice:
    return homology_basis(build_cw(cover))


@dataclass(eq=False)
class ChainMap:
    """Induced map on H_1 acting on row vectors: ``x -> x @ matrix``."""

    matrix: np.ndarray
    kind: str  # "pushforward" or "transfer"
    degree: int
    source: HomologyLattice
    target: HomologyLattice


def _edge_map(f: CoverMorphism) -> np.ndarray:
    nx, ny = f.source.degree, f.target.degree
    k = len(f.source.perms)
    phi = intmat.zeros(nx * k, ny * k)
    for t in range(k):
        for s in range(nx):
            phi[t * nx + s, t * ny + f.sheet_map[s]] = 1
    return phi


def pushforward(f: CoverMorphism) -> ChainMap:
    """The norm map on H_1: an edge over sheet ``s`` goes to the edge over ``f(s)``."""
    hx, hy = homology(f.source), homology(f.target)
    images = intmat.matmul(hx.cycles, _edge_map(f))
    return ChainMap(hy.coordinates(images), "pushforward", f.degree, hx, hy)


def transfer(f: CoverMorphism) -> ChainMap:
    """Pullback on H_1: a cycle goes to the sum of its lifts.

    Checks ``transfer @ pushforward == deg * id`` and that the intersection
    form scales by ``deg`` under transfer.
    """
    hx, hy = homology(f.source), homology(f.target)
    images = intmat.matmul(hy.cycles, _edge_map(f).T)
    tr = hx.coordinates(images)
    pf = pushforward(f).matrix
    n = f.degree
    if not np.array_equal(intmat.matmul(tr, pf), n * intmat.identity(hy.rank)):
        raise CompositionMismatch("pushforward after transfer is not multiplication by the degree")
    if not np.array_equal(intmat.matmul(tr, hx.intersection, tr.T), n * hy.intersection):
        raise CompositionMismatch("transfer does not scale the intersection form by the degree")
    return ChainMap(tr, "transfer", n, hy, hx)
