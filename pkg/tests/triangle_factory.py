"""Constructed triangles with known exactness, shared by the triangle tests.

A piece (j, q) is a copy of the field sitting in H_j^q and in H_{j+1}^{q+s_j},
with alpha_j mapping one copy onto the other.  A sum of pieces is exact at every
vertex; random conjugation per vertex and degree hides the splitting.
"""

import random

from eqfloer.corpus import _random_unimodular
from eqfloer.linalg import QQ, ZZ, inverse, mat_mul
from eqfloer.triangle import GradedSpace, TriangleMap, TrianglePresentation


def random_shifts(rng, total=-3):
    s0, s1 = rng.randrange(8), rng.randrange(8)
    return (s0, s1, (total - s0 - s1) % 8)


def _assemble(pieces, shifts, extra, zeroed, bad, rng, conjugate):
    # slot lists: for each vertex and degree, the piece each basis vector belongs to
    slots = [[[] for _ in range(8)] for _ in range(3)]
    for k, (j, q) in enumerate(pieces):
        slots[j][q].append(("src", k))
        slots[(j + 1) % 3][(q + shifts[j]) % 8].append(("dst", k))
    for (j, q) in extra:
        slots[j][q].append(("extra", None))
    dims = [tuple(len(slots[j][q]) for q in range(8)) for j in range(3)]
    maps = []
    for j in range(3):
        blocks = {}
        nxt = (j + 1) % 3
        for q in range(8):
            t = (q + shifts[j]) % 8
            rows, cols = dims[nxt][t], dims[j][q]
            if not rows or not cols:
                continue
            M = [[0] * cols for _ in range(rows)]
            for c, (kind, k) in enumerate(slots[j][q]):
                if kind == "src" and k not in zeroed:
                    M[slots[nxt][t].index(("dst", k))][c] = 1
            blocks[q] = M
        maps.append(blocks)
    if bad is not None:
        # alpha_j sends the image copy of piece k (already in ker alpha_j) to some vector
        j, k, target = bad
        q = (pieces[k][1] + shifts[pieces[k][0]]) % 8
        maps[j][q][target][slots[j][q].index(("dst", k))] += 1
    if conjugate:
        g = [[_random_unimodular(rng, dims[j][q]) if dims[j][q] else [] for q in range(8)] for j in range(3)]
        ginv = [[inverse(M, ZZ) for M in row] for row in g]
        for j in range(3):
            nxt = (j + 1) % 3
            for q, M in maps[j].items():
                t = (q + shifts[j]) % 8
                maps[j][q] = mat_mul(mat_mul(g[nxt][t], M), ginv[j][q])
    spaces = tuple(GradedSpace(d) for d in dims)
    tmaps = tuple(TriangleMap(shifts[j], {q: tuple(map(tuple, M)) for q, M in maps[j].items()})
                  for j in range(3))
    return TrianglePresentation(spaces, tmaps, QQ)


def exact_triangle(seed, shifts=None, n_pieces=None, conjugate=True):
    rng = random.Random(seed)
    shifts = shifts or random_shifts(rng)
    n = rng.randint(1, 6) if n_pieces is None else n_pieces
    pieces = [(rng.randrange(3), rng.randrange(8)) for _ in range(n)]
    return _assemble(pieces, shifts, (), (), None, rng, conjugate), pieces, shifts


def image_too_small(seed):
    """Piece 0 gets alpha = 0: its target copy loses its preimage."""
    rng = random.Random(seed)
    shifts = random_shifts(rng)
    pieces = [(rng.randrange(3), rng.randrange(8)) for _ in range(rng.randint(1, 5))]
    T = _assemble(pieces, shifts, (), {0}, None, rng, True)
    j, q = pieces[0]
    return T, ((j + 1) % 3, (q + shifts[j]) % 8)


def kernel_too_big(seed):
    """An extra dimension at (vertex, degree) that every map ignores."""
    rng = random.Random(seed)
    shifts = random_shifts(rng)
    pieces = [(rng.randrange(3), rng.randrange(8)) for _ in range(rng.randint(0, 5))]
    where = (rng.randrange(3), rng.randrange(8))
    return _assemble(pieces, shifts, [where], (), None, rng, True), where


def nonzero_composite(seed):
    """alpha_{j+1} alpha_j != 0 at vertex j+1, planted on top of an exact triangle."""
    rng = random.Random(seed)
    shifts = random_shifts(rng)
    j = rng.randrange(3)
    q = rng.randrange(8)
    # piece 0 runs j -> j+1; piece 1 starts at j+1 in the degree piece 0 lands in,
    # so alpha_{j+1} can send the image copy of piece 0 onto piece 1's target
    t = (q + shifts[j]) % 8
    pieces = [(j, q), ((j + 1) % 3, t)]
    pieces += [(rng.randrange(3), rng.randrange(8)) for _ in range(rng.randint(0, 3))]
    nxt = (j + 1) % 3
    plain = _assemble(pieces, shifts, (), (), None, rng, False)
    target = rng.randrange(plain.spaces[(nxt + 1) % 3].dims[(t + shifts[nxt]) % 8])
    return _assemble(pieces, shifts, (), (), (nxt, 0, target), rng, True), (nxt, t)


def wrong_shift(seed):
    rng = random.Random(seed)
    shifts = random_shifts(rng, total=-3 + rng.randint(1, 7))
    T, _, _ = exact_triangle(seed, shifts=shifts)
    return T
