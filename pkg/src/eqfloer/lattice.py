"""Definite integral lattices, short-vector enumeration and the eta invariant.

All arithmetic is exact: the Gram form is decomposed over the rationals and
the enumeration bounds are computed with integer square roots, so no vector
is ever lost to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, floor, ceil
from typing import Iterator, List, Optional, Sequence, Tuple

from .linalg import ZZ, QQ, determinant, kernel_and_image, solve_linear

Coords = Tuple[int, ...]


class LatticeError(ValueError):
    pass


class EtaParityError(ValueError):
    pass


class CertificateError(RuntimeError):
    pass


@dataclass(frozen=True)
class Lattice:
    """A definite lattice given by an integer Gram matrix and a sign (+1 or -1)."""

    gram: Tuple[Tuple[int, ...], ...]
    sign: int

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        if self.sign not in (1, -1):
            raise LatticeError(f"sign must be +1 or -1, got {self.sign!r}")
        n = len(g)
        if n == 0:
            raise LatticeError("lattice rank must be positive")
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i}, {j})")
        for k in range(1, n + 1):
            minor = determinant([[self.sign * g[i][j] for j in range(k)] for i in range(k)])
            if minor <= 0:
                word = "positive" if self.sign > 0 else "negative"
                raise LatticeError(
                    f"not {word} definite: leading principal minor of order {k} "
                    f"of sign*gram is {minor}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def determinant(self) -> int:
        return determinant([list(r) for r in self.gram])

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(g)) for j in range(len(g)) if x[i] and y[j])

    def square(self, x: Sequence[int]) -> int:
        return self.pair(x, x)


@dataclass(frozen=True)
class VectorPairSet:
    """Unordered pairs {z, -z}, one representative each, sorted lexicographically.

    The representative is the member whose first non-zero coordinate is
    positive; the zero vector represents itself.
    """

    representatives: Tuple[Coords, ...]

    def __len__(self):
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)

    def vectors(self) -> List[Coords]:
        out = []
        for z in self.representatives:
            out.append(z)
            if any(z):
                out.append(tuple(-x for x in z))
        return sorted(out)


def canonical_sign(z: Sequence[int]) -> Coords:
    for x in z:
        if x:
            return tuple(z) if x > 0 else tuple(-y for y in z)
    return tuple(z)


# ---------------------------------------------------------------- constructors

def diagonal(n: int, sign: int = -1) -> Lattice:
    return Lattice(tuple(tuple(sign if i == j else 0 for j in range(n)) for i in range(n)), sign)


def from_gram(gram: Sequence[Sequence[int]], sign: int) -> Lattice:
    return Lattice(tuple(tuple(r) for r in gram), sign)


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.sign != b.sign:
        raise LatticeError("direct sum of lattices with opposite signs is indefinite")
    n, m = a.rank, b.rank
    rows = [list(r) + [0] * m for r in a.gram] + [[0] * n + list(r) for r in b.gram]
    return from_gram(rows, a.sign)


def e8_basis() -> List[Tuple[Fraction, ...]]:
    """Simple roots of E8 in the orthonormal coordinates e1..e8.

    E8 here is the set of x with all 2x_i integral, all x_i - x_j integral and
    sum(x_i) even.  The roots below are an integral basis; their Gram matrix
    is the E8 Cartan matrix.
    """
    h = Fraction(1, 2)
    roots = [[h, -h, -h, -h, -h, -h, -h, h],
             [1, 1, 0, 0, 0, 0, 0, 0]]
    for i in range(6):
        r = [0] * 8
        r[i], r[i + 1] = -1, 1
        roots.append(r)
    return [tuple(Fraction(x) for x in r) for r in roots]


def e8(sign: int = 1) -> Lattice:
    b = e8_basis()
    gram = []
    for x in b:
        row = []
        for y in b:
            s = sum(p * q for p, q in zip(x, y))
            assert s.denominator == 1
            row.append(sign * int(s))
        gram.append(row)
    return from_gram(gram, sign)


def e8_coordinates(euclidean: Sequence) -> Coords:
    """Coordinates in the ``e8()`` basis of a vector given in e1..e8 coordinates."""
    b = e8_basis()
    cols = [[b[j][i] for j in range(8)] for i in range(8)]
    x = solve_linear(cols, [Fraction(v) for v in euclidean], QQ)
    if x is None or any(c.denominator != 1 for c in x):
        raise LatticeError(f"{tuple(euclidean)} is not a vector of E8")
    return tuple(int(c) for c in x)


# ---------------------------------------------------------------- enumeration

def _decompose(lat: Lattice) -> List[List[Fraction]]:
    # sign*gram = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2
    n = lat.rank
    q = [[Fraction(lat.sign * lat.gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _enumerate(lat: Lattice, bound: Fraction, shift: Sequence[Fraction]) -> Iterator[Coords]:
    """Yield integer u with Q(u + shift) <= bound, Q = sign*gram."""
    n = lat.rank
    q = _decompose(lat)
    u = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            yield tuple(u)
            return
        a = shift[i] + sum((q[i][j] * (u[j] + shift[j]) for j in range(i + 1, n)), Fraction(0))
        s = remaining / q[i][i]
        r = isqrt(floor(s)) + 1
        for ui in range(floor(-a - r), ceil(-a + r) + 1):
            t = q[i][i] * (ui + a) ** 2
            if t <= remaining:
                u[i] = ui
                yield from rec(i - 1, remaining - t)
        u[i] = 0

    yield from rec(n - 1, Fraction(bound))


def vectors_in_ball(lat: Lattice, bound: int, coset: Optional[Sequence[int]] = None) -> List[Coords]:
    """All z (in L, or in coset + 2L) with |z^2| <= bound, sorted."""
    if bound < 0:
        return []
    n = lat.rank
    if coset is None:
        zs = list(_enumerate(lat, Fraction(bound), [Fraction(0)] * n))
    else:
        w = list(coset)
        shift = [Fraction(x, 2) for x in w]
        zs = [tuple(wi + 2 * ui for wi, ui in zip(w, u))
              for u in _enumerate(lat, Fraction(bound, 4), shift)]
    return sorted(zs)


def vectors_with_square(lat: Lattice, s: int, coset: Optional[Sequence[int]] = None) -> VectorPairSet:
    """Pairs {z, -z} with z^2 == s, z in L (or in coset + 2L)."""
    if lat.sign * s < 0:
        word = "non-negative" if lat.sign > 0 else "non-positive"
        raise LatticeError(f"unbounded request: square {s} must be {word} in this lattice")
    reps = {canonical_sign(z) for z in vectors_in_ball(lat, abs(s), coset) if lat.square(z) == s}
    return VectorPairSet(tuple(sorted(reps)))


def min_square_in_coset(lat: Lattice, w: Sequence[int]) -> int:
    """Minimum of |z^2| over z in w + 2L."""
    top = abs(lat.square(w))
    # the first non-empty ball already holds the minimum; w bounds the search
    bound = 1
    while True:
        bound = min(bound, top)
        zs = vectors_in_ball(lat, bound, coset=w)
        if zs:
            return min(abs(lat.square(z)) for z in zs)
        assert bound < top, "w itself must be enumerated"
        bound *= 2


def is_extremal(lat: Lattice, w: Sequence[int]) -> bool:
    return min_square_in_coset(lat, w) == abs(lat.square(w))


def _dot(a: Sequence[int], z: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, z))


def eta_terms(lat: Lattice, w: Sequence[int], a: Sequence[int], m: int) -> List[Tuple[Coords, int]]:
    """Per-pair terms of eta, keyed by the pair representative."""
    if m < 0:
        raise ValueError("m must be non-negative")
    w2 = lat.square(w)
    if (w2 - m) % 2:
        raise EtaParityError(f"eta needs w^2 = m mod 2; got w^2 = {w2}, m = {m}")
    if len(a) != lat.rank or len(w) != lat.rank:
        raise ValueError("w and a must have one entry per basis vector")
    terms = []
    for z in vectors_with_square(lat, w2, coset=w):
        half = []
        for zi, wi in zip(z, w):
            # z in w + 2L, so (z + w)/2 is integral
            assert (zi + wi) % 2 == 0, f"{z} not in the coset of {tuple(w)}"
            half.append((zi + wi) // 2)
        sign = -1 if lat.square(half) % 2 else 1
        terms.append((z, sign * _dot(a, z) ** m))
    return terms


def eta(lat: Lattice, w: Sequence[int], a: Optional[Sequence[int]] = None, m: int = 0) -> int:
    """Signed count of pairs {z, -z} in w + 2L with z^2 = w^2, weighted by (a.z)^m.

    ``a`` is a dual vector given by its values on the basis; it is ignored
    when ``m == 0``.
    """
    if a is None:
        if m:
            raise ValueError("a dual vector is required when m > 0")
        a = [0] * lat.rank
    return sum(t for _, t in eta_terms(lat, w, a, m))


def count_reducibles(lat: Lattice, c: Sequence[int], k: int) -> Tuple[int, VectorPairSet]:
    """Pairs {z, -z} with z in c + 2L and z^2 = c^2 - 4k (negative definite L)."""
    if lat.sign != -1:
        raise LatticeError("count_reducibles expects a negative definite lattice")
    target = lat.square(c) - 4 * k
    if target > 0:
        return 0, VectorPairSet(())
    pairs = vectors_with_square(lat, target, coset=c)
    return len(pairs), pairs


def unit_vectors(lat: Lattice) -> VectorPairSet:
    return vectors_with_square(lat, lat.sign)


def is_standard_diagonal(lat: Lattice) -> bool:
    """True iff L is isomorphic to n<+1> or n<-1>."""
    if not lat.is_unimodular:
        raise LatticeError(
            f"diagonality test needs a unimodular lattice, |det| = {abs(lat.determinant)}")
    chosen: List[Coords] = []
    # a unit vector e splits a unimodular L as <e> + e^perp, so greedy is exact
    for e in unit_vectors(lat):
        if all(lat.pair(e, f) == 0 for f in chosen):
            chosen.append(e)
    return len(chosen) == lat.rank


@dataclass(frozen=True)
class Certificate:
    w: Coords
    a: Coords
    m: int
    eta_value: int
    extremal: bool


def _restrict(lat: Lattice, basis: List[Coords]) -> Lattice:
    gram = [[lat.pair(x, y) for y in basis] for x in basis]
    return from_gram(gram, lat.sign)


def nondiagonal_certificate(lat: Lattice) -> Optional[Certificate]:
    """Witness (w, a, m) with eta(L, w, a, m) = 1, or None when L is diagonal.

    w is a shortest non-zero vector orthogonal to every vector of square -1,
    m = -w^2 - 2 and a is a dual vector with a.w = 1.
    """
    if lat.sign != -1:
        raise LatticeError("certificate expects a negative definite lattice")
    if not lat.is_unimodular:
        raise LatticeError("certificate expects a unimodular lattice")
    n = lat.rank
    units = list(unit_vectors(lat))
    if units:
        rows = [[lat.pair(e, [int(i == j) for j in range(n)]) for i in range(n)] for e in units]
        kernel, _ = kernel_and_image(rows, ZZ, ncols=n)
        basis = [tuple(k) for k in kernel]
    else:
        basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if not basis:
        return None
    sub = _restrict(lat, basis)
    bound = 1
    while True:
        found = [y for y in vectors_in_ball(sub, bound) if any(y)]
        if found:
            break
        bound += 1
    best = min(abs(sub.square(y)) for y in found)
    cands = sorted(
        canonical_sign([sum(y[i] * basis[i][j] for i in range(len(basis))) for j in range(n)])
        for y in found if abs(sub.square(y)) == best)
    w = cands[0]
    m = -lat.square(w) - 2
    a = solve_linear([list(w)], [1], ZZ, ncols=n)
    if a is None:
        raise CertificateError(f"no dual vector a with a.w = 1 for w = {w} (w not primitive)")
    a = tuple(a)
    ext = is_extremal(lat, w)
    if not ext:
        raise CertificateError(f"shortest vector {w} of the unit complement is not extremal")
    value = eta(lat, w, a, m)
    if value != 1:
        raise CertificateError(f"eta(L, w, a, m) = {value} for w = {w}, m = {m}; expected 1")
    return Certificate(w, a, m, value, ext)
