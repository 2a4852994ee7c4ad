"""Exact linear algebra over the integers, the rationals and odd prime fields.

Matrices are plain lists of rows.  Entries are Python ``int`` for the integers
and for prime fields (reduced into ``range(p)``) and ``fractions.Fraction`` for
the rationals, so nothing ever overflows or rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

Matrix = List[List[Any]]
Vector = List[Any]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring: ``integers``, ``rationals`` or ``prime_field``."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind in ("integers", "rationals"):
            if self.characteristic != 0:
                raise ValueError(f"{self.kind} have characteristic 0")
        elif self.kind == "prime_field":
            p = self.characteristic
            if p == 2:
                raise ValueError("characteristic 2 is not supported: 2 must be invertible")
            if not _is_prime(p):
                raise ValueError(f"prime field needs an odd prime, got {p}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``Z``, ``Q`` or ``F<p>`` (e.g. ``F3``)."""
        t = text.strip()
        if t in ("Z", "ZZ", "integers"):
            return cls("integers")
        if t in ("Q", "QQ", "rationals"):
            return cls("rationals")
        if t[:1] in ("F", "f") and t[1:].isdigit():
            return cls("prime_field", int(t[1:]))
        raise ValueError(f"cannot parse ring {text!r}; expected Z, Q or F<p>")

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    @property
    def label(self) -> str:
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        return f"F{self.characteristic}"

    def __str__(self):
        return self.label

    def coerce(self, x):
        if self.kind == "rationals":
            return Fraction(x)
        if self.kind == "integers":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.kind == "rationals":
            return 1 / Fraction(x)
        if self.kind == "integers":
            if x in (1, -1):
                return x
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        return pow(x, -1, self.characteristic)

    def reduce(self, x):
        if self.kind == "prime_field":
            return x % self.characteristic
        return x


ZZ = RingSpec("integers")
QQ = RingSpec("rationals")


def GF(p: int) -> RingSpec:
    return RingSpec("prime_field", p)


@dataclass(frozen=True)
class LabeledMatrix:
    """Sparse matrix indexed by generator labels; missing entries are zero."""

    row_labels: Tuple[Hashable, ...]
    col_labels: Tuple[Hashable, ...]
    entries: Dict[Tuple[Hashable, Hashable], Any] = field(default_factory=dict)

    def __post_init__(self):
        rows, cols = set(self.row_labels), set(self.col_labels)
        for (r, c) in self.entries:
            if r not in rows or c not in cols:
                raise ValueError(f"entry ({r!r}, {c!r}) outside the label sets")

    def to_rows(self, ring: RingSpec = ZZ) -> Matrix:
        ri = {r: i for i, r in enumerate(self.row_labels)}
        ci = {c: j for j, c in enumerate(self.col_labels)}
        out = zeros(len(self.row_labels), len(self.col_labels), ring)
        for (r, c), x in self.entries.items():
            out[ri[r]][ci[c]] = ring.coerce(x)
        return out

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], row_labels=None, col_labels=None):
        m = len(rows)
        n = len(rows[0]) if m else 0
        row_labels = tuple(range(m)) if row_labels is None else tuple(row_labels)
        col_labels = tuple(range(n)) if col_labels is None else tuple(col_labels)
        entries = {
            (row_labels[i], col_labels[j]): x
            for i, row in enumerate(rows)
            for j, x in enumerate(row)
            if x
        }
        return cls(row_labels, col_labels, entries)


def _rows(M, ring: RingSpec) -> Matrix:
    if isinstance(M, LabeledMatrix):
        return M.to_rows(ring)
    return [[ring.coerce(x) for x in row] for row in M]


def _ncols(M: Sequence[Sequence[Any]], default: int = 0) -> int:
    return len(M[0]) if M else default


# ---------------------------------------------------------------- basics

def zeros(m: int, n: int, ring: RingSpec = ZZ) -> Matrix:
    z = ring.coerce(0)
    return [[z] * n for _ in range(m)]


def identity(n: int, ring: RingSpec = ZZ) -> Matrix:
    out = zeros(n, n, ring)
    for i in range(n):
        out[i][i] = ring.coerce(1)
    return out


def transpose(M: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(A, B, ring: RingSpec = ZZ, inner: Optional[int] = None) -> Matrix:
    """Product ``A @ B``; ``inner`` disambiguates shapes when ``A`` has no rows."""
    m = len(A)
    k = len(B) if inner is None else inner
    n = _ncols(B)
    Bt = transpose(B) if B else []
    out = []
    for i in range(m):
        row = A[i]
        out.append([ring.reduce(sum((row[t] * Bt[j][t] for t in range(k)), ring.coerce(0)))
                    for j in range(n)])
    return out


def mat_vec(A, x, ring: RingSpec = ZZ) -> Vector:
    return [ring.reduce(sum((a * b for a, b in zip(row, x)), ring.coerce(0))) for row in A]


def vec_mat(x, A, ring: RingSpec = ZZ, ncols: Optional[int] = None) -> Vector:
    n = _ncols(A, ncols or 0)
    out = [ring.coerce(0)] * n
    for xi, row in zip(x, A):
        if xi:
            out = [o + xi * a for o, a in zip(out, row)]
    return [ring.reduce(o) for o in out]


def mat_add(A, B, ring: RingSpec = ZZ) -> Matrix:
    return [[ring.reduce(a + b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A, ring: RingSpec = ZZ) -> Matrix:
    return [[ring.reduce(c * a) for a in row] for row in A]


def is_zero_matrix(A) -> bool:
    return all(not x for row in A for x in row)


def convert(A, ring: RingSpec) -> Matrix:
    return [[ring.coerce(x) for x in row] for row in A]


# ---------------------------------------------------------------- fields

def rref(M, ring: RingSpec) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over a field; returns ``(R, pivot_columns)``."""
    if not ring.is_field:
        raise ValueError("rref needs a field")
    A = _rows(M, ring)
    m, n = len(A), _ncols(A)
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ring.inv(A[r][c])
        A[r] = [ring.reduce(x * inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [ring.reduce(x - f * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, ring: RingSpec = QQ) -> int:
    if not ring.is_field:
        ring = QQ
    return len(rref(M, ring)[1])


def _field_kernel(A: Matrix, n: int, ring: RingSpec) -> List[Vector]:
    R, pivots = rref(A, ring)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [ring.coerce(0)] * n
        v[f] = ring.coerce(1)
        for i, p in enumerate(pivots):
            v[p] = ring.reduce(-R[i][f])
        basis.append(v)
    return basis


def smith_normal_form(M, ncols: Optional[int] = None) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    and the diagonal ``d1 | d2 | ...`` non-negative.
    """
    if isinstance(M, LabeledMatrix):
        ncols = len(M.col_labels)
    A = _rows(M, ZZ)
    m = len(A)
    n = _ncols(A, ncols or 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for X in (A, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        cands = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def invariant_factors(M) -> List[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), _ncols(D))) if D[i][i]]


def inverse(M, ring: RingSpec) -> Matrix:
    """Inverse of a square matrix; over ``ZZ`` the matrix must be unimodular."""
    n = len(M)
    work = QQ if ring.kind == "integers" else ring
    A = _rows(M, work)
    aug = [row + e for row, e in zip(A, identity(n, work))]
    R, pivots = rref(aug, work)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    inv = [row[n:] for row in R]
    return _rows(inv, ring)


def determinant(M, ring: RingSpec = ZZ):
    """Determinant by fraction-free (Bareiss) elimination."""
    A = _rows(M, ring if ring.is_field else ZZ)
    n = len(A)
    if n == 0:
        return ring.coerce(1)
    if not ring.is_field:
        sign, prev = 1, 1
        for k in range(n - 1):
            if A[k][k] == 0:
                sw = next((i for i in range(k + 1, n) if A[i][k]), None)
                if sw is None:
                    return 0
                A[k], A[sw] = A[sw], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    det = ring.coerce(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return ring.coerce(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = ring.reduce(-det)
        det = ring.reduce(det * A[c][c])
        inv = ring.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c]:
                f = ring.reduce(A[i][c] * inv)
                A[i] = [ring.reduce(x - f * y) for x, y in zip(A[i], A[c])]
    return det


# ---------------------------------------------------------------- kernel / image / solve

def kernel_and_image(M, ring: RingSpec, ncols: Optional[int] = None) -> Tuple[List[Vector], List[Vector]]:
    """Bases of ``ker M`` and of the column space of ``M``.

    Over ``ZZ`` the kernel basis is a basis of the (saturated) integer kernel
    and the image basis is a basis of the image lattice ``M Z^n``.
    """
    if isinstance(M, LabeledMatrix):
        ncols = len(M.col_labels)
    A = _rows(M, ring)
    n = _ncols(A, ncols or 0)
    m = len(A)
    if ring.is_field:
        kernel = _field_kernel(A, n, ring)
        _, pivots = rref(A, ring)
        image = [[A[i][j] for i in range(m)] for j in pivots]
    else:
        D, U, V = smith_normal_form(A, n)
        r = sum(1 for i in range(min(m, n)) if D[i][i])
        kernel = [[V[i][j] for i in range(n)] for j in range(r, n)]
        Uinv = inverse(U, ZZ) if m else []
        image = [[Uinv[i][j] * D[j][j] for i in range(m)] for j in range(r)]
    for k in kernel:
        assert all(not x for x in mat_vec(A, k, ring)), "kernel vector check failed"
    return kernel, image


def solve_linear(M, b, ring: RingSpec, ncols: Optional[int] = None) -> Optional[Vector]:
    """Exact solution ``x`` of ``M x = b``, or ``None`` when there is none."""
    if isinstance(M, LabeledMatrix):
        ncols = len(M.col_labels)
    A = _rows(M, ring)
    b = [ring.coerce(x) for x in b]
    m = len(A)
    n = _ncols(A, ncols or 0)
    if len(b) != m:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
    if ring.is_field:
        aug = [row + [bi] for row, bi in zip(A, b)]
        R, pivots = rref(aug, ring) if m else ([], [])
        if n in pivots:
            return None
        x = [ring.coerce(0)] * n
        for i, p in enumerate(pivots):
            x[p] = R[i][n]
    else:
        D, U, V = smith_normal_form(A, n)
        c = mat_vec(U, b)
        y = [0] * n
        for i in range(m):
            d = D[i][i] if i < n else 0
            if d == 0:
                if c[i]:
                    return None
            else:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
        x = mat_vec(V, y) if n else []
    assert mat_vec(A, x, ring) == [ring.reduce(v) for v in b]
    return x


def span_rank(vectors: Sequence[Vector], ring: RingSpec) -> int:
    """Rank of the span of ``vectors`` (over the fraction field for ``ZZ``)."""
    if not vectors:
        return 0
    return rank([list(v) for v in vectors], ring if ring.is_field else QQ)


def in_span(v: Vector, vectors: Sequence[Vector], ring: RingSpec) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    return solve_linear(transpose(vectors), v, ring if ring.is_field else QQ) is not None


def extend_to_basis(sub: Sequence[Vector], n: int, ring: RingSpec) -> List[Vector]:
    """Standard unit vectors completing an independent list ``sub`` to a basis of F^n."""
    cur = [list(v) for v in sub]
    out = []
    r = span_rank(cur, ring)
    for i in range(n):
        e = [ring.coerce(0)] * n
        e[i] = ring.coerce(1)
        if span_rank(cur + [e], ring) > r:
            cur.append(e)
            out.append(e)
            r += 1
    return out


def independent_subset(vectors: Sequence[Vector], ring: RingSpec) -> List[Vector]:
    """Greedy maximal linearly independent sublist, in order."""
    out: List[Vector] = []
    for v in vectors:
        if span_rank(out + [list(v)], ring) > len(out):
            out.append(list(v))
    return out


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g
