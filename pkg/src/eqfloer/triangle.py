"""Exactness checks for surgery exact triangles given at the cohomology level.

A presentation is three Z/8-graded vector spaces H0, H1, H2 and maps
alpha_j : H_j -> H_{j+1} (indices mod 3) of declared degree shifts.  Map
blocks are indexed by source degree: ``blocks[q]`` is a matrix from
H_j^q to H_{j+1}^{q + shift}.  The shifts of a triangle must add up to
-3 mod 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .floer import GradedCohomology, ReducedGroup, _require_field
from .linalg import QQ, RingSpec, convert, kernel_and_image, mat_mul, rank

TRIANGLE_SHIFT = -3


class ShiftError(ValueError):
    pass


class TriangleFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GradedSpace:
    """Dimensions per degree and, optionally, u blocks ``u[q]: degree q -> q + 4``."""

    dims: Tuple[int, ...]
    u: Optional[Dict[int, Tuple[Tuple, ...]]] = None

    def __post_init__(self):
        if len(self.dims) != 8 or any(d < 0 for d in self.dims):
            raise TriangleFormatError(f"expected 8 non-negative dimensions, got {self.dims}")
        if self.u is not None:
            for q, M in self.u.items():
                _check_block(M, self.dims[(q + 4) % 8], self.dims[q % 8], f"u from degree {q}")


@dataclass(frozen=True)
class TriangleMap:
    shift: int
    blocks: Dict[int, Tuple[Tuple, ...]] = field(default_factory=dict)

    def block(self, q: int, src: GradedSpace, dst: GradedSpace, ring: RingSpec) -> List[List]:
        """Matrix from degree q of ``src``; zero when not given."""
        q %= 8
        rows, cols = dst.dims[(q + self.shift) % 8], src.dims[q]
        M = self.blocks.get(q)
        if M is None:
            return [[ring.coerce(0)] * cols for _ in range(rows)]
        return convert([list(r) for r in M], ring)


def _check_block(M, rows: int, cols: int, what: str) -> None:
    if len(M) != rows or any(len(r) != cols for r in M):
        got = f"{len(M)}x{len(M[0]) if M else 0}"
        # an empty matrix of the right shape has no rows to carry the column count
        if not (rows == 0 and len(M) == 0):
            raise TriangleFormatError(f"{what}: expected a {rows}x{cols} matrix, got {got}")


@dataclass(frozen=True)
class TrianglePresentation:
    spaces: Tuple[GradedSpace, GradedSpace, GradedSpace]
    maps: Tuple[TriangleMap, TriangleMap, TriangleMap]
    ring: RingSpec = QQ

    def __post_init__(self):
        if len(self.spaces) != 3 or len(self.maps) != 3:
            raise TriangleFormatError("a triangle needs three spaces and three maps")
        for j, a in enumerate(self.maps):
            src, dst = self.spaces[j], self.spaces[(j + 1) % 3]
            for q, M in a.blocks.items():
                if not 0 <= q < 8:
                    raise TriangleFormatError(f"α{j}: block degree {q} outside 0..7")
                _check_block(M, dst.dims[(q + a.shift) % 8], src.dims[q], f"α{j} from degree {q}")

    @property
    def shifts(self) -> Tuple[int, int, int]:
        return tuple(a.shift for a in self.maps)


def rotate(T: TrianglePresentation, k: int = 1) -> TrianglePresentation:
    """Relabel vertices j -> j - k; maps and shifts rotate along."""
    k %= 3
    return TrianglePresentation(T.spaces[k:] + T.spaces[:k], T.maps[k:] + T.maps[:k], T.ring)


@dataclass(frozen=True)
class VertexCheck:
    """Exactness at H_vertex^degree: image of the incoming map vs kernel of the outgoing one."""

    vertex: int
    degree: int
    dim: int
    image_rank: int
    kernel_dim: int
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.image_rank == self.kernel_dim

    @property
    def failure(self) -> Optional[str]:
        if not self.composite_zero:
            return "image_not_in_kernel"
        if self.image_rank < self.kernel_dim:
            return "kernel_exceeds_image"
        return None


@dataclass(frozen=True)
class TriangleReport:
    shifts: Tuple[int, ...]
    checks: Tuple[VertexCheck, ...]
    total_dim: int
    total_rank: int

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.checks)

    @property
    def rank_nullity_ok(self) -> bool:
        # exactness at every vertex forces dim = rank(in) + rank(out) summed over all terms
        return self.total_dim == 2 * self.total_rank

    def failures(self) -> List[VertexCheck]:
        return [c for c in self.checks if not c.exact]


def _vertex_checks(T: TrianglePresentation, vertices: Sequence[int]) -> List[VertexCheck]:
    ring = T.ring
    out = []
    for j in vertices:
        H = T.spaces[j]
        prev, nxt = (j - 1) % 3, (j + 1) % 3
        a_in, a_out = T.maps[prev], T.maps[j]
        for q in range(8):
            n = H.dims[q]
            qs = (q - a_in.shift) % 8
            A = a_in.block(qs, T.spaces[prev], H, ring)
            B = a_out.block(q, H, T.spaces[nxt], ring)
            r_in = rank(A, ring) if n and T.spaces[prev].dims[qs] else 0
            r_out = rank(B, ring) if n and T.spaces[nxt].dims[(q + a_out.shift) % 8] else 0
            comp = mat_mul(B, A, ring, inner=n) if n else []
            zero = all(not x for row in comp for x in row)
            out.append(VertexCheck(j, q, n, r_in, n - r_out, zero))
    return out


def _total_rank(T: TrianglePresentation) -> int:
    total = 0
    for j, a in enumerate(T.maps):
        src, dst = T.spaces[j], T.spaces[(j + 1) % 3]
        for q in range(8):
            if src.dims[q] and dst.dims[(q + a.shift) % 8]:
                total += rank(a.block(q, src, dst, T.ring), T.ring)
    return total


def check_exact_triangle(T: TrianglePresentation) -> TriangleReport:
    """im(alpha_{j-1}) = ker(alpha_j) at every vertex and degree.

    Raises ShiftError before any rank computation when the shifts do not
    add up to -3 mod 8.
    """
    _require_field(T.ring, "check_exact_triangle")
    total = sum(T.shifts)
    if (total - TRIANGLE_SHIFT) % 8:
        raise ShiftError(f"degree shifts {T.shifts} add up to {total} ≡ {total % 8} mod 8, "
                         f"expected -3 ≡ 5 mod 8")
    checks = _vertex_checks(T, (0, 1, 2))
    return TriangleReport(T.shifts, tuple(checks), sum(sum(H.dims) for H in T.spaces),
                          _total_rank(T))


# ---------------------------------------------------------------- reduced sequences

@dataclass(frozen=True)
class ReducedSequenceReport:
    shifts_ok: bool
    checks: Tuple[VertexCheck, ...]
    u_commutes: Dict[int, bool]

    @property
    def passed(self) -> bool:
        return self.shifts_ok and all(c.exact for c in self.checks) and all(self.u_commutes.values())


def _u_block(H: GradedSpace, q: int, ring: RingSpec):
    if H.u is None:
        return None
    M = H.u.get(q % 8)
    if M is None:
        return [[ring.coerce(0)] * H.dims[q % 8] for _ in range(H.dims[(q + 4) % 8])]
    return convert([list(r) for r in M], ring)


def check_reduced_sequence(T: TrianglePresentation) -> ReducedSequenceReport:
    """Exactness at H0 and H1 only, and alpha u = u alpha where both ends carry u.

    H0 and H1 are reduced groups; H2 is an ordinary Floer group, on which u
    need not be defined, so only maps between spaces with u data are tested.
    """
    _require_field(T.ring, "check_reduced_sequence")
    ring = T.ring
    shifts_ok = (sum(T.shifts) - TRIANGLE_SHIFT) % 8 == 0
    checks = tuple(_vertex_checks(T, (0, 1)))
    commutes = {}
    for j, a in enumerate(T.maps):
        src, dst = T.spaces[j], T.spaces[(j + 1) % 3]
        if src.u is None or dst.u is None:
            continue
        ok = True
        for q in range(8):
            t = (q + a.shift) % 8
            n_src, n_dst = src.dims[q], dst.dims[(t + 4) % 8]
            if not n_src or not n_dst:
                continue
            lhs = mat_mul(a.block((q + 4) % 8, src, dst, ring), _u_block(src, q, ring), ring,
                          inner=src.dims[(q + 4) % 8])
            rhs = mat_mul(_u_block(dst, t, ring), a.block(q, src, dst, ring), ring,
                          inner=dst.dims[t])
            if lhs != rhs:
                ok = False
        commutes[j] = ok
    return ReducedSequenceReport(shifts_ok, checks, commutes)


# ---------------------------------------------------------------- builders

def space_from_cohomology(H: GradedCohomology, u: Optional[Mapping[int, Sequence]] = None) -> GradedSpace:
    _require_field(H.ring, "space_from_cohomology")
    return GradedSpace(H.dims, None if u is None else {q: tuple(map(tuple, m)) for q, m in u.items()})


def space_from_reduced(R: ReducedGroup) -> GradedSpace:
    return GradedSpace(R.dims, {q: tuple(map(tuple, R.u[q])) for q in range(8)})
