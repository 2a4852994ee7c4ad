"""Cohomology, u-maps, delta towers, reduced groups and the h-invariant."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .complex import FloerComplex, InvalidComplexError, reverse_orientation, validate_complex
from .linalg import (
    QQ, ZZ, RingSpec, Matrix, Vector,
    convert, extend_to_basis, identity, independent_subset, inverse, kernel_and_image,
    mat_mul, mat_vec, rank, rref, smith_normal_form, solve_linear, span_rank, transpose,
    vec_mat,
)

DEGREES = range(8)


class TowerError(RuntimeError):
    pass


class ReducedGroupError(RuntimeError):
    pass


class UMapUndefinedError(ValueError):
    pass


def _require_field(ring: RingSpec, what: str) -> None:
    if not ring.is_field:
        raise ValueError(f"{what} needs field coefficients (Q or F_p, p odd), got {ring}")


# ---------------------------------------------------------------- cohomology

@dataclass(frozen=True)
class DegreeCohomology:
    """HF^q in one degree: generators (cocycle representatives) and coordinates.

    ``orders[i]`` is 0 for a free generator and the torsion order otherwise.
    Coordinates of a cocycle are ``S @ (kernel coordinates)`` restricted to
    ``selected``; torsion coordinates are reduced modulo their order.
    """

    q: int
    ring: RingSpec
    indices: Tuple[int, ...]
    representatives: Tuple[Tuple, ...]
    orders: Tuple[int, ...]
    _kernel: Tuple[Tuple, ...] = field(repr=False, default=())
    _change: Tuple[Tuple, ...] = field(repr=False, default=())
    _selected: Tuple[int, ...] = field(repr=False, default=())
    _n: int = field(repr=False, default=0)

    @property
    def rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(o for o in self.orders if o)

    def coordinates(self, x: Sequence) -> List:
        """Coordinates of the class of the cocycle ``x`` (a full-length cochain)."""
        ring = self.ring
        block = [ring.coerce(x[i]) for i in self.indices]
        for i, c in enumerate(x):
            if c and i not in self.indices:
                raise ValueError(f"cochain is not homogeneous of degree {self.q}")
        if not self._kernel:
            if any(block):
                raise ValueError("cochain is not a cocycle")
            return []
        y = solve_linear(transpose(list(self._kernel)), block, ring)
        if y is None:
            raise ValueError("cochain is not a cocycle")
        y2 = mat_vec(self._change, y, ring)
        out = []
        for i, o in zip(self._selected, self.orders):
            out.append(y2[i] % o if o else y2[i])
        return out

    def cochain(self, coords: Sequence) -> List:
        """Cocycle representing the class with the given coordinates."""
        out = [self.ring.coerce(0)] * self._n
        for c, rep in zip(coords, self.representatives):
            if c:
                out = [self.ring.reduce(a + c * b) for a, b in zip(out, rep)]
        return out


@dataclass(frozen=True)
class GradedCohomology:
    ring: RingSpec
    degrees: Tuple[DegreeCohomology, ...]

    def __getitem__(self, q: int) -> DegreeCohomology:
        return self.degrees[q % 8]

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(h.rank for h in self.degrees)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(h.dim for h in self.degrees)

    @property
    def torsion(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(h.torsion for h in self.degrees)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.degrees[q].rank for q in DEGREES)


def _embed(C: FloerComplex, idx: Sequence[int], block: Sequence, ring: RingSpec) -> Tuple:
    out = [ring.coerce(0)] * C.size
    for i, c in zip(idx, block):
        out[i] = c
    return tuple(out)


def _degree_cohomology(C: FloerComplex, q: int, ring: RingSpec) -> DegreeCohomology:
    idx = C.in_degree(q)
    nxt = C.in_degree(q + 1)
    prv = C.in_degree(q - 1)
    D = convert(C.D, ring)
    out_block = [[D[j][i] for i in idx] for j in nxt]
    kernel, _ = kernel_and_image(out_block, ring, ncols=len(idx))
    k = len(kernel)
    if k == 0:
        return DegreeCohomology(q, ring, tuple(idx), (), (), (), (), (), C.size)
    K = transpose(kernel)  # columns are kernel vectors
    # coboundaries in kernel coordinates
    M = []
    for j in prv:
        b = [D[i][j] for i in idx]
        y = solve_linear(K, b, ring)
        assert y is not None, "coboundary outside the cocycle lattice"
        M.append(y)
    M = transpose(M) if M else [[] for _ in range(k)]
    if ring.is_field:
        if prv:
            _, pivots = rref(M, ring)
            image = [[M[i][j] for i in range(k)] for j in pivots]
        else:
            image = []
        T = transpose(image + extend_to_basis(image, k, ring))
        S = inverse(T, ring)
        selected = tuple(range(len(image), k))
        orders = tuple(0 for _ in selected)
    else:
        Dm, U, _ = smith_normal_form(M, len(prv))
        S = U
        diag = [Dm[i][i] if i < len(prv) else 0 for i in range(k)]
        selected = tuple(i for i in range(k) if diag[i] != 1)
        orders = tuple(diag[i] for i in selected)
    Sinv = inverse(S, ring)
    basis = mat_mul(K, Sinv, ring)
    reps = tuple(_embed(C, idx, [basis[r][i] for r in range(len(idx))], ring) for i in selected)
    return DegreeCohomology(q, ring, tuple(idx), reps, orders, tuple(map(tuple, kernel)),
                            tuple(map(tuple, S)), selected, C.size)


@lru_cache(maxsize=512)
def _cohomology(C: FloerComplex, ring: RingSpec) -> GradedCohomology:
    return GradedCohomology(ring, tuple(_degree_cohomology(C, q, ring) for q in DEGREES))


def cohomology(C: FloerComplex, ring: RingSpec = QQ) -> GradedCohomology:
    """HF^q for q in Z/8, with torsion when ``ring`` is the integers."""
    report = validate_complex(C)
    if not report.ok:
        raise InvalidComplexError(report)
    return _cohomology(C, ring)


# ---------------------------------------------------------------- u-maps

@dataclass(frozen=True)
class UMap:
    """Induced u : HF^q -> HF^{q+4}, possibly only partially defined.

    ``kind`` is ``total``, ``kernel`` (defined on ker delta_0 in degree 4,
    ``domain_basis`` lists HF^4 coordinates of a basis of the kernel) or
    ``quotient`` (degree 5, values in HF^1 / <delta'_0>; ``codomain_basis``
    lists HF^1 coordinates of a complement of delta'_0).
    """

    degree: int
    kind: str
    matrix: Tuple[Tuple, ...]
    domain_basis: Tuple[Tuple, ...]
    codomain_basis: Tuple[Tuple, ...]


def _v_on_class(C: FloerComplex, H: GradedCohomology, q: int, coords: Sequence) -> List:
    ring = H.ring
    x = H[q].cochain(coords)
    return mat_vec(convert(C.V, ring), x, ring)


def _unit_basis(k: int, ring: RingSpec) -> Tuple[Tuple, ...]:
    return tuple(tuple(r) for r in identity(k, ring))


def u_on_cohomology(C: FloerComplex, ring: RingSpec, q: int, partial: bool = True) -> UMap:
    """Matrix of u from degree q, with the partial-domain rules of sphere complexes."""
    q %= 8
    H = cohomology(C, ring)
    src, dst = H[q], H[q + 4]
    sphere = C.is_sphere
    if sphere and q in (4, 5) and not partial:
        raise UMapUndefinedError(
            f"u is not defined on all of HF^{q} of a homology sphere: the trivial connection "
            f"obstructs it (use the partial map on ker δ₀ for q=4, into HF¹/⟨δ′₀⟩ for q=5)")
    if sphere and q == 4:
        d0 = [sum(ring.coerce(a) * b for a, b in zip(C.delta_row, rep)) for rep in src.representatives]
        d0 = [ring.reduce(x) for x in d0]
        dom, _ = kernel_and_image([d0], ring, ncols=src.dim)
        dom = tuple(tuple(b) for b in dom)
        cols = [dst.coordinates(_v_on_class(C, H, q, b)) for b in dom]
        return UMap(q, "kernel", tuple(map(tuple, transpose(cols, dst.dim))), dom,
                    _unit_basis(dst.dim, ring))
    if sphere and q == 5:
        if not ring.is_field:
            raise ValueError("the quotient HF^1/<δ′₀> is only supported over a field")
        p0 = dst.coordinates(C.delta_prime_col) if dst.dim else []
        sub = [p0] if any(p0) else []
        comp = extend_to_basis(sub, dst.dim, ring)
        T = transpose(sub + comp) if dst.dim else []
        Tinv = inverse(T, ring) if dst.dim else []
        cols = []
        for b in _unit_basis(src.dim, ring):
            y = mat_vec(Tinv, dst.coordinates(_v_on_class(C, H, q, b)), ring)
            cols.append(y[len(sub):])
        return UMap(q, "quotient", tuple(map(tuple, transpose(cols, len(comp)))),
                    _unit_basis(src.dim, ring), tuple(map(tuple, comp)))
    cols = [dst.coordinates(_v_on_class(C, H, q, b)) for b in _unit_basis(src.dim, ring)]
    return UMap(q, "total", tuple(map(tuple, transpose(cols, dst.dim))),
                _unit_basis(src.dim, ring), _unit_basis(dst.dim, ring))


def delta_functional(C: FloerComplex, ring: RingSpec = ZZ, n: int = 0) -> List:
    """Values of delta_n = [delta v^n] on the generators of HF^{4-4n}."""
    H = cohomology(C, ring)
    f = convert([C.delta_row], ring)[0]
    V = convert(C.V, ring)
    for _ in range(n):
        f = vec_mat(f, V, ring, ncols=C.size)
    return [ring.reduce(sum(a * b for a, b in zip(f, rep))) for rep in H[4 - 4 * n].representatives]


# ---------------------------------------------------------------- delta towers

@dataclass(frozen=True)
class DeltaTower:
    """delta_n (functionals on HF^{4-4n}) and delta'_n (classes in HF^{1+4n}).

    ``delta[n]`` holds the values of delta_n on the HF^{4-4n} basis and
    ``delta_prime[n]`` the coordinates of delta'_n in HF^{1+4n}.  Terms are
    listed up to the point where both spans stopped growing;
    ``stabilization_index`` is the least N with span{0..N} equal to the final
    span for both towers.
    """

    ring: RingSpec
    delta: Tuple[Tuple, ...]
    delta_prime: Tuple[Tuple, ...]
    stabilization_index: int
    functionals: Tuple[Tuple, ...] = field(repr=False, default=())
    chains: Tuple[Tuple, ...] = field(repr=False, default=())

    def delta_span(self, q: int) -> List[List]:
        """Independent delta_n acting on HF^q (q = 0 or 4)."""
        return independent_subset(
            [list(x) for n, x in enumerate(self.delta) if (4 - 4 * n) % 8 == q % 8], self.ring)

    def delta_prime_span(self, q: int) -> List[List]:
        return independent_subset(
            [list(x) for n, x in enumerate(self.delta_prime) if (1 + 4 * n) % 8 == q % 8], self.ring)

    @property
    def delta_dims(self) -> Tuple[int, int]:
        return len(self.delta_span(0)), len(self.delta_span(4))

    @property
    def delta_prime_dims(self) -> Tuple[int, int]:
        return len(self.delta_prime_span(1)), len(self.delta_prime_span(5))

    @property
    def delta_zero(self) -> bool:
        return all(not any(x) for x in self.delta)

    @property
    def delta_prime_zero(self) -> bool:
        return all(not any(x) for x in self.delta_prime)

    @property
    def one_sided(self) -> bool:
        return self.delta_zero or self.delta_prime_zero


def _tower_terms(C: FloerComplex, ring: RingSpec, count: int):
    H = cohomology(C, ring)
    V = convert(C.V, ring)
    f = convert([C.delta_row], ring)[0] if C.size else []
    p = convert([C.delta_prime_col], ring)[0] if C.size else []
    for n in range(count):
        dq, pq = (4 - 4 * n) % 8, (1 + 4 * n) % 8
        dn = tuple(ring.reduce(sum(a * b for a, b in zip(f, rep))) for rep in H[dq].representatives)
        try:
            pn = tuple(H[pq].coordinates(p))
        except ValueError:
            raise ReducedGroupError(f"v^{n}δ′ is not a cocycle") from None
        yield n, dn, pn, tuple(f), tuple(p)
        f = vec_mat(f, V, ring, ncols=C.size)
        p = mat_vec(V, p, ring)


@lru_cache(maxsize=512)
def _delta_tower(C: FloerComplex, ring: RingSpec) -> DeltaTower:
    H = cohomology(C, ring)
    dims = H.dims
    bound = 2 * (dims[0] + dims[4] + dims[1] + dims[5]) + 2
    spans: Dict[Tuple[str, int], List[List]] = {}
    deltas, primes, funcs, chains = [], [], [], []
    quiet = 0
    last_growth = -1
    for n, dn, pn, f, p in _tower_terms(C, ring, bound + 1):
        grew = False
        for key, vec in ((("d", (4 - 4 * n) % 8), dn), (("p", (1 + 4 * n) % 8), pn)):
            cur = spans.setdefault(key, [])
            if any(vec) and span_rank(cur + [list(vec)], ring) > len(cur):
                cur.append(list(vec))
                grew = True
        deltas.append(dn)
        primes.append(pn)
        funcs.append(f)
        chains.append(p)
        if grew:
            quiet = 0
            last_growth = n
        else:
            quiet += 1
        # a step adding nothing to the span forces the same two steps later,
        # so two quiet steps in a row mean the spans are final
        if quiet == 2:
            return DeltaTower(ring, tuple(deltas), tuple(primes), last_growth + 1,
                              tuple(funcs), tuple(chains))
    raise TowerError(f"tower did not stabilize within n <= {bound}")


def delta_tower(C: FloerComplex, ring: RingSpec = QQ) -> DeltaTower:
    """delta_n = [delta v^n] and delta'_n = [v^n delta'] until both spans plateau."""
    _require_field(ring, "delta_tower")
    if not C.is_sphere:
        raise ValueError("delta towers are defined for homology-sphere complexes")
    cohomology(C, ring)
    return _delta_tower(C, ring)


# ---------------------------------------------------------------- reduced group

@dataclass(frozen=True)
class ReducedGroup:
    """Z^q / B^q with the induced u (``u[q]`` maps degree q to q + 4)."""

    ring: RingSpec
    dims: Tuple[int, ...]
    u: Tuple[Tuple[Tuple, ...], ...]
    z_dims: Tuple[int, ...]
    b_dims: Tuple[int, ...]
    bases: Tuple[Tuple[Tuple, ...], ...] = field(repr=False, default=())
    z_bases: Tuple[Tuple[Tuple, ...], ...] = field(repr=False, default=())
    b_bases: Tuple[Tuple[Tuple, ...], ...] = field(repr=False, default=())
    complement: Tuple[Tuple[Tuple, ...], ...] = field(repr=False, default=())

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.dims[q] for q in DEGREES)

    def quotient_coordinates(self, q: int, hf_coords: Sequence) -> List:
        """Coordinates in Z^q/B^q of a class of Z^q given in HF^q coordinates."""
        q %= 8
        ring = self.ring
        zb = [list(b) for b in self.z_bases[q]]
        if not zb:
            return []
        y = solve_linear(transpose(zb), list(hf_coords), ring)
        if y is None:
            raise ReducedGroupError(f"class {tuple(hf_coords)} is not in Z^{q}")
        T = self.complement[q]
        y2 = mat_vec([list(r) for r in T], y, ring)
        return y2[self.b_dims[q]:]


def _constraint_rows(tower: DeltaTower, q: int) -> List[List]:
    return [list(x) for n, x in enumerate(tower.delta) if (4 - 4 * n) % 8 == q and any(x)]


def _in_z(rows: List[List], coords: Sequence, ring: RingSpec) -> bool:
    return all(not ring.reduce(sum(a * b for a, b in zip(r, coords))) for r in rows)


@lru_cache(maxsize=512)
def _reduced_group(C: FloerComplex, ring: RingSpec) -> ReducedGroup:
    H = cohomology(C, ring)
    if not C.is_sphere:
        us = [u_on_cohomology(C, ring, q).matrix for q in DEGREES]
        bases = tuple(tuple(h.representatives) for h in H.degrees)
        ident = tuple(_unit_basis(H[q].dim, ring) for q in DEGREES)
        return ReducedGroup(ring, H.dims, tuple(us), H.dims, (0,) * 8, bases, ident,
                            tuple(() for _ in DEGREES), ident)
    T = _delta_tower(C, ring)
    z_bases, b_bases, comps, dims, reps = [], [], [], [], []
    rows_by_q = {q: _constraint_rows(T, q) for q in DEGREES}
    for q in DEGREES:
        k = H[q].dim
        rows = rows_by_q[q]
        if rows:
            zb, _ = kernel_and_image(rows, ring, ncols=k)
        else:
            zb = [list(r) for r in identity(k, ring)]
        bb = T.delta_prime_span(q)
        for b in bb:
            # B lives in odd degrees and the delta_n constrain even ones
            assert _in_z(rows, b, ring), f"B^{q} not contained in Z^{q}"
        if zb:
            bz = [solve_linear(transpose(zb), b, ring) for b in bb]
            comp = extend_to_basis(bz, len(zb), ring)
            Tm = inverse(transpose(bz + comp), ring)
        else:
            comp, Tm = [], []
        z_bases.append(tuple(map(tuple, zb)))
        b_bases.append(tuple(map(tuple, bb)))
        comps.append(tuple(map(tuple, Tm)))
        dims.append(len(comp))
        # reduced basis as HF coordinates, then as cochains
        hf = [mat_vec(transpose(zb), c, ring) for c in comp]
        reps.append(tuple(tuple(H[q].cochain(c)) for c in hf))
    red = ReducedGroup(ring, tuple(dims), (), tuple(len(z) for z in z_bases),
                       tuple(len(b) for b in b_bases), tuple(reps), tuple(z_bases),
                       tuple(b_bases), tuple(comps))
    V = convert(C.V, ring)
    D = convert(C.D, ring)

    def v_class(x, q):
        y = mat_vec(V, list(x), ring)
        if any(mat_vec(D, y, ring)):
            raise ReducedGroupError(f"v does not map a degree-{q} cocycle of π⁻¹(Z) to a cocycle")
        return H[q + 4].coordinates(y)

    us = []
    for q in DEGREES:
        t = (q + 4) % 8
        cols = []
        for x in reps[q]:
            c = v_class(x, q)
            if not _in_z(rows_by_q[t], c, ring):
                raise ReducedGroupError(f"v does not map π⁻¹(Z^{q}) into π⁻¹(Z^{t})")
            cols.append(red.quotient_coordinates(t, c))
        us.append(tuple(map(tuple, transpose(cols, dims[t]))))
        # v(π⁻¹(B)) ⊆ π⁻¹(B): coboundaries and the v^n δ′ chains
        gens = [[D[i][j] for i in range(C.size)] for j in C.in_degree(q - 1)]
        gens += [list(p) for n, p in enumerate(T.chains) if (1 + 4 * n) % 8 == q]
        bt = [list(b) for b in b_bases[t]]
        for x in gens:
            c = v_class(x, q)
            if any(c) and (not bt or solve_linear(transpose(bt), c, ring) is None):
                raise ReducedGroupError(f"v does not map π⁻¹(B^{q}) into π⁻¹(B^{t})")
    return ReducedGroup(ring, red.dims, tuple(us), red.z_dims, red.b_dims, red.bases,
                        red.z_bases, red.b_bases, red.complement)


def reduced_group(C: FloerComplex, ring: RingSpec = QQ) -> ReducedGroup:
    """Reduced Floer group Z*/B* with its total u-map (field coefficients)."""
    _require_field(ring, "reduced_group")
    cohomology(C, ring)
    return _reduced_group(C, ring)


# ---------------------------------------------------------------- invariants

def euler_and_casson(C: FloerComplex, ring: RingSpec = QQ) -> Tuple[int, Fraction]:
    chi = cohomology(C, ring).euler_characteristic
    return chi, Fraction(-chi, 2)


@dataclass(frozen=True)
class HReport:
    h: Fraction
    chi_hf: int
    chi_reduced: int
    via_b4: int
    via_hchar: int
    warnings: Tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        return self.h == self.via_b4 == self.via_hchar


def _leading_even_independent(T: DeltaTower) -> int:
    evens = [list(x) for n, x in enumerate(T.delta) if n % 2 == 0]
    count = 0
    for j in range(len(evens)):
        if span_rank(evens[:j + 1], T.ring) == j + 1:
            count = j + 1
        else:
            break
    return count


def h_invariant(C: FloerComplex, ring: RingSpec = QQ) -> HReport:
    """h = (chi(HF) - chi(reduced HF)) / 2, cross-checked two other ways.

    Over ``ZZ`` the rational computation is used: h is defined through
    Euler characteristics over Q.
    """
    if not C.is_sphere:
        raise ValueError("h is defined for homology-sphere complexes")
    if ring.kind == "integers":
        ring = QQ
    _require_field(ring, "h_invariant")
    R = reverse_orientation(C)
    chi = cohomology(C, ring).euler_characteristic
    red = reduced_group(C, ring)
    h = Fraction(chi - red.euler_characteristic, 2)
    T, Tr = delta_tower(C, ring), delta_tower(R, ring)
    via_b4 = len(T.delta_span(4)) - len(Tr.delta_span(4))
    if not T.delta_zero:
        via_hchar = _leading_even_independent(T)
    else:
        via_hchar = -_leading_even_independent(Tr)
    notes = []
    if h.denominator != 1:
        notes.append(f"χ(HF) − χ(reduced) = {chi - red.euler_characteristic} is odd; h = {h} is not an integer")
        warnings.warn(notes[-1])
    if not (h == via_b4 == via_hchar):
        notes.append(f"methods disagree: definition {h}, dim B4 difference {via_b4}, "
                     f"h-char criterion {via_hchar}")
    if not (T.one_sided and Tr.one_sided):
        notes.append("both δ and δ′ towers are non-zero")
    return HReport(h, chi, red.euler_characteristic, via_b4, via_hchar, tuple(notes))


def _block_u(dims: Sequence[int], u: Sequence[Sequence[Sequence]], ring: RingSpec) -> Matrix:
    offs = [sum(dims[:q]) for q in DEGREES]
    N = sum(dims)
    M = [[ring.coerce(0)] * N for _ in range(N)]
    for q in DEGREES:
        t = (q + 4) % 8
        for i in range(dims[t]):
            for j in range(dims[q]):
                M[offs[t] + i][offs[q] + j] = u[q][i][j]
    return M


def u_endomorphism(C: FloerComplex, ring: RingSpec = QQ) -> Tuple[Tuple[int, ...], Matrix]:
    """u on the reduced group (sphere) or on HF (admissible) as one block matrix."""
    red = reduced_group(C, ring)
    return red.dims, _block_u(red.dims, red.u, ring)


def nilpotency_index(C: FloerComplex, ring: RingSpec = QQ) -> Optional[int]:
    """Least n with (u^2 - 64)^n = 0, or None if no n up to the dimension works."""
    _require_field(ring, "nilpotency_index")
    dims, U = u_endomorphism(C, ring)
    N = sum(dims)
    if N == 0:
        return 0
    U2 = mat_mul(U, U, ring)
    T = [[ring.reduce(U2[i][j] - (64 if i == j else 0)) for j in range(N)] for i in range(N)]
    P = identity(N, ring)
    for n in range(1, N + 1):
        P = mat_mul(P, T, ring)
        if all(not x for row in P for x in row):
            return n
    return None


@dataclass(frozen=True)
class PeriodicityReport:
    u_isomorphism: Dict[int, bool]
    hf_dims: Tuple[int, ...]
    reduced_dims: Tuple[int, ...]
    hf_mod4_periodic: bool
    reduced_mod4_periodic: bool

    @property
    def passed(self) -> bool:
        return (all(self.u_isomorphism.values()) and self.hf_mod4_periodic
                and self.reduced_mod4_periodic)


def periodicity_report(C: FloerComplex, ring: RingSpec = QQ) -> PeriodicityReport:
    """Is u an isomorphism HF^q -> HF^{q+4} for q != 4, 5; are HF and reduced HF mod 4 periodic."""
    _require_field(ring, "periodicity_report")
    if not C.is_sphere:
        raise ValueError("periodicity_report expects a homology-sphere complex")
    H = cohomology(C, ring)
    iso = {}
    for q in (0, 1, 2, 3, 6, 7):
        m = u_on_cohomology(C, ring, q)
        a, b = H[q].dim, H[q + 4].dim
        iso[q] = a == b and (a == 0 or rank([list(r) for r in m.matrix], ring) == a)
    red = reduced_group(C, ring)
    hp = all(H.dims[q] == H.dims[q + 4] for q in range(4))
    rp = all(red.dims[q] == red.dims[q + 4] for q in range(4))
    return PeriodicityReport(iso, H.dims, red.dims, hp, rp)
