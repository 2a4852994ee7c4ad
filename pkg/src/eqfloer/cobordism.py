"""Chain maps induced by negative definite cobordisms between homology spheres.

A cobordism is given by a degree-preserving integer map ``W: CF(Y1) -> CF(Y2)``
together with a functional ``delta_W`` on degree-5 cochains of the source and
an element ``delta_prime_W`` in degree 0 of the target.  The identities
checked are::

    d W = W d
    delta_2 W = delta_1 + delta_W d
    W delta'_1 = delta'_2 + d delta'_W

and the homotopy solved for is::

    W v_1 - v_2 W + 2 (delta'_2 (x) delta_W + delta'_W (x) delta_1) = d phi + phi d

Here ``v W - W v`` is read left to right (first v, then W), which is the
sign that makes the left-hand side a chain map given the identities above.
Matrices follow the complex module: ``W[j][i]`` is the coefficient of target
generator j in ``W(source generator i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .complex import (
    Check, ComplexFormatError, FloerComplex, ValidationReport, _canon_map, _canon_vec,
    validate_complex,
)
from .floer import (
    ReducedGroupError, _require_field, _tower_terms, cohomology, delta_tower, h_invariant,
    reduced_group,
)
from .linalg import (
    RingSpec, convert, is_zero_matrix, kernel_and_image, mat_mul, mat_vec, solve_linear,
    span_rank, transpose, vec_mat,
)


class CobordismError(ValueError):
    pass


class TriangularityError(CobordismError):
    pass


@dataclass(frozen=True)
class CobordismData:
    source: FloerComplex
    target: FloerComplex
    wstar: Tuple[Tuple[str, str, int], ...]
    delta_w: Tuple[Tuple[str, int], ...] = ()
    delta_prime_w: Tuple[Tuple[str, int], ...] = ()
    phi: Optional[Tuple[Tuple[str, str, int], ...]] = None
    negative_definite: bool = True
    h1_trivial: bool = True

    def __post_init__(self):
        for C in (self.source, self.target):
            if not C.is_sphere:
                raise ComplexFormatError("cobordism maps are between homology-sphere complexes")
        sdeg = {g.id: g.degree for g in self.source.generators}
        tdeg = {g.id: g.degree for g in self.target.generators}

        def canon(raw, shift, name):
            if isinstance(raw, Mapping):
                raw = [(s, t, c) for (s, t), c in raw.items()]
            out = _canon_map(raw)
            for s, t, _ in out:
                if s not in sdeg or t not in tdeg:
                    raise ComplexFormatError(f"{name} entry {s!r} -> {t!r} names an unknown generator")
                if (tdeg[t] - sdeg[s]) % 8 != shift:
                    raise ComplexFormatError(
                        f"{name} entry {s!r} -> {t!r} joins degrees {sdeg[s]} and {tdeg[t]}; "
                        f"{name} has degree {shift}")
            return out

        object.__setattr__(self, "wstar", canon(self.wstar, 0, "Wstar"))
        if self.phi is not None:
            object.__setattr__(self, "phi", canon(self.phi, 3, "phi"))
        for name, degs, support in (("delta_w", sdeg, 5), ("delta_prime_w", tdeg, 0)):
            vec = _canon_vec(getattr(self, name))
            for k, _ in vec:
                if k not in degs:
                    raise ComplexFormatError(f"{name} refers to unknown generator {k!r}")
                if degs[k] != support:
                    raise ComplexFormatError(
                        f"{name} is supported in degree {support}; {k!r} has degree {degs[k]}")
            object.__setattr__(self, name, vec)

    def _dense(self, entries) -> List[List[int]]:
        si, ti = self.source.index, self.target.index
        M = [[0] * self.source.size for _ in range(self.target.size)]
        for s, t, c in entries:
            M[ti[t]][si[s]] += c
        return M

    @property
    def W(self) -> List[List[int]]:
        return self._dense(self.wstar)

    @property
    def Phi(self) -> Optional[List[List[int]]]:
        return None if self.phi is None else self._dense(self.phi)

    @property
    def delta_w_row(self) -> List[int]:
        row = [0] * self.source.size
        for k, c in self.delta_w:
            row[self.source.index[k]] = c
        return row

    @property
    def delta_prime_w_col(self) -> List[int]:
        col = [0] * self.target.size
        for k, c in self.delta_prime_w:
            col[self.target.index[k]] = c
        return col


def identity_cobordism(C: FloerComplex, target: Optional[FloerComplex] = None, **kw) -> CobordismData:
    """W = id between C and ``target`` (defaults to C), which must share generator ids."""
    target = C if target is None else target
    return CobordismData(C, target, tuple((g.id, g.id, 1) for g in C.generators), **kw)


def from_matrix(source: FloerComplex, target: FloerComplex, W, delta_w=None,
                delta_prime_w=None, **kw) -> CobordismData:
    sid = [g.id for g in source.generators]
    tid = [g.id for g in target.generators]
    entries = [(sid[i], tid[j], W[j][i]) for j in range(len(tid)) for i in range(len(sid)) if W[j][i]]
    dw = [] if delta_w is None else [(sid[i], c) for i, c in enumerate(delta_w) if c]
    dpw = [] if delta_prime_w is None else [(tid[j], c) for j, c in enumerate(delta_prime_w) if c]
    return CobordismData(source, target, tuple(entries), tuple(dw), tuple(dpw), **kw)


def compose(first: CobordismData, second: CobordismData, delta_w, delta_prime_w) -> CobordismData:
    """W2 W1 with independently supplied delta_W and delta'_W; validate the result."""
    if first.target != second.source:
        raise CobordismError("cannot compose: first target differs from second source")
    W = mat_mul(second.W, first.W)
    return from_matrix(first.source, second.target, W, delta_w, delta_prime_w,
                       negative_definite=first.negative_definite and second.negative_definite,
                       h1_trivial=first.h1_trivial and second.h1_trivial)


# ---------------------------------------------------------------- validation

def _first_nonzero(M, rows, cols) -> str:
    for i in range(len(cols)):
        for j in range(len(rows)):
            if M[j][i]:
                return f"at {cols[i]} (coefficient {M[j][i]} on {rows[j]})"
    return ""


def homotopy_rhs_lhs(W: CobordismData, ring: Optional[RingSpec] = None) -> List[List]:
    """``W v_1 - v_2 W + 2(delta'_2 delta_W + delta'_W delta_1)`` as a target x source matrix."""
    S, T = W.source, W.target
    Wm = W.W
    L = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(mat_mul(Wm, S.V), mat_mul(T.V, Wm))]
    P2, dW, PW, d1 = T.delta_prime_col, W.delta_w_row, W.delta_prime_w_col, S.delta_row
    for j in range(T.size):
        for i in range(S.size):
            L[j][i] += 2 * (P2[j] * dW[i] + PW[j] * d1[i])
    return L if ring is None else convert(L, ring)


def validate_cobordism(W: CobordismData) -> ValidationReport:
    """Check the chain-map and delta identities; a supplied phi is checked too."""
    S, T = W.source, W.target
    checks = []
    for label, C in (("source", S), ("target", T)):
        rep = validate_complex(C)
        checks.append(Check(f"{label} complex valid", rep.ok,
                            "; ".join(f"{c.name} {c.witness}" for c in rep.failures())))
    sid = [g.id for g in S.generators]
    tid = [g.id for g in T.generators]
    Wm = W.W
    diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(mat_mul(T.D, Wm), mat_mul(Wm, S.D))]
    checks.append(Check("d W* = W* d", is_zero_matrix(diff), _first_nonzero(diff, tid, sid)))
    lhs = vec_mat(T.delta_row, Wm, ncols=S.size)
    rhs = [a + b for a, b in zip(S.delta_row, vec_mat(W.delta_w_row, S.D, ncols=S.size))]
    bad = next((sid[i] for i in range(S.size) if lhs[i] != rhs[i]), None)
    checks.append(Check("δ₂ W* = δ₁ + δ_W d", bad is None, f"at {bad}" if bad else ""))
    lhs = mat_vec(Wm, S.delta_prime_col)
    rhs = [a + b for a, b in zip(T.delta_prime_col, mat_vec(T.D, W.delta_prime_w_col))]
    bad = next((tid[j] for j in range(T.size) if lhs[j] != rhs[j]), None)
    checks.append(Check("W* δ′₁ = δ′₂ + d δ′_W", bad is None, f"at {bad}" if bad else ""))
    if W.phi is not None:
        Phi = W.Phi
        L = homotopy_rhs_lhs(W)
        R = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(mat_mul(T.D, Phi), mat_mul(Phi, S.D))]
        E = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(L, R)]
        checks.append(Check("W*v − vW* + 2(δ′⊗δ_W + δ′_W⊗δ) = dφ + φd", is_zero_matrix(E),
                            _first_nonzero(E, tid, sid)))
    return ValidationReport(tuple(checks))


def _require(W: CobordismData) -> None:
    rep = validate_cobordism(W)
    if not rep.ok:
        raise CobordismError("cobordism data failed validation: " + "; ".join(
            f"{c.name} {c.witness}" for c in rep.failures()))


# ---------------------------------------------------------------- homotopy

def solve_homotopy(W: CobordismData, ring: RingSpec) -> Optional[List[List]]:
    """A degree +3 map phi with d phi + phi d equal to the homotopy left-hand side.

    Returns the dense target x source matrix over ``ring``, or None if the
    linear system is inconsistent.  Every solution is checked by substitution.
    """
    _require_field(ring, "solve_homotopy")
    _require(W)
    S, T = W.source, W.target
    unknowns = [(j, i) for i in range(S.size) for j in T.in_degree(S.degrees[i] + 3)]
    L = homotopy_rhs_lhs(W, ring)
    D1, D2 = convert(S.D, ring), convert(T.D, ring)
    zero = ring.coerce(0)
    # equations indexed by (k, i) with deg k = deg i + 4
    eqs = [(k, i) for i in range(S.size) for k in T.in_degree(S.degrees[i] + 4)]
    if not unknowns:
        if all(not L[k][i] for k, i in eqs):
            return [[zero] * S.size for _ in range(T.size)]
        return None
    col = {u: c for c, u in enumerate(unknowns)}
    A = [[zero] * len(unknowns) for _ in eqs]
    b = []
    for r, (k, i) in enumerate(eqs):
        # (D2 Phi)[k][i] = sum_j D2[k][j] Phi[j][i]
        for j in range(T.size):
            if D2[k][j] and (j, i) in col:
                A[r][col[(j, i)]] += D2[k][j]
        # (Phi D1)[k][i] = sum_l Phi[k][l] D1[l][i]
        for l in range(S.size):
            if D1[l][i] and (k, l) in col:
                A[r][col[(k, l)]] += D1[l][i]
        b.append(L[k][i])
    A = [[ring.reduce(x) for x in row] for row in A]
    if not eqs:
        x = [zero] * len(unknowns)
    else:
        x = solve_linear(A, b, ring, ncols=len(unknowns))
        if x is None:
            return None
    Phi = [[zero] * S.size for _ in range(T.size)]
    for (j, i), c in zip(unknowns, x):
        Phi[j][i] = c
    R = [[ring.reduce(a + c) for a, c in zip(r1, r2)]
         for r1, r2 in zip(mat_mul(D2, Phi, ring), mat_mul(Phi, D1, ring, inner=T.size))]
    assert R == [[ring.reduce(a) for a in row] for row in L], "homotopy failed substitution"
    return Phi


def phi_entries(W: CobordismData, Phi) -> Tuple[Tuple[str, str, object], ...]:
    sid = [g.id for g in W.source.generators]
    tid = [g.id for g in W.target.generators]
    return tuple((sid[i], tid[j], Phi[j][i]) for i in range(len(sid)) for j in range(len(tid))
                 if Phi[j][i])


# ---------------------------------------------------------------- towers

def cohomology_map(W: CobordismData, ring: RingSpec, q: int) -> List[List]:
    """Matrix of W*: HF^q(Y1) -> HF^q(Y2) in the cohomology bases."""
    H1, H2 = cohomology(W.source, ring), cohomology(W.target, ring)
    Wm = convert(W.W, ring)
    cols = [H2[q].coordinates(mat_vec(Wm, rep, ring)) for rep in H1[q].representatives]
    return transpose(cols, H2[q].dim)


@dataclass(frozen=True)
class Triangularity:
    """delta_n W* = delta_n + sum a[(i, n)] delta_i and dually for delta'.

    ``a`` and ``b`` map (i, n) with i < n, i = n mod 2, to one solution;
    ``a_nullity``/``b_nullity`` give the dimension of the solution space per n.
    """

    ring: RingSpec
    terms: int
    a: Dict[Tuple[int, int], object]
    b: Dict[Tuple[int, int], object]
    a_nullity: Dict[int, int] = field(default_factory=dict)
    b_nullity: Dict[int, int] = field(default_factory=dict)
    leading_ok: bool = True


def _solve_lower(target, lower: List[Tuple[int, List]], ring: RingSpec, what: str, n: int):
    """Coefficients c with target = sum c_i lower_i; returns (dict, nullity)."""
    if not lower:
        if any(target):
            raise TriangularityError(f"{what}_{n}: no triangular expression (difference {list(target)})")
        return {}, 0
    M = transpose([v for _, v in lower], len(target))
    x = solve_linear(M, list(target), ring, ncols=len(lower))
    if x is None:
        raise TriangularityError(f"{what}_{n}: no triangular expression (difference {list(target)})")
    nullity = len(lower) - span_rank([v for _, v in lower], ring)
    return {(i, n): c for (i, _), c in zip(lower, x)}, nullity


def delta_triangularity(W: CobordismData, ring: RingSpec) -> Triangularity:
    """Solve delta_n(Y2) W* - delta_n(Y1) in terms of lower delta_i(Y1), and dually."""
    _require_field(ring, "delta_triangularity")
    _require(W)
    S, T = W.source, W.target
    t1, t2 = delta_tower(S, ring), delta_tower(T, ring)
    count = max(len(t1.delta), len(t2.delta))
    src = list(_tower_terms(S, ring, count))
    tgt = list(_tower_terms(T, ring, count))
    H1, H2 = cohomology(S, ring), cohomology(T, ring)
    Wm = convert(W.W, ring)
    a, b, an, bn = {}, {}, {}, {}
    leading = True
    for n in range(count):
        q = (4 - 4 * n) % 8
        f2 = list(tgt[n][3])
        g = vec_mat(f2, Wm, ring, ncols=S.size)
        pulled = [ring.reduce(sum(x * y for x, y in zip(g, rep))) for rep in H1[q].representatives]
        diff = [ring.reduce(x - y) for x, y in zip(pulled, src[n][1])]
        if n == 0 and any(diff):
            leading = False
        lower = [(i, list(src[i][1])) for i in range(n) if (i - n) % 2 == 0]
        sol, nul = _solve_lower(diff, lower, ring, "δ", n)
        a.update(sol)
        an[n] = nul
        # dual: W*(v^n delta'_1) versus v^n delta'_2 in HF^{1+4n}(Y2)
        pq = (1 + 4 * n) % 8
        pushed = H2[pq].coordinates(mat_vec(Wm, list(src[n][4]), ring))
        diff = [ring.reduce(x - y) for x, y in zip(pushed, tgt[n][2])]
        if n == 0 and any(diff):
            leading = False
        lower = [(i, list(tgt[i][2])) for i in range(n) if (i - n) % 2 == 0]
        sol, nul = _solve_lower(diff, lower, ring, "δ′", n)
        b.update(sol)
        bn[n] = nul
    if not leading:
        raise TriangularityError("leading coefficient is not 1: δ₀W* ≠ δ₀ or W*δ′₀ ≠ δ′₀")
    return Triangularity(ring, count, a, b, an, bn, leading)


def leading_identities(W: CobordismData, ring: RingSpec) -> Tuple[bool, bool]:
    """(delta_0 W* == delta_0 on HF^4(Y1), W* delta'_0 == delta'_0 in HF^1(Y2))."""
    S, T = W.source, W.target
    H1, H2 = cohomology(S, ring), cohomology(T, ring)
    Wm = convert(W.W, ring)
    g = vec_mat(convert([T.delta_row], ring)[0], Wm, ring, ncols=S.size)
    d1 = convert([S.delta_row], ring)[0]
    first = all(ring.reduce(sum(x * y for x, y in zip(g, rep)) - sum(x * y for x, y in zip(d1, rep))) == 0
                for rep in H1[4].representatives)
    pushed = H2[1].coordinates(mat_vec(Wm, convert([S.delta_prime_col], ring)[0], ring))
    own = H2[1].coordinates(convert([T.delta_prime_col], ring)[0])
    return first, pushed == own


# ---------------------------------------------------------------- reduced groups

@dataclass(frozen=True)
class InducedReducedMap:
    ring: RingSpec
    matrices: Tuple[Tuple[Tuple, ...], ...]
    source_dims: Tuple[int, ...]
    target_dims: Tuple[int, ...]
    commutes_with_u: bool
    report: ValidationReport


def _same_span(A: List[List], B: List[List], ring: RingSpec) -> bool:
    ra, rb = span_rank(A, ring), span_rank(B, ring)
    return ra == rb and span_rank(A + B, ring) == ra


def induced_reduced_map(W: CobordismData, ring: RingSpec) -> InducedReducedMap:
    """Induced map on reduced groups, after checking W*^{-1}(Z) = Z and W*(B) = B."""
    _require_field(ring, "induced_reduced_map")
    _require(W)
    S, T = W.source, W.target
    R1, R2 = reduced_group(S, ring), reduced_group(T, ring)
    H1 = cohomology(S, ring)
    checks, mats = [], []
    for q in range(8):
        M = cohomology_map(W, ring, q)
        n1 = H1[q].dim
        z1 = [list(z) for z in R1.z_bases[q]]
        z2 = [list(z) for z in R2.z_bases[q]]
        # preimage of Z2 = kernel of (annihilator of Z2) o M
        if n1:
            ann, _ = kernel_and_image(z2, ring, ncols=len(M)) if z2 else (
                [[ring.coerce(int(i == j)) for j in range(len(M))] for i in range(len(M))], None)
            rows = [vec_mat(a, M, ring, ncols=n1) for a in ann]
            rows = [r for r in rows if any(r)]
            pre = kernel_and_image(rows, ring, ncols=n1)[0] if rows else [
                [ring.coerce(int(i == j)) for j in range(n1)] for i in range(n1)]
        else:
            pre = []
        ok = _same_span(pre, z1, ring)
        checks.append(Check(f"W*⁻¹(Z^{q}) = Z^{q}", ok, "" if ok else
                            f"preimage has dimension {len(pre)}, Z^{q}(Y₁) has {len(z1)}"))
        imgs = [mat_vec(M, list(bv), ring) for bv in R1.b_bases[q]] if n1 else []
        b2 = [list(x) for x in R2.b_bases[q]]
        ok = _same_span([x for x in imgs if any(x)], b2, ring)
        checks.append(Check(f"W*(B^{q}) = B^{q}", ok, "" if ok else
                            f"image spans {span_rank(imgs, ring)} of {len(b2)} dimensions"))
        cols = []
        if ok and checks[-2].passed:
            for rep in R1.bases[q]:
                c = H1[q].coordinates(list(rep))
                cols.append(R2.quotient_coordinates(q, mat_vec(M, c, ring)))
        mats.append(tuple(map(tuple, transpose(cols, R2.dims[q]))))
    report = ValidationReport(tuple(checks))
    if not report.ok:
        raise ReducedGroupError("W* does not preserve Z and B as required of a cobordism map: " +
                                "; ".join(f"{c.name}: {c.witness}" for c in report.failures()))
    commutes = True
    for q in range(8):
        t = (q + 4) % 8
        A = mat_mul([list(r) for r in mats[t]], [list(r) for r in R1.u[q]], ring,
                    inner=R1.dims[t])
        B = mat_mul([list(r) for r in R2.u[q]], [list(r) for r in mats[q]], ring,
                    inner=R2.dims[q])
        if R2.dims[t] and R1.dims[q] and A != B:
            commutes = False
    checks.append(Check("induced map commutes with u", commutes))
    return InducedReducedMap(ring, tuple(mats), R1.dims, R2.dims, commutes,
                             ValidationReport(tuple(checks)))


# ---------------------------------------------------------------- h

@dataclass(frozen=True)
class MonotonicityReport:
    h_source: Fraction
    h_target: Fraction
    inequality_holds: bool
    negative_definite: bool
    consistent: bool
    note: str


def h_monotonicity_report(W: CobordismData, ring: RingSpec, lattice=None) -> MonotonicityReport:
    """Compare h(target) with h(source) for supplied cobordism data.

    The inequality h(Y2) >= h(Y1) is only expected when the data supplier
    flags the cobordism as negative definite; when a lattice is passed and
    is not diagonal the inequality must be strict.  This is a diagnostic,
    never a claim about synthetic data.
    """
    h1 = h_invariant(W.source, ring).h
    h2 = h_invariant(W.target, ring).h
    strict = False
    if lattice is not None:
        from .lattice import is_standard_diagonal
        strict = not is_standard_diagonal(lattice)
    holds = h2 > h1 if strict else h2 >= h1
    rel = ">" if strict else "≥"
    if not W.negative_definite:
        return MonotonicityReport(h1, h2, holds, False, True,
                                  "not flagged negative definite: no inequality expected")
    note = (f"h(Y₂) = {h2} {rel} h(Y₁) = {h1}: consistent" if holds else
            f"h(Y₂) = {h2}, h(Y₁) = {h1}: violates h(Y₂) {rel} h(Y₁); inconsistent with the "
            f"claimed geometry")
    return MonotonicityReport(h1, h2, holds, True, holds, note)
