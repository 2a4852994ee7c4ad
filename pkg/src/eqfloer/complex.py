"""Z/8-graded Floer cochain complexes and their structural identities.

A complex carries integer matrices for the differential ``d`` (degree +1) and
the cochain map ``v`` (degree +4).  Homology-sphere complexes also carry the
trivial-connection data: a functional ``delta`` on degree-4 generators and an
element ``delta_prime`` supported in degree 1.

Matrices act on column vectors indexed by generator: ``D[j][i]`` is the
coefficient of generator ``j`` in ``d(generator i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import identity, inverse, mat_mul, mat_vec, vec_mat, ZZ

HOMOLOGY_SPHERE = "homology_sphere"
ADMISSIBLE = "admissible"
FLAVORS = (HOMOLOGY_SPHERE, ADMISSIBLE)

MAP_DEGREES = {"d": 1, "v": 4}

Entry = Tuple[str, str, int]


class ComplexFormatError(ValueError):
    """Structurally malformed complex data (bad ids, degrees or supports)."""


class InvalidComplexError(ValueError):
    """A well-formed complex that fails one of the chain-level identities."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("complex failed validation: " + "; ".join(
            f"{c.name} {c.witness}" for c in report.checks if not c.passed))


@dataclass(frozen=True)
class Generator:
    id: str
    degree: int


def _canon_map(entries: Iterable[Entry]) -> Tuple[Entry, ...]:
    acc: Dict[Tuple[str, str], int] = {}
    for src, dst, c in entries:
        acc[(src, dst)] = acc.get((src, dst), 0) + int(c)
    return tuple(sorted((s, t, c) for (s, t), c in acc.items() if c))


def _canon_vec(values) -> Tuple[Tuple[str, int], ...]:
    if isinstance(values, Mapping):
        values = values.items()
    acc: Dict[str, int] = {}
    for k, c in values:
        acc[k] = acc.get(k, 0) + int(c)
    return tuple(sorted((k, c) for k, c in acc.items() if c))


@dataclass(frozen=True)
class FloerComplex:
    """Immutable Floer cochain complex.

    ``d`` and ``v`` are stored as sorted ``(from, to, coeff)`` triples;
    ``delta`` and ``delta_prime`` as sorted ``(id, value)`` pairs.  Any of
    these may be passed as dicts or iterables; they are canonicalised.
    """

    flavor: str
    generators: Tuple[Generator, ...]
    d: Tuple[Entry, ...] = ()
    v: Tuple[Entry, ...] = ()
    delta: Tuple[Tuple[str, int], ...] = ()
    delta_prime: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ComplexFormatError(f"unknown flavor {self.flavor!r}")
        gens = tuple(g if isinstance(g, Generator) else Generator(str(g[0]), int(g[1]))
                     for g in self.generators)
        seen = set()
        for g in gens:
            if g.id in seen:
                raise ComplexFormatError(f"duplicate generator id {g.id!r}")
            if not (0 <= g.degree < 8):
                raise ComplexFormatError(f"generator {g.id!r} has degree {g.degree} outside 0..7")
            seen.add(g.id)
        object.__setattr__(self, "generators", gens)
        deg = {g.id: g.degree for g in gens}
        for name, shift in MAP_DEGREES.items():
            raw = getattr(self, name)
            if isinstance(raw, Mapping):
                raw = [(s, t, c) for (s, t), c in raw.items()]
            entries = _canon_map(raw)
            for s, t, _ in entries:
                for x in (s, t):
                    if x not in deg:
                        raise ComplexFormatError(f"{name} refers to unknown generator {x!r}")
                if (deg[t] - deg[s]) % 8 != shift:
                    raise ComplexFormatError(
                        f"{name} coefficient {s!r} -> {t!r} joins degrees {deg[s]} and "
                        f"{deg[t]}; {name} has degree {shift}")
            object.__setattr__(self, name, entries)
        for name, support in (("delta", 4), ("delta_prime", 1)):
            vec = _canon_vec(getattr(self, name))
            if vec and self.flavor == ADMISSIBLE:
                raise ComplexFormatError(f"{name} is not allowed for admissible complexes")
            for k, _ in vec:
                if k not in deg:
                    raise ComplexFormatError(f"{name} refers to unknown generator {k!r}")
                if deg[k] != support:
                    raise ComplexFormatError(
                        f"{name} is supported in degree {support}; {k!r} has degree {deg[k]}")
            object.__setattr__(self, name, vec)

    # ------------------------------------------------------------ accessors

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def is_sphere(self) -> bool:
        return self.flavor == HOMOLOGY_SPHERE

    @cached_property
    def index(self) -> Dict[str, int]:
        return {g.id: i for i, g in enumerate(self.generators)}

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def in_degree(self, q: int) -> List[int]:
        q %= 8
        return [i for i, g in enumerate(self.generators) if g.degree == q]

    def _dense(self, entries) -> List[List[int]]:
        n = self.size
        M = [[0] * n for _ in range(n)]
        for s, t, c in entries:
            M[self.index[t]][self.index[s]] = c
        return M

    @cached_property
    def D(self) -> List[List[int]]:
        return self._dense(self.d)

    @cached_property
    def V(self) -> List[List[int]]:
        return self._dense(self.v)

    @cached_property
    def delta_row(self) -> List[int]:
        row = [0] * self.size
        for k, c in self.delta:
            row[self.index[k]] = c
        return row

    @cached_property
    def delta_prime_col(self) -> List[int]:
        col = [0] * self.size
        for k, c in self.delta_prime:
            col[self.index[k]] = c
        return col

    def vector_to_dict(self, x: Sequence) -> Dict[str, object]:
        return {g.id: c for g, c in zip(self.generators, x) if c}


def build_complex(flavor: str, generators, d=(), v=(), delta=(), delta_prime=()) -> FloerComplex:
    """Convenience constructor accepting ``[(id, degree), ...]`` and dicts."""
    gens = tuple(Generator(str(i), int(q)) for i, q in generators)
    return FloerComplex(flavor, gens, d, v, delta, delta_prime)


def from_matrices(flavor, generators: Sequence[Generator], D, V, delta=None, delta_prime=None) -> FloerComplex:
    ids = [g.id for g in generators]
    n = len(ids)

    def entries(M):
        return [(ids[i], ids[j], M[j][i]) for i in range(n) for j in range(n) if M[j][i]]

    dl = [] if delta is None else [(ids[i], c) for i, c in enumerate(delta) if c]
    dp = [] if delta_prime is None else [(ids[i], c) for i, c in enumerate(delta_prime) if c]
    return FloerComplex(flavor, tuple(generators), entries(D), entries(V), dl, dp)


# ---------------------------------------------------------------- validation

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


def _matrix_check(C: FloerComplex, name: str, M) -> Check:
    ids = [g.id for g in C.generators]
    for i in range(C.size):
        for j in range(C.size):
            if M[j][i]:
                return Check(name, False, f"at {ids[i]} (coefficient {M[j][i]} on {ids[j]})")
    return Check(name, True)


def chain_identity(C: FloerComplex) -> List[List[int]]:
    """``dv - vd + 2 delta(x) delta'`` as an integer matrix (zero iff the identity holds)."""
    D, V = C.D, C.V
    DV = mat_mul(D, V)
    VD = mat_mul(V, D)
    P, Dl = C.delta_prime_col, C.delta_row
    n = C.size
    return [[DV[j][i] - VD[j][i] + 2 * P[j] * Dl[i] for i in range(n)] for j in range(n)]


def validate_complex(C: FloerComplex) -> ValidationReport:
    """Check every chain-level identity; failures name a witnessing generator."""
    D = C.D
    checks = [_matrix_check(C, "d∘d = 0", mat_mul(D, D))]
    if C.is_sphere:
        dd = vec_mat(C.delta_row, D, ncols=C.size)
        bad = next((g.id for g, x in zip(C.generators, dd) if x), None)
        checks.append(Check("δ∘d = 0", bad is None, f"at {bad}" if bad else ""))
        dp = mat_vec(D, C.delta_prime_col)
        bad = next((g.id for g, x in zip(C.generators, dp) if x), None)
        checks.append(Check("d(δ′) = 0", bad is None, f"at {bad}" if bad else ""))
        checks.append(_matrix_check(C, "dv − vd + 2δ⊗δ′ = 0", chain_identity(C)))
    else:
        checks.append(_matrix_check(C, "dv − vd = 0", chain_identity(C)))
    return ValidationReport(tuple(checks))


def require_valid(C: FloerComplex) -> None:
    report = validate_complex(C)
    if not report.ok:
        raise InvalidComplexError(report)


# ---------------------------------------------------------------- constructions

def reverse_orientation(C: FloerComplex) -> FloerComplex:
    """Dual complex of the orientation-reversed manifold.

    Degrees go to 5 - q, d to its transpose, v to minus its transpose, and
    delta and delta_prime swap roles.  Applying this twice is the identity.
    """
    gens = tuple(Generator(g.id, (5 - g.degree) % 8) for g in C.generators)
    return FloerComplex(
        C.flavor, gens,
        [(t, s, c) for s, t, c in C.d],
        [(t, s, -c) for s, t, c in C.v],
        C.delta_prime, C.delta)


def relabel(C: FloerComplex, prefix: str) -> FloerComplex:
    p = lambda x: prefix + x  # noqa: E731
    return FloerComplex(
        C.flavor,
        tuple(Generator(p(g.id), g.degree) for g in C.generators),
        [(p(s), p(t), c) for s, t, c in C.d],
        [(p(s), p(t), c) for s, t, c in C.v],
        [(p(k), c) for k, c in C.delta],
        [(p(k), c) for k, c in C.delta_prime])


def direct_sum(*parts: FloerComplex, flavor: Optional[str] = None) -> FloerComplex:
    """Direct sum; generator ids must be disjoint (use ``relabel``)."""
    if flavor is None:
        flavors = {c.flavor for c in parts}
        if len(flavors) > 1:
            raise ComplexFormatError("direct sum of complexes with different flavors")
        flavor = flavors.pop() if flavors else HOMOLOGY_SPHERE
    gens, d, v, dl, dp = [], [], [], [], []
    for c in parts:
        gens += c.generators
        d += c.d
        v += c.v
        dl += c.delta
        dp += c.delta_prime
    return FloerComplex(flavor, tuple(gens), d, v, dl, dp)


def change_basis(C: FloerComplex, blocks: Mapping[int, Sequence[Sequence[int]]]) -> FloerComplex:
    """Conjugate by a degree-preserving unimodular change of basis.

    ``blocks[q]`` is an integer matrix G acting on the generators of degree q
    (in their order); new coordinates are ``G x``.  Degrees without a block
    are left alone.
    """
    n = C.size
    G = identity(n)
    for q, B in blocks.items():
        idx = C.in_degree(q)
        if len(B) != len(idx):
            raise ValueError(f"block for degree {q} has size {len(B)}, expected {len(idx)}")
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                G[i][j] = B[a][b]
    Ginv = inverse(G, ZZ)
    D = mat_mul(mat_mul(G, C.D), Ginv)
    V = mat_mul(mat_mul(G, C.V), Ginv)
    delta = vec_mat(C.delta_row, Ginv, ncols=n)
    dprime = mat_vec(G, C.delta_prime_col)
    return from_matrices(C.flavor, C.generators, D, V, delta, dprime)


def with_flavor(C: FloerComplex, flavor: str) -> FloerComplex:
    return FloerComplex(flavor, C.generators, C.d, C.v, C.delta, C.delta_prime)
