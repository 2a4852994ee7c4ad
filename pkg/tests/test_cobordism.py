import random

import pytest

from eqfloer.cobordism import (
    CobordismData, CobordismError, TriangularityError, compose, delta_triangularity, from_matrix,
    h_monotonicity_report, identity_cobordism, induced_reduced_map, leading_identities,
    solve_homotopy, validate_cobordism,
)
from eqfloer.complex import (
    HOMOLOGY_SPHERE, ComplexFormatError, build_complex, change_basis, from_matrices,
)
from eqfloer.corpus import Profile, _random_unimodular, build, random_valid
from eqfloer.floer import ReducedGroupError
from eqfloer import lattice as L
from eqfloer.linalg import GF, QQ, determinant, identity, mat_mul

P = build("poincare").complex
S3 = build("s3").complex


def basis_change(C, seed):
    rng = random.Random(seed)
    blocks = {q: _random_unimodular(rng, len(C.in_degree(q))) for q in range(8)}
    G = identity(C.size)
    for q, B in blocks.items():
        idx = C.in_degree(q)
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                G[i][j] = B[a][b]
    return from_matrix(C, change_basis(C, blocks), G)


def planted(s):
    """Source y(0), p(1), a(4) with dy = p, v(a) = -2y; target adds v(y) = s a.

    The target v is v + d psi + psi d for psi(p) = s a.
    """
    gens = [("y", 0), ("p", 1), ("a", 4)]
    kw = dict(d={("y", "p"): 1}, delta={"a": 1}, delta_prime={"p": 1})
    src = build_complex(HOMOLOGY_SPHERE, gens, v={("a", "y"): -2}, **kw)
    tgt = build_complex(HOMOLOGY_SPHERE, gens, v={("a", "y"): -2, ("y", "a"): s}, **kw)
    return identity_cobordism(src, tgt)


def test_identity_validates():
    W = identity_cobordism(P)
    assert validate_cobordism(W).ok
    assert leading_identities(W, QQ) == (True, True)


def test_nonzero_delta_w_breaks_del_funct():
    # enlarged complex with dy = e (y in degree 4, e in degree 5): delta_W(e) = 1
    # gives (delta_W d)(y) = 1, which nothing on the left-hand side matches
    C = build_complex(HOMOLOGY_SPHERE, [("beta", 0), ("alpha", 4), ("y", 4), ("e", 5)],
                      d={("y", "e"): 1}, v={("beta", "alpha"): 8}, delta={"alpha": 1})
    W = identity_cobordism(C, delta_w={"e": 1})
    rep = validate_cobordism(W)
    assert [c.name for c in rep.failures()] == ["δ₂ W* = δ₁ + δ_W d"]
    assert "y" in rep.failures()[0].witness


def test_structural_errors():
    with pytest.raises(ComplexFormatError, match="degree 5"):
        identity_cobordism(P, delta_w={"alpha": 1})
    with pytest.raises(ComplexFormatError, match="degree 0"):
        CobordismData(P, P, (("beta", "alpha", 1),))
    with pytest.raises(ComplexFormatError):
        CobordismData(build("torus_model").complex, P, ())


def test_basis_change_cobordisms():
    for seed in range(10):
        C = random_valid(seed).complex
        W = basis_change(C, seed + 100)
        assert validate_cobordism(W).ok
        assert leading_identities(W, QQ) == (True, True)
        assert solve_homotopy(W, QQ) is not None
        res = induced_reduced_map(W, QQ)
        assert res.commutes_with_u and res.report.ok
        for q in range(8):
            if res.source_dims[q]:
                assert res.source_dims[q] == res.target_dims[q]
                assert determinant([list(r) for r in res.matrices[q]], QQ) != 0


def test_basis_change_on_poincare_has_zero_a():
    W = basis_change(P, 1)
    tri = delta_triangularity(W, QQ)
    assert all(c == 0 for c in tri.a.values())


def test_identity_triangularity_is_trivial():
    tri = delta_triangularity(identity_cobordism(P), QQ)
    assert tri.leading_ok
    assert all(c == 0 for c in tri.a.values()) and all(c == 0 for c in tri.b.values())


@pytest.mark.parametrize("s", [1, 3, -2, 5])
def test_planted_a_coefficient(s):
    # delta_2 of the target on alpha: delta v'(-2y) = -2s, delta_2 of the source is 0
    tri = delta_triangularity(planted(s), QQ)
    assert tri.a[(0, 2)] == -2 * s
    assert tri.a_nullity[2] == 0


@pytest.mark.parametrize("s", [1, -4])
def test_planted_homotopy(s):
    W = planted(s)
    Phi = solve_homotopy(W, QQ)
    # the only degree +3 slot is p -> a, and phi = -psi
    ti, si = W.target.index, W.source.index
    assert Phi[ti["a"]][si["p"]] == -s
    assert sum(1 for row in Phi for x in row if x) == 1


def test_supplied_phi_is_checked():
    W = planted(2)
    good = CobordismData(W.source, W.target, W.wstar, phi=(("p", "a", -2),))
    bad = CobordismData(W.source, W.target, W.wstar, phi=(("p", "a", 2),))
    assert validate_cobordism(good).ok
    assert not validate_cobordism(bad).ok


def test_obstruction_returns_none():
    src = build_complex(HOMOLOGY_SPHERE, [("a", 0), ("b", 4)])
    tgt = build_complex(HOMOLOGY_SPHERE, [("a", 0), ("b", 4)], v={("a", "b"): 1})
    W = identity_cobordism(src, tgt)
    assert validate_cobordism(W).ok
    assert solve_homotopy(W, QQ) is None
    assert solve_homotopy(W, GF(3)) is None


def test_random_planted_homotopies():
    rng = random.Random(4)
    for seed in range(8):
        C = random_valid(seed, Profile(blocks=("poincare", "acyclic_block", "torus2"))).complex
        n = C.size
        deg = C.degrees
        psi = [[rng.randint(-2, 2) if (deg[j] - deg[i]) % 8 == 3 else 0 for i in range(n)] for j in range(n)]
        V = [[a + b + c for a, b, c in zip(r0, r1, r2)]
             for r0, r1, r2 in zip(C.V, mat_mul(C.D, psi), mat_mul(psi, C.D))]
        T = from_matrices(HOMOLOGY_SPHERE, C.generators, C.D, V, C.delta_row, C.delta_prime_col)
        W = identity_cobordism(C, T)
        Phi = solve_homotopy(W, QQ)
        assert Phi is not None


def test_invalid_data_is_refused_by_triangularity():
    # W* = 2 on the Poincaré sphere breaks delta_0 W* = delta_0
    W = from_matrix(P, P, [[2, 0], [0, 2]])
    assert not validate_cobordism(W).ok
    with pytest.raises(CobordismError):
        delta_triangularity(W, QQ)


def test_triangularity_error_on_valid_data():
    # target delta_1(y) = delta v y = delta(a1) = 1 while the source delta_1 is zero
    # and HF^0 has no delta_0 to absorb it: no triangular expression, no homotopy
    gens = [("a1", 4), ("a2", 4), ("y", 0)]
    src = build_complex(HOMOLOGY_SPHERE, gens, delta={"a1": 1})
    tgt = build_complex(HOMOLOGY_SPHERE, gens, v={("a2", "y"): 1, ("y", "a1"): 1}, delta={"a1": 1})
    W = identity_cobordism(src, tgt)
    assert validate_cobordism(W).ok
    with pytest.raises(TriangularityError, match="δ_1"):
        delta_triangularity(W, QQ)
    assert solve_homotopy(W, QQ) is None


def test_induced_map_on_torus_blocks_is_identity():
    C = random_valid(3, Profile(blocks=("torus0", "torus1"))).complex
    res = induced_reduced_map(identity_cobordism(C), QQ)
    for q in range(8):
        n = res.source_dims[q]
        assert [list(r) for r in res.matrices[q]] == [[int(i == j) for j in range(n)] for i in range(n)]
    assert res.commutes_with_u


def test_induced_map_detects_z_violation():
    # W: P -> P killing beta passes the chain-level checks, yet the preimage of
    # Z^0 = ker delta_1 = 0 is all of HF^0
    W = from_matrix(P, P, [[0, 0], [0, 1]])
    assert validate_cobordism(W).ok
    with pytest.raises(ReducedGroupError, match="Z\\^0"):
        induced_reduced_map(W, QQ)


def test_monotonicity_reports():
    rep = h_monotonicity_report(identity_cobordism(P), QQ)
    assert rep.consistent and rep.h_source == rep.h_target == 1
    up = h_monotonicity_report(CobordismData(S3, P, ()), QQ)
    assert up.consistent and up.h_target == 1
    down = h_monotonicity_report(CobordismData(P, S3, (), negative_definite=True), QQ)
    assert not down.consistent and "inconsistent" in down.note
    unflagged = h_monotonicity_report(CobordismData(P, S3, (), negative_definite=False), QQ)
    assert unflagged.consistent and not unflagged.inequality_holds


def test_monotonicity_strict_with_nondiagonal_form():
    rep = h_monotonicity_report(identity_cobordism(P), QQ, lattice=L.e8(-1))
    assert not rep.consistent
    rep = h_monotonicity_report(identity_cobordism(P), QQ, lattice=L.diagonal(2))
    assert rep.consistent


def test_composition_is_revalidated():
    W1 = basis_change(P, 3)
    W2 = basis_change(W1.target, 4)
    comp = compose(W1, W2, None, None)
    assert validate_cobordism(comp).ok
    assert comp.target == W2.target
    with pytest.raises(CobordismError):
        compose(W2, W1, None, None)


def test_composite_with_wrong_delta_prime_w_is_rejected():
    W2 = planted(3)
    W1 = identity_cobordism(W2.source)
    assert validate_cobordism(compose(W1, W2, None, None)).ok
    # d(delta'_W) = p for delta'_W = y, which the dual identity does not absorb
    bad = compose(W1, W2, None, [1, 0, 0])
    assert [c.name for c in validate_cobordism(bad).failures()] == ["W* δ′₁ = δ′₂ + d δ′_W"]
