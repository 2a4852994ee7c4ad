import pytest

import triangle_factory as F
from eqfloer.corpus import build
from eqfloer.floer import cohomology, reduced_group
from eqfloer.linalg import GF, QQ, ZZ
from eqfloer.triangle import (
    GradedSpace, ShiftError, TriangleFormatError, TriangleMap, TrianglePresentation,
    check_exact_triangle, check_reduced_sequence, rotate, space_from_cohomology, space_from_reduced,
)

Z8 = (0,) * 8


def one(q):
    d = [0] * 8
    d[q] = 1
    return tuple(d)


def iso_triangle(scale=1):
    """H0 = H1 = F in degree 0, H2 = 0, alpha_0 = scale; shifts (0, 5, 0)."""
    spaces = (GradedSpace(one(0)), GradedSpace(one(0)), GradedSpace(Z8))
    maps = (TriangleMap(0, {0: ((scale,),)}), TriangleMap(5), TriangleMap(0))
    return TrianglePresentation(spaces, maps)


def test_isomorphism_with_zero_third_is_exact():
    rep = check_exact_triangle(iso_triangle())
    assert rep.exact and rep.rank_nullity_ok
    assert rep.total_dim == 2 and rep.total_rank == 1


def test_zero_map_is_not_exact():
    rep = check_exact_triangle(iso_triangle(0))
    assert not rep.exact and not rep.rank_nullity_ok
    # ker alpha_0 at vertex 0 and ker alpha_1 at vertex 1 are both too big
    assert {(c.vertex, c.degree, c.failure) for c in rep.failures()} == {
        (0, 0, "kernel_exceeds_image"), (1, 0, "kernel_exceeds_image")}


def test_characteristic_matters():
    assert check_exact_triangle(iso_triangle(3)).exact
    T = iso_triangle(3)
    assert not check_exact_triangle(TrianglePresentation(T.spaces, T.maps, GF(3))).exact


def test_shift_error_precedes_rank_checks():
    T = iso_triangle()
    bad = TrianglePresentation(T.spaces, (T.maps[0], TriangleMap(4), T.maps[2]))
    with pytest.raises(ShiftError, match="mod 8"):
        check_exact_triangle(bad)


def test_integers_are_refused():
    T = iso_triangle()
    with pytest.raises(ValueError):
        check_exact_triangle(TrianglePresentation(T.spaces, T.maps, ZZ))


def test_block_shape_is_checked():
    with pytest.raises(TriangleFormatError, match="α0"):
        TrianglePresentation((GradedSpace(one(0)), GradedSpace(one(0)), GradedSpace(Z8)),
                             (TriangleMap(0, {0: ((1, 2),)}), TriangleMap(5), TriangleMap(0)))
    with pytest.raises(TriangleFormatError):
        GradedSpace((1, 2))


@pytest.mark.parametrize("seed", range(20))
def test_constructed_triangles_are_exact(seed):
    T, pieces, _ = F.exact_triangle(seed)
    rep = check_exact_triangle(T)
    assert rep.exact and rep.rank_nullity_ok
    assert rep.total_rank == len(pieces)


@pytest.mark.parametrize("seed", range(10))
def test_rotation_preserves_exactness(seed):
    T, _ = F.image_too_small(seed)
    bad = {(c.vertex, c.degree) for c in check_exact_triangle(T).failures()}
    for k in (1, 2):
        moved = {((v - k) % 3, q) for v, q in bad}
        assert {(c.vertex, c.degree) for c in check_exact_triangle(rotate(T, k)).failures()} == moved
    assert rotate(rotate(T, 1), 2) == T


@pytest.mark.parametrize("seed", range(10))
def test_planted_failures_are_located(seed):
    T, where = F.kernel_too_big(seed)
    assert [(c.vertex, c.degree, c.failure) for c in check_exact_triangle(T).failures()] == [
        where + ("kernel_exceeds_image",)]
    T, where = F.nonzero_composite(seed)
    fails = {(c.vertex, c.degree): c.failure for c in check_exact_triangle(T).failures()}
    assert fails[where] == "image_not_in_kernel"
    T, where = F.image_too_small(seed)
    rep = check_exact_triangle(T)
    assert {(c.vertex, c.degree): c.failure for c in rep.failures()}[where] == "kernel_exceeds_image"
    assert not rep.rank_nullity_ok


def test_spaces_from_floer_data():
    P = build("poincare").complex
    H = space_from_cohomology(cohomology(P, QQ), u={0: [[8]]})
    assert H.dims == (1, 0, 0, 0, 1, 0, 0, 0)
    R = space_from_reduced(reduced_group(build("torus_model").complex))
    assert R.u[0] == ((8,),)


def test_reduced_sequence_vacuous_and_identity():
    empty = TrianglePresentation((GradedSpace(Z8, {}),) * 2 + (GradedSpace(Z8),),
                                 (TriangleMap(0), TriangleMap(0), TriangleMap(5)))
    assert check_reduced_sequence(empty).passed
    u = {0: ((8,),), 4: ((8,),)}
    dims = (1, 0, 0, 0, 1, 0, 0, 0)
    T = TrianglePresentation((GradedSpace(dims, u), GradedSpace(dims, u), GradedSpace(Z8)),
                             (TriangleMap(0, {0: ((1,),), 4: ((1,),)}), TriangleMap(5), TriangleMap(0)))
    rep = check_reduced_sequence(T)
    assert rep.passed and rep.u_commutes == {0: True}


def test_reduced_sequence_u_violation_and_bad_shift():
    dims = (1, 0, 0, 0, 1, 0, 0, 0)
    src = GradedSpace(dims, {0: ((8,),), 4: ((8,),)})
    dst = GradedSpace(dims, {0: ((-8,),), 4: ((8,),)})
    maps = (TriangleMap(0, {0: ((1,),), 4: ((1,),)}), TriangleMap(5), TriangleMap(0))
    rep = check_reduced_sequence(TrianglePresentation((src, dst, GradedSpace(Z8)), maps))
    assert rep.u_commutes == {0: False} and not rep.passed
    assert all(c.exact for c in rep.checks)
    shifted = (maps[0], TriangleMap(4), maps[2])
    rep = check_reduced_sequence(TrianglePresentation((src, src, GradedSpace(Z8)), shifted))
    assert not rep.shifts_ok and not rep.passed
