import warnings
from fractions import Fraction

import pytest

from eqfloer.complex import (
    ADMISSIBLE, HOMOLOGY_SPHERE, InvalidComplexError, build_complex, direct_sum, relabel,
    reverse_orientation,
)
from eqfloer.corpus import Profile, build, random_valid
from eqfloer.floer import (
    UMapUndefinedError, cohomology, delta_functional, delta_tower, euler_and_casson, h_invariant,
    nilpotency_index, periodicity_report, reduced_group, u_on_cohomology,
)
from eqfloer.linalg import GF, QQ, ZZ

P = build("poincare").complex


def test_poincare_cohomology_over_z():
    H = cohomology(P, ZZ)
    assert H.ranks == (1, 0, 0, 0, 1, 0, 0, 0)
    assert all(t == () for t in H.torsion)
    assert H.euler_characteristic == 2


def test_poincare_u_and_delta():
    u = u_on_cohomology(P, ZZ, 0)
    assert u.kind == "total" and u.matrix == ((8,),)
    assert delta_functional(P, ZZ) == [1]
    T = delta_tower(P, QQ)
    assert T.delta[:2] == ((1,), (8,))
    assert T.delta_dims == (1, 1)
    assert T.delta_prime_zero


def test_poincare_invariants():
    hr = h_invariant(P)
    assert hr.h == 1 and hr.agree and hr.warnings == ()
    assert euler_and_casson(P) == (2, Fraction(-1))
    assert reduced_group(P).dims == (0,) * 8
    assert nilpotency_index(P) == 0


def test_h_over_integers_uses_rationals():
    assert h_invariant(P, ZZ).h == 1


def test_torsion_block():
    C = build("torsion_block").complex
    H = cohomology(C, ZZ)
    assert H.ranks == (0,) * 8
    assert H.torsion[3] == (2,)
    assert cohomology(C, QQ).dims == (0,) * 8
    assert cohomology(C, GF(3)).dims == (0,) * 8


def test_characteristic_dependence():
    # dx = 3y vanishes mod 3
    C = build_complex(HOMOLOGY_SPHERE, [("x", 2), ("y", 3)], d={("x", "y"): 3})
    assert cohomology(C, GF(3)).dims == (0, 0, 1, 1, 0, 0, 0, 0)
    assert cohomology(C, GF(5)).dims == (0,) * 8
    assert cohomology(C, ZZ).torsion[3] == (3,)


def test_cohomology_class_coordinates():
    C = build_complex(HOMOLOGY_SPHERE, [("x", 0), ("y", 1), ("z", 1)], d={("x", "y"): 1, ("x", "z"): 1})
    H1 = cohomology(C, QQ)[1]
    assert H1.dim == 1
    # dx = y + z, so [y] = -[z]
    assert H1.coordinates([0, 1, 0]) == [-c for c in H1.coordinates([0, 0, 1])]
    assert H1.coordinates([0, 1, 1]) == [0]
    with pytest.raises(ValueError):
        H1.coordinates([1, 0, 0])


def test_integer_torsion_coordinates_reduce():
    C = build("torsion_block").complex
    H3 = cohomology(C, ZZ)[3]
    y = [0, 1]
    assert H3.coordinates([0, 3]) == H3.coordinates(y)
    assert H3.coordinates([0, 2]) == [0]


def test_invalid_complex_is_refused():
    C = build_complex(HOMOLOGY_SPHERE, [("x", 0), ("y", 1), ("z", 2)], d={("x", "y"): 1, ("y", "z"): 1})
    with pytest.raises(InvalidComplexError):
        cohomology(C)


def test_partial_u_rules_for_spheres():
    with pytest.raises(UMapUndefinedError):
        u_on_cohomology(P, QQ, 4, partial=False)
    u4 = u_on_cohomology(P, QQ, 4)
    # ker delta_0 on HF^4 is zero
    assert u4.kind == "kernel" and u4.domain_basis == ()
    R = reverse_orientation(P)
    u5 = u_on_cohomology(R, QQ, 5)
    assert u5.kind == "quotient"
    # HF^1 of the reverse is spanned by delta'_0, so the quotient is zero
    assert u5.codomain_basis == ()
    with pytest.raises(ValueError):
        u_on_cohomology(R, ZZ, 5)


def test_u_total_on_admissible():
    T = build("torus_model").complex
    assert u_on_cohomology(T, QQ, 4, partial=False).matrix == ((8,),)


def test_reversed_poincare():
    R = reverse_orientation(P)
    hr = h_invariant(R)
    assert hr.h == -1 and hr.agree
    assert euler_and_casson(R) == (-2, Fraction(1))
    T = delta_tower(R)
    assert T.delta_zero and T.delta_prime[:2] == ((1,), (-8,))


def test_towers_need_a_field_and_a_sphere():
    with pytest.raises(ValueError):
        delta_tower(P, ZZ)
    with pytest.raises(ValueError):
        delta_tower(build("torus_model").complex)


def test_direct_sum_of_two_poincare_blocks():
    # delta_n of the sum is the pair (delta_n, delta_n): both towers span one line,
    # so Z^0 and Z^4 are one-dimensional and h = (4 - 2)/2 = 1
    C = random_valid(0, Profile(blocks=("poincare", "poincare"))).complex
    hr = h_invariant(C)
    assert (hr.h, hr.chi_hf, hr.chi_reduced, hr.via_b4, hr.via_hchar) == (1, 4, 2, 1, 1)
    assert reduced_group(C).dims == (1, 0, 0, 0, 1, 0, 0, 0)


def test_odd_defect_warns():
    C = build_complex(HOMOLOGY_SPHERE, [("y", 0), ("p", 1), ("a", 4)], d={("y", "p"): 1},
                      v={("a", "y"): -2}, delta={"a": 1}, delta_prime={"p": 1})
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        hr = h_invariant(C)
    assert hr.h == Fraction(1, 2)
    assert any("not an integer" in str(x.message) for x in w)


def test_nilpotency_indices():
    assert nilpotency_index(build("torus_model").complex) == 1
    assert nilpotency_index(build("jordan_block").complex) == 2
    assert nilpotency_index(build("s3").complex) == 0


def test_nilpotency_none_when_not_nilpotent():
    C = build_complex(ADMISSIBLE, [("a", 0), ("b", 4)], v={("a", "b"): 1, ("b", "a"): 1})
    assert nilpotency_index(C) is None


def test_torus_reduced_group_is_hf():
    T = build("torus_model").complex
    red = reduced_group(T)
    assert red.dims == cohomology(T).dims
    assert red.u[0] == ((8,),) and red.u[4] == ((8,),)


def test_periodicity():
    rep = periodicity_report(P)
    assert rep.passed
    C = random_valid(4, Profile(blocks=("torus1", "acyclic_block"))).complex
    assert periodicity_report(C).passed


@pytest.mark.parametrize("ring", [QQ, GF(3), GF(5)])
def test_random_complexes_match_predictions(ring):
    for seed in range(60):
        r = random_valid(seed)
        assert cohomology(r.complex, ring).dims == r.expected_hf_dims
        assert reduced_group(r.complex, ring).dims == r.expected_reduced_dims
        hr = h_invariant(r.complex, ring)
        assert hr.agree and hr.h == r.expected_h


def test_integer_ranks_match_rational_dims():
    for seed in range(30):
        C = random_valid(seed).complex
        assert cohomology(C, ZZ).ranks == cohomology(C, QQ).dims


def test_direct_sums_of_random_pairs():
    # cohomology and chi always add; towers, reduced groups and h add as long as
    # the two summands do not both carry a nonzero tower on the same side
    for seed in range(25):
        A = relabel(random_valid(2 * seed).complex, "l_")
        B = relabel(random_valid(2 * seed + 1).complex, "r_")
        S = direct_sum(A, B)
        assert cohomology(S).dims == tuple(x + y for x, y in zip(cohomology(A).dims, cohomology(B).dims))
        assert euler_and_casson(S)[0] == euler_and_casson(A)[0] + euler_and_casson(B)[0]
        ta, tb, ts = delta_tower(A), delta_tower(B), delta_tower(S)
        clash = (not ta.delta_zero and not tb.delta_zero) or (
            not ta.delta_prime_zero and not tb.delta_prime_zero)
        if clash:
            continue
        assert ts.delta_dims == tuple(x + y for x, y in zip(ta.delta_dims, tb.delta_dims))
        assert ts.delta_prime_dims == tuple(x + y for x, y in zip(ta.delta_prime_dims, tb.delta_prime_dims))
        assert reduced_group(S).dims == tuple(
            x + y for x, y in zip(reduced_group(A).dims, reduced_group(B).dims))
        assert h_invariant(S).h == h_invariant(A).h + h_invariant(B).h
