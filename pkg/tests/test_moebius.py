import random
from fractions import Fraction as F

import pytest

from intlegendre.exactpoly import Poly, X
from intlegendre.moebius import (
    DegenerateMap,
    MoebiusMap,
    build_r_family,
    build_transformed_system,
    change_of_variables_residual,
    gram_matrix,
    induced_endpoints,
    induced_weight,
    minimality_check,
    reference_inner_product,
    transformed_orthogonality,
    weight_identity_gap,
)
from intlegendre.verdict import Verdict

IDENTITY = MoebiusMap(1, 0, 0, 1)
SHIFT = MoebiusMap(1, 1, 0, 1)  # x + 1
SCALE = MoebiusMap(2, 0, 0, F(1, 2))  # 4x
GENERIC = MoebiusMap(2, 1, 1, 1)
GENERIC2 = MoebiusMap(3, 1, 2, 1)
ALL_MAPS = (IDENTITY, SHIFT, SCALE, GENERIC, GENERIC2)


def test_reference_family_values():
    fam = build_r_family(4)
    assert fam.poly(0) == Poly((1,))
    assert fam.poly(1) == X
    assert fam.poly(2) == Poly((F(-1, 5), 0, 1))
    assert fam.poly(3) == Poly((0, F(-3, 7), 0, 1))


def test_reference_family_orthogonal_and_monic():
    fam = build_r_family(8)
    for n in range(9):
        assert fam.poly(n).coeffs[-1] == 1
        assert fam.poly(n).degree == n
        for m in range(n):
            assert reference_inner_product(fam.poly(n), fam.poly(m)) == 0


def test_determinant_enforced():
    with pytest.raises(DegenerateMap):
        MoebiusMap(1, 1, 1, 1)
    with pytest.raises(TypeError):
        MoebiusMap(1.0, 0, 0, 1)


def test_endpoints_examples():
    e = induced_endpoints(IDENTITY)
    assert (e.a, e.b) == (-1, 1)
    e = induced_endpoints(SHIFT)
    assert (e.a, e.b) == (-2, 0)
    assert e.stated_a == 0  # the stated lower expression misses f(a) = -1
    e = induced_endpoints(SCALE)
    assert (e.a, e.b) == (F(-1, 4), F(1, 4))


def test_endpoints_satisfy_defining_equations():
    for m in ALL_MAPS:
        e = induced_endpoints(m)
        assert m.at(e.a) == -1
        assert m.at(e.b) == 1
        assert e.stated_b == e.b


def test_stated_lower_endpoint_fails_defining_equation():
    e = induced_endpoints(SHIFT)
    assert SHIFT.at(e.stated_a) != -1


def test_degenerate_endpoints():
    with pytest.raises(DegenerateMap):
        induced_endpoints(MoebiusMap(1, 0, 1, 1))  # lam == mu


def test_induced_weight_examples():
    w = induced_weight(IDENTITY)
    assert w.numerator == Poly((1, 0, -1))
    assert w.denominator == Poly((1,))
    w = induced_weight(SHIFT)
    assert w.numerator == Poly((0, -2, -1))  # -x(x+2)
    w = induced_weight(SCALE)
    assert w.at_float(0.0) == pytest.approx(4.0)
    assert w.at_float(0.1) == pytest.approx((1 - 16 * 0.01) * 4)


def test_weight_identity_exact():
    rng = random.Random(31337)
    maps = list(ALL_MAPS)
    for _ in range(10):
        lam = F(rng.randint(1, 5))
        mu = F(rng.randint(-2, 2))
        alpha = F(rng.randint(-2, 2), rng.randint(1, 3))
        beta = (1 + mu * alpha) / lam
        maps.append(MoebiusMap(lam, alpha, mu, beta))
    for m in maps:
        assert weight_identity_gap(m).is_zero()


def test_weight_vanishes_at_induced_endpoints():
    for m in ALL_MAPS:
        e = induced_endpoints(m)
        w = induced_weight(m)
        assert w.numerator.at(e.a) == 0
        assert w.numerator.at(e.b) == 0


def test_system_rejects_bad_maps():
    with pytest.raises(DegenerateMap):
        build_transformed_system(MoebiusMap(0, -1, 1, 0), 4)  # endpoints out of order


def test_transformed_orthogonality_examples():
    sys_id = build_transformed_system(IDENTITY, 4)
    check = transformed_orthogonality(sys_id, 1, 2, tol=1e-13)
    assert check.passed
    sys_shift = build_transformed_system(SHIFT, 4)
    assert transformed_orthogonality(sys_shift, 1, 2, tol=1e-12).passed
    sys_scale = build_transformed_system(SCALE, 4)
    assert transformed_orthogonality(sys_scale, 2, 3, tol=1e-12).passed
    with pytest.raises(ValueError):
        transformed_orthogonality(sys_id, 2, 2)


def test_gram_matrices_nearly_diagonal():
    for m in ALL_MAPS:
        system = build_transformed_system(m, 5)
        matrix, worst = gram_matrix(system, 6)
        assert worst < 1e-11
        for n in range(6):
            assert matrix[n][n] > 0


def test_change_of_variables_consistency():
    for m in ALL_MAPS:
        system = build_transformed_system(m, 5)
        for n in range(6):
            for k in range(n, 6):
                assert change_of_variables_residual(system, n, k) < 1e-11


def test_minimality():
    assert minimality_check(build_transformed_system(IDENTITY, 4), 2) is Verdict.CONFIRMED
    assert minimality_check(build_transformed_system(SHIFT, 4), 2) is Verdict.CONFIRMED
    assert minimality_check(build_transformed_system(SCALE, 4), 3) is Verdict.CONFIRMED


def test_minimality_perturbation_grows_quadratically():
    # under the identity map the objective increase is exactly eps^2 |r_j|^2
    system = build_transformed_system(IDENTITY, 4)
    fam = system.family
    base = float(reference_inner_product(fam.poly(2), fam.poly(2)))
    perturbed = fam.poly(2) + fam.poly(0).scale(F(1, 4))
    grown = float(reference_inner_product(perturbed, perturbed))
    expected = base + float(reference_inner_product(fam.poly(0), fam.poly(0))) / 16
    assert grown == pytest.approx(expected, rel=1e-12)


def test_map_pole():
    assert IDENTITY.pole is None
    assert GENERIC.pole == -1
    assert GENERIC.pole < induced_endpoints(GENERIC).a
