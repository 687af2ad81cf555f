from fractions import Fraction

import pytest

from webfol.blowup import (
    BOTH_EIGENVALUES_ZERO,
    POSITIVE_RATIONAL_QUOTIENT,
    LocalFoliation,
    SurfaceNumbers,
    ampleness_necessary_check,
    blowup_point,
    canonical_transform,
    reduced_check,
)
from webfol.errors import InputError, ValidationError
from webfol.poly import Polynomial

from helpers import chart_consistency_holds

X, Y = Polynomial.variables(2)
ZERO = Polynomial.zero(2)
ONE = Polynomial.constant(2, 1)


def regular():
    return LocalFoliation(ZERO, ONE)  # dy


def saddle():
    return LocalFoliation(Y, X)  # y dx + x dy


def radial():
    return LocalFoliation(-Y, X)  # x dy - y dx


# -- construction ------------------------------------------------------------------


def test_unsaturated_input_rejected():
    with pytest.raises(ValidationError) as err:
        LocalFoliation(X * Y, X * X)
    assert err.value.code == "unsaturated"
    with pytest.raises(ValidationError):
        LocalFoliation(ZERO, ZERO)


def test_multiplicity():
    assert regular().multiplicity_at_origin() == 0
    assert saddle().multiplicity_at_origin() == 1
    assert radial().multiplicity_at_origin() == 1
    cusp = LocalFoliation(-3 * X * X, 2 * Y)
    assert cusp.multiplicity_at_origin() == 1


# -- blow-ups ----------------------------------------------------------------------


def test_blowup_regular_point():
    result = blowup_point(regular())
    assert result.l == 0
    assert not result.dicritical
    # chart 1 carries t dx + x dt (second variable is t)
    assert result.chart1.a == Y
    assert result.chart1.b == X


def test_blowup_saddle():
    result = blowup_point(saddle())
    assert result.l == 1
    assert not result.dicritical
    assert result.chart1.a == 2 * Y  # 2t dx
    assert result.chart1.b == X  # x dt


def test_blowup_radial_is_dicritical():
    result = blowup_point(radial())
    assert result.l == 2
    assert result.dicritical
    assert result.chart1.a.is_zero
    assert result.chart1.b == ONE  # saturated form dt, transverse to E


def test_blowup_cusp_form():
    # d(y^2 - x^3): -3x^2 dx + 2y dy, multiplicity 1, non-dicritical, l = 1
    cusp = LocalFoliation(-3 * X * X, 2 * Y)
    result = blowup_point(cusp)
    assert result.l == 1
    assert not result.dicritical


def test_l_is_multiplicity_or_one_more_and_dicritical_marks_the_jump():
    for foliation in (regular(), saddle(), radial()):
        result = blowup_point(foliation)
        nu = foliation.multiplicity_at_origin()
        assert result.l in (nu, nu + 1)
        assert (result.l == nu + 1) == result.dicritical


def test_chart_consistency():
    for foliation in (regular(), saddle(), radial(), LocalFoliation(-3 * X * X, 2 * Y)):
        assert chart_consistency_holds(blowup_point(foliation))


def test_saturation_of_charts():
    # charts come back saturated even when the exceptional divisor appears
    for foliation in (regular(), saddle(), radial()):
        result = blowup_point(foliation)
        for chart in (result.chart1, result.chart2):
            LocalFoliation(chart.a, chart.b)  # re-validation succeeds


# -- canonical transport ------------------------------------------------------------


def test_reduced_singularity_preserves_numbers():
    numbers = SurfaceNumbers(1, -3)
    assert canonical_transform(numbers, 1) == numbers


def test_regular_point_drops_both_numbers():
    assert canonical_transform(SurfaceNumbers(1, -3), 0) == SurfaceNumbers(0, -4)
    assert canonical_transform(SurfaceNumbers(5, 2), 0) == SurfaceNumbers(4, 1)


def test_radial_type_transform():
    assert canonical_transform(SurfaceNumbers(1, -3), 2) == SurfaceNumbers(0, -2)


def test_ampleness_necessary_check():
    assert ampleness_necessary_check(SurfaceNumbers(1, -3))
    assert not ampleness_necessary_check(SurfaceNumbers(0, 5))
    assert not ampleness_necessary_check(SurfaceNumbers(-1, 0))


# -- reducedness -------------------------------------------------------------------


def test_saddle_linear_part_is_reduced():
    result = reduced_check([[1, 0], [0, -1]])
    assert result.reduced


def test_radial_linear_part_is_not_reduced():
    result = reduced_check([[1, 0], [0, 1]])
    assert not result.reduced
    assert result.reason == POSITIVE_RATIONAL_QUOTIENT
    assert result.quotient == 1


def test_saddle_node_is_reduced():
    assert reduced_check([[1, 0], [0, 0]]).reduced


def test_nilpotent_is_not_reduced():
    result = reduced_check([[0, 1], [0, 0]])
    assert not result.reduced
    assert result.reason == BOTH_EIGENVALUES_ZERO


def test_rational_ratio_two():
    result = reduced_check([[2, 0], [0, 1]])
    assert not result.reduced
    assert result.quotient == 2


def test_rational_ratio_detected_on_non_diagonal_matrix():
    # eigenvalues 1 and 3 of [[2,1],[1,2]]; quotient 3 is a positive rational
    result = reduced_check([[2, 1], [1, 2]])
    assert not result.reduced
    assert result.quotient == 3


def test_irrational_positive_ratio_is_reduced():
    # eigenvalues 2 +- sqrt(2): ratio positive but irrational
    assert reduced_check([[2, 1], [2, 2]]).reduced


def test_complex_eigenvalues_are_reduced():
    assert reduced_check([[0, -1], [1, 0]]).reduced


def test_negative_rational_ratio_is_reduced():
    assert reduced_check([[1, 0], [0, -2]]).reduced


def test_fractional_quotients():
    result = reduced_check([[Fraction(1, 2), 0], [0, Fraction(1, 3)]])
    assert not result.reduced
    assert result.quotient == Fraction(3, 2)


def test_reduced_check_shape_guard():
    with pytest.raises(InputError):
        reduced_check([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_dual_field_linear_part_feeds_reduced_check():
    assert reduced_check(saddle().dual_field_linear_part()).reduced
    radial_result = reduced_check(radial().dual_field_linear_part())
    assert not radial_result.reduced
    assert radial_result.quotient == 1
