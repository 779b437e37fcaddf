from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.expansion import (ChernExpansion, log_coefficients,
                               newton_from_power_sums, newton_identities,
                               power_sums_from_chern,
                               power_sums_from_chern_table)
from algebra.scalars import ParamScalar
from algebra.series import GradedSeries, j_series
from chern_engine import (ROUTES, DualClassExpansion, ThreeWayVerifier,
                          build_strategies, integrated_power_series,
                          log_chern_parts, log_table_from_series,
                          poincare_dual_class, verify_threeway)
from strategies.generating_function_strategy import (
    GeneratingFunctionStrategy, coefficients_by_generating_function)
from strategies.newton_strategy import coefficients_by_newton
from strategies.recursion_strategy import coefficients_by_recursion
from topology.cohomology import BaseClass
from topology.index_theory import (SpinUStructure, euler_class_sign,
                                   index_character_families,
                                   index_chern_classes)
from utils.errors import IncompleteInput, NonIntegralIndex, PositiveIndex

NA = ParamScalar.na()
KA = ParamScalar.ka()


class FlippedJ2Strategy(GeneratingFunctionStrategy):
    """Generating function with the sign of the y^2 J2/4 term reversed"""

    def exponent(self, na, kappa, max_degree):
        base = super().exponent(na, kappa, max_degree)
        y = GradedSeries.variable(base.variables, max_degree, 'y')
        j2 = j_series(2, max_degree, base.variables, 'z')
        return base - y * y * j2 * Fraction(1, 2)


# the three routes

@pytest.mark.parametrize('route', [coefficients_by_recursion,
                                   coefficients_by_generating_function,
                                   coefficients_by_newton])
def test_low_order_coefficients(route):
    f = route(NA, KA, 3)
    assert f[(0, 0, 0)] == 1
    assert f[(1, 0, 0)] == Fraction(1, 2)
    assert f[(2, 0, 0)] == Fraction(1, 8)
    assert f[(0, 2, 0)] == Fraction(1, 12)
    assert f[(0, 0, 2)] == NA * Fraction(-1, 2) + KA * Fraction(-1, 3)
    assert f[(3, 0, 0)] == Fraction(1, 48)
    assert f[(1, 2, 0)] == Fraction(1, 24)
    assert f[(1, 0, 2)] == NA * Fraction(-1, 4) + KA * Fraction(-1, 6) - Fraction(1, 6)


def test_routes_agree_symbolically():
    tables = {name: strategy.coefficients(NA, KA, 8) for name, strategy in build_strategies().items()}
    assert tables['recursion'] == tables['genfun'] == tables['newton']
    assert tables['recursion'].first_difference(tables['genfun'], 8) is None


def test_symbolic_table_specialises_to_numeric_table():
    symbolic = coefficients_by_recursion(NA, KA, 6)
    for na, kappa in [(0, 0), (-3, 2), (-1, 5)]:
        assert symbolic.evaluate_params(na=na, ka=kappa) == coefficients_by_generating_function(na, kappa, 6)


def test_coefficients_vanish_off_the_grid():
    f = coefficients_by_recursion(-1, 1, 4)
    assert f[(0, 1, 0)] == 0
    assert f[(1, -2, 2)] == 0
    assert all(key[1] % 2 == 0 and key[2] % 2 == 0 for key, _ in f.items())


# Newton's identities

def test_two_root_oracle():
    table = (('a', 1), ('b', 1))
    a = GradedSeries.variable(table, 8, 'a')
    b = GradedSeries.variable(table, 8, 'b')
    power_sums = [a ** n + b ** n for n in range(1, 6)]
    chern = newton_identities(power_sums, a.one_like())
    assert chern[1] == a + b
    assert chern[2] == a * b
    assert all(c.is_zero() for c in chern[3:])
    assert power_sums_from_chern(chern) == power_sums


@st.composite
def power_sum_tables(draw):
    max_degree = draw(st.integers(1, 10))
    keys = ChernExpansion('power_sum', max_degree).keys_through(max_degree)[1:]
    coeffs = draw(st.dictionaries(st.sampled_from(keys),
                                  st.fractions(min_value=-3, max_value=3, max_denominator=5),
                                  max_size=8))
    return ChernExpansion('power_sum', max_degree, coeffs)


@settings(max_examples=100, deadline=None)
@given(power_sum_tables())
def test_newton_roundtrip(q):
    chern = newton_from_power_sums(q, q.max_degree)
    assert chern[(0, 0, 0)] == 1
    assert power_sums_from_chern_table(chern, q.max_degree) == q


def test_graded_piece_keeps_one_degree():
    f = coefficients_by_recursion(-1, 1, 4)
    piece = f.graded_piece(2, order=3)
    assert piece.order == 3
    assert dict(piece.terms()) == f.slice(2)
    assert f.graded_piece(0).constant_term() == 1


def test_newton_needs_enough_power_sums():
    q = ChernExpansion('power_sum', 2, {(1, 0, 0): 1})
    with pytest.raises(IncompleteInput):
        newton_from_power_sums(q, 3)
    with pytest.raises(IncompleteInput):
        newton_from_power_sums(ChernExpansion('chern', 3), 3)


# logarithmic side

def test_log_parts_sum_to_integrated_power_series():
    q = build_strategies()['newton'].power_sums(NA, KA, 8)
    parts = log_chern_parts(NA, KA, 8)
    total = parts['P1'] + parts['P2'] + parts['P31'] + parts['P32']
    assert total == integrated_power_series(q, 8)
    assert log_table_from_series(total) == log_coefficients(q)


def test_log_part_leading_terms():
    parts = log_chern_parts(NA, KA, 4)
    assert parts['P1'].coefficient(t=1, x=1) == Fraction(1, 2)
    assert parts['P2'].coefficient(t=2, y=2) == Fraction(1, 12)
    assert parts['P31'].coefficient(t=2, z=2) == NA * Fraction(-1, 2)
    assert parts['P32'].coefficient(t=2, z=2) == KA * Fraction(-1, 3)


def test_log_table_is_the_exponent():
    q = build_strategies()['newton'].power_sums(NA, KA, 6)
    exponent = GeneratingFunctionStrategy().exponent(NA, KA, 6)
    assert log_coefficients(q) == ChernExpansion.from_series('log', exponent)


# Poincare dual

def test_dual_for_index_zero():
    dual = poincare_dual_class((0, KA))
    assert dual.degree == 1
    assert dual.sign == -1
    assert dict(dual.items()) == {(1, 0, 0): Fraction(-1, 2)}
    assert dual.as_base_class() == BaseClass.generator('mu_t') * Fraction(-1, 2)


def test_dual_for_index_minus_one():
    dual = poincare_dual_class((-1, KA))
    assert dual.sign == 1
    assert dual[(2, 0, 0)] == Fraction(1, 8)
    assert dual[(0, 2, 0)] == Fraction(1, 12)
    assert dual[(0, 0, 2)] == Fraction(1, 2) - KA * Fraction(1, 3)
    assert dual[(1, 0, 0)] == 0


@pytest.mark.parametrize('method', ROUTES)
def test_dual_is_route_independent(method):
    reference = poincare_dual_class((-3, 2))
    assert poincare_dual_class((-3, 2), method=method) == reference


def test_dual_on_s2xs2(s2xs2):
    s = SpinUStructure(s2xs2, (0, 0), 1)
    dual = poincare_dual_class(s)
    assert isinstance(dual, DualClassExpansion)
    expanded = dual.expand(s2xs2, s.lam)
    assert expanded == BaseClass.mu(1) * BaseClass.mu(2) * Fraction(1, 6) + BaseClass.wp() * Fraction(1, 6)


def test_positive_index_rejected():
    with pytest.raises(PositiveIndex):
        poincare_dual_class((1, 0))


@pytest.mark.parametrize('na', [Fraction(-1, 2), Fraction(1, 3), NA])
def test_non_integral_index_rejected(na):
    with pytest.raises(NonIntegralIndex):
        poincare_dual_class((na, 0))


def test_integral_fraction_index_is_accepted():
    assert poincare_dual_class((Fraction(-2, 2), KA)) == poincare_dual_class((-1, KA))


# verification

def test_numeric_sweep_verifies():
    report = verify_threeway(max_degree=10, symbolic=False,
                             na_values=range(-4, 1), kappa_values=range(0, 5))
    assert report.verified
    assert len(report.points) == 25
    assert report.discrepancies == 0
    assert report.first_discrepancy() is None


def test_symbolic_verification_through_degree_12():
    report = verify_threeway(max_degree=12, symbolic=True)
    assert report.mode == 'symbolic'
    assert report.verified


def test_parameter_order():
    verifier = ThreeWayVerifier(symbolic=False, na_values=[-1, 0, -2], kappa_values=[3, 1])
    points = [(int(na.constant()), int(ka.constant())) for na, ka in verifier.parameter_points()]
    assert points == [(0, 1), (0, 3), (-1, 1), (-1, 3), (-2, 1), (-2, 3)]


def test_verifier_rejects_empty_order():
    with pytest.raises(ValueError):
        ThreeWayVerifier(max_degree=0)


@pytest.mark.asyncio
async def test_async_verify_with_pipeline(s2xs2):
    structure = SpinUStructure(s2xs2, (1, 2), 1)
    verifier = ThreeWayVerifier(max_degree=4, symbolic=False, na_values=[0, -1],
                                kappa_values=[1], max_concurrent=2)
    report = await verifier.verify(pipeline_structures=[structure])
    assert report.verified
    assert [int(p.na.constant()) for p in report.points] == [0, -1]
    assert report.pipeline[0]['equal']
    assert report.pipeline[0]['first_degree'] is None


def test_fault_injection_is_detected():
    report = verify_threeway(max_degree=4, symbolic=True,
                             strategies={'genfun': FlippedJ2Strategy()})
    assert not report.verified
    first = report.first_discrepancy()
    assert first.discrepancy == (0, 2, 0)
    assert first.values['recursion'] == Fraction(1, 12)
    assert first.values['genfun'] == Fraction(-1, 12)
    assert first.values['newton'] == Fraction(1, 12)
    assert first.log_discrepancy == (0, 2, 0)


def test_top_chern_class_of_index_bundle_is_the_dual(s2xs2):
    s = SpinUStructure(s2xs2, (0, 0), 1)
    degree = 1 - s.na
    classes = index_chern_classes(index_character_families(s, degree))
    assert classes[degree] * euler_class_sign(s.na) == poincare_dual_class(s).expand(s2xs2, s.lam)
