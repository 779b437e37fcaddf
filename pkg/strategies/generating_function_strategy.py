"""
Generating Function Strategy - read f_{i,2j,2k} off

    F(x, y, z) = exp(x J1(z)/2 + y^2 J2(z)/4 + J3(z))
"""

from fractions import Fraction

from algebra.expansion import ChernExpansion
from algebra.scalars import ParamScalar, as_scalar
from algebra.series import XYZ_TABLE, GradedSeries, j_series, series_exp
from utils.logger import get_logger


class GeneratingFunctionStrategy:
    name = 'genfun'

    def __init__(self, verbose=False):
        self.verbose = verbose
        self.logger = get_logger()

    def exponent(self, na, kappa, max_degree):
        """G = x J1/2 + y^2 J2/4 + J3 as a series in x, y, z (weights 1)"""
        x = GradedSeries.variable(XYZ_TABLE, max_degree, 'x')
        y = GradedSeries.variable(XYZ_TABLE, max_degree, 'y')
        j1 = j_series(1, max_degree, XYZ_TABLE, 'z')
        j2 = j_series(2, max_degree, XYZ_TABLE, 'z')
        j3 = specialise(j_series(3, max_degree, XYZ_TABLE, 'z'), na, kappa)
        return x * j1 * Fraction(1, 2) + y * y * j2 * Fraction(1, 4) + j3

    def coefficients(self, na, kappa, max_degree):
        series = series_exp(self.exponent(na, kappa, max_degree))
        self.logger.debug(f"Generating function expanded to {len(series)} terms through degree {max_degree}")
        return ChernExpansion.from_series('chern', series)


def specialise(series, na, kappa):
    """Substitute values (numbers or ParamScalars) for the formal na and ka"""
    na = as_scalar(na)
    kappa = as_scalar(kappa)

    def substitute(coeff):
        out = ParamScalar.zero()
        for (a, b), c in coeff.items():
            out = out + (na ** a) * (kappa ** b) * c
        return out
    return series.map_coefficients(substitute)


def coefficients_by_generating_function(na, kappa, max_degree):
    return GeneratingFunctionStrategy().coefficients(na, kappa, max_degree)
