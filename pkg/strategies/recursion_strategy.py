"""
Recursion Strategy - Chern coefficients f_{i,2j,2k} from the Newton recursion

    r f_{i,2j,2k} = sum_{u=1..k}   (-1)^u (na + 2u ka/(2u+1)) f_{i,2j,2k-2u}
                  - sum_{u=1..k+1} (-1)^u u/(2(2u+1))        f_{i,2j-2,2k-2u+2}
                  + sum_{u=0..k}   (-1)^u/2                  f_{i-1,2j,2k-2u}

with r = i + 2j + 2k, f_{0,0,0} = 1 and f = 0 whenever an index is negative.
"""

from fractions import Fraction

from algebra.expansion import ChernExpansion
from algebra.scalars import ParamScalar, as_scalar
from utils.logger import get_logger


class RecursionStrategy:
    name = 'recursion'

    def __init__(self, verbose=False):
        self.verbose = verbose
        self.logger = get_logger()

    def coefficients(self, na, kappa, max_degree):
        """All f_{i,2j,2k} with i + 2j + 2k <= max_degree"""
        na = as_scalar(na)
        kappa = as_scalar(kappa)
        table = {(0, 0, 0): ParamScalar.one()}
        zero = ParamScalar.zero()

        def f(i, j2, k2):
            if i < 0 or j2 < 0 or k2 < 0:
                return zero
            return table.get((i, j2, k2), zero)

        for key in ChernExpansion('chern', 0).keys_through(max_degree):
            i, j2, k2 = key
            r = i + j2 + k2
            if r == 0:
                continue
            k = k2 // 2
            total = ParamScalar.zero()
            for u in range(1, k + 1):
                weight = na + kappa * Fraction(2 * u, 2 * u + 1)
                total = total + weight * ((-1) ** u) * f(i, j2, k2 - 2 * u)
            for u in range(1, k + 2):
                total = total - f(i, j2 - 2, k2 - 2 * u + 2) * Fraction((-1) ** u * u, 2 * (2 * u + 1))
            for u in range(0, k + 1):
                total = total + f(i - 1, j2, k2 - 2 * u) * Fraction((-1) ** u, 2)
            table[key] = total / r

        self.logger.debug(f"Recursion produced {len(table)} coefficients through degree {max_degree}")
        return ChernExpansion('chern', max_degree, table)


def coefficients_by_recursion(na, kappa, max_degree):
    return RecursionStrategy().coefficients(na, kappa, max_degree)
