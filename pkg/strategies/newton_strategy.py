"""
Newton Strategy - Chern coefficients from the closed-form index character

ch(D) -> q_r = r! ch_r in the mu(t), Omega, wp basis -> Newton's identities.
"""

from algebra.expansion import newton_from_power_sums
from topology.index_theory import index_character_closed_form, power_sum_classes
from utils.logger import get_logger


class NewtonStrategy:
    name = 'newton'

    def __init__(self, verbose=False):
        self.verbose = verbose
        self.logger = get_logger()

    def power_sums(self, na, kappa, max_degree):
        character = index_character_closed_form((na, kappa), max_degree)
        return power_sum_classes(character)

    def coefficients(self, na, kappa, max_degree):
        q = self.power_sums(na, kappa, max_degree)
        table = newton_from_power_sums(q, max_degree)
        self.logger.debug(f"Newton route: {len(q.coeffs)} power-sum coefficients -> {len(table.coeffs)} Chern coefficients")
        return table


def coefficients_by_newton(na, kappa, max_degree):
    return NewtonStrategy().coefficients(na, kappa, max_degree)
