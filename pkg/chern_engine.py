"""
Chern engine - Poincare dual of the degeneracy locus and three-way certification

Runs the recursion, generating-function and Newton strategies side by side and
checks that their coefficient tables agree exactly.
"""

import asyncio
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.expansion import (ChernExpansion, Triple, log_coefficients,
                               triple_sort_key)
from algebra.scalars import ParamScalar, as_scalar
from algebra.series import GradedSeries, series_integrate
from strategies.generating_function_strategy import GeneratingFunctionStrategy
from strategies.newton_strategy import NewtonStrategy
from strategies.recursion_strategy import RecursionStrategy
from topology.cohomology import BaseClass, FourManifold, expand_generators
from topology.index_theory import (SpinUStructure, euler_class_sign,
                                   index_character_closed_form,
                                   index_character_families)
from utils.errors import NonIntegralIndex, PositiveIndex
from utils.logger import get_logger

ROUTES = ('recursion', 'genfun', 'newton')

TXYZ_TABLE = (('t', 1), ('x', 1), ('y', 1), ('z', 1))


def build_strategies(verbose=False):
    return {
        'recursion': RecursionStrategy(verbose=verbose),
        'genfun': GeneratingFunctionStrategy(verbose=verbose),
        'newton': NewtonStrategy(verbose=verbose),
    }


# ---------------------------------------------------------------------------
# Poincare dual

@dataclass(frozen=True)
class DualClassExpansion:
    """(-1)^(1-na) times the degree-(1-na) slice of the Chern table"""

    na: int
    kappa: ParamScalar
    sign: int
    coeffs: Dict[Triple, ParamScalar] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return 1 - self.na

    def items(self):
        for key in sorted(self.coeffs, key=triple_sort_key):
            yield key, self.coeffs[key]

    def __getitem__(self, key: Triple) -> ParamScalar:
        return self.coeffs.get(tuple(key), ParamScalar.zero())

    def as_base_class(self) -> BaseClass:
        """sum f mu(t)^i Omega^j wp^k in the abstract generators"""
        out = BaseClass()
        for (i, j2, k2), coeff in self.items():
            out = out + (BaseClass.generator('mu_t') ** i
                         * BaseClass.generator('Omega') ** (j2 // 2)
                         * BaseClass.wp() ** (k2 // 2)) * coeff
        return out

    def expand(self, manifold: FourManifold, lam: Sequence[int]) -> BaseClass:
        """The class in the mu_i, wp basis of a concrete manifold"""
        return expand_generators(self.as_base_class(), manifold, lam)


def poincare_dual_class(source, method: str = 'recursion', verbose=False) -> DualClassExpansion:
    """
    Dual of the degeneracy locus; source is a SpinUStructure or an (na, kappa)
    pair with integer na and numeric or symbolic kappa.
    """
    if isinstance(source, SpinUStructure):
        na, kappa = source.na, source.kappa
    else:
        na, kappa = source
    na_value = as_scalar(na)
    if not na_value.is_constant() or na_value.constant().denominator != 1:
        raise NonIntegralIndex(f"the dual class needs an integer na, got na = {na_value}")
    na = int(na_value.constant())
    if na > 0:
        raise PositiveIndex(f"degeneracy locus needs na <= 0, got na = {na}")
    degree = 1 - na
    table = build_strategies(verbose)[method].coefficients(na, kappa, degree)
    sign = euler_class_sign(na)
    coeffs = {key: coeff * sign for key, coeff in table.slice(degree).items()}
    return DualClassExpansion(na=na, kappa=as_scalar(kappa), sign=sign, coeffs=coeffs)


# ---------------------------------------------------------------------------
# Logarithmic side: P(t) = int Q(-t) dt

def integrated_power_series(q: ChernExpansion, max_degree: int) -> GradedSeries:
    """int Q(-t) dt with Q(t) = sum_r q_r t^(r-1), as a series in t, x, y, z"""
    q_of_minus_t = {}
    for (i, j2, k2), coeff in q.items():
        r = i + j2 + k2
        if 1 <= r <= max_degree:
            q_of_minus_t[(r - 1, i, j2, k2)] = coeff * ((-1) ** (r - 1))
    return series_integrate(GradedSeries(TXYZ_TABLE, 2 * max_degree, q_of_minus_t), 't')


def log_table_from_series(p: GradedSeries) -> ChernExpansion:
    """m_{i,2j,2k} = coefficient of t^r x^i y^2j z^2k with r = i + 2j + 2k"""
    coeffs = {}
    for (e_t, i, j2, k2), coeff in p.terms():
        if e_t == i + j2 + k2:
            coeffs[(i, j2, k2)] = coeff
    return ChernExpansion('log', p.order // 2, coeffs)


def log_chern_parts(na, kappa, max_degree: int) -> Dict[str, GradedSeries]:
    """The pieces P1, P2, P31, P32 of int Q(-t) dt, each from its own coefficient formula"""
    na = as_scalar(na)
    kappa = as_scalar(kappa)
    order = 2 * max_degree
    parts = {name: {} for name in ('P1', 'P2', 'P31', 'P32')}
    k = 0
    while 2 * k + 1 <= max_degree:
        parts['P1'][(2 * k + 1, 1, 0, 2 * k)] = Fraction((-1) ** k, 2 * (2 * k + 1))
        k += 1
    k = 1
    while 2 * k <= max_degree:
        parts['P2'][(2 * k, 0, 2, 2 * k - 2)] = Fraction((-1) ** (k + 1), 4 * (2 * k + 1))
        parts['P31'][(2 * k, 0, 0, 2 * k)] = na * Fraction((-1) ** k, 2 * k)
        parts['P32'][(2 * k, 0, 0, 2 * k)] = kappa * Fraction((-1) ** k, 2 * k + 1)
        k += 1
    return {name: GradedSeries(TXYZ_TABLE, order, coeffs) for name, coeffs in parts.items()}


# ---------------------------------------------------------------------------
# Three-way verification

@dataclass
class PointResult:
    na: ParamScalar
    kappa: ParamScalar
    equal: bool
    log_equal: bool
    discrepancy: Optional[Triple] = None
    values: Dict[str, ParamScalar] = field(default_factory=dict)
    log_discrepancy: Optional[Triple] = None

    @property
    def verified(self) -> bool:
        return self.equal and self.log_equal


@dataclass
class VerificationReport:
    mode: str
    max_degree: int
    points: List[PointResult]
    duration: float = 0.0
    pipeline: List[dict] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(p.verified for p in self.points) and all(c['equal'] for c in self.pipeline)

    @property
    def discrepancies(self) -> int:
        return sum(1 for p in self.points if not p.verified) + sum(1 for c in self.pipeline if not c['equal'])

    def first_discrepancy(self) -> Optional[PointResult]:
        return next((p for p in self.points if not p.verified), None)


class ThreeWayVerifier:
    def __init__(self, max_degree=12, symbolic=True, na_values=(), kappa_values=(),
                 max_concurrent=4, strategies=None, verbose=False):
        if max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        self.max_degree = max_degree
        self.symbolic = symbolic
        self.na_values = list(na_values)
        self.kappa_values = list(kappa_values)
        self.max_concurrent = max_concurrent
        self.verbose = verbose
        self.logger = get_logger()

        self.strategies = build_strategies(verbose)
        if strategies:
            self.strategies.update(strategies)

    def parameter_points(self) -> List[Tuple[ParamScalar, ParamScalar]]:
        if self.symbolic:
            return [(ParamScalar.na(), ParamScalar.ka())]
        return [(as_scalar(na), as_scalar(ka))
                for na in sorted(self.na_values, reverse=True)
                for ka in sorted(self.kappa_values)]

    async def verify(self, pipeline_structures: Sequence[SpinUStructure] = ()) -> VerificationReport:
        """Check every parameter point concurrently, report in parameter order"""
        start = time.time()
        points = self.parameter_points()
        semaphore = asyncio.Semaphore(self.max_concurrent)
        self.logger.info(f"🔄 Verifying {len(points)} parameter point(s) through degree {self.max_degree}...")

        async def run(index, point):
            async with semaphore:
                result = await asyncio.to_thread(self.check_point, *point)
                return index, result

        async def run_pipeline(index, structure):
            async with semaphore:
                result = await asyncio.to_thread(self.check_pipeline, structure)
                return index, result

        results = await asyncio.gather(*(run(i, p) for i, p in enumerate(points)))
        pipeline = await asyncio.gather(*(run_pipeline(i, s) for i, s in enumerate(pipeline_structures)))

        report = VerificationReport(
            mode='symbolic' if self.symbolic else 'numeric',
            max_degree=self.max_degree,
            points=[r for _, r in sorted(results, key=lambda item: item[0])],
            pipeline=[r for _, r in sorted(pipeline, key=lambda item: item[0])],
            duration=time.time() - start,
        )
        if report.verified:
            self.logger.info(f"✅ All routes agree ({len(report.points)} point(s))")
        else:
            self.logger.warning(f"❌ {report.discrepancies} discrepancy(ies) found")
        return report

    def check_point(self, na, kappa) -> PointResult:
        tables = {name: self.strategies[name].coefficients(na, kappa, self.max_degree) for name in ROUTES}
        reference = tables['recursion']
        discrepancy = None
        for key in reference.keys_through(self.max_degree):
            if any(tables[name][key] != reference[key] for name in ROUTES[1:]):
                discrepancy = key
                break
        values = {name: tables[name][discrepancy] for name in ROUTES} if discrepancy else {}
        if discrepancy:
            self.logger.warning(f"Routes disagree at {discrepancy} for na={na}, ka={kappa}: "
                                + ', '.join(f"{n}={v}" for n, v in values.items()))

        log_discrepancy = self.check_log_side(na, kappa)
        return PointResult(na=na, kappa=kappa, equal=discrepancy is None,
                           log_equal=log_discrepancy is None, discrepancy=discrepancy,
                           values=values, log_discrepancy=log_discrepancy)

    def check_log_side(self, na, kappa) -> Optional[Triple]:
        """int Q(-t) dt against the m-formula, the exponent G, and P1 + P2 + P31 + P32"""
        q = self.strategies['newton'].power_sums(na, kappa, self.max_degree)
        integrated = integrated_power_series(q, self.max_degree)
        from_integral = log_table_from_series(integrated)
        from_formula = log_coefficients(q)
        exponent = self.strategies['genfun'].exponent(na, kappa, self.max_degree)
        from_exponent = ChernExpansion.from_series('log', exponent)

        parts = log_chern_parts(na, kappa, self.max_degree)
        from_split = log_table_from_series(parts['P1'] + parts['P2'] + parts['P31'] + parts['P32'])

        for key in from_integral.keys_through(self.max_degree):
            expected = from_integral[key]
            if not (expected == from_formula[key] == from_exponent[key] == from_split[key]):
                self.logger.warning(f"Log coefficients disagree at {key}")
                return key
        return None

    def check_pipeline(self, structure: SpinUStructure) -> dict:
        """Families route against the closed form for one concrete spin-u structure"""
        families = index_character_families(structure, self.max_degree)
        closed = index_character_closed_form(structure, self.max_degree).expanded()
        first = next((k for k in range(self.max_degree + 1) if families[k] != closed[k]), None)
        return {'lam': list(structure.lam), 'kappa': structure.kappa, 'w': list(structure.w),
                'na': structure.na, 'equal': first is None, 'first_degree': first}


def verify_threeway(max_degree=12, symbolic=True, na_values=(), kappa_values=(),
                    max_concurrent=4, strategies=None, pipeline_structures=(), verbose=False) -> VerificationReport:
    verifier = ThreeWayVerifier(max_degree=max_degree, symbolic=symbolic, na_values=na_values,
                                kappa_values=kappa_values, max_concurrent=max_concurrent,
                                strategies=strategies, verbose=verbose)
    return asyncio.run(verifier.verify(pipeline_structures))
