"""
Truncated multivariate graded formal power series with exact coefficients.

A GradedSeries has a fixed variable table ((name, weight), ...) and a
truncation order N; every stored monomial has weighted degree <= N.
Coefficients are ParamScalar, so n_a and kappa may stay symbolic.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from algebra.scalars import ParamScalar, Scalar, as_scalar
from utils.errors import IncompatibleSeries, NonNilpotentArgument, UnknownVariable

Variables = Tuple[Tuple[str, int], ...]
Monomial = Tuple[int, ...]

Z_TABLE: Variables = (('z', 1),)
XYZ_TABLE: Variables = (('x', 1), ('y', 1), ('z', 1))


class GradedSeries:
    """Immutable truncated series; arithmetic only between identical tables and orders"""

    __slots__ = ('variables', 'order', '_coeffs')

    def __init__(self, variables: Iterable[Tuple[str, int]], order: int, coeffs=None):
        variables = tuple((str(name), int(weight)) for name, weight in variables)
        if any(weight <= 0 for _, weight in variables):
            raise ValueError("variable weights must be positive")
        if len({name for name, _ in variables}) != len(variables):
            raise ValueError("duplicate variable name")
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.variables: Variables = variables
        self.order = int(order)
        clean: Dict[Monomial, ParamScalar] = {}
        for exps, coeff in (coeffs or {}).items():
            exps = tuple(exps)
            if len(exps) != len(variables) or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent {exps!r} for {len(variables)} variables")
            coeff = as_scalar(coeff)
            if coeff and self._weighted(exps) <= self.order:
                clean[exps] = clean.get(exps, ParamScalar.zero()) + coeff
        self._coeffs = {e: c for e, c in clean.items() if c}

    # constructors

    @classmethod
    def zero(cls, variables, order) -> 'GradedSeries':
        return cls(variables, order)

    @classmethod
    def constant(cls, variables, order, value: Scalar = 1) -> 'GradedSeries':
        return cls(variables, order, {(0,) * len(tuple(variables)): value})

    @classmethod
    def variable(cls, variables, order, name: str) -> 'GradedSeries':
        variables = tuple(variables)
        return cls(variables, order, {_unit_exponent(variables, name): 1})

    # inspection

    def _weighted(self, exps: Sequence[int]) -> int:
        return sum(e * w for e, (_, w) in zip(exps, self.variables))

    def terms(self) -> Iterator[Tuple[Monomial, ParamScalar]]:
        """Graded-lexicographic: degree ascending, exponent tuple descending"""
        for exps in sorted(self._coeffs, key=lambda e: (self._weighted(e), tuple(-x for x in e))):
            yield exps, self._coeffs[exps]

    def coefficient(self, *exps: int, **named: int) -> ParamScalar:
        if named:
            key = [0] * len(self.variables)
            for name, power in named.items():
                key[_index_of(self.variables, name)] = power
            exps = tuple(key)
        return self._coeffs.get(tuple(exps), ParamScalar.zero())

    def constant_term(self) -> ParamScalar:
        return self.coefficient(*(0,) * len(self.variables))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def homogeneous_part(self, degree: int) -> 'GradedSeries':
        return GradedSeries(self.variables, self.order,
                            {e: c for e, c in self._coeffs.items() if self._weighted(e) == degree})

    def degree(self) -> Optional[int]:
        """Common weighted degree of all terms, None if empty or inhomogeneous"""
        degrees = {self._weighted(e) for e in self._coeffs}
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self, degree: int) -> bool:
        return all(self._weighted(e) == degree for e in self._coeffs)

    def truncated(self, max_degree: int) -> 'GradedSeries':
        """Drop terms above max_degree but keep the table's order"""
        return GradedSeries(self.variables, self.order,
                            {e: c for e, c in self._coeffs.items() if self._weighted(e) <= max_degree})

    def one_like(self) -> 'GradedSeries':
        return GradedSeries.constant(self.variables, self.order, 1)

    def zero_like(self) -> 'GradedSeries':
        return GradedSeries.zero(self.variables, self.order)

    def map_coefficients(self, func) -> 'GradedSeries':
        return GradedSeries(self.variables, self.order, {e: func(c) for e, c in self._coeffs.items()})

    def evaluate_params(self, na=None, ka=None) -> 'GradedSeries':
        return self.map_coefficients(lambda c: c.evaluate(na=na, ka=ka))

    # arithmetic

    def _check(self, other: 'GradedSeries'):
        if not isinstance(other, GradedSeries):
            raise IncompatibleSeries(f"cannot combine a series with {type(other).__name__}")
        if other.variables != self.variables or other.order != self.order:
            raise IncompatibleSeries(
                f"variable tables {self.variables}/{other.variables} "
                f"or orders {self.order}/{other.order} differ"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            other = GradedSeries.constant(self.variables, self.order, other)
        self._check(other)
        out = dict(self._coeffs)
        for exps, coeff in other._coeffs.items():
            out[exps] = out.get(exps, ParamScalar.zero()) + coeff
        return GradedSeries(self.variables, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            other = GradedSeries.constant(self.variables, self.order, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            scalar = as_scalar(other)
            return self.map_coefficients(lambda c: c * scalar)
        self._check(other)
        out: Dict[Monomial, ParamScalar] = {}
        for e1, c1 in self._coeffs.items():
            d1 = self._weighted(e1)
            for e2, c2 in other._coeffs.items():
                if d1 + self._weighted(e2) > self.order:
                    continue
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, ParamScalar.zero()) + c1 * c2
        return GradedSeries(self.variables, self.order, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            return self * other
        return NotImplemented

    def __truediv__(self, scalar):
        if isinstance(scalar, GradedSeries):
            raise TypeError("series division is not provided")
        return self.map_coefficients(lambda c: c / scalar)

    def __pow__(self, n: int):
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamScalar)):
            other = GradedSeries.constant(self.variables, self.order, other)
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.variables, self.order, self._coeffs) == (other.variables, other.order, other._coeffs)

    __hash__ = None

    def derivative(self, var: str) -> 'GradedSeries':
        idx = _index_of(self.variables, var)
        out = {}
        for exps, coeff in self._coeffs.items():
            if exps[idx]:
                key = list(exps)
                key[idx] -= 1
                out[tuple(key)] = coeff * exps[idx]
        return GradedSeries(self.variables, self.order, out)

    def __repr__(self):
        return f"GradedSeries({format_series(self)}, order={self.order})"


def _index_of(variables: Variables, name: str) -> int:
    for idx, (var, _) in enumerate(variables):
        if var == name:
            return idx
    raise UnknownVariable(f"variable {name!r} not in {[v for v, _ in variables]}")


def _unit_exponent(variables: Variables, name: str) -> Monomial:
    exps = [0] * len(variables)
    exps[_index_of(variables, name)] = 1
    return tuple(exps)


def format_series(series: GradedSeries) -> str:
    if series.is_zero():
        return '0'
    parts = []
    for exps, coeff in series.terms():
        monomial = '*'.join(
            name if e == 1 else f"{name}^{e}"
            for (name, _), e in zip(series.variables, exps) if e
        )
        parts.append(f"({coeff})*{monomial}" if monomial else f"({coeff})")
    return ' + '.join(parts)


def series_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b


def _require_nilpotent(u: GradedSeries, what: str):
    if not u.constant_term().is_zero():
        raise NonNilpotentArgument(f"{what} needs a series without constant term, got {u.constant_term()}")


def _powers(u: GradedSeries) -> Iterator[Tuple[int, GradedSeries]]:
    """(k, u^k) for k >= 1 until truncation kills the power"""
    power = u
    k = 1
    while not power.is_zero():
        yield k, power
        power = power * u
        k += 1


def series_exp(u: GradedSeries) -> GradedSeries:
    """exp(u) = sum u^k/k! for u without constant term"""
    _require_nilpotent(u, 'exp')
    out = u.one_like()
    for k, power in _powers(u):
        out = out + power * Fraction(1, factorial(k))
    return out


def series_log1p(u: GradedSeries) -> GradedSeries:
    """log(1+u) = sum (-1)^(k+1) u^k/k for u without constant term"""
    _require_nilpotent(u, 'log1p')
    out = u.zero_like()
    for k, power in _powers(u):
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def series_integrate(q: GradedSeries, var: str) -> GradedSeries:
    """Antiderivative in var with zero constant of integration"""
    idx = _index_of(q.variables, var)
    out = {}
    for exps, coeff in q.terms():
        key = list(exps)
        key[idx] += 1
        out[tuple(key)] = coeff / (exps[idx] + 1)
    return GradedSeries(q.variables, q.order, out)


def arctan_quotient(order: int, variables: Variables = Z_TABLE, var: str = 'z') -> GradedSeries:
    """z^-1 arctan(z) = sum (-1)^k z^2k/(2k+1)"""
    idx = _index_of(variables, var)
    weight = variables[idx][1]
    coeffs = {}
    k = 0
    while 2 * k * weight <= order:
        exps = [0] * len(variables)
        exps[idx] = 2 * k
        coeffs[tuple(exps)] = Fraction((-1) ** k, 2 * k + 1)
        k += 1
    return GradedSeries(variables, order, coeffs)


def j_series(which: int, order: int, variables: Variables = Z_TABLE, var: str = 'z') -> GradedSeries:
    """
    The three even series in z whose combination exponentiates to the
    Chern-class generating function:

        J1 = z^-1 atan(z)
        J2 = z^-3 (z - atan(z))
        J3 = -na/2 log(1+z^2) + ka (z^-1 atan(z) - 1)

    J1 and J2 come straight from their coefficient formulas (no series
    division); J3 is symbolic in na and ka.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    variables = tuple(variables)
    idx = _index_of(variables, var)
    weight = variables[idx][1]

    if which == 1:
        return arctan_quotient(order, variables, var)

    if which == 2:
        coeffs = {}
        k = 1
        while (2 * k - 2) * weight <= order:
            exps = [0] * len(variables)
            exps[idx] = 2 * k - 2
            coeffs[tuple(exps)] = Fraction((-1) ** (k + 1), 2 * k + 1)
            k += 1
        return GradedSeries(variables, order, coeffs)

    if which == 3:
        z = GradedSeries.variable(variables, order, var)
        log_part = series_log1p(z * z) * (ParamScalar.na() * Fraction(-1, 2))
        atan_part = (arctan_quotient(order, variables, var) - 1) * ParamScalar.ka()
        return log_part + atan_part

    raise ValueError(f"unknown J-series {which!r}; expected 1, 2 or 3")
