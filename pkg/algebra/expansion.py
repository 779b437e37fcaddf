"""
Coefficient tables indexed by (i, 2j, 2k) and Newton's identities.

A table entry f[(i, 2j, 2k)] is the coefficient of mu(t)^i Omega^j wp^k, which
is also the coefficient of x^i y^2j z^2k in the generating function F(x, y, z).
The total degree of the triple is r = i + 2j + 2k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from algebra.scalars import ParamScalar, as_scalar
from algebra.series import XYZ_TABLE, GradedSeries
from utils.errors import IncompleteInput

Triple = Tuple[int, int, int]

ROLES = ('chern', 'power_sum', 'log')


def triple_degree(key: Triple) -> int:
    return sum(key)


def triple_sort_key(key: Triple):
    """Graded-lex: total degree ascending, then (i, 2j) descending"""
    i, j2, k2 = key
    return (i + j2 + k2, -i, -j2)


@dataclass(frozen=True)
class ChernExpansion:
    """Map (i, 2j, 2k) -> ParamScalar, tagged chern / power_sum / log"""

    role: str
    max_degree: int
    coeffs: Dict[Triple, ParamScalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        clean = {}
        for key, coeff in self.coeffs.items():
            i, j2, k2 = key
            if min(key) < 0 or j2 % 2 or k2 % 2:
                raise ValueError(f"bad index triple {key!r}")
            coeff = as_scalar(coeff)
            if coeff and triple_degree(key) <= self.max_degree:
                clean[tuple(key)] = coeff
        object.__setattr__(self, 'coeffs', clean)

    def __getitem__(self, key: Triple) -> ParamScalar:
        """Missing, negative or odd-parity triples read as zero"""
        return self.coeffs.get(tuple(key), ParamScalar.zero())

    def items(self) -> Iterator[Tuple[Triple, ParamScalar]]:
        for key in sorted(self.coeffs, key=triple_sort_key):
            yield key, self.coeffs[key]

    def keys_through(self, degree: int) -> List[Triple]:
        """Every admissible triple of total degree <= degree, graded-lex"""
        keys = []
        for r in range(degree + 1):
            for i in range(r, -1, -1):
                rest = r - i
                if rest % 2:
                    continue
                for j2 in range(rest, -1, -2):
                    keys.append((i, j2, rest - j2))
        return keys

    def slice(self, degree: int) -> Dict[Triple, ParamScalar]:
        return {key: c for key, c in self.items() if triple_degree(key) == degree}

    def evaluate_params(self, na=None, ka=None) -> 'ChernExpansion':
        return ChernExpansion(self.role, self.max_degree,
                              {k: c.evaluate(na=na, ka=ka) for k, c in self.coeffs.items()})

    @classmethod
    def from_series(cls, role: str, series: GradedSeries) -> 'ChernExpansion':
        if series.variables != XYZ_TABLE:
            raise ValueError(f"expected variables {XYZ_TABLE}, got {series.variables}")
        return cls(role, series.order, {exps: c for exps, c in series.terms()})

    def graded_piece(self, degree: int, order: Optional[int] = None) -> GradedSeries:
        """The homogeneous class of degree r as a polynomial in x, y, z"""
        return GradedSeries(XYZ_TABLE, self.max_degree if order is None else order,
                            {k: c for k, c in self.coeffs.items() if triple_degree(k) == degree})

    def first_difference(self, other: 'ChernExpansion', degree: int):
        """First triple (graded-lex) through degree where the tables differ, or None"""
        for key in self.keys_through(degree):
            if self[key] != other[key]:
                return key
        return None


def newton_identities(power_sums: Sequence, one) -> List:
    """
    c_0..c_n from q_1..q_n via  c_n = -(1/n) sum_{i=1..n} (-1)^i q_i c_{n-i}.

    Works over any commutative ring whose elements support +, * and scaling
    by Fraction; power_sums[r-1] is q_r.
    """
    chern = [one]
    for n in range(1, len(power_sums) + 1):
        total = None
        for i in range(1, n + 1):
            term = power_sums[i - 1] * chern[n - i] * ((-1) ** i)
            total = term if total is None else total + term
        chern.append(total * Fraction(-1, n))
    return chern


def power_sums_from_chern(chern: Sequence) -> List:
    """
    Inverse of newton_identities:
        q_n = (-1)^(n+1) (n c_n + sum_{i=1..n-1} (-1)^i q_i c_{n-i}).
    chern[0] must be the unit; returns [q_1, ..., q_n].
    """
    power_sums: List = []
    for n in range(1, len(chern)):
        total = chern[n] * n
        for i in range(1, n):
            total = total + power_sums[i - 1] * chern[n - i] * ((-1) ** i)
        power_sums.append(total * ((-1) ** (n + 1)))
    return power_sums


def newton_from_power_sums(q: ChernExpansion, max_degree: int) -> ChernExpansion:
    """Chern table from a power-sum table, degree by degree"""
    if q.role != 'power_sum':
        raise IncompleteInput(f"expected a power_sum table, got role {q.role!r}")
    if q.max_degree < max_degree:
        raise IncompleteInput(f"power sums known through degree {q.max_degree}, need {max_degree}")
    pieces = [q.graded_piece(r, max_degree) for r in range(1, max_degree + 1)]
    chern = newton_identities(pieces, GradedSeries.constant(XYZ_TABLE, max_degree, 1))
    total = GradedSeries.zero(XYZ_TABLE, max_degree)
    for piece in chern:
        total = total + piece
    return ChernExpansion.from_series('chern', total)


def power_sums_from_chern_table(c: ChernExpansion, max_degree: int) -> ChernExpansion:
    """Inverse transform: power-sum table from a Chern table"""
    if c.max_degree < max_degree:
        raise IncompleteInput(f"Chern classes known through degree {c.max_degree}, need {max_degree}")
    pieces = [c.graded_piece(r, max_degree) for r in range(max_degree + 1)]
    total = GradedSeries.zero(XYZ_TABLE, max_degree)
    for piece in power_sums_from_chern(pieces):
        total = total + piece
    return ChernExpansion.from_series('power_sum', total)


def log_coefficients(q: ChernExpansion) -> ChernExpansion:
    """m_{i,2j,2k} = (-1)^(r-1) q_{i,2j,2k} / r, the coefficients of P(t) = int Q(-t) dt"""
    return ChernExpansion('log', q.max_degree, {
        key: coeff * Fraction((-1) ** (triple_degree(key) - 1), triple_degree(key))
        for key, coeff in q.coeffs.items() if triple_degree(key) > 0
    })
