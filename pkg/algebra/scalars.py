"""
Exact scalars: rationals and polynomials in the two formal parameters na, ka.

ExactRational is ``fractions.Fraction`` (always reduced, positive denominator).
ParamScalar is a sparse polynomial in na (the Dirac index) and ka (kappa) with
Fraction coefficients. It degenerates to a constant in numeric mode, so the
same series code serves both modes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Tuple, Union

ExactRational = Fraction

PARAM_NAMES = ('na', 'ka')

Exponent = Tuple[int, int]
Scalar = Union[int, Fraction, 'ParamScalar']


def format_fraction(value) -> str:
    """Canonical "p/q" text, "p" when q == 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fraction_json(value) -> dict:
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator}


class ParamScalar:
    """Polynomial in (na, ka) with exact rational coefficients"""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                if len(exps) != 2 or min(exps) < 0:
                    raise ValueError(f"bad parameter exponent {exps!r}")
                clean[tuple(exps)] = coeff
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def const(cls, value) -> 'ParamScalar':
        if isinstance(value, ParamScalar):
            return value
        return cls({(0, 0): Fraction(value)})

    @classmethod
    def na(cls) -> 'ParamScalar':
        return cls({(1, 0): 1})

    @classmethod
    def ka(cls) -> 'ParamScalar':
        return cls({(0, 1): 1})

    @classmethod
    def zero(cls) -> 'ParamScalar':
        return cls()

    @classmethod
    def one(cls) -> 'ParamScalar':
        return cls.const(1)

    @staticmethod
    def coerce(value) -> 'ParamScalar':
        if isinstance(value, ParamScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return ParamScalar.const(value)
        raise TypeError(f"cannot use {type(value).__name__} as a scalar")

    # inspection

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Terms in ascending total degree, na-heavy first within a degree"""
        for exps in sorted(self._terms, key=lambda e: (e[0] + e[1], -e[0])):
            yield exps, self._terms[exps]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(exps == (0, 0) for exps in self._terms)

    def constant(self) -> Fraction:
        """Value of a constant scalar; raises if na or ka occur"""
        if not self.is_constant():
            raise ValueError(f"{self} depends on na/ka")
        return self._terms.get((0, 0), Fraction(0))

    def degree(self, param: str) -> int:
        idx = PARAM_NAMES.index(param)
        return max((exps[idx] for exps in self._terms), default=0)

    def evaluate(self, na=None, ka=None) -> 'ParamScalar':
        """Substitute numeric values for any of the parameters"""
        out: Dict[Exponent, Fraction] = {}
        for (a, b), coeff in self._terms.items():
            factor = coeff
            if na is not None:
                factor *= Fraction(na) ** a
                a = 0
            if ka is not None:
                factor *= Fraction(ka) ** b
                b = 0
            out[(a, b)] = out.get((a, b), 0) + factor
        return ParamScalar(out)

    # arithmetic

    def __add__(self, other):
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, 0) + coeff
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ParamScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ParamScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamScalar({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, ParamScalar):
            return NotImplemented
        out: Dict[Exponent, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return ParamScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ParamScalar):
            other = other.constant()
        other = Fraction(other)
        return ParamScalar({e: c / other for e, c in self._terms.items()})

    def __pow__(self, n: int):
        out = ParamScalar.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamScalar.const(other)
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # output

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for exps, coeff in self.items():
            monomial = '·'.join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(PARAM_NAMES, exps) if e
            )
            magnitude = abs(coeff)
            if not monomial:
                body = format_fraction(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{format_fraction(magnitude)}·{monomial}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return ''.join(parts)

    def __repr__(self):
        return f"ParamScalar({self})"

    def to_json(self):
        """Constants as {num, den}; polynomials as a list of terms"""
        if self.is_constant():
            return fraction_json(self.constant())
        return [
            {'na': a, 'ka': b, **fraction_json(coeff)}
            for (a, b), coeff in self.items()
        ]


def as_scalar(value: Scalar) -> ParamScalar:
    return ParamScalar.coerce(value)
