"""
Rational cohomology of a closed oriented 4-manifold X with b1 = 0, and the
Kunneth algebra H*(B) (x) H*(X) with H*(B) the polynomial algebra on the
mu-classes.

H*(X; Q) lives in degrees 0, 2 and 4 only (b1 = b3 = 0), so every class is
even and no Koszul signs ever occur. The basis of H^2 is beta*_1..beta*_d with
beta*_i . beta*_j = Q_ij PD[x].
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import sympy

from algebra.scalars import ParamScalar, Scalar, as_scalar
from utils.errors import (BadForm, InconsistentTopology, NotUnimodular,
                          UnknownBasis)
from utils.logger import get_logger

SCALAR_TYPES = (int, Fraction, ParamScalar)


def exact_signature(matrix: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalisation"""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    diagonal: List[Fraction] = []
    size = n
    while size:
        pivot = next((i for i in range(size) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(size) for j in range(i + 1, size) if a[i][j] != 0), None)
            if pair is None:
                diagonal.extend([Fraction(0)] * size)
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for k in range(size):
                a[i][k] += a[j][k]
            for k in range(size):
                a[k][i] += a[k][j]
            pivot = i
        # move the pivot to the last slot
        last = size - 1
        a[pivot], a[last] = a[last], a[pivot]
        for row in a:
            row[pivot], row[last] = row[last], row[pivot]
        p = a[last][last]
        for i in range(last):
            factor = a[i][last] / p
            if factor:
                for k in range(size):
                    a[i][k] -= factor * a[last][k]
                for k in range(size):
                    a[k][i] -= factor * a[k][last]
        diagonal.append(p)
        size = last
    return sum(1 for v in diagonal if v > 0) - sum(1 for v in diagonal if v < 0)


class FourManifold:
    """(chi, sigma, Q, P = Q^-1) model of H*(X; Q) for b1(X) = 0"""

    def __init__(self, chi: int, sigma: int, intersection: Sequence[Sequence[int]], name: str = ''):
        rows = [list(row) for row in intersection]
        d = len(rows)
        if any(len(row) != d for row in rows):
            raise BadForm(f"intersection matrix is not square: {rows}")
        for row in rows:
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int):
                    raise BadForm(f"intersection matrix entries must be integers, got {v!r}")
        if any(rows[i][j] != rows[j][i] for i in range(d) for j in range(d)):
            raise BadForm(f"intersection matrix is not symmetric: {rows}")

        if d:
            q = sympy.Matrix(rows)
            det = q.det()
            if abs(det) != 1:
                raise NotUnimodular(f"det Q = {det}, expected +1 or -1")
            inverse = q.inv()
            self.P: Tuple[Tuple[Fraction, ...], ...] = tuple(
                tuple(Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(d))
                for i in range(d)
            )
        else:
            self.P = ()

        if d != chi - 2:
            raise InconsistentTopology(f"b2 = {d} but chi - 2 = {chi - 2} (b1 = b3 = 0)")
        signature = exact_signature(rows)
        if signature != sigma:
            raise InconsistentTopology(f"signature of Q is {signature}, manifest says {sigma}")

        self.chi = int(chi)
        self.sigma = int(sigma)
        self.Q: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in rows)
        self.name = name
        get_logger().debug(f"Accepted manifold {name or '<unnamed>'}: chi={chi}, sigma={sigma}, b2={d}")

    @property
    def b2(self) -> int:
        return len(self.Q)

    def pairing(self, u: Sequence, v: Sequence):
        """u^T Q v"""
        return sum(u[i] * self.Q[i][j] * v[j] for i in range(self.b2) for j in range(self.b2))

    def check_vector(self, vector: Sequence, what: str = 'vector'):
        if len(vector) != self.b2:
            raise UnknownBasis(f"{what} has length {len(vector)}, manifold has b2 = {self.b2}")

    def __eq__(self, other):
        if not isinstance(other, FourManifold):
            return NotImplemented
        return (self.chi, self.sigma, self.Q) == (other.chi, other.sigma, other.Q)

    def __hash__(self):
        return hash((self.chi, self.sigma, self.Q))

    def __repr__(self):
        return f"FourManifold(chi={self.chi}, sigma={self.sigma}, Q={[list(r) for r in self.Q]})"


def manifold_new(chi: int, sigma: int, intersection, name: str = '') -> FourManifold:
    return FourManifold(chi, sigma, intersection, name=name)


# ---------------------------------------------------------------------------
# H*(B): polynomial algebra on mu_1..mu_d (degree 2) and wp = mu(x) (degree 4).
# mu_t and Omega are kept as abstract generators so the closed-form character
# can be written before a manifold is chosen.

_GENERATOR = re.compile(r'^(mu(\d+)|mu_t|Omega|wp)$')


def generator_degree(name: str) -> int:
    match = _GENERATOR.match(name)
    if not match:
        raise UnknownBasis(f"unknown generator {name!r}")
    if name.startswith('mu'):
        if match.group(2) is not None and int(match.group(2)) < 1:
            raise UnknownBasis(f"mu-classes are numbered from 1, got {name!r}")
        return 2
    return 4


def _generator_order(name: str):
    if name == 'mu_t':
        return (0, 0)
    if name == 'Omega':
        return (1, 0)
    if name == 'wp':
        return (3, 0)
    return (2, int(name[2:]))


BaseMonomial = Tuple[Tuple[str, int], ...]


def _monomial_product(m1: BaseMonomial, m2: BaseMonomial) -> BaseMonomial:
    powers = dict(m1)
    for name, e in m2:
        powers[name] = powers.get(name, 0) + e
    return tuple(sorted(powers.items(), key=lambda item: _generator_order(item[0])))


class BaseClass:
    """Sparse polynomial in the mu-classes with ParamScalar coefficients"""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[BaseMonomial, Scalar]] = None):
        clean: Dict[BaseMonomial, ParamScalar] = {}
        for monomial, coeff in (terms or {}).items():
            for name, _ in monomial:
                generator_degree(name)
            monomial = _monomial_product((), tuple((n, e) for n, e in monomial if e))
            coeff = as_scalar(coeff)
            if coeff:
                clean[monomial] = clean.get(monomial, ParamScalar.zero()) + coeff
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def constant(cls, value: Scalar = 1) -> 'BaseClass':
        return cls({(): value})

    @classmethod
    def generator(cls, name: str, power: int = 1) -> 'BaseClass':
        return cls({((name, power),): 1})

    @classmethod
    def mu(cls, index: int) -> 'BaseClass':
        return cls.generator(f"mu{index}")

    @classmethod
    def wp(cls) -> 'BaseClass':
        return cls.generator('wp')

    def one_like(self) -> 'BaseClass':
        return BaseClass.constant(1)

    def zero_like(self) -> 'BaseClass':
        return BaseClass()

    # inspection

    @staticmethod
    def monomial_degree(monomial: BaseMonomial) -> int:
        return sum(generator_degree(name) * e for name, e in monomial)

    def terms(self) -> Iterator[Tuple[BaseMonomial, ParamScalar]]:
        def key(monomial):
            return (self.monomial_degree(monomial),
                    tuple((_generator_order(n), -e) for n, e in monomial))
        for monomial in sorted(self._terms, key=key):
            yield monomial, self._terms[monomial]

    def coefficient(self, monomial: Iterable[Tuple[str, int]] = ()) -> ParamScalar:
        key = _monomial_product((), tuple((n, e) for n, e in monomial if e))
        return self._terms.get(key, ParamScalar.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> Optional[int]:
        degrees = {self.monomial_degree(m) for m in self._terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.monomial_degree(m) == degree for m in self._terms)

    def homogeneous_part(self, degree: int) -> 'BaseClass':
        return BaseClass({m: c for m, c in self._terms.items() if self.monomial_degree(m) == degree})

    def truncated(self, max_degree: int) -> 'BaseClass':
        return BaseClass({m: c for m, c in self._terms.items() if self.monomial_degree(m) <= max_degree})

    def generators(self) -> set:
        return {name for m in self._terms for name, _ in m}

    def map_coefficients(self, func) -> 'BaseClass':
        return BaseClass({m: func(c) for m, c in self._terms.items()})

    # arithmetic

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = BaseClass.constant(other)
        if not isinstance(other, BaseClass):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, ParamScalar.zero()) + c
        return BaseClass(out)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            scalar = as_scalar(other)
            return self.map_coefficients(lambda c: c * scalar)
        if not isinstance(other, BaseClass):
            return NotImplemented
        out: Dict[BaseMonomial, ParamScalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = _monomial_product(m1, m2)
                out[key] = out.get(key, ParamScalar.zero()) + c1 * c2
        return BaseClass(out)

    def __rmul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SCALAR_TYPES):
            other = BaseClass.constant(other)
        if not isinstance(other, BaseClass):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def substitute(self, images: Dict[str, 'BaseClass']) -> 'BaseClass':
        """Replace generators by classes (others stay as they are)"""
        out = BaseClass()
        for monomial, coeff in self._terms.items():
            term = BaseClass.constant(coeff)
            for name, e in monomial:
                image = images.get(name)
                term = term * (image ** e if image is not None else BaseClass.generator(name, e))
            out = out + term
        return out

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for monomial, coeff in self.terms():
            text = '*'.join(n if e == 1 else f"{n}^{e}" for n, e in monomial)
            parts.append(f"({coeff})*{text}" if text else f"({coeff})")
        return ' + '.join(parts)

    def __repr__(self):
        return f"BaseClass({self})"


def mu_t(manifold: FourManifold, lam: Sequence[int]) -> BaseClass:
    """mu(t) = sum_i lambda^i mu_i"""
    manifold.check_vector(lam, 'lambda')
    out = BaseClass()
    for i, coeff in enumerate(lam, start=1):
        out = out + BaseClass.mu(i) * coeff
    return out


def omega_class(manifold: FourManifold) -> BaseClass:
    """Omega = sum_ij P^ij mu_i mu_j"""
    out = BaseClass()
    for i in range(manifold.b2):
        for j in range(manifold.b2):
            if manifold.P[i][j]:
                out = out + BaseClass.mu(i + 1) * BaseClass.mu(j + 1) * manifold.P[i][j]
    return out


def expand_generators(base: BaseClass, manifold: FourManifold, lam: Sequence[int]) -> BaseClass:
    """Rewrite mu_t and Omega in the mu_i, wp basis"""
    return base.substitute({'mu_t': mu_t(manifold, lam), 'Omega': omega_class(manifold)})


# ---------------------------------------------------------------------------
# Classes on X and on B x X, stored by X-degree: unit (0), beta*_j (2), PD[x] (4)

class _XGraded:
    """Shared arithmetic of classes written as unit*1 + sum beta_j*beta*_j + point*PD[x]"""

    _coeff_zero = staticmethod(lambda: None)
    _coeff_type: tuple = ()

    def __init__(self, manifold: FourManifold, unit=None, beta: Optional[Sequence] = None, point=None):
        zero = self._coeff_zero
        if beta is None:
            beta = [zero() for _ in range(manifold.b2)]
        if len(beta) != manifold.b2:
            raise UnknownBasis(f"{len(beta)} H^2 coordinates for a manifold with b2 = {manifold.b2}")
        self.manifold = manifold
        self.unit = self._coerce(unit if unit is not None else zero())
        self.beta = tuple(self._coerce(b) for b in beta)
        self.point = self._coerce(point if point is not None else zero())

    def _coerce(self, value):
        raise NotImplementedError

    def _same(self, unit, beta, point):
        return type(self)(self.manifold, unit, beta, point)

    def _check(self, other):
        if not isinstance(other, type(self)):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.manifold != self.manifold:
            raise UnknownBasis("classes live over different manifolds")

    def components(self):
        """(X-degree, label, coefficient) triples"""
        yield 0, '1', self.unit
        for j, b in enumerate(self.beta, start=1):
            yield 2, f"beta*{j}", b
        yield 4, 'PD[x]', self.point

    def is_zero(self) -> bool:
        return all(_is_zero(c) for _, _, c in self.components())

    def one_like(self):
        return self._same(self._coerce(1), None, None)

    def zero_like(self):
        return self._same(None, None, None)

    def __add__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self._same(self.unit + other, self.beta, self.point)
        self._check(other)
        return self._same(self.unit + other.unit,
                          [a + b for a, b in zip(self.beta, other.beta)],
                          self.point + other.point)

    __radd__ = __add__

    def __neg__(self):
        return self._same(-self.unit, [-b for b in self.beta], -self.point)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SCALAR_TYPES):
            return self._same(self.unit * other, [b * other for b in self.beta], self.point * other)
        if isinstance(other, self._coeff_type) and not isinstance(other, _XGraded):
            return self._same(self.unit * other, [b * other for b in self.beta], self.point * other)
        self._check(other)
        return cup(self, other)

    def __rmul__(self, other):
        if isinstance(other, SCALAR_TYPES) or (isinstance(other, self._coeff_type) and not isinstance(other, _XGraded)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = self.one_like()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return (self.manifold, self.unit, self.beta, self.point) == \
               (other.manifold, other.unit, other.beta, other.point)

    __hash__ = None

    def __repr__(self):
        parts = [f"[{c}] x {label}" for _, label, c in self.components() if not _is_zero(c)]
        return f"{type(self).__name__}({' + '.join(parts) or '0'})"


def _is_zero(value) -> bool:
    if isinstance(value, (ParamScalar, BaseClass)):
        return value.is_zero()
    return value == 0


class CohClassX(_XGraded):
    """Element of H^0 + H^2 + H^4 of X with ParamScalar coordinates"""

    _coeff_zero = staticmethod(ParamScalar.zero)
    _coeff_type = (ParamScalar,)

    def _coerce(self, value):
        return as_scalar(value)

    @classmethod
    def from_h2(cls, manifold: FourManifold, vector: Sequence) -> 'CohClassX':
        manifold.check_vector(vector, 'H^2 vector')
        return cls(manifold, beta=list(vector))

    @classmethod
    def point_class(cls, manifold: FourManifold, value: Scalar = 1) -> 'CohClassX':
        return cls(manifold, point=value)

    def _degrees(self):
        return {deg for deg, _, c in self.components() if not _is_zero(c)}

    def degree(self) -> Optional[int]:
        degrees = self._degrees()
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self, degree: int) -> bool:
        return self._degrees() <= {degree}

    def truncated(self, max_degree: int) -> 'CohClassX':
        return CohClassX(self.manifold,
                         self.unit if max_degree >= 0 else None,
                         self.beta if max_degree >= 2 else None,
                         self.point if max_degree >= 4 else None)

    def evaluate(self) -> ParamScalar:
        """Pairing with the fundamental class [X]"""
        return self.point


class KunnethClass(_XGraded):
    """Element of H*(B) (x) H*(X): a BaseClass per X-basis element"""

    _coeff_zero = staticmethod(BaseClass)
    _coeff_type = (BaseClass,)

    def _coerce(self, value):
        if isinstance(value, BaseClass):
            return value
        return BaseClass.constant(value)

    def _terms(self):
        for x_degree, _, coeff in self.components():
            for monomial, c in coeff.terms():
                yield x_degree + BaseClass.monomial_degree(monomial)

    def degree(self) -> Optional[int]:
        degrees = set(self._terms())
        return degrees.pop() if len(degrees) == 1 else None

    def is_homogeneous(self, degree: int) -> bool:
        return all(d == degree for d in self._terms())

    def truncated(self, max_degree: int) -> 'KunnethClass':
        return KunnethClass(self.manifold,
                            self.unit.truncated(max_degree),
                            [b.truncated(max_degree - 2) for b in self.beta],
                            self.point.truncated(max_degree - 4))

    @classmethod
    def cross(cls, manifold: FourManifold, base: BaseClass, x_class: CohClassX) -> 'KunnethClass':
        """base x x_class"""
        return cls(manifold, base * x_class.unit, [base * b for b in x_class.beta], base * x_class.point)


def cup(a: _XGraded, b: _XGraded, manifold: Optional[FourManifold] = None) -> _XGraded:
    """
    Cup product. beta*_j . beta*_l = Q_jl PD[x]; X-degree above 4 vanishes.
    """
    if manifold is not None and (a.manifold != manifold or b.manifold != manifold):
        raise UnknownBasis("classes live over a different manifold")
    a._check(b)
    m = a.manifold
    unit = a.unit * b.unit
    beta = [a.unit * bb + ab * b.unit for ab, bb in zip(a.beta, b.beta)]
    point = a.unit * b.point + a.point * b.unit
    for j in range(m.b2):
        if _is_zero(a.beta[j]):
            continue
        for l in range(m.b2):
            if m.Q[j][l]:
                point = point + a.beta[j] * b.beta[l] * m.Q[j][l]
    return a._same(unit, beta, point)


SLANT_TARGETS = ('beta', 'point', 'fundamental')


def slant(a: KunnethClass, against: str, manifold: Optional[FourManifold] = None, index: Optional[int] = None) -> BaseClass:
    """
    Contract the X-factor against a homology class of X.

    against='beta' with index k (1-based): b x beta*_j -> Q_jk b
    against='point':                       b x 1 -> b
    against='fundamental':                 b x PD[x] -> b
    """
    m = manifold or a.manifold
    named = re.match(r"^beta_?(\d+)$", against)
    if named:
        against, index = "beta", int(named.group(1))
    if against == 'point':
        return a.unit
    if against == 'fundamental':
        return a.point
    if against == 'beta':
        if index is None or not 1 <= index <= m.b2:
            raise UnknownBasis(f"beta index {index!r} out of range 1..{m.b2}")
        out = BaseClass()
        for j in range(m.b2):
            if m.Q[j][index - 1]:
                out = out + a.beta[j] * m.Q[j][index - 1]
        return out
    raise UnknownBasis(f"cannot slant against {against!r}; expected one of {SLANT_TARGETS}")


def universal_p1(manifold: FourManifold, kappa: Scalar) -> KunnethClass:
    """p1(F(S)) = -4 wp x 1 - 4 sum_ij P^ij mu_i x beta*_j - 4 kappa (1 x PD[x])"""
    d = manifold.b2
    beta = []
    for j in range(d):
        column = BaseClass()
        for i in range(d):
            if manifold.P[i][j]:
                column = column + BaseClass.mu(i + 1) * manifold.P[i][j]
        beta.append(column * -4)
    return KunnethClass(manifold,
                        BaseClass.wp() * -4,
                        beta,
                        BaseClass.constant(as_scalar(kappa) * -4))


def universal_c1(manifold: FourManifold, w: Sequence[int]) -> KunnethClass:
    """c1(E(S)) = 1 x w"""
    manifold.check_vector(w, 'w')
    return KunnethClass(manifold, beta=[BaseClass.constant(v) for v in w])


def point_dual(manifold: FourManifold, value: Scalar = 1) -> KunnethClass:
    """value * (1 x PD[x])"""
    return KunnethClass(manifold, point=BaseClass.constant(value))
