"""
Index and dimension formulas for spin-u structures, and the two routes to the
Chern character of the index bundle D of the twisted Dirac family:

  * families: Atiyah-Singer evaluated inside the Kunneth algebra,
        ch(D) = -(e^{c1(W+)/2} ch(E(S)) (1 - p1(X)/24)) / [X]
  * closed form:
        ch_2k   = -((-1)^k/(2k)!) ((na + 2k ka/(2k+1)) wp^k - k/(2(2k+1)) Omega wp^(k-1))
        ch_2k+1 = ((-1)^k / (2 (2k+1)!)) mu(t) wp^k

kappa is -p1(t)/4 throughout, so na = (-4 ka + Lambda^2 - sigma)/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple, Union

import sympy

from algebra.expansion import ChernExpansion, newton_identities
from algebra.scalars import ParamScalar, Scalar, as_scalar
from topology.cohomology import (BaseClass, CohClassX, FourManifold, KunnethClass,
                                 expand_generators, point_dual, slant,
                                 universal_c1, universal_p1)
from utils.errors import (BasisMismatch, DegreeMismatch, NonIntegralIndex,
                          PositiveIndex)
from utils.logger import get_logger

ABSTRACT_GENERATORS = frozenset({'mu_t', 'Omega', 'wp'})


@dataclass(frozen=True)
class SpinUStructure:
    """Characteristic data (Lambda = c1(t), kappa = -p1(t)/4, w) of a spin-u structure"""

    manifold: FourManifold
    lam: Tuple[int, ...]
    kappa: int
    w: Tuple[int, ...] = ()
    na: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'lam', tuple(int(v) for v in self.lam))
        object.__setattr__(self, 'w', tuple(int(v) for v in (self.w or (0,) * self.manifold.b2)))
        self.manifold.check_vector(self.lam, 'lambda')
        self.manifold.check_vector(self.w, 'w')
        object.__setattr__(self, 'na', dirac_index(self))

    def with_lift(self, w: Sequence[int]) -> 'SpinUStructure':
        return SpinUStructure(self.manifold, self.lam, self.kappa, tuple(w))


def dirac_index(s: SpinUStructure) -> int:
    """na(t) = (p1(t) + c1(t)^2 - sigma)/4 = (-4 ka + lambda^T Q lambda - sigma)/4"""
    lam = CohClassX.from_h2(s.manifold, s.lam)
    lam_squared = (lam * lam).evaluate().constant()
    value = Fraction(-4 * s.kappa + lam_squared - s.manifold.sigma, 4)
    if value.denominator != 1:
        raise NonIntegralIndex(
            f"Dirac index (-4*{s.kappa} + {lam_squared} - {s.manifold.sigma})/4 = {value} is not an integer"
        )
    return int(value)


def asd_dimension(manifold: FourManifold, kappa: int) -> int:
    """d(ka) = 8 ka - 3(chi + sigma)/2"""
    value = 8 * Fraction(kappa) - Fraction(3 * (manifold.chi + manifold.sigma), 2)
    return int(value)


def normal_bundle_rank(s: SpinUStructure) -> int:
    """Complex rank of Hom(Ker, Coker) along the locus: kernel 1, cokernel 1 - na"""
    return 1 - s.na


def euler_class_sign(na: int) -> int:
    return -1 if (1 - na) % 2 else 1


@dataclass(frozen=True)
class LocusDimensions:
    codim: int
    dim: int
    asd_dimension: int
    normal_rank: int
    vacuous: bool


def degeneracy_dimensions(s: SpinUStructure) -> LocusDimensions:
    """Real codimension 2(1 - na) and dimension d(ka) - 2(1 - na) of the degeneracy locus"""
    if s.na > 0:
        raise PositiveIndex(f"degeneracy locus needs na <= 0, got na = {s.na}")
    d = asd_dimension(s.manifold, s.kappa)
    codim = 2 * (1 - s.na)
    dims = LocusDimensions(codim=codim, dim=d - codim, asd_dimension=d,
                           normal_rank=normal_bundle_rank(s), vacuous=d - codim < 0)
    if dims.vacuous:
        get_logger().warning(f"⚠️  Degeneracy locus has formal dimension {dims.dim} < 0 (vacuous)")
    return dims


# ---------------------------------------------------------------------------
# Rank-two Chern character

def exp_truncated(element, max_degree: int, element_degree: int):
    """e^element for a homogeneous class of positive degree, dropping degrees above max_degree"""
    out = element.one_like()
    power = element.one_like()
    m = 1
    while m * element_degree <= max_degree:
        power = (power * element).truncated(max_degree)
        out = out + power * Fraction(1, factorial(m))
        m += 1
    return out


def rank2_chern_character(c1, p1, max_degree: int):
    """
    ch(E) = 2 e^{c1/2} sum_n p1^n / (4^n (2n)!) for a rank-two bundle, through
    real degree max_degree. c1 and p1 may live in any of the even commutative
    algebras (CohClassX, BaseClass, KunnethClass, GradedSeries).
    """
    if not c1.is_homogeneous(2):
        raise DegreeMismatch(f"c1 must have degree 2, got {c1!r}")
    if not p1.is_homogeneous(4):
        raise DegreeMismatch(f"p1 must have degree 4, got {p1!r}")

    cosh = p1.one_like()
    power = p1.one_like()
    n = 1
    while 4 * n <= max_degree:
        power = (power * p1).truncated(max_degree)
        cosh = cosh + power * Fraction(1, 4 ** n * factorial(2 * n))
        n += 1

    twist = exp_truncated(c1 * Fraction(1, 2), max_degree, 2)
    return ((twist * cosh).truncated(max_degree)) * 2


# ---------------------------------------------------------------------------
# Index characters

@dataclass(frozen=True)
class IndexCharacter:
    """ch_0 .. ch_r of the index bundle; ch_k has base degree 2k"""

    classes: Tuple[BaseClass, ...]
    route: str = ''
    manifold: Optional[FourManifold] = None
    lam: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'classes', tuple(self.classes))
        for k, ch in enumerate(self.classes):
            if not ch.is_homogeneous(2 * k):
                raise DegreeMismatch(f"ch_{k} is not of degree {2 * k}: {ch}")

    @property
    def max_degree(self) -> int:
        return len(self.classes) - 1

    def __getitem__(self, k: int) -> BaseClass:
        return self.classes[k]

    def __len__(self):
        return len(self.classes)

    def is_abstract(self) -> bool:
        """True when only mu(t), Omega and wp occur"""
        return all(ch.generators() <= ABSTRACT_GENERATORS for ch in self.classes)

    def expanded(self) -> 'IndexCharacter':
        """Same character in the mu_i, wp basis of the attached manifold"""
        if self.manifold is None or self.lam is None:
            raise BasisMismatch("no manifold attached; cannot expand mu(t) and Omega")
        return IndexCharacter(
            tuple(expand_generators(ch, self.manifold, self.lam) for ch in self.classes),
            route=self.route, manifold=self.manifold, lam=self.lam,
        )


def index_character_families(s: SpinUStructure, max_degree: int) -> IndexCharacter:
    """Atiyah-Singer for the family, computed in H*(B) (x) H*(X) and slanted against [X]"""
    logger = get_logger()
    m = s.manifold
    bound = 2 * max_degree + 4

    ch_bundle = rank2_chern_character(universal_c1(m, s.w), universal_p1(m, s.kappa), bound)
    # c1(W+) = Lambda - w so that the two exponentials combine to e^{Lambda/2}
    spin_c1 = universal_c1(m, [l - w for l, w in zip(s.lam, s.w)])
    twist = exp_truncated(spin_c1 * Fraction(1, 2), bound, 2)
    # <p1(X), [X]> = 3 sigma, so 1 - p1(X)/24 = 1 - (sigma/8) PD[x]
    a_hat = KunnethClass(m, unit=BaseClass.constant(1)) - point_dual(m, Fraction(m.sigma, 8))

    integrand = ((twist * ch_bundle).truncated(bound) * a_hat).truncated(bound)
    pushed = -slant(integrand, 'fundamental')
    classes = tuple(pushed.homogeneous_part(2 * k) for k in range(max_degree + 1))
    logger.debug(f"Families route: na={s.na}, ka={s.kappa}, {max_degree + 1} classes")
    return IndexCharacter(classes, route='families', manifold=m, lam=s.lam)


def closed_form_class(k: int, na: Scalar, kappa: Scalar) -> BaseClass:
    """ch_k from the closed formula, in the abstract mu(t), Omega, wp generators"""
    na = as_scalar(na)
    kappa = as_scalar(kappa)
    wp = BaseClass.wp()
    if k % 2 == 0:
        n = k // 2
        sign = Fraction((-1) ** n, factorial(2 * n))
        out = wp ** n * (na + kappa * Fraction(2 * n, 2 * n + 1))
        if n >= 1:
            out = out - BaseClass.generator('Omega') * wp ** (n - 1) * Fraction(n, 2 * (2 * n + 1))
        return -(out * sign)
    n = (k - 1) // 2
    return BaseClass.generator('mu_t') * wp ** n * Fraction((-1) ** n, 2 * factorial(2 * n + 1))


def index_character_closed_form(source: Union[SpinUStructure, Tuple[Scalar, Scalar]], max_degree: int) -> IndexCharacter:
    """ch(D) from the closed formula; source is a SpinUStructure or a symbolic (na, ka) pair"""
    if isinstance(source, SpinUStructure):
        na, kappa = source.na, source.kappa
        manifold, lam = source.manifold, source.lam
    else:
        na, kappa = source
        manifold, lam = None, None
    classes = tuple(closed_form_class(k, na, kappa) for k in range(max_degree + 1))
    return IndexCharacter(classes, route='closed_form', manifold=manifold, lam=lam)


def _abstract_monomial(i: int, j: int, k: int) -> BaseClass:
    return (BaseClass.generator('mu_t') ** i
            * BaseClass.generator('Omega') ** j
            * BaseClass.wp() ** k)


def _rewrite_abstract(target: BaseClass, degree: int, manifold: FourManifold, lam) -> dict:
    """
    Coefficients c_(i,2j,2k) with sum c mu(t)^i Omega^j wp^k = target in the
    mu_i, wp basis. Solved exactly per (na, ka) monomial; free directions are
    set to zero. Raises BasisMismatch when no solution exists.
    """
    keys = [(i, j2, degree - i - j2)
            for i in range(degree, -1, -1)
            for j2 in range(degree - i - (degree - i) % 2, -1, -2)
            if (degree - i) % 2 == 0]
    images = [expand_generators(_abstract_monomial(i, j2 // 2, k2 // 2), manifold, lam)
              for i, j2, k2 in keys]
    monomials = sorted({m for image in images for m, _ in image.terms()} |
                       {m for m, _ in target.terms()})
    matrix = sympy.Matrix([
        [_to_sympy(image.coefficient(m).constant()) for image in images]
        for m in monomials
    ]) if monomials else sympy.zeros(0, len(keys))

    param_exps = sorted({e for _, c in target.terms() for e in c.terms})
    solution = {key: ParamScalar.zero() for key in keys}
    for exps in param_exps:
        rhs = sympy.Matrix([_to_sympy(target.coefficient(m).terms.get(exps, 0)) for m in monomials])
        try:
            values, free = matrix.gauss_jordan_solve(rhs)
        except ValueError as exc:
            raise BasisMismatch(f"degree-{degree} class {target} is not a combination of mu(t), Omega, wp") from exc
        values = values.subs({p: 0 for p in free})
        for key, value in zip(keys, values):
            value = Fraction(int(value.p), int(value.q))
            if value:
                solution[key] = solution[key] + ParamScalar({exps: value})
    return solution


def _to_sympy(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def power_sum_classes(character: IndexCharacter) -> ChernExpansion:
    """q_r = r! ch_r, read off in the mu(t), Omega, wp basis"""
    coeffs = {}
    for r, ch in enumerate(character.classes):
        if r == 0:
            continue
        q = ch * factorial(r)
        if ch.generators() <= ABSTRACT_GENERATORS:
            for monomial, coeff in q.terms():
                powers = dict(monomial)
                key = (powers.get('mu_t', 0), 2 * powers.get('Omega', 0), 2 * powers.get('wp', 0))
                coeffs[key] = coeff
        elif character.manifold is not None and character.lam is not None \
                and not (ch.generators() & {'mu_t', 'Omega'}):
            coeffs.update(_rewrite_abstract(q, r, character.manifold, character.lam))
        else:
            raise BasisMismatch(f"ch_{r} mixes bases or has no manifold attached: {ch}")
    return ChernExpansion('power_sum', character.max_degree, coeffs)


def index_chern_classes(character: IndexCharacter) -> List[BaseClass]:
    """c_0 .. c_r of the index bundle from q_r = r! ch_r by Newton's identities"""
    power_sums = [character[r] * factorial(r) for r in range(1, len(character))]
    return newton_identities(power_sums, BaseClass.constant(1))
