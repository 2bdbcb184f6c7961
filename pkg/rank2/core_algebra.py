"""
Exact symbolic *-algebra spanned by the words s_mu s_nu^*.

An element is a finite rational combination of words. Products use the
relation s_nu^* s_alpha = sum s_nu' s_alpha'^* over the minimal common
extensions nu nu' = alpha alpha', and equality is decided modulo the Cuntz
relations by rewriting every word s_mu s_nu^* as
sum_{d(lam)=k} s_{mu lam} s_{nu lam}^* until all words of the same degree
shift sit at one level. For a fixed pair of degrees the words are linearly
independent, so comparing the expanded coefficient tables is exact.

Module vectors of M_n are tracked as sqrt(scale_sq) * q_n(payload), which keeps
the basis normalisation N^{n/2} out of the rational arithmetic.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from rank2.errors import IrrationalScale, LevelMismatch, Rank2Error, SpecMismatch
from rank2.theta_graph import (
    ZERO,
    Degree,
    Path,
    ThetaSpec,
    compose,
    empty_path,
    enumerate_paths,
    format_path,
    path_count,
    segment,
)

Key = Tuple[Path, Path]
Shift = Tuple[int, int]
Scalar = Union[int, Fraction]


def _shift(key: Key) -> Shift:
    mu, nu = key
    return (mu.degree.n1 - nu.degree.n1, mu.degree.n2 - nu.degree.n2)


class GradedElement:
    __slots__ = ("spec", "terms")

    def __init__(
        self, spec: ThetaSpec, terms: Optional[Mapping[Key, Scalar]] = None
    ) -> None:
        self.spec = spec
        self.terms: Dict[Key, Fraction] = {
            key: Fraction(c) for key, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def word(cls, mu: Path, nu: Path, coeff: Scalar = 1) -> "GradedElement":
        if mu.spec is not nu.spec and mu.spec != nu.spec:
            raise SpecMismatch("paths belong to different 2-graphs")
        return cls(mu.spec, {(mu, nu): coeff})

    @classmethod
    def one(cls, spec: ThetaSpec) -> "GradedElement":
        empty = empty_path(spec)
        return cls(spec, {(empty, empty): 1})

    @classmethod
    def zero(cls, spec: ThetaSpec) -> "GradedElement":
        return cls(spec)

    @classmethod
    def isometry(cls, path: Path) -> "GradedElement":
        """s_path."""
        return cls.word(path, empty_path(path.spec))

    @classmethod
    def co_isometry(cls, path: Path) -> "GradedElement":
        """s_path^*."""
        return cls.word(empty_path(path.spec), path)

    def _check(self, other: "GradedElement") -> None:
        if self.spec is not other.spec and self.spec != other.spec:
            raise SpecMismatch("elements belong to different 2-graphs")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        terms: Dict[Key, Fraction] = defaultdict(Fraction, self.terms)
        for key, c in other.terms.items():
            terms[key] += c
        return GradedElement(self.spec, terms)

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.spec, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other: Union["GradedElement", Scalar]) -> "GradedElement":
        if isinstance(other, GradedElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return GradedElement(
                self.spec, {key: c * other for key, c in self.terms.items()}
            )
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "GradedElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def adjoint(self) -> "GradedElement":
        return adjoint(self)

    def is_core(self) -> bool:
        return all(mu.degree == nu.degree for mu, nu in self.terms)

    def _levels(self, start: Optional[Dict[Shift, Degree]] = None) -> Dict[Shift, Degree]:
        levels = dict(start or {})
        for key in self.terms:
            shift, d = _shift(key), key[1].degree
            levels[shift] = levels[shift].join(d) if shift in levels else d
        return levels

    def expanded(self, levels: Mapping[Shift, Degree]) -> Dict[Key, Fraction]:
        """Coefficients after rewriting every word up to the level of its shift."""
        out: Dict[Key, Fraction] = defaultdict(Fraction)
        for (mu, nu), c in self.terms.items():
            k = levels[_shift((mu, nu))] - nu.degree
            if k == ZERO:
                out[(mu, nu)] += c
                continue
            for lam in enumerate_paths(self.spec, k):
                out[(compose(mu, lam), compose(nu, lam))] += c
        return {key: c for key, c in out.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.expanded(self._levels())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedElement):
            return NotImplemented
        self._check(other)
        levels = self._levels(other._levels())
        return self.expanded(levels) == other.expanded(levels)

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mu, nu), c in sorted(
            self.terms.items(), key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key())
        ):
            parts.append(f"{c} s[{format_path(mu)}] s[{format_path(nu)}]*")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GradedElement({self})"


@lru_cache(maxsize=1 << 18)
def _common_extensions(
    spec: ThetaSpec, nu: Path, alpha: Path
) -> Tuple[Tuple[Path, Path], ...]:
    p, q = nu.degree, alpha.degree
    top = p.join(q)
    found = []
    for ext in enumerate_paths(spec, top - p):
        whole = compose(nu, ext)
        if segment(whole, ZERO, q) == alpha:
            found.append((ext, segment(whole, q, top)))
    return tuple(found)


def common_extensions(nu: Path, alpha: Path) -> Tuple[Tuple[Path, Path], ...]:
    """All (nu', alpha') with nu nu' == alpha alpha' of degree d(nu) v d(alpha)."""
    if nu.spec is not alpha.spec and nu.spec != alpha.spec:
        raise SpecMismatch("paths belong to different 2-graphs")
    return _common_extensions(nu.spec, nu, alpha)


def multiply(x: GradedElement, y: GradedElement) -> GradedElement:
    x._check(y)
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for (mu, nu), c in x.terms.items():
        for (alpha, beta), d in y.terms.items():
            for nu_ext, alpha_ext in _common_extensions(x.spec, nu, alpha):
                out[(compose(mu, nu_ext), compose(beta, alpha_ext))] += c * d
    return GradedElement(x.spec, out)


def adjoint(x: GradedElement) -> GradedElement:
    return GradedElement(x.spec, {(nu, mu): c for (mu, nu), c in x.terms.items()})


def alpha_endo(
    n: Degree, a: GradedElement, cap: Optional[int] = None
) -> GradedElement:
    """sum over lam of degree n of s_lam a s_lam^*."""
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for lam in enumerate_paths(a.spec, Degree.of(n), cap):
        for (mu, nu), c in a.terms.items():
            out[(compose(lam, mu), compose(lam, nu))] += c
    return GradedElement(a.spec, out)


def transfer_L(
    n: Degree, a: GradedElement, cap: Optional[int] = None
) -> GradedElement:
    """(1 / N^n) sum over lam of degree n of s_lam^* a s_lam."""
    n = Degree.of(n)
    spec = a.spec
    weight = Fraction(1, path_count(spec, n))
    out: Dict[Key, Fraction] = defaultdict(Fraction)
    for lam in enumerate_paths(spec, n, cap):
        inner = multiply(multiply(GradedElement.co_isometry(lam), a), GradedElement.isometry(lam))
        for key, c in inner.terms.items():
            out[key] += c * weight
    return GradedElement(spec, out)


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        return None
    return Fraction(num, den)


@dataclass(frozen=True, eq=False)
class ModuleVector:
    """sqrt(scale_sq) * q_n(payload) in the module M_n over the core."""

    level: Degree
    payload: GradedElement
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.scale_sq <= 0:
            raise Rank2Error("module vector scale must be positive")

    @property
    def spec(self) -> ThetaSpec:
        return self.payload.spec

    def _rescaled_payload(self, target_sq: Fraction) -> GradedElement:
        factor = _exact_sqrt(self.scale_sq / target_sq)
        if factor is None:
            raise IrrationalScale(
                f"scales {self.scale_sq} and {target_sq} differ by an irrational factor"
            )
        return self.payload * factor

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if self.level != other.level:
            raise LevelMismatch(f"cannot add vectors at levels {self.level} and {other.level}")
        if self.scale_sq == other.scale_sq:
            return ModuleVector(self.level, self.payload + other.payload, self.scale_sq)
        return ModuleVector(
            self.level,
            self._rescaled_payload(other.scale_sq) + other.payload,
            other.scale_sq,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if self.level != other.level:
            return False
        factor = _exact_sqrt(self.scale_sq / other.scale_sq)
        if factor is None:
            return self.payload.is_zero() and other.payload.is_zero()
        return self.payload * factor == other.payload

    __hash__ = None  # type: ignore[assignment]


def basis_vector(mu: Path, nu: Path) -> ModuleVector:
    """m^n_{mu nu} = N^{n/2} q_n(s_mu s_nu^*)."""
    if mu.degree != nu.degree:
        raise LevelMismatch(f"basis paths must share a degree, got {mu.degree} and {nu.degree}")
    return ModuleVector(
        mu.degree, GradedElement.word(mu, nu), Fraction(path_count(mu.spec, mu.degree))
    )


def unit_vector(spec: ThetaSpec) -> ModuleVector:
    return ModuleVector(ZERO, GradedElement.one(spec))


def inner_product(n: Degree, x: ModuleVector, y: ModuleVector) -> GradedElement:
    """<x, y> = L_n(x^* y), with the exact product of the two scales."""
    n = Degree.of(n)
    if x.level != n or y.level != n:
        raise LevelMismatch(f"vectors at {x.level} and {y.level}, expected {n}")
    factor = _exact_sqrt(x.scale_sq * y.scale_sq)
    if factor is None:
        raise IrrationalScale(
            f"scales {x.scale_sq} and {y.scale_sq} give an irrational inner product"
        )
    return transfer_L(n, adjoint(x.payload) * y.payload) * factor


def module_product(x: ModuleVector, y: ModuleVector) -> ModuleVector:
    """q_m(x) q_n(y) = q_{m+n}(x alpha_m(y))."""
    return ModuleVector(
        x.level + y.level,
        x.payload * alpha_endo(x.level, y.payload),
        x.scale_sq * y.scale_sq,
    )


def right_action(v: ModuleVector, a: GradedElement) -> ModuleVector:
    return ModuleVector(v.level, v.payload * alpha_endo(v.level, a), v.scale_sq)


def left_action(a: GradedElement, v: ModuleVector) -> ModuleVector:
    return ModuleVector(v.level, a * v.payload, v.scale_sq)


def rank_one(xi: ModuleVector, eta: ModuleVector, zeta: ModuleVector) -> ModuleVector:
    """Theta_{xi, eta}(zeta) = xi . <eta, zeta>."""
    return right_action(xi, inner_product(eta.level, eta, zeta))


def check_covariance(n: Degree, mu: Path, nu: Path) -> bool:
    """Left multiplication by s_mu s_nu^* agrees with sum_lam Theta_{m_{mu lam}, m_{nu lam}}."""
    n = Degree.of(n)
    if mu.degree != n or nu.degree != n:
        raise LevelMismatch(f"covariance needs paths of degree {n}")
    op = GradedElement.word(mu, nu)
    paths = enumerate_paths(mu.spec, n)
    for alpha in paths:
        for beta in paths:
            target = basis_vector(alpha, beta)
            lhs = left_action(op, target)
            rhs: Optional[ModuleVector] = None
            for lam in paths:
                term = rank_one(basis_vector(mu, lam), basis_vector(nu, lam), target)
                rhs = term if rhs is None else rhs + term
            if rhs is None or lhs != rhs:
                return False
    return True


def cuntz_family(spec: ThetaSpec, n: Degree) -> Dict[Tuple[int, int], ModuleVector]:
    """T_{ef} = m^n_{ef} for the single-edge degrees n = (1,0) or (0,1)."""
    n = Degree.of(n)
    if n not in (Degree(1, 0), Degree(0, 1)):
        raise LevelMismatch(f"Cuntz families live at (1,0) and (0,1), not {n}")
    edges = enumerate_paths(spec, n)
    return {
        (x.word[0], y.word[0]): basis_vector(x, y) for x in edges for y in edges
    }
