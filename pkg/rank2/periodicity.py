"""
Periodicity of single-vertex 2-graphs.

The graph is periodic exactly when there are a, b > 0 and a bijection gamma
from blue paths of degree (a, 0) onto red paths of degree (0, b) such that
every mu nu has red-first factorisation gamma(mu) gamma^-1(nu). Such a gamma
is forced: gamma(mu) is the red prefix of mu beta for any beta, so the search
computes that one candidate and verifies it instead of enumerating bijections.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

from sympy import factorint

from rank2.errors import DegenerateCounts, SizeLimitExceeded
from rank2.theta_graph import (
    ZERO,
    Degree,
    Path,
    ThetaSpec,
    compose,
    enumerate_paths,
    format_path,
    path_count,
    segment,
)
from utils import settings

Gamma = Mapping[Path, Path]


class VerdictKind(str, Enum):
    PERIODIC = "periodic"
    APERIODIC = "aperiodic"
    NO_CANDIDATE_PAIRS = "no-candidate-pairs"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PeriodWitness:
    a: int
    b: int
    gamma: Gamma = field(compare=False)

    def inverse(self) -> Dict[Path, Path]:
        return {nu: mu for mu, nu in self.gamma.items()}

    def table(self) -> List[Tuple[str, str]]:
        return [
            (format_path(mu), format_path(nu))
            for mu, nu in sorted(self.gamma.items(), key=lambda item: item[0].sort_key())
        ]


@dataclass(frozen=True)
class PeriodicityVerdict:
    kind: VerdictKind
    witness: Optional[PeriodWitness] = None
    checked: Tuple[Tuple[int, int], ...] = ()
    kmax: int = 0
    exponents: Optional[Tuple[int, int]] = None

    @property
    def decided(self) -> bool:
        return self.kind != VerdictKind.UNKNOWN

    def to_json(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {
            "verdict": self.kind.value,
            "kmax": self.kmax,
            "checked": [list(pair) for pair in self.checked],
            "minimal_exponents": list(self.exponents) if self.exponents else None,
        }
        if self.kind == VerdictKind.APERIODIC:
            report["bounded"] = True
            report["note"] = f"no period among the multiples k <= {self.kmax} of the minimal exponents"
        if self.kind == VerdictKind.UNKNOWN:
            report["note"] = "no period found among the checked multiples; larger multiples were not ruled out"
        if self.witness is not None:
            report["period"] = [self.witness.a, self.witness.b]
            report["gamma"] = [list(row) for row in self.witness.table()]
        return report


def minimal_exponents(n1: int, n2: int) -> Optional[Tuple[int, int]]:
    """Least (a0, b0) with n1**a0 == n2**b0; every solution is a multiple of it."""
    if n1 < 2 or n2 < 2:
        raise DegenerateCounts(f"need at least two edges of each colour, got ({n1}, {n2})")

    f1, f2 = factorint(n1), factorint(n2)
    if set(f1) != set(f2):
        return None
    ratios = {Fraction(f2[p], f1[p]) for p in f1}
    if len(ratios) != 1:
        return None
    ratio = ratios.pop()
    return ratio.numerator, ratio.denominator


def _check_counts(spec: ThetaSpec, a: int, b: int, cap: int) -> None:
    blue, red = path_count(spec, Degree(a, 0)), path_count(spec, Degree(0, b))
    if blue != red:
        raise DegenerateCounts(f"{spec.n1}^{a} != {spec.n2}^{b}")
    if blue * red > cap:
        raise SizeLimitExceeded(
            f"{blue} x {red} path pairs at ({a},{b}) exceed the cap of {cap}"
        )


def candidate_gamma(
    spec: ThetaSpec, a: int, b: int, cap: Optional[int] = None
) -> Optional[Dict[Path, Path]]:
    cap = settings.path_cap() if cap is None else cap
    _check_counts(spec, a, b, cap)

    blues = enumerate_paths(spec, Degree(a, 0), cap)
    reds = enumerate_paths(spec, Degree(0, b), cap)
    red_part = Degree(0, b)

    gamma: Dict[Path, Path] = {}
    for mu in blues:
        # reds[0] is the lexicographically least beta
        value = segment(compose(mu, reds[0]), ZERO, red_part)
        for beta in reds[1:]:
            if segment(compose(mu, beta), ZERO, red_part) != value:
                return None
        gamma[mu] = value

    if len(set(gamma.values())) != len(reds):
        return None
    return gamma


def gamma_inverse_candidate(
    spec: ThetaSpec, a: int, b: int, cap: Optional[int] = None
) -> Optional[Dict[Path, Path]]:
    """The mirror construction: delta(nu) is the blue prefix of nu sigma for any sigma."""
    cap = settings.path_cap() if cap is None else cap
    _check_counts(spec, a, b, cap)

    blues = enumerate_paths(spec, Degree(a, 0), cap)
    reds = enumerate_paths(spec, Degree(0, b), cap)
    blue_part = Degree(a, 0)

    delta: Dict[Path, Path] = {}
    for nu in reds:
        # nu sigma has normal form sigma' nu', so the blue prefix is its first a letters
        value = segment(compose(nu, blues[0]), ZERO, blue_part)
        for sigma in blues[1:]:
            if segment(compose(nu, sigma), ZERO, blue_part) != value:
                return None
        delta[nu] = value

    if len(set(delta.values())) != len(blues):
        return None
    return delta


def verify_period(
    spec: ThetaSpec, a: int, b: int, gamma: Gamma, cap: Optional[int] = None
) -> bool:
    blues = enumerate_paths(spec, Degree(a, 0), cap)
    reds = enumerate_paths(spec, Degree(0, b), cap)
    if set(gamma) != set(blues) or set(gamma.values()) != set(reds):
        return False

    inverse = {nu: mu for mu, nu in gamma.items()}
    red_part, whole = Degree(0, b), Degree(a, b)
    for mu in blues:
        for nu in reds:
            path = compose(mu, nu)
            if segment(path, ZERO, red_part) != gamma[mu]:
                return False
            if segment(path, red_part, whole) != inverse[nu]:
                return False
    return True


def verify_inverse_pairing(spec: ThetaSpec, witness: PeriodWitness) -> bool:
    """alpha beta == gamma^-1(alpha) gamma(beta) for red alpha and blue beta."""
    inverse = witness.inverse()
    for alpha in enumerate_paths(spec, Degree(0, witness.b)):
        for beta in enumerate_paths(spec, Degree(witness.a, 0)):
            if compose(alpha, beta) != compose(inverse[alpha], witness.gamma[beta]):
                return False
    return True


def shift_agrees(spec: ThetaSpec, a: int, b: int, path: Path) -> bool:
    d = path.degree
    return segment(path, Degree(a, 0), d - Degree(0, b)) == segment(
        path, Degree(0, b), d - Degree(a, 0)
    )


def shift_condition_holds(
    spec: ThetaSpec, a: int, b: int, degree: Degree, cap: Optional[int] = None
) -> bool:
    """Brute force: the shifted subpaths agree for every path of the given degree."""
    return all(
        shift_agrees(spec, a, b, path) for path in enumerate_paths(spec, degree, cap)
    )


def periodic_at(
    spec: ThetaSpec, a: int, b: int, cap: Optional[int] = None
) -> Optional[PeriodWitness]:
    gamma = candidate_gamma(spec, a, b, cap)
    if gamma is None or not verify_period(spec, a, b, gamma, cap):
        return None
    return PeriodWitness(a, b, gamma)


def decide_periodicity(
    spec: ThetaSpec,
    kmax: Optional[int] = None,
    cap: Optional[int] = None,
    strict: bool = False,
) -> PeriodicityVerdict:
    """
    Scan the multiples k * (a0, b0), k = 1..kmax, of the minimal exponents.

    A scan cut short by the path cap after at least one multiple reports
    Unknown. With strict=True an exhausted scan is Unknown as well, because
    failure at the checked multiples does not rule out larger ones.
    """
    kmax = settings.kmax() if kmax is None else kmax
    cap = settings.path_cap() if cap is None else cap

    exponents = minimal_exponents(spec.n1, spec.n2)
    if exponents is None:
        return PeriodicityVerdict(VerdictKind.NO_CANDIDATE_PAIRS, kmax=kmax)

    a0, b0 = exponents
    checked: List[Tuple[int, int]] = []
    for k in range(1, kmax + 1):
        a, b = k * a0, k * b0
        try:
            witness = periodic_at(spec, a, b, cap)
        except SizeLimitExceeded:
            if not checked:
                raise
            return PeriodicityVerdict(
                VerdictKind.UNKNOWN, checked=tuple(checked), kmax=kmax, exponents=exponents
            )
        checked.append((a, b))
        if witness is not None:
            return PeriodicityVerdict(
                VerdictKind.PERIODIC,
                witness=witness,
                checked=tuple(checked),
                kmax=kmax,
                exponents=exponents,
            )

    kind = VerdictKind.UNKNOWN if strict else VerdictKind.APERIODIC
    return PeriodicityVerdict(kind, checked=tuple(checked), kmax=kmax, exponents=exponents)
