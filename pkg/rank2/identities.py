"""
The identity suite behind `core verify`.

Each check runs exhaustively when its case count is at most the exhaustive
limit and otherwise on a fixed-seed sample, and reports which one happened.
"""

import math
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from rank2.core_algebra import (
    GradedElement,
    ModuleVector,
    alpha_endo,
    basis_vector,
    check_covariance,
    cuntz_family,
    inner_product,
    module_product,
    rank_one,
    transfer_L,
    unit_vector,
)
from rank2.doubling import double
from rank2.theta_graph import (
    Degree,
    Path,
    ThetaSpec,
    compose,
    degrees_up_to,
    enumerate_paths,
)
from utils import settings


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    exhaustive: bool
    passed: bool
    failure: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {
            "check": self.name,
            "cases": self.cases,
            "mode": "exhaustive" if self.exhaustive else "sampled",
            "passed": self.passed,
        }
        if self.failure is not None:
            report["failure"] = self.failure
        return report


@dataclass
class SuitePlan:
    rng: random.Random
    limit: int
    samples: int

    def indices(self, sizes: Sequence[int]) -> Tuple[List[Tuple[int, ...]], bool]:
        """Index tuples into lists of the given sizes, all of them or a sample."""
        total = math.prod(sizes)
        if total <= self.limit:
            return [self._unravel(i, sizes) for i in range(total)], True
        picks = self.rng.sample(range(total), min(self.samples, total))
        return [self._unravel(i, sizes) for i in sorted(picks)], False

    @staticmethod
    def _unravel(i: int, sizes: Sequence[int]) -> Tuple[int, ...]:
        out = []
        for size in reversed(sizes):
            i, r = divmod(i, size)
            out.append(r)
        return tuple(reversed(out))


def core_words(spec: ThetaSpec, top: Degree) -> List[GradedElement]:
    """All s_mu s_nu^* with d(mu) = d(nu) <= top."""
    words = []
    for n in degrees_up_to(top):
        paths = enumerate_paths(spec, n)
        words.extend(GradedElement.word(mu, nu) for mu in paths for nu in paths)
    return words


def all_words(spec: ThetaSpec, top: Degree) -> List[GradedElement]:
    """All s_mu s_nu^* with d(mu), d(nu) <= top."""
    paths = [p for n in degrees_up_to(top) for p in enumerate_paths(spec, n)]
    return [GradedElement.word(mu, nu) for mu in paths for nu in paths]


def _run(
    name: str, cases: Sequence[Any], exhaustive: bool, check: Callable[[Any], bool]
) -> CheckResult:
    for case in cases:
        if not check(case):
            return CheckResult(name, len(cases), exhaustive, False, _describe(case))
    return CheckResult(name, len(cases), exhaustive, True)


def _describe(case: Any) -> str:
    if isinstance(case, tuple):
        return ", ".join(str(part) for part in case)
    return str(case)


def check_unit_transfer(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    one = GradedElement.one(spec)
    degrees = degrees_up_to(top)
    return _run(
        "L_n(1) = 1", degrees, True, lambda n: transfer_L(n, one) == one
    )


def check_alpha_unital(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    one = GradedElement.one(spec)
    return _run(
        "alpha_n(1) = 1", degrees_up_to(top), True, lambda n: alpha_endo(n, one) == one
    )


def check_transfer_identity(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    """
    Triples (n, a, b) of a degree and two core words. On two-edge graphs this
    is exhaustive up to (1,1) and sampled beyond; the b = 1 case is covered
    in full by check_left_inverse.
    """
    degrees = degrees_up_to(top)
    words = core_words(spec, top)
    picks, exhaustive = plan.indices([len(degrees), len(words), len(words)])
    cases = [(degrees[i], words[j], words[k]) for i, j, k in picks]

    def holds(case: Tuple[Degree, GradedElement, GradedElement]) -> bool:
        n, a, b = case
        return transfer_L(n, alpha_endo(n, a) * b) == a * transfer_L(n, b)

    return _run("L_n(alpha_n(a) b) = a L_n(b)", cases, exhaustive, holds)


def check_semigroup(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    pairs = [
        (m, n) for m in degrees_up_to(top) for n in degrees_up_to(top) if m + n <= top
    ]
    words = core_words(spec, top)
    picks, exhaustive = plan.indices([len(pairs), len(words)])
    cases = [(pairs[i][0], pairs[i][1], words[j]) for i, j in picks]

    def holds(case: Tuple[Degree, Degree, GradedElement]) -> bool:
        m, n, a = case
        return transfer_L(m, transfer_L(n, a)) == transfer_L(m + n, a)

    return _run("L_m L_n = L_(m+n)", cases, exhaustive, holds)


def check_left_inverse(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    degrees = degrees_up_to(top)
    words = core_words(spec, top)
    picks, exhaustive = plan.indices([len(degrees), len(words)])
    cases = [(degrees[i], words[j]) for i, j in picks]
    return _run(
        "L_n(alpha_n(a)) = a",
        cases,
        exhaustive,
        lambda case: transfer_L(case[0], alpha_endo(case[0], case[1])) == case[1],
    )


def _basis_pairs(spec: ThetaSpec, n: Degree) -> List[Tuple[Path, Path]]:
    paths = enumerate_paths(spec, n)
    return [(mu, nu) for mu in paths for nu in paths]


def check_orthonormality(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    cases: List[Tuple[Degree, Tuple[Path, Path], Tuple[Path, Path]]] = []
    exhaustive = True
    for n in degrees_up_to(top):
        pairs = _basis_pairs(spec, n)
        picks, full = plan.indices([len(pairs), len(pairs)])
        exhaustive = exhaustive and full
        cases.extend((n, pairs[i], pairs[j]) for i, j in picks)

    one = GradedElement.one(spec)
    zero = GradedElement.zero(spec)

    def holds(case: Tuple[Degree, Tuple[Path, Path], Tuple[Path, Path]]) -> bool:
        n, left, right = case
        value = inner_product(n, basis_vector(*left), basis_vector(*right))
        return value.is_core() and value == (one if left == right else zero)

    return _run("<m_(mu nu), m_(alpha beta)> = delta", cases, exhaustive, holds)


def check_product_basis(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    cases: List[Tuple[Tuple[Path, Path], Tuple[Path, Path]]] = []
    exhaustive = True
    for m in degrees_up_to(top):
        for n in degrees_up_to(top):
            if not m + n <= top:
                continue
            left, right = _basis_pairs(spec, m), _basis_pairs(spec, n)
            picks, full = plan.indices([len(left), len(right)])
            exhaustive = exhaustive and full
            cases.extend((left[i], right[j]) for i, j in picks)

    def holds(case: Tuple[Tuple[Path, Path], Tuple[Path, Path]]) -> bool:
        (mu, nu), (alpha, beta) = case
        product = module_product(basis_vector(mu, nu), basis_vector(alpha, beta))
        return product == basis_vector(compose(mu, alpha), compose(nu, beta))

    return _run("m_(mu nu) m_(alpha beta) = m_(mu alpha)(nu beta)", cases, exhaustive, holds)


def check_module_unit(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    unit = unit_vector(spec)
    pairs = [pair for n in degrees_up_to(top) for pair in _basis_pairs(spec, n)]
    picks, exhaustive = plan.indices([len(pairs)])
    cases = [pairs[i] for (i,) in picks]

    def holds(case: Tuple[Path, Path]) -> bool:
        x = basis_vector(*case)
        return module_product(x, unit) == x and module_product(unit, x) == x

    return _run("x m_0 = m_0 x = x", cases, exhaustive, holds)


def check_commutation(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    """T_ef T_gh = T_eta1((ef)(gh)) T_eta2((ef)(gh)) for every blue pair ef and red pair gh."""
    blue = cuntz_family(spec, Degree(1, 0))
    red = cuntz_family(spec, Degree(0, 1))
    eta = double(spec)
    cases = [(ef, gh) for ef in sorted(blue) for gh in sorted(red)]

    def holds(case: Tuple[Tuple[int, int], Tuple[int, int]]) -> bool:
        ef, gh = case
        g2h2, e2f2 = eta.spec.forward[(eta.encode_blue(*ef), eta.encode_red(*gh))]
        lhs = module_product(blue[ef], red[gh])
        rhs = module_product(red[eta.red_pair(g2h2)], blue[eta.blue_pair(e2f2)])
        return lhs == rhs

    return _run("T_ef T_gh = T_eta(ef gh)", cases, True, holds)


def check_cuntz_family(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    """Each T is an isometry and sum Theta_(T,T) is the identity on the basis."""
    cases: List[Tuple[str, Any, Any]] = []
    one = GradedElement.one(spec)
    for n in (Degree(1, 0), Degree(0, 1)):
        family = cuntz_family(spec, n)
        cases.extend(("isometry", n, key) for key in sorted(family))
        cases.extend(("reconstruction", n, pair) for pair in _basis_pairs(spec, n))

    families = {n: cuntz_family(spec, n) for n in (Degree(1, 0), Degree(0, 1))}

    def holds(case: Tuple[str, Degree, Any]) -> bool:
        kind, n, item = case
        family = families[n]
        if kind == "isometry":
            return inner_product(n, family[item], family[item]) == one
        xi = basis_vector(*item)
        total: Optional[ModuleVector] = None
        for key in sorted(family):
            term = rank_one(family[key], family[key], xi)
            total = term if total is None else total + term
        return total == xi

    return _run("Cuntz family", cases, True, holds)


def check_covariance_suite(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    """phi_n(s_mu s_nu^*) = sum_lam Theta_(m_mu lam, m_nu lam), for degrees up to (1,1)."""
    cases: List[Tuple[Degree, Path, Path]] = []
    exhaustive = True
    for n in degrees_up_to(top.meet(Degree(1, 1))):
        pairs = _basis_pairs(spec, n)
        picks, full = plan.indices([len(pairs)])
        exhaustive = exhaustive and full
        cases.extend((n, *pairs[i]) for (i,) in picks)
    return _run(
        "phi_n(s_mu s_nu*) = sum Theta",
        cases,
        exhaustive,
        lambda case: check_covariance(*case),
    )


def check_star_algebra(spec: ThetaSpec, top: Degree, plan: SuitePlan) -> CheckResult:
    words = all_words(spec, top.meet(Degree(1, 1)))
    picks, exhaustive = plan.indices([len(words)] * 3)
    cases = [(words[i], words[j], words[k]) for i, j, k in picks]

    def holds(case: Tuple[GradedElement, GradedElement, GradedElement]) -> bool:
        x, y, z = case
        if (x * y) * z != x * (y * z):
            return False
        return (x * y).adjoint() == y.adjoint() * x.adjoint() and x.adjoint().adjoint() == x

    return _run("*-algebra axioms", cases, exhaustive, holds)


CHECKS: Tuple[Callable[[ThetaSpec, Degree, SuitePlan], CheckResult], ...] = (
    check_unit_transfer,
    check_alpha_unital,
    check_transfer_identity,
    check_semigroup,
    check_left_inverse,
    check_orthonormality,
    check_product_basis,
    check_module_unit,
    check_commutation,
    check_cuntz_family,
    check_covariance_suite,
    check_star_algebra,
)


def run_identity_suite(
    spec: ThetaSpec,
    top: Degree,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    limit: Optional[int] = None,
    on_check: Optional[Callable[[str], None]] = None,
) -> List[CheckResult]:
    top = Degree.of(top)
    plan = SuitePlan(
        random.Random(settings.seed() if seed is None else seed),
        settings.exhaustive_limit() if limit is None else limit,
        settings.suite_samples() if samples is None else samples,
    )
    results = []
    for check in CHECKS:
        result = check(spec, top, plan)
        if on_check is not None:
            on_check(f"{result.name}: {'pass' if result.passed else 'FAIL'} ({result.cases} cases)")
        results.append(result)
    return results

