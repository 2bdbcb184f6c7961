"""
The doubled graph Lambda_eta and the simplicity of the core crossed product.

Blue edges of the doubled graph are blue-blue pairs (e, f), numbered
e * n1 + f; red edges are red-red pairs (g, h), numbered g * n2 + h. The
commutation rule applies theta to both coordinates:
eta((e f)(g h)) = (theta_1(e g) theta_1(f h)) (theta_2(e g) theta_2(f h)).
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from rank2.errors import DegenerateCounts
from rank2.periodicity import (
    PeriodicityVerdict,
    VerdictKind,
    decide_periodicity,
)
from rank2.theta_graph import (
    Color,
    Path,
    ThetaSpec,
    commute_bf,
    spec_to_json,
    validate_theta,
)


@dataclass(frozen=True)
class EtaSpec:
    spec: ThetaSpec
    base: ThetaSpec

    def encode_blue(self, e: int, f: int) -> int:
        return e * self.base.n1 + f

    def encode_red(self, g: int, h: int) -> int:
        return g * self.base.n2 + h

    def blue_pair(self, i: int) -> Tuple[int, int]:
        e, f = divmod(i, self.base.n1)
        return e, f

    def red_pair(self, j: int) -> Tuple[int, int]:
        g, h = divmod(j, self.base.n2)
        return g, h

    def provenance(self) -> Dict[str, Dict[str, List[int]]]:
        return {
            "blue": {str(i): list(self.blue_pair(i)) for i in range(self.spec.n1)},
            "red": {str(j): list(self.red_pair(j)) for j in range(self.spec.n2)},
        }

    def to_json(self) -> Dict[str, Any]:
        report = spec_to_json(self.spec)
        report["provenance"] = self.provenance()
        return report


def double(spec: ThetaSpec) -> EtaSpec:
    validate_theta(spec)
    n1, n2 = spec.n1, spec.n2

    rows = []
    for e in range(n1):
        for f in range(n1):
            for g in range(n2):
                for h in range(n2):
                    g2, e2 = commute_bf(spec, e, g)
                    h2, f2 = commute_bf(spec, f, h)
                    rows.append(
                        (e * n1 + f, g * n2 + h, g2 * n2 + h2, e2 * n1 + f2)
                    )
    return EtaSpec(ThetaSpec.from_rows(n1 * n1, n2 * n2, rows), spec)


def format_pair_path(eta: EtaSpec, path: Path) -> str:
    """Doubled path in pair notation, e.g. (b0 b1) (r1 r0)."""
    letters = []
    for color, i in path.colored():
        if color == Color.BLUE:
            e, f = eta.blue_pair(i)
            letters.append(f"(b{e} b{f})")
        else:
            g, h = eta.red_pair(i)
            letters.append(f"(r{g} r{h})")
    return " ".join(letters) if letters else "()"


@dataclass(frozen=True)
class CrossedProductReport:
    n1: int
    n2: int
    simple: Optional[bool]
    purely_infinite: Optional[bool]
    periodicity: PeriodicityVerdict
    reason: str
    gamma_pairs: Tuple[Tuple[str, str], ...] = ()

    @property
    def bounded(self) -> bool:
        """True when the verdict rests on the checked multiples only."""
        return self.periodicity.kind == VerdictKind.APERIODIC

    def to_json(self) -> Dict[str, Any]:
        return {
            "n1": self.n1,
            "n2": self.n2,
            "simple": self.simple,
            "bounded": self.bounded,
            "purely_infinite": self.purely_infinite,
            "reason": self.reason,
            "doubled_periodicity": self.periodicity.to_json(),
            "doubled_gamma": [list(row) for row in self.gamma_pairs],
        }


def crossed_product_verdict(
    spec: ThetaSpec,
    kmax: Optional[int] = None,
    cap: Optional[int] = None,
    strict: bool = False,
) -> CrossedProductReport:
    if spec.n1 < 2 or spec.n2 < 2:
        raise DegenerateCounts(
            f"need at least two edges of each colour, got ({spec.n1}, {spec.n2})"
        )

    # n1^a == n2^b exactly when (n1^2)^a == (n2^2)^b, so the doubled graph
    # has the same candidate exponents
    eta = double(spec)
    verdict = decide_periodicity(eta.spec, kmax, cap, strict)

    if verdict.kind == VerdictKind.NO_CANDIDATE_PAIRS:
        return CrossedProductReport(
            spec.n1,
            spec.n2,
            True,
            True,
            verdict,
            "log n1 and log n2 are not rationally related, so no bijection can make "
            "the doubled graph periodic: simple and purely infinite",
        )
    if verdict.kind == VerdictKind.APERIODIC:
        checked = ", ".join(f"({a},{b})" for a, b in verdict.checked)
        return CrossedProductReport(
            spec.n1,
            spec.n2,
            True,
            True,
            verdict,
            f"the doubled graph has no period at {checked}: simple and purely infinite "
            f"for the checked multiples",
        )
    if verdict.kind == VerdictKind.PERIODIC and verdict.witness is not None:
        witness = verdict.witness
        pairs = tuple(
            (format_pair_path(eta, mu), format_pair_path(eta, nu))
            for mu, nu in sorted(witness.gamma.items(), key=lambda item: item[0].sort_key())
        )
        return CrossedProductReport(
            spec.n1,
            spec.n2,
            False,
            None,
            verdict,
            f"the doubled graph is periodic at ({witness.a},{witness.b}): not simple",
            pairs,
        )
    return CrossedProductReport(
        spec.n1,
        spec.n2,
        None,
        None,
        verdict,
        "periodicity of the doubled graph is undecided within the bound",
    )
