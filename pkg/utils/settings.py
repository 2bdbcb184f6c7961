""" Centralized, configurable location for run defaults (bounds, caps, output format) """

from dataclasses import dataclass
from typing import Tuple

from rank2.errors import Rank2Error


def kmax() -> int:
    return 4


def path_cap() -> int:
    return 10**6


def max_degree() -> Tuple[int, int]:
    return (3, 3)


def g123_limit() -> int:
    return 12


def output() -> str:
    return "json"


def output_choices() -> Tuple[str, ...]:
    return ("json", "table")


def seed() -> int:
    return 0


def suite_samples() -> int:
    return 200


def exhaustive_limit() -> int:
    return 100_000


def oracle_multiple() -> int:
    return 3


@dataclass(frozen=True)
class RunConfig:
    kmax: int = kmax()
    max_degree: Tuple[int, int] = max_degree()
    path_cap: int = path_cap()
    output: str = output()
    seed: int = seed()

    def __post_init__(self) -> None:
        if self.kmax < 1:
            raise Rank2Error(f"kmax must be at least 1, got {self.kmax}")
        if self.path_cap < 1:
            raise Rank2Error(f"path cap must be positive, got {self.path_cap}")
        if min(self.max_degree) < 0:
            raise Rank2Error(f"max degree must be natural, got {self.max_degree}")
        if self.output not in output_choices():
            raise Rank2Error(f"unknown output format {self.output}")
