""" Exceptions raised by the rank-2 graph library. The CLI reports any of these and exits 1 """

from typing import Any, Optional


class Rank2Error(ValueError):
    pass


class NotBijective(Rank2Error):
    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.witness = witness


class IdOutOfRange(Rank2Error):
    pass


class PatternDegreeMismatch(Rank2Error):
    pass


class BadRange(Rank2Error):
    pass


class SpecMismatch(Rank2Error):
    pass


class SizeLimitExceeded(Rank2Error):
    pass


class DegenerateCounts(Rank2Error):
    pass


class LevelMismatch(Rank2Error):
    pass


class IrrationalScale(Rank2Error):
    pass


class TableSizeMismatch(Rank2Error):
    pass


class NotDivisible(Rank2Error):
    pass


class NotComposable(Rank2Error):
    pass


class InvalidGroupSpec(Rank2Error):
    pass
