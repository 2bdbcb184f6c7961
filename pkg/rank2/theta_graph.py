"""
Single-vertex 2-graphs given by edge counts and a commutation bijection theta.

Blue edges are numbered 0..n1-1 and red edges 0..n2-1. A blue-red word e f
equals the red-blue word theta(e, f) = (f', e'), and by the factorisation
property every path has exactly one word for each arrangement of its colours.
Paths are stored in the normal form with all blue edges first, so path
equality is word equality.
"""

import itertools
import json
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from rank2.errors import (
    BadRange,
    IdOutOfRange,
    NotBijective,
    PatternDegreeMismatch,
    Rank2Error,
    SizeLimitExceeded,
    SpecMismatch,
)
from utils import settings


class Color(str, Enum):
    BLUE = "B"
    RED = "R"


Letter = Tuple[Color, int]
ColoredWord = Tuple[Letter, ...]
Pattern = Union[str, Sequence[Color]]


@dataclass(frozen=True)
class Degree:
    n1: int = 0
    n2: int = 0

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n2 < 0:
            raise BadRange(f"degree components must be natural, got ({self.n1}, {self.n2})")

    @classmethod
    def of(cls, pair: Union["Degree", Sequence[int]]) -> "Degree":
        if isinstance(pair, Degree):
            return pair
        n1, n2 = pair
        return cls(int(n1), int(n2))

    def __add__(self, other: "Degree") -> "Degree":
        return Degree(self.n1 + other.n1, self.n2 + other.n2)

    def __sub__(self, other: "Degree") -> "Degree":
        if not other <= self:
            raise BadRange(f"cannot subtract {other} from {self}")
        return Degree(self.n1 - other.n1, self.n2 - other.n2)

    def __le__(self, other: "Degree") -> bool:
        return self.n1 <= other.n1 and self.n2 <= other.n2

    def __ge__(self, other: "Degree") -> bool:
        return other <= self

    def join(self, other: "Degree") -> "Degree":
        return Degree(max(self.n1, other.n1), max(self.n2, other.n2))

    def meet(self, other: "Degree") -> "Degree":
        return Degree(min(self.n1, other.n1), min(self.n2, other.n2))

    @property
    def length(self) -> int:
        return self.n1 + self.n2

    def as_tuple(self) -> Tuple[int, int]:
        return (self.n1, self.n2)

    def __str__(self) -> str:
        return f"({self.n1},{self.n2})"


ZERO = Degree(0, 0)


@dataclass(frozen=True)
class ThetaSpec:
    """Rows are (e, f, f', e'), read as the relation e f = f' e'."""

    n1: int
    n2: int
    rows: Tuple[Tuple[int, int, int, int], ...]

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.n1, self.n2, self.rows))

    @cached_property
    def forward(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        return {(e, f): (f2, e2) for e, f, f2, e2 in self.rows}

    @cached_property
    def inverse(self) -> Dict[Tuple[int, int], Tuple[int, int]]:
        return {(f2, e2): (e, f) for e, f, f2, e2 in self.rows}

    @classmethod
    def from_rows(
        cls, n1: int, n2: int, rows: Iterable[Sequence[int]]
    ) -> "ThetaSpec":
        spec = cls(n1, n2, tuple(sorted(tuple(int(x) for x in row) for row in rows)))
        validate_theta(spec)
        return spec

    @classmethod
    def from_map(
        cls, n1: int, n2: int, theta: Dict[Tuple[int, int], Tuple[int, int]]
    ) -> "ThetaSpec":
        return cls.from_rows(n1, n2, [(e, f, f2, e2) for (e, f), (f2, e2) in theta.items()])


def validate_theta(spec: ThetaSpec) -> None:
    if spec.n1 < 1 or spec.n2 < 1:
        raise NotBijective(f"edge counts must be positive, got ({spec.n1}, {spec.n2})")

    seen: Dict[Tuple[int, int], Tuple[int, int]] = {}
    images: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for row in spec.rows:
        if len(row) != 4:
            raise NotBijective(f"theta row {row} must have four entries", witness=row)
        e, f, f2, e2 = row
        if not (0 <= e < spec.n1 and 0 <= e2 < spec.n1):
            raise IdOutOfRange(f"blue id out of range in theta row {row}")
        if not (0 <= f < spec.n2 and 0 <= f2 < spec.n2):
            raise IdOutOfRange(f"red id out of range in theta row {row}")
        if (e, f) in seen:
            raise NotBijective(f"theta lists b{e} r{f} twice", witness=(e, f))
        if (f2, e2) in images:
            other = images[(f2, e2)]
            raise NotBijective(
                f"b{other[0]} r{other[1]} and b{e} r{f} both map to r{f2} b{e2}",
                witness=(other, (e, f)),
            )
        seen[(e, f)] = (f2, e2)
        images[(f2, e2)] = (e, f)

    for e, f in itertools.product(range(spec.n1), range(spec.n2)):
        if (e, f) not in seen:
            raise NotBijective(f"theta is missing b{e} r{f}", witness=(e, f))


def _check_blue(spec: ThetaSpec, e: int) -> None:
    if not 0 <= e < spec.n1:
        raise IdOutOfRange(f"blue id {e} not in 0..{spec.n1 - 1}")


def _check_red(spec: ThetaSpec, f: int) -> None:
    if not 0 <= f < spec.n2:
        raise IdOutOfRange(f"red id {f} not in 0..{spec.n2 - 1}")


def commute_bf(spec: ThetaSpec, e: int, f: int) -> Tuple[int, int]:
    """The red-blue word (f', e') equal to the blue-red word e f."""
    _check_blue(spec, e)
    _check_red(spec, f)
    return spec.forward[(e, f)]


def commute_rb(spec: ThetaSpec, f: int, e: int) -> Tuple[int, int]:
    """The blue-red word (e', f') equal to the red-blue word f e."""
    _check_red(spec, f)
    _check_blue(spec, e)
    return spec.inverse[(f, e)]


@dataclass(frozen=True)
class Path:
    spec: ThetaSpec = field(compare=False, repr=False)
    degree: Degree
    word: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.word) != self.degree.length:
            raise BadRange(f"word {self.word} does not have degree {self.degree}")

    @property
    def blue(self) -> Tuple[int, ...]:
        return self.word[: self.degree.n1]

    @property
    def red(self) -> Tuple[int, ...]:
        return self.word[self.degree.n1 :]

    def colored(self) -> ColoredWord:
        return tuple((Color.BLUE, e) for e in self.blue) + tuple(
            (Color.RED, f) for f in self.red
        )

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.degree.n1, self.degree.n2, self.word)

    def __str__(self) -> str:
        return format_path(self)


def empty_path(spec: ThetaSpec) -> Path:
    return Path(spec, ZERO, ())


def blue_edge(spec: ThetaSpec, e: int) -> Path:
    _check_blue(spec, e)
    return Path(spec, Degree(1, 0), (e,))


def red_edge(spec: ThetaSpec, f: int) -> Path:
    _check_red(spec, f)
    return Path(spec, Degree(0, 1), (f,))


def format_word(word: ColoredWord) -> str:
    if not word:
        return "()"
    return " ".join(f"{color.value.lower()}{i}" for color, i in word)


def format_path(path: Path) -> str:
    return format_word(path.colored())


def _as_pattern(pattern: Pattern) -> Tuple[Color, ...]:
    try:
        return tuple(Color(str(c.value if isinstance(c, Color) else c).upper()) for c in pattern)
    except ValueError:
        raise PatternDegreeMismatch(f"pattern {pattern!r} may only contain B and R")


def normal_pattern(degree: Degree) -> Tuple[Color, ...]:
    return (Color.BLUE,) * degree.n1 + (Color.RED,) * degree.n2


def transpose(spec: ThetaSpec, word: ColoredWord, i: int) -> ColoredWord:
    """Swap letters i and i+1, which must have different colours."""
    if not 0 <= i < len(word) - 1:
        raise BadRange(f"no adjacent pair at position {i} in a word of length {len(word)}")
    left, right = word[i], word[i + 1]
    if left[0] == right[0]:
        raise BadRange(f"letters {i} and {i + 1} have the same colour")
    return word[:i] + _swap(spec, left, right) + word[i + 2 :]


def _swap(spec: ThetaSpec, left: Letter, right: Letter) -> Tuple[Letter, Letter]:
    if left[0] == Color.BLUE:
        f2, e2 = commute_bf(spec, left[1], right[1])
        return (Color.RED, f2), (Color.BLUE, e2)
    e2, f2 = commute_rb(spec, left[1], right[1])
    return (Color.BLUE, e2), (Color.RED, f2)


def _reorder_word(
    spec: ThetaSpec, word: ColoredWord, pattern: Tuple[Color, ...]
) -> ColoredWord:
    if len(pattern) != len(word) or pattern.count(Color.BLUE) != sum(
        1 for color, _ in word if color == Color.BLUE
    ):
        raise PatternDegreeMismatch(
            f"pattern {''.join(c.value for c in pattern)} does not match {format_word(word)}"
        )

    letters = list(word)
    for i, color in enumerate(pattern):
        if letters[i][0] == color:
            continue
        # letters i..j-1 all carry the other colour
        j = next(k for k in range(i + 1, len(letters)) if letters[k][0] == color)
        for k in range(j, i, -1):
            letters[k - 1], letters[k] = _swap(spec, letters[k - 1], letters[k])
    return tuple(letters)


def reorder(path: Path, pattern: Pattern) -> ColoredWord:
    return _reorder_word(path.spec, path.colored(), _as_pattern(pattern))


def _path_from_normal(spec: ThetaSpec, word: ColoredWord) -> Path:
    blues = tuple(i for color, i in word if color == Color.BLUE)
    reds = tuple(i for color, i in word if color == Color.RED)
    if word[: len(blues)] != tuple((Color.BLUE, e) for e in blues):
        raise PatternDegreeMismatch(f"{format_word(word)} is not in normal form")
    return Path(spec, Degree(len(blues), len(reds)), blues + reds)


def normalize(spec: ThetaSpec, word: ColoredWord) -> Path:
    """The path represented by a word in any colour order."""
    degree = Degree(
        sum(1 for color, _ in word if color == Color.BLUE),
        sum(1 for color, _ in word if color == Color.RED),
    )
    return _path_from_normal(spec, _reorder_word(spec, tuple(word), normal_pattern(degree)))


def _same_spec(x: Path, y: Path) -> ThetaSpec:
    if x.spec is not y.spec and x.spec != y.spec:
        raise SpecMismatch("paths belong to different 2-graphs")
    return x.spec


def compose(x: Path, y: Path) -> Path:
    return _compose(_same_spec(x, y), x, y)


@lru_cache(maxsize=1 << 18)
def _compose(spec: ThetaSpec, x: Path, y: Path) -> Path:
    if not y.word:
        return x
    if not x.word:
        return y
    if x.degree.n2 == 0 or y.degree.n1 == 0:
        return Path(spec, x.degree + y.degree, x.blue + y.blue + x.red + y.red)
    return normalize(spec, x.colored() + y.colored())


def segment(path: Path, p: Degree, q: Degree) -> Path:
    """The subpath path(p, q) of degree q - p."""
    p, q = Degree.of(p), Degree.of(q)
    if not (p <= q and q <= path.degree):
        raise BadRange(f"need {p} <= {q} <= {path.degree}")
    return _segment(path.spec, path, p, q)


@lru_cache(maxsize=1 << 18)
def _segment(spec: ThetaSpec, path: Path, p: Degree, q: Degree) -> Path:
    d = path.degree
    pattern = (
        normal_pattern(p)
        + normal_pattern(q - p)
        + normal_pattern(d - q)
    )
    word = _reorder_word(spec, path.colored(), pattern)
    return _path_from_normal(spec, word[p.length : q.length])


def path_count(spec: ThetaSpec, n: Degree) -> int:
    return spec.n1**n.n1 * spec.n2**n.n2


def enumerate_paths(
    spec: ThetaSpec, n: Degree, cap: Optional[int] = None
) -> Tuple[Path, ...]:
    n = Degree.of(n)
    cap = settings.path_cap() if cap is None else cap
    count = path_count(spec, n)
    if count > cap:
        raise SizeLimitExceeded(f"{count} paths of degree {n} exceed the cap of {cap}")
    return _enumerate(spec, n)


@lru_cache(maxsize=4096)
def _enumerate(spec: ThetaSpec, n: Degree) -> Tuple[Path, ...]:
    blues = list(itertools.product(range(spec.n1), repeat=n.n1))
    reds = list(itertools.product(range(spec.n2), repeat=n.n2))
    return tuple(Path(spec, n, b + r) for b, r in itertools.product(blues, reds))


def degrees_up_to(top: Degree) -> List[Degree]:
    return [Degree(i, j) for i in range(top.n1 + 1) for j in range(top.n2 + 1)]


def parse_word(spec: ThetaSpec, text: str) -> Path:
    """Letter notation like "r0 b1" (any colour order) to its normal-form path."""
    word: List[Letter] = []
    for token in text.replace(",", " ").split():
        token = token.strip().lower()
        if token in ("()", ""):
            continue
        if len(token) < 2 or token[0] not in "br" or not token[1:].isdigit():
            raise Rank2Error(f"cannot read edge {token!r}; use b<i> or r<j>")
        i = int(token[1:])
        if token[0] == "b":
            _check_blue(spec, i)
            word.append((Color.BLUE, i))
        else:
            _check_red(spec, i)
            word.append((Color.RED, i))
    return normalize(spec, tuple(word))


def flip_spec(n1: int, n2: int) -> ThetaSpec:
    return ThetaSpec.from_rows(
        n1, n2, [(e, f, f, e) for e in range(n1) for f in range(n2)]
    )


def twin_spec(n: int) -> ThetaSpec:
    """theta(b_i r_j) = (r_i, b_j)."""
    return ThetaSpec.from_rows(n, n, [(i, j, i, j) for i in range(n) for j in range(n)])


def random_spec(n1: int, n2: int, rng: random.Random) -> ThetaSpec:
    images = [(f, e) for f in range(n2) for e in range(n1)]
    rng.shuffle(images)
    inputs = [(e, f) for e in range(n1) for f in range(n2)]
    return ThetaSpec.from_rows(
        n1, n2, [(e, f, f2, e2) for (e, f), (f2, e2) in zip(inputs, images)]
    )


def spec_to_json(spec: ThetaSpec) -> Dict[str, Any]:
    return {"n1": spec.n1, "n2": spec.n2, "theta": [list(row) for row in spec.rows]}


def spec_from_json(data: Any) -> ThetaSpec:
    if not isinstance(data, dict) or not {"n1", "n2", "theta"} <= set(data):
        raise Rank2Error('theta spec must be an object {"n1": .., "n2": .., "theta": [[e, f, f\', e\'], ..]}')
    theta = data["theta"]
    if not isinstance(theta, list) or not all(
        isinstance(row, list) and len(row) == 4 for row in theta
    ):
        raise Rank2Error("theta must be a list of [e, f, f', e'] rows")
    values = [data["n1"], data["n2"], *(x for row in theta for x in row)]
    if not all(is_json_int(x) for x in values):
        raise Rank2Error("theta spec entries must be integers")
    return ThetaSpec.from_rows(data["n1"], data["n2"], theta)


def is_json_int(value: Any) -> bool:
    # json.load gives floats for 2.0 and bools for true
    return isinstance(value, int) and not isinstance(value, bool)


def load_spec(file: str) -> ThetaSpec:
    try:
        with open(file) as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as err:
        raise Rank2Error(f"cannot read theta spec {file}: {err}")
    return spec_from_json(data)
