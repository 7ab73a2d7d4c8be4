"""Index calculus for cube posets.

Vertices of an n-dimensional cube of side length s are labelled by tuples
of digits.  Three alphabets occur: {0,1} (generating cubes), {0,1,2}
(extended cubes) and {1,2,3} (forward cubes).  Digit 1 is the most
significant position in every lexicographic ordering used here.
"""

from dataclasses import dataclass
from itertools import product

from .errors import InputError, PreconditionError

BINARY = (0, 1)
TERNARY = (0, 1, 2)
FORWARD = (1, 2, 3)


@dataclass(frozen=True)
class CubeIndex:
    """A vertex label: digits (eps_1, ..., eps_n) over a fixed alphabet."""

    digits: tuple
    alphabet: tuple = TERNARY

    def __post_init__(self):
        if len(self.digits) < 1:
            raise InputError("cube index needs length >= 1")
        if self.alphabet not in (BINARY, TERNARY, FORWARD):
            raise InputError(f"unknown alphabet {self.alphabet}")
        for d in self.digits:
            if d not in self.alphabet:
                raise InputError(
                    f"digit {d} not in alphabet {self.alphabet} for index {self.digits}"
                )

    @property
    def n(self):
        return len(self.digits)

    @classmethod
    def parse(cls, text, alphabet=TERNARY):
        """Parse a contiguous digit string, most significant digit first."""
        if not text or not text.isdigit():
            raise InputError(f"index must be a nonempty digit string, got {text!r}")
        return cls(tuple(int(c) for c in text), alphabet)

    def __str__(self):
        return "".join(str(d) for d in self.digits)

    def with_digit(self, axis, value):
        """Return the index with digit at 1-based ``axis`` replaced."""
        if not 1 <= axis <= self.n:
            raise InputError(f"axis {axis} out of range 1..{self.n}")
        digits = list(self.digits)
        digits[axis - 1] = value
        return CubeIndex(tuple(digits), self.alphabet)

    def digit(self, axis):
        return self.digits[axis - 1]


def poset_leq(a: CubeIndex, b: CubeIndex) -> bool:
    """Componentwise order: a <= b iff eps_i <= eps'_i for all i."""
    if a.n != b.n:
        raise InputError(f"length mismatch: {a} vs {b}")
    if a.alphabet != b.alphabet:
        raise InputError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")
    return all(x <= y for x, y in zip(a.digits, b.digits))


def vertex_Jk(n: int, k: int, alphabet=BINARY) -> CubeIndex:
    """The spine vertex with k ones followed by n-k zeros."""
    if not 0 <= k <= n:
        raise InputError(f"k={k} out of range 0..{n}")
    return CubeIndex((1,) * k + (0,) * (n - k), alphabet)


def filtration_level(j: CubeIndex) -> int:
    """Composition length of a binary vertex: the digit sum."""
    if j.alphabet != BINARY:
        raise InputError(f"filtration level needs a binary index, got {j}")
    return sum(j.digits)


@dataclass(frozen=True)
class MarkerDecomposition:
    """The marker/stage/remainder decomposition of a ternary index.

    marker    -- longest initial segment with all digits in {1,2}
    stage     -- length of the maximal all-2 final segment of the marker
    remainder -- the complementary final segment (starts with 0 if nonempty)
    r         -- number of digits 2 in the remainder
    """

    marker: tuple
    stage: int
    remainder: tuple
    r: int

    def __post_init__(self):
        assert all(d in (1, 2) for d in self.marker)
        assert not self.remainder or self.remainder[0] == 0


def marker_decomposition(j: CubeIndex) -> MarkerDecomposition:
    if j.alphabet != TERNARY:
        raise InputError(f"marker decomposition needs a ternary index, got {j}")
    m = 0
    while m < j.n and j.digits[m] in (1, 2):
        m += 1
    marker = j.digits[:m]
    remainder = j.digits[m:]
    stage = 0
    while stage < m and marker[m - 1 - stage] == 2:
        stage += 1
    return MarkerDecomposition(
        marker=marker,
        stage=stage,
        remainder=remainder,
        r=sum(1 for d in remainder if d == 2),
    )


@dataclass(frozen=True)
class CofibrationTriple:
    """An axis-aligned triple J' < J'' < J''' stepping 0 -> 1 -> 2 at one axis."""

    axis: int
    j0: CubeIndex
    j1: CubeIndex
    j2: CubeIndex

    def __post_init__(self):
        assert self.j0.digit(self.axis) == 0
        assert self.j1.digit(self.axis) == 1
        assert self.j2.digit(self.axis) == 2


def cofibration_triples(n: int):
    """All n * 3^(n-1) axis-aligned triples of the ternary n-cube.

    Sorted by axis, then lexicographically in the base digits with the
    first position most significant.
    """
    if n < 1:
        raise InputError(f"n={n} must be >= 1")
    triples = []
    for axis in range(1, n + 1):
        for base in product(TERNARY, repeat=n - 1):
            digits = list(base[: axis - 1]) + [None] + list(base[axis - 1 :])

            def at(v, digits=digits):
                ds = list(digits)
                ds[axis - 1] = v
                return CubeIndex(tuple(ds), TERNARY)

            triples.append(CofibrationTriple(axis, at(0), at(1), at(2)))
    return triples


def forward_relabel(j: CubeIndex) -> CubeIndex:
    """Embed a {1,2}-digit vertex of the extended cube into the forward cube."""
    if any(d not in (1, 2) for d in j.digits):
        raise InputError(f"forward relabel needs digits in {{1,2}}, got {j}")
    return CubeIndex(j.digits, FORWARD)


def forward_unlabel(j: CubeIndex) -> CubeIndex:
    """Inverse of forward_relabel, defined on digits {1,2} only."""
    if j.alphabet != FORWARD:
        raise InputError(f"expected a forward index, got {j}")
    if any(d not in (1, 2) for d in j.digits):
        raise InputError(f"only digits {{1,2}} embed back, got {j}")
    return CubeIndex(j.digits, TERNARY)


def forward_Jk(n: int, k: int) -> CubeIndex:
    """Forward spine vertex: n-k+1 ones followed by k-1 twos (1 <= k <= n)."""
    if not 1 <= k <= n:
        raise PreconditionError(f"k={k} out of range 1..{n}")
    return CubeIndex((1,) * (n - k + 1) + (2,) * (k - 1), FORWARD)


def all_indices(n, alphabet=TERNARY):
    """Every vertex of the n-cube over the alphabet, lexicographic order."""
    return [CubeIndex(d, alphabet) for d in product(alphabet, repeat=n)]


def covering_pairs(n, alphabet=TERNARY):
    """All covering pairs (J, J') where J' raises exactly one digit by one."""
    pairs = []
    for j in all_indices(n, alphabet):
        for axis in range(1, n + 1):
            d = j.digit(axis)
            if d + 1 in alphabet:
                pairs.append((j, j.with_digit(axis, d + 1)))
    return pairs
