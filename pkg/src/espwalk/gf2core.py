"""Linear algebra over F_2, GF(2^n) arithmetic and partial spreads.

Vectors are bit-strings with coordinate 1 leftmost.  Internally a vector of
length ``m`` is an ``int`` whose most significant of ``m`` bits is coordinate 1,
so ``int(v)`` ordering matches the lexicographic order of the textual form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

INFINITY = math.inf

# Reduction polynomials, bit i = coefficient of x^i.
IRREDUCIBLE = {
    1: 0b10,  # x: GF(2) itself, reduction never triggers above degree 0
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
}


class DimensionError(ValueError):
    """Vectors of mismatched length were combined."""


class ConfigurationError(ValueError):
    """No field polynomial is stored for the requested degree."""


@dataclass(frozen=True, order=True)
class GF2Vector:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0 or not 0 <= self.value < (1 << self.length):
            raise DimensionError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def parse(cls, text: str) -> GF2Vector:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit-string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def zero(cls, length: int) -> GF2Vector:
        return cls(0, length)

    def bit(self, coord: int) -> int:
        """Coordinate ``coord`` (1-based, leftmost is 1)."""
        return (self.value >> (self.length - coord)) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __int__(self) -> int:
        return self.value

    def __xor__(self, other: GF2Vector) -> GF2Vector:
        _check_lengths(self, other)
        return GF2Vector(self.value ^ other.value, self.length)

    def is_zero(self) -> bool:
        return self.value == 0


def _check_lengths(*vectors: GF2Vector) -> int:
    lengths = {v.length for v in vectors}
    if len(lengths) > 1:
        raise DimensionError(f"mixed vector lengths {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def dot(y: GF2Vector, x: GF2Vector) -> int:
    _check_lengths(y, x)
    return (y.value & x.value).bit_count() & 1


def rank_bits(rows: Iterable[int]) -> int:
    """Rank of integer bit-rows over F_2 by elimination on leading bits."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


def rank(vectors: Sequence[GF2Vector]) -> int:
    _check_lengths(*vectors)
    return rank_bits(v.value for v in vectors)


def spans_full(vectors: Sequence[GF2Vector], m: int) -> bool:
    if vectors and _check_lengths(*vectors) != m:
        raise DimensionError(f"vectors are not of length {m}")
    return rank(vectors) == m


def nu2(x: int) -> int | float:
    """2-adic valuation; ``nu2(0)`` is ``INFINITY``."""
    if x == 0:
        return INFINITY
    x = abs(x)
    return (x & -x).bit_length() - 1


def gf2n_mul(a: int, b: int, n: int) -> int:
    """Product in GF(2^n) of polynomial representatives (bit i = coeff of x^i)."""
    try:
        poly = IRREDUCIBLE[n]
    except KeyError:
        raise ConfigurationError(f"no irreducible polynomial stored for n={n}") from None
    if not (0 <= a < (1 << n) and 0 <= b < (1 << n)):
        raise ValueError(f"operands must be {n}-bit field elements")
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= poly
    return result


def field_to_vector(a: int, n: int) -> int:
    """Map a GF(2^n) element to F_2^n bits: coefficient of 1 in coordinate 1."""
    out = 0
    for i in range(n):
        out = (out << 1) | ((a >> i) & 1)
    return out


@dataclass(frozen=True)
class GF2Subspace:
    basis: tuple[GF2Vector, ...]
    length: int

    def __post_init__(self) -> None:
        if self.basis and _check_lengths(*self.basis) != self.length:
            raise DimensionError("basis vectors do not match ambient length")
        if rank(self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span_of(cls, vectors: Sequence[GF2Vector], length: int) -> GF2Subspace:
        """Subspace spanned by ``vectors``; a dependent list is reduced."""
        basis: list[GF2Vector] = []
        for v in vectors:
            if rank([*basis, v]) > len(basis):
                basis.append(v)
        return cls(tuple(basis), length)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def points(self) -> frozenset[int]:
        """Nonzero vectors of the subspace, as integers."""
        pts = {0}
        for b in self.basis:
            pts |= {p ^ b.value for p in pts}
        pts.discard(0)
        return frozenset(pts)

    def __contains__(self, v: GF2Vector) -> bool:
        if v.length != self.length:
            return False
        return v.is_zero() or v.value in self.points()


@dataclass(frozen=True)
class PartialSpread:
    members: tuple[GF2Subspace, ...]
    length: int

    def __len__(self) -> int:
        return len(self.members)

    def take(self, count: int) -> PartialSpread:
        return PartialSpread(self.members[:count], self.length)

    def select(self, indices: Iterable[int]) -> PartialSpread:
        return PartialSpread(tuple(self.members[i] for i in indices), self.length)


def regular_spread(n: int) -> PartialSpread:
    """The 2^n + 1 F_2-images of the GF(2^n)-lines of GF(2^n)^2.

    Members are ordered <(1,0)>, <(0,1)>, then <(1,a)> for a = 1 .. 2^n - 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    q = 1 << n

    def line(u: int, w: int) -> GF2Subspace:
        basis = []
        for i in range(n):
            c = 1 << i
            hi = field_to_vector(gf2n_mul(c, u, n), n)
            lo = field_to_vector(gf2n_mul(c, w, n), n)
            basis.append(GF2Vector((hi << n) | lo, 2 * n))
        return GF2Subspace(tuple(basis), 2 * n)

    members = [line(1, 0), line(0, 1)] + [line(1, a) for a in range(1, q)]
    return PartialSpread(tuple(members), 2 * n)


def validate_spread(spread: PartialSpread, k: int) -> bool:
    if any(h.dim != k or h.length != spread.length for h in spread.members):
        return False
    point_sets = [h.points() for h in spread.members]
    return all(not (a & b) for a, b in itertools.combinations(point_sets, 2))


def spread_points(spread: PartialSpread) -> frozenset[GF2Vector]:
    pts: set[int] = set()
    for h in spread.members:
        pts |= h.points()
    return frozenset(GF2Vector(p, spread.length) for p in pts)


def max_spread_size(m: int, k: int) -> int:
    return ((1 << m) - 1) // ((1 << k) - 1)


def read_spread_file(path: str | Path) -> PartialSpread:
    members = []
    length = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vecs = [GF2Vector.parse(tok) for tok in line.split(",")]
            if length is None:
                length = vecs[0].length
            members.append(GF2Subspace(tuple(vecs), length))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
    if length is None:
        raise ValueError(f"{path}: no subspaces")
    return PartialSpread(tuple(members), length)


def format_spread(spread: PartialSpread) -> str:
    lines = [",".join(str(b) for b in h.basis) for h in spread.members]
    return "\n".join(lines) + "\n"
