"""Extraspecial 2-groups in cocycle normal form.

An element is a pair ``(v, eps)`` with ``v`` in F_2^(2n) (coordinate 1 is the
most significant bit of ``v``) and ``eps`` the central bit.  The product is

    (v, e)(w, d) = (v ^ w, e ^ d ^ B(v, w))

for a bilinear cocycle ``B`` whose symmetrisation is the standard symplectic
form.  Element index ``2*v + eps`` fixes the row/column order of every matrix
built downstream.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np


class IsoType(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


class GroupElement(NamedTuple):
    v: int
    eps: int

    @property
    def index(self) -> int:
        return 2 * self.v + self.eps

    @classmethod
    def from_index(cls, index: int) -> GroupElement:
        return cls(index >> 1, index & 1)


IDENTITY = GroupElement(0, 0)
Z = GroupElement(0, 1)


def _mask(m: int, parity: int) -> int:
    """Bits at coordinates 1, 3, 5, ... (parity=1) or 2, 4, 6, ... (parity=0)."""
    out = 0
    for coord in range(1, m + 1):
        if coord % 2 == parity:
            out |= 1 << (m - coord)
    return out


@dataclass(frozen=True)
class ExtraspecialGroup:
    n: int
    iso_type: IsoType = IsoType.PLUS

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        object.__setattr__(self, "iso_type", IsoType(self.iso_type))

    @property
    def m(self) -> int:
        return 2 * self.n

    @property
    def order(self) -> int:
        return 1 << (2 * self.n + 1)

    @cached_property
    def _odd(self) -> int:
        return _mask(self.m, 1)

    @cached_property
    def _first_pair(self) -> int:
        return 0b11 << (self.m - 2)

    def cocycle(self, v: int, w: int) -> int:
        # sum_i v_{2i-1} w_{2i}; coordinate 2i sits one bit below 2i-1
        b = (((v & self._odd) >> 1) & w).bit_count()
        if self.iso_type is IsoType.MINUS:
            b += (v & w & self._first_pair).bit_count()
        return b & 1

    def cocycle_matrix(self) -> np.ndarray:
        """The 2n x 2n bit matrix of the cocycle, rows/cols by coordinate."""
        m = self.m
        unit = [1 << (m - c) for c in range(1, m + 1)]
        return np.array([[self.cocycle(a, b) for b in unit] for a in unit], dtype=np.int8)

    def quadratic(self, v: int) -> int:
        return self.cocycle(v, v)

    def elements(self) -> list[GroupElement]:
        return [GroupElement.from_index(i) for i in range(self.order)]

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return GroupElement(a.v ^ b.v, a.eps ^ b.eps ^ self.cocycle(a.v, b.v))

    def inv(self, a: GroupElement) -> GroupElement:
        return GroupElement(a.v, a.eps ^ self.quadratic(a.v))

    def element_order(self, a: GroupElement) -> int:
        if a == IDENTITY:
            return 1
        sq = self.mul(a, a)
        return 2 if sq == IDENTITY else 4

    def center(self) -> list[GroupElement]:
        return [IDENTITY, Z]

    def conjugacy_classes(self) -> list[frozenset[GroupElement]]:
        classes = [frozenset({IDENTITY}), frozenset({Z})]
        for v in range(1, 1 << self.m):
            classes.append(frozenset({GroupElement(v, 0), GroupElement(v, 1)}))
        return classes

    def class_of(self, a: GroupElement) -> frozenset[GroupElement]:
        if a.v == 0:
            return frozenset({a})
        return frozenset({GroupElement(a.v, 0), GroupElement(a.v, 1)})

    @cached_property
    def _index_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.arange(self.order)
        return idx >> 1, idx & 1

    def _cocycle_array(self, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        b = np.bitwise_count(((v & self._odd) >> 1) & w)
        if self.iso_type is IsoType.MINUS:
            b = b + np.bitwise_count(v & w & self._first_pair)
        return (b & 1).astype(np.int64)

    @cached_property
    def _mul_table(self) -> np.ndarray:
        v, e = self._index_arrays
        vv, ww = v[:, None], v[None, :]
        eps = e[:, None] ^ e[None, :] ^ self._cocycle_array(vv, ww)
        table = 2 * (vv ^ ww) + eps
        table.flags.writeable = False
        return table

    def mul_table(self) -> np.ndarray:
        """``T[a, b]`` = index of ``a * b`` (read-only)."""
        return self._mul_table

    def inv_array(self) -> np.ndarray:
        v, e = self._index_arrays
        return 2 * v + (e ^ self._cocycle_array(v, v))

    def quotient_table(self) -> np.ndarray:
        """``D[a, b]`` = index of ``a * b^-1``."""
        return self._mul_table[:, self.inv_array()]

    def left_regular(self, g: GroupElement) -> np.ndarray:
        """Permutation matrix of ``L(g)``: ``e_x -> e_{gx}``."""
        perm = self.mul_table()[g.index]
        mat = np.zeros((self.order, self.order))
        mat[perm, np.arange(self.order)] = 1.0
        return mat


def construct(n: int, iso_type: IsoType | str = IsoType.PLUS) -> ExtraspecialGroup:
    return ExtraspecialGroup(n, IsoType(iso_type))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ClassStructure:
    """Class and character counts of an extraspecial p-group of order p^(2n+1)."""

    p: int
    n: int
    order: int
    class_count: int
    # (class size, number of classes of that size)
    class_sizes: tuple[tuple[int, int], ...]
    linear_count: int
    nonlinear_count: int
    nonlinear_degree: int
    nonlinear_support: int

    def nonlinear_row(self) -> tuple[list[int], list[float]]:
        """Class sizes and normalised |psi(g)|/psi(1) for one nonlinear character."""
        sizes = [1] * self.p + [self.p] * (self.p ** (2 * self.n) - 1)
        values = [1.0] * self.p + [0.0] * (self.p ** (2 * self.n) - 1)
        return sizes, values


def class_structure_p(p: int, n: int) -> ClassStructure:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    noncentral = p ** (2 * n) - 1
    return ClassStructure(
        p=p,
        n=n,
        order=p ** (2 * n + 1),
        class_count=p + noncentral,
        class_sizes=((1, p), (p, noncentral)),
        linear_count=p ** (2 * n),
        nonlinear_count=p - 1,
        nonlinear_degree=p**n,
        nonlinear_support=p,
    )
