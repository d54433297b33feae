"""Irreducible characters of extraspecial 2-groups and their idempotents.

Idempotents are accumulated as integer matrices (every character value is an
integer) and divided by |G| once at the end.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cayley import ConnectionSet, e_y_table, linear_eigenvalue, nonlinear_eigenvalue, validate
from .extraspecial import ExtraspecialGroup, GroupElement


@dataclass(frozen=True)
class Character:
    n: int
    y: Optional[int] = None  # None marks the nonlinear character

    @property
    def is_linear(self) -> bool:
        return self.y is not None

    @property
    def degree(self) -> int:
        return 1 if self.is_linear else 1 << self.n

    def label(self) -> str:
        return f"linear({self.y:0{2 * self.n}b})" if self.is_linear else "nonlinear"


def characters(n: int) -> list[Character]:
    """Linear characters by int(y) ascending, then the nonlinear one."""
    return [Character(n, y) for y in range(1 << (2 * n))] + [Character(n)]


def char_value(chi: Character, g: GroupElement) -> int:
    if chi.is_linear:
        return -1 if (chi.y & g.v).bit_count() & 1 else 1
    if g.v:
        return 0
    return -(1 << chi.n) if g.eps else 1 << chi.n


def char_vector(chi: Character, G: ExtraspecialGroup) -> np.ndarray:
    """Values of ``chi`` over element indices."""
    idx = np.arange(G.order)
    v = idx >> 1
    if chi.is_linear:
        return 1 - 2 * (np.bitwise_count(v & chi.y) & 1).astype(np.int64)
    out = np.zeros(G.order, dtype=np.int64)
    out[0], out[1] = 1 << chi.n, -(1 << chi.n)
    return out


def _class_function_matrix(f: np.ndarray, G: ExtraspecialGroup) -> np.ndarray:
    # sum_g f(g^-1) L(g) has (x, h) entry f((x h^-1)^-1)
    quotient = G.quotient_table()
    return f[G.inv_array()][quotient]


def idempotent(chi: Character, G: ExtraspecialGroup) -> np.ndarray:
    """``E_chi = chi(1)/|G| * sum_g chi(g^-1) L(g)`` as a float matrix."""
    integral = _class_function_matrix(chi.degree * char_vector(chi, G), G)
    return integral / G.order


@dataclass(frozen=True)
class EigenProjection:
    eigenvalue: int
    matrix: np.ndarray
    members: tuple[Character, ...]

    @property
    def rank(self) -> int:
        return sum(chi.degree**2 for chi in self.members)


def character_eigenvalue(chi: Character, connection: ConnectionSet, e_table: tuple[int, ...]) -> int:
    if chi.is_linear:
        return linear_eigenvalue(e_table[chi.y], connection.ell, connection.include_z)
    return nonlinear_eigenvalue(connection.include_z)


def projections_for(connection: ConnectionSet, G: ExtraspecialGroup) -> list[EigenProjection]:
    """Eigenprojections of Cay(G, S), ordered by decreasing eigenvalue."""
    if connection.n != G.n:
        raise ValueError(f"connection set is for n={connection.n}, group has n={G.n}")
    check = validate(connection, strict=False)
    if not check:
        raise ValueError("invalid connection set: " + "; ".join(check.reasons))
    table = e_y_table(connection)
    groups: dict[int, list[Character]] = defaultdict(list)
    for chi in characters(G.n):
        groups[character_eigenvalue(chi, connection, table)].append(chi)
    out = []
    for theta in sorted(groups, reverse=True):
        members = groups[theta]
        f = sum(chi.degree * char_vector(chi, G) for chi in members)
        matrix = _class_function_matrix(f, G) / G.order
        out.append(EigenProjection(theta, matrix, tuple(members)))
    return out
