"""Normal Cayley graphs of extraspecial 2-groups.

A connection set is stored by class representatives: a set of nonzero vectors
of F_2^(2n) (each standing for the class {(v,0), (v,1)}) plus a flag for the
central involution z.  Normality is therefore built in.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np

from .extraspecial import ExtraspecialGroup, GroupElement
from .gf2core import GF2Vector, rank_bits


@dataclass(frozen=True)
class ConnectionSet:
    n: int
    classes: frozenset[int]
    include_z: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", frozenset(int(c) for c in self.classes))
        limit = 1 << (2 * self.n)
        bad = [c for c in self.classes if not 0 <= c < limit]
        if self.n < 1 or bad:
            raise ValueError(f"classes {bad} do not fit in F_2^{2 * self.n}")

    @classmethod
    def from_strings(cls, classes: Iterable[str], include_z: bool = False, n: int | None = None) -> ConnectionSet:
        vecs = [GF2Vector.parse(s) for s in classes]
        lengths = {v.length for v in vecs}
        if n is None:
            if len(lengths) != 1:
                raise ValueError("cannot infer n from class strings")
            n = lengths.pop() // 2
        if any(length != 2 * n for length in lengths):
            raise ValueError(f"class strings must have length {2 * n}")
        values = [v.value for v in vecs]
        if len(set(values)) != len(values):
            raise ValueError("duplicate class strings")
        return cls(n, frozenset(values), include_z)

    @classmethod
    def from_mask(cls, n: int, mask: int, include_z: bool = False) -> ConnectionSet:
        """Bit ``i`` of ``mask`` selects the nonzero vector with integer value ``i + 1``."""
        return cls(n, frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1), include_z)

    @property
    def m(self) -> int:
        return 2 * self.n

    @property
    def ell(self) -> int:
        return len(self.classes)

    @property
    def degree(self) -> int:
        return 2 * self.ell + int(self.include_z)

    def sorted_classes(self) -> list[int]:
        return sorted(self.classes)

    def class_strings(self) -> list[str]:
        return [format(c, f"0{self.m}b") for c in self.sorted_classes()]

    def vectors(self) -> list[GF2Vector]:
        return [GF2Vector(c, self.m) for c in self.sorted_classes()]

    def mask(self) -> int:
        return sum(1 << (c - 1) for c in self.classes if c)

    def contains(self, g: GroupElement) -> bool:
        if g.v == 0:
            return bool(g.eps) and self.include_z
        return g.v in self.classes

    def to_dict(self) -> dict:
        return {"n": self.n, "classes": self.class_strings(), "include_z": self.include_z}

    def describe(self) -> str:
        body = ",".join(self.class_strings()) or "-"
        return f"n={self.n} C={{{body}}} {'z in S' if self.include_z else 'z not in S'}"


@dataclass
class ValidationResult:
    valid: bool
    connected: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate(c: ConnectionSet, strict: bool = True) -> ValidationResult:
    reasons = []
    if 0 in c.classes:
        reasons.append("zero vector listed as a class")
    if c.ell == 0 and not c.include_z:
        reasons.append("empty connection set")
    if c.ell == (1 << c.m) - 1 and c.include_z:
        reasons.append("improper: S is G minus the identity")
    connected = rank_bits(c.classes) == c.m
    if strict and not connected:
        reasons.append(f"classes span rank {rank_bits(c.classes)} < {c.m}: S does not generate G")
    return ValidationResult(not reasons, connected, reasons)


@lru_cache(maxsize=None)
def hyperplane_masks(m: int) -> tuple[int, ...]:
    """For each y, the class-bitmask of nonzero x with y.x = 0."""
    out = []
    for y in range(1 << m):
        mask = 0
        for x in range(1, 1 << m):
            if not (x & y).bit_count() & 1:
                mask |= 1 << (x - 1)
        out.append(mask)
    return tuple(out)


def e_values(m: int, mask: int) -> list[int]:
    return [(mask & h).bit_count() for h in hyperplane_masks(m)]


def e_y_table(c: ConnectionSet) -> tuple[int, ...]:
    """``e_y`` indexed by ``int(y)``."""
    return tuple(e_values(c.m, c.mask()))


def linear_eigenvalue(e_y: int, ell: int, include_z: bool) -> int:
    return 4 * e_y - 2 * ell + int(include_z)


def nonlinear_eigenvalue(include_z: bool) -> int:
    return -1 if include_z else 0


@dataclass(frozen=True)
class SpectrumSummary:
    e_table: tuple[int, ...]
    eigen_mults: dict[int, int]
    degree: int
    # eigenvalue -> y values whose linear character affords it
    contributors: dict[int, tuple[int, ...]]
    nonlinear: int

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.eigen_mults.items(), reverse=True)

    def as_multiset(self) -> list[int]:
        return sorted(t for t, k in self.eigen_mults.items() for _ in range(k))


def spectrum(c: ConnectionSet) -> SpectrumSummary:
    table = e_y_table(c)
    contributors: dict[int, list[int]] = defaultdict(list)
    for y, e in enumerate(table):
        contributors[linear_eigenvalue(e, c.ell, c.include_z)].append(y)
    mults = Counter({theta: len(ys) for theta, ys in contributors.items()})
    nonlin = nonlinear_eigenvalue(c.include_z)
    mults[nonlin] += 1 << c.m
    return SpectrumSummary(
        e_table=table,
        eigen_mults=dict(sorted(mults.items(), reverse=True)),
        degree=c.degree,
        contributors={t: tuple(ys) for t, ys in sorted(contributors.items(), reverse=True)},
        nonlinear=nonlin,
    )


def connection_indicator(c: ConnectionSet, G: ExtraspecialGroup) -> np.ndarray:
    """0/1 vector over element indices marking membership in S."""
    ind = np.zeros(G.order, dtype=np.int8)
    for v in c.classes:
        ind[2 * v] = ind[2 * v + 1] = 1
    if c.include_z:
        ind[1] = 1
    return ind


def adjacency_matrix(c: ConnectionSet, G: ExtraspecialGroup) -> np.ndarray:
    if c.n != G.n:
        raise ValueError(f"connection set is for n={c.n}, group has n={G.n}")
    return connection_indicator(c, G)[G.quotient_table()].astype(np.int8)


def complement(c: ConnectionSet) -> ConnectionSet:
    everything = frozenset(range(1, 1 << c.m))
    return ConnectionSet(c.n, everything - c.classes, not c.include_z)


def bfs_distance(A: np.ndarray, source: int, target: int) -> int | None:
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in np.flatnonzero(A[u]):
                w = int(w)
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist.get(target)


def load_connection(path: str | Path) -> ConnectionSet:
    """Read a connection-set JSON file, raising ``ValueError`` with the location."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return connection_from_dict(data, source=str(path))


def connection_from_dict(data: dict, source: str = "<input>") -> ConnectionSet:
    if not isinstance(data, dict):
        raise ValueError(f"{source}: expected a JSON object")
    try:
        n = data["n"]
        classes = data["classes"]
        include_z = data.get("include_z", False)
    except KeyError as exc:
        raise ValueError(f"{source}: missing field {exc}") from None
    if not isinstance(n, int) or not isinstance(classes, list) or not isinstance(include_z, bool):
        raise ValueError(f"{source}: fields must be n:int, classes:list, include_z:bool")
    if not all(isinstance(s, str) for s in classes):
        raise ValueError(f"{source}: classes must be bit-strings such as \"0110\"")
    try:
        return ConnectionSet.from_strings(classes, include_z, n=n)
    except ValueError as exc:
        raise ValueError(f"{source}: {exc}") from exc


def dump_connection(c: ConnectionSet) -> str:
    return json.dumps(c.to_dict(), indent=2) + "\n"


def all_valid_sets(n: int) -> list[ConnectionSet]:
    """Every spanning, proper connection set for ``n`` (use for n = 1 only)."""
    m = 2 * n
    out = []
    for mask in range(1 << ((1 << m) - 1)):
        for include_z in (False, True):
            c = ConnectionSet.from_mask(n, mask, include_z)
            if validate(c):
                out.append(c)
    return out


def random_valid_sets(n: int, count: int, rng: random.Random) -> list[ConnectionSet]:
    """``count`` spanning, proper connection sets drawn by rejection sampling."""
    m = 2 * n
    top = 1 << ((1 << m) - 1)
    out = []
    while len(out) < count:
        c = ConnectionSet.from_mask(n, rng.randrange(1, top), bool(rng.getrandbits(1)))
        if validate(c):
            out.append(c)
    return out
