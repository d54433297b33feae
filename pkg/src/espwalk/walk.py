"""Numeric continuous-time quantum walk oracle.

Transition matrices are assembled from character eigenprojections only; the
spectrum is integral so ``sum_theta exp(i t theta) E_theta`` is exact up to
rounding.  Nothing here consults the closed-form criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .cayley import ConnectionSet
from .chartable import EigenProjection, projections_for
from .extraspecial import Z, ExtraspecialGroup

DEFAULT_TOL = 1e-8
UNITARY_TOL = 1e-9


class InconsistencyError(RuntimeError):
    """Projections do not resolve the identity."""


@dataclass(frozen=True)
class TransitionMatrix:
    time: float
    entries: np.ndarray

    def column(self, u: int) -> np.ndarray:
        return self.entries[:, u]

    def unitarity_error(self) -> float:
        U = self.entries
        return float(np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))))


@dataclass(frozen=True)
class NumericVerdict:
    kind: str  # "PST", "FR" or "NONE"
    time: float
    source: int
    target: Optional[int] = None
    phase: Optional[complex] = None
    alpha: Optional[complex] = None
    beta: Optional[complex] = None
    residual: float = 0.0
    balanced: bool = False

    def to_dict(self) -> dict:
        def cx(z):
            return None if z is None else [float(z.real), float(z.imag)]

        return {
            "kind": self.kind,
            "time": self.time,
            "source": self.source,
            "target": self.target,
            "phase": cx(self.phase),
            "alpha": cx(self.alpha),
            "beta": cx(self.beta),
            "abs_alpha": None if self.alpha is None else float(abs(self.alpha)),
            "abs_beta": None if self.beta is None else float(abs(self.beta)),
            "residual": self.residual,
            "balanced": self.balanced,
        }


def resolution_error(projections: Sequence[EigenProjection]) -> float:
    total = sum(p.matrix for p in projections)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def transition(projections: Sequence[EigenProjection], t: float, check: bool = True) -> TransitionMatrix:
    if check:
        err = resolution_error(projections)
        if err > 1e-8:
            raise InconsistencyError(f"projections miss the identity by {err:.3g}")
    U = sum(np.exp(1j * t * p.eigenvalue) * p.matrix for p in projections)
    return TransitionMatrix(float(t), np.asarray(U, dtype=complex))


def detect_pst(U: TransitionMatrix, u: int, tol: float = DEFAULT_TOL) -> NumericVerdict:
    col = U.column(u)
    mods = np.abs(col)
    hits = [int(v) for v in np.flatnonzero(mods >= 1 - tol) if v != u]
    if len(hits) != 1:
        return NumericVerdict("NONE", U.time, u)
    v = hits[0]
    phase = complex(col[v])
    target = np.zeros_like(col)
    target[v] = phase
    residual = float(np.linalg.norm(col - target))
    return NumericVerdict("PST", U.time, u, target=v, phase=phase, residual=residual)


def detect_fr(U: TransitionMatrix, u: int, v: int, tol: float = DEFAULT_TOL) -> NumericVerdict:
    if u == v:
        raise ValueError("fractional revival needs distinct vertices")
    col = U.column(u)
    alpha, beta = complex(col[u]), complex(col[v])
    rest = col.copy()
    rest[u] = rest[v] = 0
    residual = float(np.linalg.norm(rest))
    if abs(alpha) ** 2 + abs(beta) ** 2 < 1 - tol or abs(beta) < tol:
        return NumericVerdict("NONE", U.time, u, target=v, alpha=alpha, beta=beta, residual=residual)
    balanced = abs(abs(alpha) - abs(beta)) < tol
    return NumericVerdict("FR", U.time, u, target=v, alpha=alpha, beta=beta, residual=residual, balanced=balanced)


@dataclass
class CospectralResult:
    strongly_cospectral: bool
    plus: set[int] = field(default_factory=set)
    minus: set[int] = field(default_factory=set)
    witness: Optional[int] = None


def strongly_cospectral_bf(
    projections: Sequence[EigenProjection], u: int, v: int, tol: float = DEFAULT_TOL
) -> CospectralResult:
    if u == v:
        raise ValueError("strong cospectrality needs distinct vertices")
    out = CospectralResult(True)
    for p in projections:
        a, b = p.matrix[:, u], p.matrix[:, v]
        if np.linalg.norm(a - b) <= tol:
            if np.linalg.norm(a) > tol:
                out.plus.add(p.eigenvalue)
        elif np.linalg.norm(a + b) <= tol:
            out.minus.add(p.eigenvalue)
        else:
            return CospectralResult(False, witness=p.eigenvalue)
    return out


def eigenvalue_support_bf(projections: Sequence[EigenProjection], u: int, tol: float = DEFAULT_TOL) -> set[int]:
    return {p.eigenvalue for p in projections if np.linalg.norm(p.matrix[:, u]) > tol}


def scheme_structure_check(U: TransitionMatrix, G: ExtraspecialGroup, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``U`` is ``phase * L(z)`` entrywise, given PST from the identity."""
    verdict = detect_pst(U, 0, tol)
    if verdict.kind != "PST":
        raise ValueError(f"no perfect state transfer at t={U.time}; structure check not applicable")
    expected = verdict.phase * G.left_regular(Z)
    return bool(np.max(np.abs(U.entries - expected)) <= tol)


class WalkOracle:
    """Projections for one graph, reused across many evaluation times."""

    def __init__(self, connection: ConnectionSet, group: ExtraspecialGroup):
        self.connection = connection
        self.group = group
        self.projections = projections_for(connection, group)
        err = resolution_error(self.projections)
        if err > 1e-8:
            raise InconsistencyError(f"projections miss the identity by {err:.3g}")

    def at(self, t: float) -> TransitionMatrix:
        return transition(self.projections, t, check=False)

    def pst(self, t: float, u: int = 0, tol: float = DEFAULT_TOL) -> NumericVerdict:
        return detect_pst(self.at(t), u, tol)

    def fr(self, t: float, u: int = 0, v: int = 1, tol: float = DEFAULT_TOL) -> NumericVerdict:
        return detect_fr(self.at(t), u, v, tol)
