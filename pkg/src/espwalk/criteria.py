"""Closed-form PST / fractional revival / uniform mixing criteria.

Everything here works from the ``e_y`` table of a connection set; no matrices
are built.  Times are exact dyadic multiples of pi.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .cayley import ConnectionSet, e_y_table, linear_eigenvalue, nonlinear_eigenvalue, validate
from .extraspecial import class_structure_p
from .gf2core import INFINITY, PartialSpread, nu2, spread_points, validate_spread


class TheoremViolation(AssertionError):
    """A computed quantity contradicts a proven statement; indicates a bug."""


class ContractError(ValueError):
    """An operation was called outside its precondition."""


_DYADIC = re.compile(r"^\s*(\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


@dataclass(frozen=True)
class DyadicTime:
    """The time ``numerator * pi / 2**exponent``, kept in lowest terms."""

    numerator: int
    exponent: int

    def __post_init__(self) -> None:
        num, exp = self.numerator, self.exponent
        if num < 0 or exp < 0:
            raise ValueError("dyadic times must be nonnegative")
        while num and num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def parse(cls, text: str) -> DyadicTime:
        """Parse ``"p/2^m"`` meaning ``p * pi / 2^m``."""
        match = _DYADIC.match(text)
        if not match:
            raise ValueError(f"expected a time of the form p/2^m, got {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    @property
    def radians(self) -> float:
        return self.numerator * math.pi / 2**self.exponent

    def times(self, k: int) -> DyadicTime:
        return DyadicTime(self.numerator * k, self.exponent)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"

    def pretty(self) -> str:
        num = "" if self.numerator == 1 else str(self.numerator)
        return f"{num}pi" if self.exponent == 0 else f"{num}pi/{2**self.exponent}"

    def to_dict(self) -> dict:
        return {"pi_numerator": self.numerator, "pi_exponent": self.exponent, "radians": self.radians}


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def _gcd_all(values: Sequence[int]) -> int:
    return math.gcd(*values) if values else 0


def _require_nonempty(c: ConnectionSet) -> None:
    check = validate(c, strict=False)
    if not check:
        raise ValueError(f"{c.describe()}: " + "; ".join(check.reasons))


# -- strong cospectrality ----------------------------------------------------


@dataclass(frozen=True)
class PhiSets:
    plus: frozenset[int]
    minus: frozenset[int]

    @property
    def disjoint(self) -> bool:
        return not (self.plus & self.minus)


def phi_sets(c: ConnectionSet) -> PhiSets:
    table = e_y_table(c)
    plus = frozenset(linear_eigenvalue(e, c.ell, c.include_z) for e in table)
    return PhiSets(plus, frozenset({nonlinear_eigenvalue(c.include_z)}))


def strongly_cospectral_decision(c: ConnectionSet) -> bool:
    return phi_sets(c).disjoint


# -- perfect state transfer --------------------------------------------------


@dataclass(frozen=True)
class PstReport:
    admits: bool
    # None when admits; otherwise the first y (by int value) whose valuation falls short
    reason: Optional[dict]
    m: int | float
    d_or_c: int
    strongly_cospectral: bool
    connected: bool

    @property
    def min_time(self) -> Optional[DyadicTime]:
        if not self.admits:
            return None
        return DyadicTime(1, int(self.m))

    def to_dict(self) -> dict:
        return {
            "admits": self.admits,
            "reason": self.reason or "OK",
            "m": self.m if self.m != INFINITY else None,
            "d_or_c": self.d_or_c,
            "min_time": None if self.min_time is None else self.min_time.to_dict(),
            "strongly_cospectral": self.strongly_cospectral,
            "connected": self.connected,
        }


def _pst_threshold(ell: int, include_z: bool) -> int | float:
    return nu2(ell + 1) if include_z else nu2(ell)


def _pst_exponent(ell: int, include_z: bool) -> int | float:
    return nu2(2 * ell + 2) if include_z else nu2(2 * ell)


def pst_from_table(n: int, ell: int, table: Sequence[int], include_z: bool, connected: bool = True) -> PstReport:
    """PST verdict from the raw ``e_y`` table."""
    need = _pst_threshold(ell, include_z)
    reason = None
    for y, e in enumerate(table):
        got = nu2(ell - e)
        if got < need:
            reason = {"y": format(y, f"0{2 * n}b"), "nu2_gap": got, "required": need}
            break
    admits = reason is None
    m = _pst_exponent(ell, include_z)
    lead = 2 * ell + 2 if include_z else 2 * ell
    d_or_c = _gcd_all([lead] + [4 * e - 4 * ell for e in table])
    sc = nonlinear_eigenvalue(include_z) not in {linear_eigenvalue(e, ell, include_z) for e in table}
    if admits:
        if d_or_c != 2**m:
            raise TheoremViolation(f"gcd {d_or_c} differs from 2^{m}")
        if not sc:
            raise TheoremViolation("PST admitted without strong cospectrality")
    return PstReport(admits, reason, m, d_or_c, sc, connected)


def pst_decision(c: ConnectionSet) -> PstReport:
    _require_nonempty(c)
    return pst_from_table(c.n, c.ell, e_y_table(c), c.include_z, validate(c).connected)


def gcd_power2_check(c: ConnectionSet) -> int:
    """``gcd(ell - e_y)`` over all y; 0 only when every e_y equals ell."""
    M = _gcd_all([c.ell - e for e in e_y_table(c)])
    if M and not _is_power_of_two(M):
        raise TheoremViolation(f"gcd of ell - e_y is {M}, not a power of 2")
    return M


# -- fractional revival ------------------------------------------------------

NEITHER = "NEITHER"
PST_ONLY = "PST_ONLY"
PROPER_FR = "PROPER_FR"


@dataclass(frozen=True)
class FrReport:
    alpha: int | float
    threshold: int | float
    g: int
    h: Optional[int]
    case: str
    fr_min_time: Optional[DyadicTime]
    balanced_time: Optional[DyadicTime]

    def to_dict(self) -> dict:
        return {
            "alpha": None if self.alpha == INFINITY else self.alpha,
            "threshold": self.threshold,
            "g": self.g,
            "h": self.h,
            "case": self.case,
            "fr_min_time": None if self.fr_min_time is None else self.fr_min_time.to_dict(),
            "balanced_time": None if self.balanced_time is None else self.balanced_time.to_dict(),
        }


def fr_from_table(ell: int, table: Sequence[int], include_z: bool) -> FrReport:
    M = _gcd_all([ell - e for e in table])
    if M and not _is_power_of_two(M):
        raise TheoremViolation(f"gcd of ell - e_y is {M}, not a power of 2")
    alpha = nu2(M)
    t = _pst_threshold(ell, include_z)
    g_exp = min(_pst_exponent(ell, include_z), alpha + 2)
    g = 2 ** int(g_exp)
    h = None if alpha == INFINITY else 2 ** (int(alpha) + 2) // g
    if alpha <= t - 1:
        case = NEITHER
    elif alpha == t:
        case = PST_ONLY
    else:
        case = PROPER_FR
    fr_min = balanced = None
    if case == PROPER_FR:
        # 2 pi / (h g) = pi / 2^(alpha+1); no positive minimum when alpha is infinite
        fr_min = None if alpha == INFINITY else DyadicTime(1, int(alpha) + 1)
        balanced = DyadicTime(1, int(g_exp) + 1)
    return FrReport(alpha, t, g, h, case, fr_min, balanced)


def fr_classify(c: ConnectionSet) -> FrReport:
    _require_nonempty(c)
    return fr_from_table(c.ell, e_y_table(c), c.include_z)


# -- complements -------------------------------------------------------------


def complement_pst(c: ConnectionSet, tau: DyadicTime | float) -> bool:
    """Whether the complement also has PST at ``tau``: |G| tau in 2 pi Z."""
    if not pst_decision(c).admits:
        raise ContractError(f"{c.describe()} does not admit perfect state transfer")
    order = 1 << (2 * c.n + 1)
    if isinstance(tau, DyadicTime):
        return (order * tau.numerator) % (2 ** (tau.exponent + 1)) == 0
    x = order * tau / (2 * math.pi)
    return abs(x - round(x)) <= 1e-9 * max(1.0, abs(x))


# -- spreads -----------------------------------------------------------------


def spread_connection(spread: PartialSpread) -> ConnectionSet:
    if not spread.members:
        raise ValueError("empty spread")
    k = spread.members[0].dim
    if not validate_spread(spread, k):
        raise ValueError("members are not pairwise trivially intersecting subspaces of equal dimension")
    if spread.length % 2:
        raise ValueError(f"ambient dimension {spread.length} is odd")
    return ConnectionSet(spread.length // 2, frozenset(v.value for v in spread_points(spread)), False)


@dataclass(frozen=True)
class SpreadPrediction:
    pst: bool
    min_time: Optional[DyadicTime]
    fr_balanced: bool

    @property
    def label(self) -> str:
        if not self.pst:
            return "NO_CLAIM"
        return "PST+FR_BALANCED" if self.fr_balanced else "PST"

    def to_dict(self) -> dict:
        return {
            "claim": self.label,
            "min_time": None if self.min_time is None else self.min_time.to_dict(),
            "fr_balanced": self.fr_balanced,
        }


def spread_predict(N: int, k: int, n: int) -> SpreadPrediction:
    """What is guaranteed for a spanning partial k-spread with N members.

    Outside the 2-adic hypotheses the answer is NO_CLAIM, not a negative verdict.
    """
    if N < 1 or k < 1 or k > 2 * n:
        raise ValueError(f"bad spread parameters N={N}, k={k}, n={n}")
    v = nu2(N)
    if v > k - 1:
        return SpreadPrediction(False, None, False)
    return SpreadPrediction(True, DyadicTime(1, int(nu2(2 * N))), v <= k - 2)


# -- uniform mixing ----------------------------------------------------------


def hadamard_bound(class_sizes: Sequence[int], char_row: Sequence[float]) -> float:
    if len(class_sizes) != len(char_row):
        raise ValueError("class_sizes and char_row differ in length")
    return math.fsum(abs(s * v) for s, v in zip(class_sizes, char_row)) ** 2


@dataclass(frozen=True)
class MixingReport:
    p: int
    n: int
    order: int
    min_support: int
    bound: float
    nonlinear_hadamard: float
    admits_possible: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "order": self.order,
            "min_support": self.min_support,
            "bound": self.bound,
            "nonlinear_hadamard_bound": self.nonlinear_hadamard,
            "admits_possible": self.admits_possible,
        }


def mixing_check(p: int, n: int) -> MixingReport:
    info = class_structure_p(p, n)
    bound = math.sqrt(info.order)
    sizes, values = info.nonlinear_row()
    report = MixingReport(
        p=p,
        n=n,
        order=info.order,
        min_support=info.nonlinear_support,
        bound=bound,
        nonlinear_hadamard=hadamard_bound(sizes, values),
        admits_possible=info.nonlinear_support >= bound,
    )
    if report.admits_possible or report.nonlinear_hadamard >= report.order:
        raise TheoremViolation(f"mixing not excluded for p={p}, n={n}")
    return report
