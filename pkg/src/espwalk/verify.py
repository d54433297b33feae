"""Self-verification harness behind ``espwalk verify``.

Each group pits a closed-form statement against a numeric or brute-force
route and collects every disagreement rather than stopping at the first.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import criteria
from .cayley import (
    ConnectionSet,
    adjacency_matrix,
    all_valid_sets,
    bfs_distance,
    complement,
    random_valid_sets,
    spectrum,
    validate,
)
from .extraspecial import IDENTITY, Z, ExtraspecialGroup, IsoType
from .gf2core import regular_spread, spread_points, validate_spread
from .walk import WalkOracle, detect_fr, detect_pst, eigenvalue_support_bf, scheme_structure_check, strongly_cospectral_bf

TOL = 1e-8
NEGATIVE_MARGIN = 1e-3
N2_SAMPLE = 300


@dataclass
class GroupResult:
    name: str
    failures: list[str] = field(default_factory=list)
    checked: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
        }


def _numeric_spectrum(A: np.ndarray) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(A.astype(float)))


def check_group_axioms(res: GroupResult, groups: list[ExtraspecialGroup]) -> None:
    for G in groups:
        els = G.elements()
        rng = random.Random(G.n)
        if G.n == 1:
            triples = itertools.product(els, repeat=3)
        else:
            triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(2000))
        for a, b, c in triples:
            res.checked += 1
            if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
                res.failures.append(f"associativity fails in {G} at {a},{b},{c}")
                break
        if G.n <= 2:
            center = [g for g in els if all(G.mul(g, h) == G.mul(h, g) for h in els)]
            if sorted(center) != [IDENTITY, Z]:
                res.failures.append(f"center of {G} is {center}")
            orbits = {frozenset(G.mul(G.mul(h, g), G.inv(h)) for h in els) for g in els}
            if orbits != set(G.conjugacy_classes()):
                res.failures.append(f"conjugacy classes of {G} disagree with brute force")
        for g in els:
            if G.mul(G.inv(g), g) != IDENTITY or G.mul(g, g) not in (IDENTITY, Z):
                res.failures.append(f"inverse/square law fails for {g} in {G}")
                break
        if G.n == 1:
            fours = sum(G.element_order(g) == 4 for g in els)
            want = 2 if G.iso_type is IsoType.PLUS else 6
            if fours != want:
                res.failures.append(f"{G} has {fours} elements of order 4, expected {want}")


def check_spectrum(res: GroupResult, sets: list[ConnectionSet]) -> None:
    for c in sets:
        expected = np.array(spectrum(c).as_multiset(), dtype=float)
        for iso in IsoType:
            res.checked += 1
            got = _numeric_spectrum(adjacency_matrix(c, ExtraspecialGroup(c.n, iso)))
            if np.max(np.abs(got - expected)) > TOL:
                res.failures.append(f"spectrum mismatch for {c.describe()} ({iso.value})")


def check_pst(res: GroupResult, sets: list[ConnectionSet], odd_multiple: bool = True) -> None:
    for c in sets:
        res.checked += 1
        G = ExtraspecialGroup(c.n)
        report = criteria.pst_decision(c)
        oracle = WalkOracle(c, G)
        tau0 = criteria.DyadicTime(1, int(report.m))
        U = oracle.at(tau0.radians)
        verdict = detect_pst(U, 0, TOL)
        seen = verdict.kind == "PST" and verdict.target == 1
        if seen != report.admits:
            res.failures.append(f"pst_decision disagreement on {c.describe()}: criteria={report.admits} oracle={seen}")
            continue
        if report.admits:
            if report.d_or_c != 2 ** int(report.m):
                res.failures.append(f"d_or_c {report.d_or_c} != 2^{report.m} on {c.describe()}")
            if not scheme_structure_check(U, G, TOL):
                res.failures.append(f"U(tau0) is not phase*L(z) on {c.describe()}")
            if odd_multiple:
                if oracle.pst(3 * tau0.radians).target != 1 or oracle.pst(2 * tau0.radians).kind != "NONE":
                    res.failures.append(f"odd-multiple clause fails on {c.describe()}")
        else:
            off = np.abs(U.entries) * (1 - np.eye(G.order))
            if np.max(off) >= 1 - NEGATIVE_MARGIN:
                res.failures.append(f"pst_decision disagreement on {c.describe()}: near-pure column at tau0")


def check_cospectral(res: GroupResult, sets: list[ConnectionSet], all_pairs: bool) -> None:
    for c in sets:
        G = ExtraspecialGroup(c.n)
        decided = criteria.strongly_cospectral_decision(c)
        projs = WalkOracle(c, G).projections
        phis = criteria.phi_sets(c)
        spec = set(spectrum(c).eigen_mults)
        pairs = itertools.combinations(range(G.order), 2) if all_pairs else [(0, 1)]
        for u, v in pairs:
            res.checked += 1
            bf = strongly_cospectral_bf(projs, u, v, TOL)
            expected = decided and (u ^ v) == 1
            if bf.strongly_cospectral != expected:
                res.failures.append(f"strongly_cospectral disagreement on {c.describe()} at ({u},{v})")
            elif bf.strongly_cospectral and (bf.plus != phis.plus or bf.minus != phis.minus):
                res.failures.append(f"phi sets differ on {c.describe()}")
        for u in range(G.order) if all_pairs else [0]:
            if eigenvalue_support_bf(projs, u, 1e-9) != spec:
                res.failures.append(f"eigenvalue support of vertex {u} is not the spectrum on {c.describe()}")


def check_fr(res: GroupResult, sets: list[ConnectionSet]) -> None:
    for c in sets:
        res.checked += 1
        fr = criteria.fr_classify(c)
        if fr.case != criteria.PROPER_FR:
            continue
        oracle = WalkOracle(c, ExtraspecialGroup(c.n))
        v = detect_fr(oracle.at(fr.fr_min_time.radians), 0, 1, TOL)
        b = detect_fr(oracle.at(fr.balanced_time.radians), 0, 1, TOL)
        if v.kind != "FR" or not (b.kind == "FR" and b.balanced):
            res.failures.append(f"fr_classify disagreement on {c.describe()}")
        # no revival strictly before the predicted minimum on the pi/64 grid
        for j in range(1, 64):
            t = criteria.DyadicTime(j, 6)
            if t.radians >= fr.fr_min_time.radians - 1e-12:
                break
            if oracle.fr(t.radians).kind == "FR":
                res.failures.append(f"fr earlier than predicted at {t} on {c.describe()}")
                break


def check_complement(res: GroupResult, sets: list[ConnectionSet]) -> None:
    for c in sets:
        report = criteria.pst_decision(c)
        if not report.admits:
            continue
        res.checked += 1
        tau0 = report.min_time
        if not criteria.complement_pst(c, tau0):
            res.failures.append(f"complement_pst false at tau0 for {c.describe()}")
        comp = complement(c)
        if validate(comp, strict=False):
            got = WalkOracle(comp, ExtraspecialGroup(c.n)).pst(tau0.radians)
            if got.target != 1:
                res.failures.append(f"complement of {c.describe()} lacks PST at {tau0}")


def check_distance(res: GroupResult, sets: list[ConnectionSet]) -> None:
    for c in sets:
        if c.include_z or not criteria.pst_decision(c).admits:
            continue
        res.checked += 1
        d = bfs_distance(adjacency_matrix(c, ExtraspecialGroup(c.n)), 0, 1)
        if d != 2:
            res.failures.append(f"distance(1, z) = {d} on {c.describe()}")


def check_spreads(res: GroupResult) -> None:
    for n, want_fr in ((2, False), (3, True)):
        c = criteria.spread_connection(regular_spread(n).take(2))
        oracle = WalkOracle(c, ExtraspecialGroup(n))
        res.checked += 1
        if oracle.pst(math.pi / 4).target != 1:
            res.failures.append(f"regular_spread({n}) take 2: no PST at pi/4")
        if want_fr:
            b = oracle.fr(math.pi / 8)
            if not (b.kind == "FR" and abs(abs(b.alpha) - 1 / math.sqrt(2)) < 1e-7 and abs(abs(b.beta) - 1 / math.sqrt(2)) < 1e-7):
                res.failures.append("regular_spread(3) take 2: no balanced FR at pi/8")
    for n in (2, 3):
        spread = regular_spread(n)
        for r in range(1, len(spread) + 1):
            for idx in itertools.combinations(range(len(spread)), r):
                sub = spread.select(idx)
                pts = spread_points(sub)
                c = ConnectionSet(n, frozenset(p.value for p in pts))
                if not validate(c):
                    continue
                pred = criteria.spread_predict(len(sub), n, n)
                if not pred.pst:
                    continue
                res.checked += 1
                report = criteria.pst_decision(c)
                if not report.admits or report.min_time != pred.min_time:
                    res.failures.append(f"spread_predict disagrees with pst_decision for members {idx} of regular_spread({n})")
                if pred.fr_balanced and criteria.fr_classify(c).case != criteria.PROPER_FR:
                    res.failures.append(f"spread_predict balanced FR not confirmed for members {idx}")
        if not validate_spread(spread, n):
            res.failures.append(f"regular_spread({n}) is not a spread")


def check_mixing(res: GroupResult) -> None:
    for p, n in itertools.product((2, 3, 5, 7), (1, 2, 3)):
        res.checked += 1
        try:
            r = criteria.mixing_check(p, n)
        except criteria.TheoremViolation as exc:
            res.failures.append(str(exc))
            continue
        if r.min_support != p or not math.isclose(r.bound, p ** ((2 * n + 1) / 2)):
            res.failures.append(f"mixing report wrong for p={p}, n={n}")


def run(level: str = "quick", seed: int = 0) -> list[GroupResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    n1 = all_valid_sets(1)
    plan: list[tuple[str, Callable[[GroupResult], None]]] = [
        ("n1 group axioms", lambda r: check_group_axioms(r, [ExtraspecialGroup(1, t) for t in IsoType])),
        ("n1 spectrum", lambda r: check_spectrum(r, n1)),
        ("n1 pst_decision", lambda r: check_pst(r, n1)),
        ("n1 strong cospectrality", lambda r: check_cospectral(r, n1, all_pairs=True)),
        ("n1 fr_classify", lambda r: check_fr(r, n1)),
        ("n1 complement", lambda r: check_complement(r, n1)),
        ("n1 distance", lambda r: check_distance(r, n1)),
    ]
    if level == "full":
        n2 = random_valid_sets(2, N2_SAMPLE, random.Random(seed))
        plan += [
            ("n2 group axioms", lambda r: check_group_axioms(r, [ExtraspecialGroup(k, t) for k in (2, 3) for t in IsoType])),
            ("n2 spectrum", lambda r: check_spectrum(r, n2)),
            ("n2 pst_decision", lambda r: check_pst(r, n2, odd_multiple=False)),
            ("n2 strong cospectrality", lambda r: check_cospectral(r, n2, all_pairs=False)),
            ("n2 fr_classify", lambda r: check_fr(r, n2)),
            ("n2 distance", lambda r: check_distance(r, n2)),
            ("spreads", check_spreads),
            ("mixing", check_mixing),
        ]
    results = []
    for name, fn in plan:
        res = GroupResult(name)
        start = time.perf_counter()
        try:
            fn(res)
        except Exception as exc:  # a crash in one group must not hide the others
            res.failures.append(f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
