"""Acceptance criteria 1-10.

Each test prints a single PASS/FAIL line (visible under ``pytest -v`` and
``pytest -s``) before asserting, so a red criterion still reports its numbers.
"""

import io
import itertools
import json
import math
import random
import time
from contextlib import redirect_stdout

import numpy as np
import pytest

from espwalk import criteria, verify
from espwalk.cayley import ConnectionSet, adjacency_matrix, all_valid_sets, bfs_distance, complement, random_valid_sets, spectrum
from espwalk.cli import main
from espwalk.criteria import DyadicTime
from espwalk.extraspecial import ExtraspecialGroup, IsoType
from espwalk.gf2core import regular_spread
from espwalk.walk import WalkOracle, detect_pst, eigenvalue_support_bf, scheme_structure_check, strongly_cospectral_bf

SEED = 2024
TOL = 1e-8
CS = ConnectionSet.from_strings


@pytest.fixture(scope="module")
def instances():
    return all_valid_sets(1) + random_valid_sets(2, 300, random.Random(SEED))


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, text: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}: {text}")
        assert ok, text

    return emit


def test_criterion_01_spectrum_oracle(instances, report):
    start = time.perf_counter()
    worst = 0.0
    for c in instances:
        want = np.array(spectrum(c).as_multiset(), dtype=float)
        for iso in IsoType:
            A = adjacency_matrix(c, ExtraspecialGroup(c.n, iso)).astype(float)
            worst = max(worst, float(np.max(np.abs(np.sort(np.linalg.eigvalsh(A)) - want))))
    elapsed = time.perf_counter() - start
    report(1, worst <= 1e-8 and elapsed < 60,
           f"spectrum on {len(instances)} sets x 2 iso types, max deviation {worst:.1e}, {elapsed:.1f}s")


def test_criterion_02_pst_soundness_completeness(instances, report):
    start = time.perf_counter()
    mismatches, whole_fail, near_pure = [], [], []
    positives = 0
    for c in instances:
        G = ExtraspecialGroup(c.n)
        r = criteria.pst_decision(c)
        U = WalkOracle(c, G).at(DyadicTime(1, int(r.m)).radians)
        v = detect_pst(U, 0, TOL)
        seen = v.kind == "PST" and v.target == 1
        if seen != r.admits:
            mismatches.append(c.describe())
        if r.admits:
            positives += 1
            if not scheme_structure_check(U, G, TOL):
                whole_fail.append(c.describe())
        elif np.max(np.abs(U.entries) * (1 - np.eye(G.order))) >= 1 - 1e-3:
            near_pure.append(c.describe())
    elapsed = time.perf_counter() - start
    ok = not (mismatches or whole_fail or near_pure) and elapsed < 120
    report(2, ok, f"{len(instances)} sets ({positives} PST): {len(mismatches)} mismatches, "
                  f"{len(whole_fail)} whole-matrix failures, {len(near_pure)} near-pure negatives, {elapsed:.1f}s")


def test_criterion_03_minimum_time_structure(instances, report):
    bad_power = [c.describe() for c in instances
                 if criteria.pst_decision(c).admits and criteria.pst_decision(c).d_or_c != 2 ** criteria.pst_decision(c).m]
    designated = [
        CS(["10", "01", "11"]),
        CS(["10", "01"], include_z=True),
        CS(["10", "11"], include_z=True),
        CS(["01", "11"], include_z=True),
        criteria.spread_connection(regular_spread(2).take(2)),
    ]
    odd_fail = []
    for c in designated:
        tau0 = criteria.pst_decision(c).min_time
        w = WalkOracle(c, ExtraspecialGroup(c.n))
        if w.pst(tau0.radians).target != 1 or w.pst(3 * tau0.radians).target != 1 or w.pst(2 * tau0.radians).kind != "NONE":
            odd_fail.append(c.describe())
    report(3, not bad_power and not odd_fail,
           f"d_or_c = 2^m on all PST sets ({len(bad_power)} exceptions); "
           f"PST at tau0 and 3tau0, none at 2tau0 on {len(designated) - len(odd_fail)}/{len(designated)} designated sets")


def test_criterion_04_fr_trichotomy(report):
    G = ExtraspecialGroup(1)
    c1 = CS(["10", "01", "11"])
    fr1 = criteria.fr_classify(c1)
    v = WalkOracle(c1, G).fr(math.pi / 4)
    a, b = abs(v.alpha), abs(v.beta)
    ok1 = (fr1.case == criteria.PROPER_FR and fr1.balanced_time == DyadicTime(1, 2) and v.kind == "FR"
           and abs(a - 1 / math.sqrt(2)) <= 1e-8 and abs(b - 1 / math.sqrt(2)) <= 1e-8)

    c2 = CS(["10", "01"], include_z=True)
    w2 = WalkOracle(c2, G)
    pst_times = {j for j in range(7) if w2.pst(math.pi / 2**j).target == 1}
    stray = [j for j in range(7) if j not in pst_times and w2.fr(math.pi / 2**j).kind == "FR"]
    ok2 = criteria.fr_classify(c2).case == criteria.PST_ONLY and not stray and pst_times

    ok3 = criteria.fr_classify(CS(["10", "01"])).case == criteria.NEITHER
    report(4, ok1 and ok2 and ok3,
           f"C={{10,01,11}} PROPER_FR |alpha|={a:.10f} |beta|={b:.10f} at pi/4; "
           f"C={{10,01}}+z PST_ONLY, PST at pi/2^j for j in {sorted(pst_times)}, stray FR at {stray}; "
           f"C={{10,01}} {criteria.fr_classify(CS(['10', '01'])).case}")


def test_criterion_05_spreads(report):
    start = time.perf_counter()
    c2 = criteria.spread_connection(regular_spread(2).take(2))
    G2 = ExtraspecialGroup(2)
    ok2 = G2.order == 32 and WalkOracle(c2, G2).pst(math.pi / 4).target == 1
    c3 = criteria.spread_connection(regular_spread(3).take(2))
    G3 = ExtraspecialGroup(3)
    v = WalkOracle(c3, G3).fr(math.pi / 8)
    a, b = abs(v.alpha), abs(v.beta)
    ok3 = G3.order == 128 and v.kind == "FR" and abs(a - 1 / math.sqrt(2)) <= 1e-7 and abs(b - 1 / math.sqrt(2)) <= 1e-7
    elapsed = time.perf_counter() - start
    report(5, ok2 and ok3 and elapsed < 30,
           f"order-32 PST at pi/4: {ok2}; order-128 balanced FR at pi/8 |alpha|={a:.9f} |beta|={b:.9f}; {elapsed:.2f}s")


def test_criterion_06_complement(report):
    start = time.perf_counter()
    checked, failed = 0, []
    for c in all_valid_sets(1):
        r = criteria.pst_decision(c)
        if not r.admits:
            continue
        checked += 1
        comp = complement(c)
        ok = criteria.complement_pst(c, r.min_time)
        ok = ok and WalkOracle(comp, ExtraspecialGroup(1)).pst(r.min_time.radians).target == 1
        if not ok:
            failed.append(c.describe())
    elapsed = time.perf_counter() - start
    report(6, checked > 0 and not failed and elapsed < 10,
           f"{checked} PST-admitting n=1 sets, complement PST at same tau0 on {checked - len(failed)}, {elapsed:.2f}s")


def test_criterion_07_strong_cospectrality(report):
    G = ExtraspecialGroup(1)
    wrong, support_bad, pairs = [], [], 0
    for c in all_valid_sets(1):
        decided = criteria.strongly_cospectral_decision(c)
        projs = WalkOracle(c, G).projections
        for u, v in itertools.combinations(range(G.order), 2):
            pairs += 1
            sc = strongly_cospectral_bf(projs, u, v, TOL).strongly_cospectral
            if sc != (decided and (u ^ v) == 1):
                wrong.append((c.describe(), u, v))
        spec = set(spectrum(c).eigen_mults)
        support_bad += [(c.describe(), u) for u in range(G.order) if eigenvalue_support_bf(projs, u, 1e-9) != spec]
    report(7, not wrong and not support_bad,
           f"{pairs} vertex pairs: {len(wrong)} disagreements with the g,gz rule; "
           f"{len(support_bad)} vertices with partial eigenvalue support")


def test_criterion_08_distance(instances, report):
    checked, bad = 0, []
    for c in instances:
        if c.include_z or not criteria.pst_decision(c).admits:
            continue
        checked += 1
        d = bfs_distance(adjacency_matrix(c, ExtraspecialGroup(c.n)), 0, 1)
        if d != 2:
            bad.append((c.describe(), d))
    report(8, checked > 0 and not bad, f"{checked} PST sets with z not in S, distance(1, z) = 2 on {checked - len(bad)}")


def test_criterion_09_mixing(report):
    bad = []
    for p, n in itertools.product((2, 3, 5, 7), (1, 2, 3)):
        r = criteria.mixing_check(p, n)
        if r.admits_possible or r.min_support != p or not math.isclose(r.bound, p ** ((2 * n + 1) / 2)) or not r.nonlinear_hadamard < r.order:
            bad.append((p, n))
    report(9, not bad, f"12 (p, n) pairs, mixing impossible with min_support = p and hadamard bound < |G|; exceptions {bad}")


def _search_bytes(seed: int) -> str:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["search", "--n", "2", "--verify-sample", "10", "--seed", str(seed), "--json"])
    assert code == 0
    return buf.getvalue()


def test_criterion_10_determinism_and_full_verify(report):
    first, second = _search_bytes(7), _search_bytes(7)
    json.loads(first)
    start = time.perf_counter()
    results = verify.run("full", seed=0)
    elapsed = time.perf_counter() - start
    failed = [r.name for r in results if not r.passed]
    report(10, first == second and not failed and elapsed < 300,
           f"search --seed 7 identical across runs: {first == second} ({len(first)} bytes); "
           f"full verify {len(results)} groups, failures {failed}, {elapsed:.1f}s")
