"""Exhaustive classification of all normal connection sets for small n."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import criteria
from .analysis import oracle_confirmation
from .cayley import ConnectionSet, e_values
from .extraspecial import ExtraspecialGroup

LABELS = (
    "pst_and_proper_fr",
    "pst_only",
    "strongly_cospectral_no_pst",
    "not_strongly_cospectral",
)


def classify(pst: criteria.PstReport, fr: criteria.FrReport) -> str:
    if pst.admits != (fr.case != criteria.NEITHER):
        raise criteria.TheoremViolation(f"PST verdict {pst.admits} contradicts FR case {fr.case}")
    if pst.admits:
        return "pst_and_proper_fr" if fr.case == criteria.PROPER_FR else "pst_only"
    return "strongly_cospectral_no_pst" if pst.strongly_cospectral else "not_strongly_cospectral"


def _classify_range(n: int, start: int, stop: int) -> list[tuple[int, bool, str]]:
    m = 2 * n
    full = (1 << ((1 << m) - 1)) - 1
    out = []
    for mask in range(start, stop):
        table = e_values(m, mask)
        ell = table[0]
        # C spans iff no nonzero functional vanishes on all of it
        if ell == 0 or any(e == ell for e in table[1:]):
            continue
        for include_z in (False, True):
            if include_z and mask == full:
                continue
            pst = criteria.pst_from_table(n, ell, table, include_z)
            fr = criteria.fr_from_table(ell, table, include_z)
            out.append((mask, include_z, classify(pst, fr)))
    return out


def enumerate_valid(n: int, jobs: int = 1) -> list[tuple[int, bool, str]]:
    """All (class mask, include_z, label) with spanning, proper S, in mask order."""
    if n not in (1, 2):
        raise ValueError(f"exhaustive search supports n in {{1, 2}}, got {n}")
    total = 1 << ((1 << (2 * n)) - 1)
    if jobs <= 1:
        return _classify_range(n, 0, total)
    bounds = [total * i // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_classify_range, [n] * jobs, bounds[:-1], bounds[1:])
        return [row for part in parts for row in part]


@dataclass
class SearchSummary:
    n: int
    total_valid: int
    counts: dict[str, int]
    exemplars: dict[str, dict]
    verification: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "total_valid": self.total_valid,
            "counts": self.counts,
            "exemplars": self.exemplars,
            "verification": self.verification,
        }


def search(n: int, verify_sample: int = 0, seed: int = 0, jobs: int = 1, tol: float = 1e-8) -> SearchSummary:
    rows = enumerate_valid(n, jobs)
    counts = {label: 0 for label in LABELS}
    exemplars: dict[str, dict] = {}
    for mask, include_z, label in rows:
        counts[label] += 1
        if label not in exemplars:
            exemplars[label] = ConnectionSet.from_mask(n, mask, include_z).to_dict()

    verification: dict = {"seed": seed, "sample_size": 0, "disagreements": []}
    if verify_sample > 0:
        rng = random.Random(seed)
        picked = rng.sample(range(len(rows)), min(verify_sample, len(rows)))
        group = ExtraspecialGroup(n)
        sampled = []
        for i in sorted(picked):
            mask, include_z, label = rows[i]
            c = ConnectionSet.from_mask(n, mask, include_z)
            checks = oracle_confirmation(c, group, criteria.pst_decision(c), criteria.fr_classify(c), tol)
            bad = [chk["check"] for chk in checks if not chk["agree"]]
            residual = max((chk.get("residual", 0.0) for chk in checks), default=0.0)
            sampled.append({"connection": c.to_dict(), "label": label, "agree": not bad, "max_residual": residual})
            if bad:
                verification["disagreements"].append({"connection": c.to_dict(), "checks": bad})
        verification["sample_size"] = len(sampled)
        verification["sampled"] = sampled
    return SearchSummary(n, len(rows), counts, exemplars, verification)
