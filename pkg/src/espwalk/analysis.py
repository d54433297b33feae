"""Report assembly: closed-form verdicts plus optional oracle confirmation."""

from __future__ import annotations

import os
from typing import Iterable, Optional

from . import criteria
from .cayley import ConnectionSet, spectrum, validate
from .criteria import DyadicTime
from .gf2core import INFINITY
from .extraspecial import ExtraspecialGroup
from .walk import DEFAULT_TOL, WalkOracle, detect_fr, detect_pst, scheme_structure_check, strongly_cospectral_bf

SCHEMA_VERSION = 1
DEFAULT_MAX_ORDER = 512


class OracleTooLarge(ValueError):
    pass


def max_oracle_order() -> int:
    return int(os.environ.get("ESPWALK_MAX_ORDER", DEFAULT_MAX_ORDER))


def check_oracle_size(group: ExtraspecialGroup) -> None:
    cap = max_oracle_order()
    if group.order > cap:
        raise OracleTooLarge(f"group order {group.order} exceeds oracle cap {cap} (ESPWALK_MAX_ORDER)")


def _check(name: str, time: Optional[DyadicTime], expected, observed, residual: float | None = None, **extra) -> dict:
    out = {
        "check": name,
        "time": None if time is None else str(time),
        "expected": expected,
        "observed": observed,
        "agree": expected == observed,
    }
    if residual is not None:
        out["residual"] = residual
    out.update(extra)
    return out


def oracle_confirmation(
    c: ConnectionSet,
    group: ExtraspecialGroup,
    pst: criteria.PstReport,
    fr: criteria.FrReport,
    tol: float = DEFAULT_TOL,
    extra_times: Iterable[DyadicTime] = (),
) -> list[dict]:
    """Run the numeric walk at every time the criteria make a claim about.

    Vertex 0 is the identity and vertex 1 is z; transfer is probed between them.
    """
    check_oracle_size(group)
    oracle = WalkOracle(c, group)
    checks = []

    sc = strongly_cospectral_bf(oracle.projections, 0, 1, tol)
    checks.append(
        _check(
            "strongly_cospectral",
            None,
            pst.strongly_cospectral,
            sc.strongly_cospectral,
            witness=sc.witness,
            phi_plus=sorted(sc.plus),
            phi_minus=sorted(sc.minus),
        )
    )

    if pst.m != INFINITY:
        tau0 = DyadicTime(1, int(pst.m))
        U = oracle.at(tau0.radians)
        verdict = detect_pst(U, 0, tol)
        observed = verdict.kind == "PST" and verdict.target == 1
        checks.append(_check("pst_at_tau0", tau0, pst.admits, observed, verdict.residual, verdict=verdict.to_dict()))
        if observed:
            checks.append(_check("whole_matrix_phase_Lz", tau0, True, scheme_structure_check(U, group, tol)))

    if fr.case == criteria.PROPER_FR:
        if fr.fr_min_time is not None:
            v = detect_fr(oracle.at(fr.fr_min_time.radians), 0, 1, tol)
            checks.append(_check("fr_at_min_time", fr.fr_min_time, True, v.kind == "FR", v.residual, verdict=v.to_dict()))
        v = detect_fr(oracle.at(fr.balanced_time.radians), 0, 1, tol)
        checks.append(
            _check("balanced_fr", fr.balanced_time, True, v.kind == "FR" and v.balanced, v.residual, verdict=v.to_dict())
        )

    for t in extra_times:
        U = oracle.at(t.radians)
        p, f = detect_pst(U, 0, tol), detect_fr(U, 0, 1, tol)
        checks.append(
            {
                "check": "extra_time",
                "time": str(t),
                "agree": True,
                "pst": p.to_dict(),
                "fr": f.to_dict(),
                "unitarity_error": U.unitarity_error(),
            }
        )
    return checks


def analyze_connection(
    c: ConnectionSet,
    group: ExtraspecialGroup,
    verify: bool = False,
    tol: float = DEFAULT_TOL,
    extra_times: Iterable[DyadicTime] = (),
) -> tuple[dict, list[dict]]:
    """Build the JSON report for one set; returns (report, disagreements)."""
    spec = spectrum(c)
    phis = criteria.phi_sets(c)
    pst = criteria.pst_decision(c)
    fr = criteria.fr_classify(c)
    width = 2 * c.n
    report = {
        "schema": SCHEMA_VERSION,
        "group": {"n": group.n, "iso_type": group.iso_type.value, "order": group.order},
        "connection": c.to_dict(),
        "validation": {"connected": validate(c).connected, "reasons": validate(c, strict=True).reasons},
        "ell": c.ell,
        "degree": c.degree,
        "spectrum": {
            "e_table": {format(y, f"0{width}b"): e for y, e in enumerate(spec.e_table)},
            "eigenvalues": [[theta, mult] for theta, mult in spec.sorted_items()],
        },
        "phi": {"plus": sorted(phis.plus), "minus": sorted(phis.minus), "disjoint": phis.disjoint},
        "pst": pst.to_dict(),
        "fr": fr.to_dict(),
        "mixing": criteria.mixing_check(2, c.n).to_dict(),
    }
    disagreements: list[dict] = []
    if verify:
        checks = oracle_confirmation(c, group, pst, fr, tol, extra_times)
        report["oracle"] = {"tol": tol, "checks": checks}
        disagreements = [chk for chk in checks if not chk["agree"]]
    return report, disagreements


def render_text(report: dict) -> str:
    lines = [
        f"group: n={report['group']['n']} ({report['group']['iso_type']}), order {report['group']['order']}",
        f"connection: classes={report['connection']['classes']} include_z={report['connection']['include_z']}"
        f" (ell={report['ell']}, degree={report['degree']}, connected={report['validation']['connected']})",
        "spectrum: " + ", ".join(f"{t}^{k}" for t, k in report["spectrum"]["eigenvalues"]),
        f"Phi+ = {report['phi']['plus']}  Phi- = {report['phi']['minus']}  disjoint={report['phi']['disjoint']}",
    ]
    pst = report["pst"]
    if pst["admits"]:
        t = pst["min_time"]
        lines.append(f"PST: yes, minimum time pi/2^{t['pi_exponent']} (d_or_c={pst['d_or_c']})")
    else:
        lines.append(f"PST: no ({pst['reason']}); strongly cospectral={pst['strongly_cospectral']}")
    fr = report["fr"]
    line = f"FR: {fr['case']} (alpha={fr['alpha']}, g={fr['g']}, h={fr['h']})"
    if fr["balanced_time"]:
        line += f", balanced at pi/2^{fr['balanced_time']['pi_exponent']}"
    if fr["fr_min_time"]:
        line += f", first FR at pi/2^{fr['fr_min_time']['pi_exponent']}"
    lines.append(line)
    mix = report["mixing"]
    lines.append(f"uniform mixing: impossible (nonlinear support {mix['min_support']} < sqrt({mix['order']}))")
    for chk in report.get("oracle", {}).get("checks", []):
        status = "ok" if chk["agree"] else "DISAGREE"
        extra = f" residual={chk['residual']:.2e}" if "residual" in chk else ""
        if chk["check"] == "extra_time":
            lines.append(f"oracle t={chk['time']}: pst={chk['pst']['kind']} fr={chk['fr']['kind']}"
                         f" |alpha|={chk['fr']['abs_alpha']:.6f} |beta|={chk['fr']['abs_beta']:.6f}")
        else:
            lines.append(
                f"oracle {chk['check']}"
                + (f" at {chk['time']}" if chk["time"] else "")
                + f": expected={chk['expected']} observed={chk['observed']} [{status}]{extra}"
            )
    return "\n".join(lines)
