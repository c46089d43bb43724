"""Numerical verification harness: every transformation theorem, elliptic
identity and degeneration limit as a pass/fail check with a JSON report."""

from __future__ import annotations

from .correspondence import (
    DEFAULT_AUX,
    default_aux,
    run_correspondence_suite,
    run_dynamic_correspondence,
)
from .degeneration import SCHEDULES, DegenerationSchedule, run_degeneration_suite, schedule_defect
from .identities import DEFAULT_TAUS, asymptotics_checks, run_identity_suite
from .report import CheckReport, reports_to_json, sort_reports

_CORRESPONDENCE_CASES = tuple(
    (eq, rank) for eq in ("VI", "V", "IV", "III", "II", "I") for rank in (1, 3)
)
_DYNAMIC_EQUATIONS = ("VI", "V", "IV", "III", "II", "I")
RANK3_G4SQ = 0.7 + 0j


def run_suite(name: str, seed: int = 7) -> list[CheckReport]:
    """Run one named suite: identities|correspondence|dynamic|degeneration|all."""
    if name == "identities":
        return run_identity_suite(seed=seed)
    if name == "correspondence":
        reports = []
        for eq, rank in _CORRESPONDENCE_CASES:
            n = 100 if rank == 1 else 50
            g4 = 0j if rank == 1 else RANK3_G4SQ
            reports.append(run_correspondence_suite(eq, rank, n_points=n, seed=seed, g4sq=g4))
        return reports
    if name == "dynamic":
        return [run_dynamic_correspondence(eq, 1, seed=seed) for eq in _DYNAMIC_EQUATIONS]
    if name == "degeneration":
        reports = []
        for sched in SCHEDULES.values():
            reports.extend(run_degeneration_suite(sched, seed=seed))
        return reports
    if name == "all":
        out = []
        for part in ("identities", "correspondence", "dynamic", "degeneration"):
            out.extend(run_suite(part, seed))
        return out
    raise ValueError(f"unknown suite {name!r}")


SUITE_NAMES = ("identities", "correspondence", "dynamic", "degeneration", "all")

__all__ = [
    "CheckReport",
    "DegenerationSchedule",
    "SCHEDULES",
    "SUITE_NAMES",
    "DEFAULT_AUX",
    "DEFAULT_TAUS",
    "RANK3_G4SQ",
    "asymptotics_checks",
    "default_aux",
    "reports_to_json",
    "run_correspondence_suite",
    "run_degeneration_suite",
    "run_dynamic_correspondence",
    "run_identity_suite",
    "run_suite",
    "schedule_defect",
    "sort_reports",
]
