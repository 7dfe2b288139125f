"""Two-sided verification of catalog identities.

verify() evaluates both sides at the requested precision and again with
the target doubled; an identity passes only when both rungs agree to at
least digits - 2 decimal places.  The doubled rung guards against an
accidental low-precision coincidence and against truncation artifacts
that happen to match at one precision.

verify_all() runs entries in parallel worker processes (the scalar
backend keeps global precision state per process, so process isolation
is what makes parallel evaluation safe) and merges reports in id order.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from mpmath import mp, mpf, workdps

from .catalog import Identity, catalog_by_id, evaluate_identity, load_catalog
from .context import PrecisionContext
from .errors import EvaluationError


@dataclass
class VerificationReport:
    identity_id: str
    digits: int
    agreement: float
    agreement_doubled: float
    passed: bool
    lhs: str
    rhs: str
    seconds: float
    error: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.identity_id,
            "pass": self.passed,
            "digits": self.digits,
            "agreement": round(self.agreement, 2),
            "agreement_doubled": round(self.agreement_doubled, 2),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "seconds": round(self.seconds, 3),
            "error": self.error,
        }


def agreement_digits(lhs, rhs, cap: int) -> float:
    """Number of decimal places to which two values agree (capped)."""
    with workdps(cap + 15):
        diff = abs(lhs - rhs)
        scale = max(mpf(1), abs(lhs), abs(rhs))
        if diff == 0:
            return float(cap)
        d = -mp.log10(diff / scale)
        return float(min(mpf(cap), d))


def verify(identity_or_id, digits: Optional[int] = None,
           catalog_path: Optional[str] = None,
           ladder: bool = True) -> VerificationReport:
    """Verify one identity at `digits` plus the doubled-precision rung."""
    if isinstance(identity_or_id, Identity):
        ident = identity_or_id
    else:
        ident = catalog_by_id(catalog_path)[identity_or_id]
    digits = digits or ident.default_digits
    t0 = time.time()
    try:
        ctx = PrecisionContext(digits)
        lhs, rhs = evaluate_identity(ident, ctx)
        agree = agreement_digits(lhs, rhs, ctx.working_digits)
        if ladder:
            ctx2 = ctx.doubled()
            lhs2, rhs2 = evaluate_identity(ident, ctx2)
            agree2 = agreement_digits(lhs2, rhs2, ctx2.working_digits)
        else:
            agree2 = agree
        passed = agree >= digits - 2 and agree2 >= digits - 2
        with workdps(digits):
            ls, rs = mp.nstr(lhs, digits), mp.nstr(rhs, digits)
        return VerificationReport(ident.id, digits, agree, agree2, passed,
                                  ls, rs, time.time() - t0)
    except EvaluationError as exc:
        return VerificationReport(ident.id, digits, 0.0, 0.0, False,
                                  "", "", time.time() - t0, error=str(exc))


def _verify_worker(args):
    ident_id, digits, catalog_path, ladder = args
    rep = verify(ident_id, digits, catalog_path, ladder)
    return rep


def verify_all(tags: Sequence[str] = (), digits: Optional[int] = None,
               parallelism: Optional[int] = None,
               catalog_path: Optional[str] = None,
               include_slow: bool = False,
               ids: Sequence[str] = (),
               ladder: bool = True) -> List[VerificationReport]:
    """Verify a filtered batch; failures are collected, never aborting."""
    records = load_catalog(catalog_path)
    selected = []
    for r in records:
        if ids and r.id not in ids:
            continue
        if tags and not all(t in r.tags for t in tags):
            continue
        if not include_slow and "slow" in r.tags and not ids and "slow" not in tags:
            continue
        selected.append(r)
    selected.sort(key=lambda r: r.id)
    jobs = [(r.id, digits or r.default_digits, catalog_path, ladder)
            for r in selected]
    if not jobs:
        return []
    workers = parallelism if parallelism is not None else (os.cpu_count() or 1)
    workers = max(1, min(workers, len(jobs)))
    if workers == 1:
        reports = [_verify_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_worker, jobs))
    reports.sort(key=lambda rep: rep.identity_id)
    return reports


def format_report_human(rep: VerificationReport) -> str:
    status = "PASS" if rep.passed else "FAIL"
    msg = (f"{status}  {rep.identity_id:<28} digits={rep.digits:<4} "
           f"agree={rep.agreement:6.1f}/{rep.agreement_doubled:6.1f} "
           f"({rep.seconds:.2f}s)")
    if rep.error:
        msg += f"  error: {rep.error}"
    return msg


def format_reports_json(reports: List[VerificationReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True)
