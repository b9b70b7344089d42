# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import time
from typing import Dict, List, Optional

import anyio
import anyio.to_thread
from pydantic import BaseModel

from coreason_schubert.config import SchubertConfig
from coreason_schubert.core.registry import (
    CHECK_IDS,
    REGISTRY,
    CheckCase,
    CheckStatus,
    VerificationReport,
    Workbench,
    cases_for,
)
from coreason_schubert.utils.logger import logger


class VerificationSummary(BaseModel):
    """All reports of one run, in registry order."""

    reports: List[VerificationReport]
    mutation: Optional[str] = None

    @property
    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in CheckStatus}
        for report in self.reports:
            counts[report.status.value] += 1
        return counts

    @property
    def ok(self) -> bool:
        return all(r.status != CheckStatus.FAIL for r in self.reports)

    @property
    def failures(self) -> List[VerificationReport]:
        return [r for r in self.reports if r.status == CheckStatus.FAIL]


class Verifier:
    """Runs registry cases in a bounded pool of worker threads."""

    def __init__(self, config: Optional[SchubertConfig] = None) -> None:
        self.config = config or SchubertConfig()
        self.bench = Workbench(self.config)

    def run_case(self, case: CheckCase) -> VerificationReport:
        """Runs one case; any exception becomes a failed report carrying the exception text."""
        started = time.perf_counter()
        try:
            outcome = REGISTRY[case.check].run(case, self.bench)
            status, witness, detail = outcome.status, outcome.witness, outcome.detail
        except Exception as e:
            logger.exception(f"Case {case.case_id} raised")
            status, witness, detail = CheckStatus.FAIL, f"{type(e).__name__}: {e}", None
        millis = int((time.perf_counter() - started) * 1000)
        report = VerificationReport(case=case, status=status, witness=witness, detail=detail, millis=millis)
        if status == CheckStatus.FAIL:
            logger.error(f"FAIL {case.case_id}: {witness}")
        else:
            logger.debug(f"{status.value.upper()} {case.case_id} ({millis} ms)")
        return report

    async def _run_cases(self, cases: List[CheckCase]) -> List[VerificationReport]:
        results: Dict[int, VerificationReport] = {}
        limiter = anyio.CapacityLimiter(max(1, self.config.workers))

        async def worker(index: int, case: CheckCase) -> None:
            results[index] = await anyio.to_thread.run_sync(self.run_case, case, limiter=limiter)

        async with anyio.create_task_group() as tg:
            for index, case in enumerate(cases):
                tg.start_soon(worker, index, case)
        return [results[i] for i in range(len(cases))]

    def run_all(self, checks: Optional[List[str]] = None) -> VerificationSummary:
        """
        Runs every case of the selected checks (all by default) for ranks up to ``max_n``.

        Returns:
            The summary with reports sorted in registry order.
        """
        cases = cases_for(self.config, checks)
        selected = ", ".join(checks) if checks else ", ".join(CHECK_IDS)
        logger.info(f"Running {len(cases)} cases ({selected}) with {self.config.workers} workers")
        if self.config.mutation_name:
            logger.warning(f"Negative control active: mutation {self.config.mutation_name}")
        reports = anyio.run(self._run_cases, cases)
        summary = VerificationSummary(reports=reports, mutation=self.config.mutation_name)
        counts = summary.counts
        logger.info(f"Finished: {counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
        return summary
