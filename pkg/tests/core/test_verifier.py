# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

from unittest.mock import patch

from coreason_schubert.config import Mutation, SchubertConfig
from coreason_schubert.core.registry import REGISTRY, Check, CheckCase, CheckStatus, Outcome, Workbench
from coreason_schubert.core.verifier import VerificationSummary, Verifier


def _raising(case: CheckCase, bench: Workbench) -> Outcome:
    raise RuntimeError("boom")


def test_run_all_dtoj(small_config: SchubertConfig) -> None:
    summary = Verifier(small_config).run_all(["dtoj"])

    assert summary.ok
    assert summary.counts == {"pass": 5, "fail": 0, "skip": 0}
    assert [r.case.target for r in summary.reports] == ["D0", "D1", "D'1", "y1", "y2"]
    assert summary.mutation is None


def test_run_all_fixtures(small_config: SchubertConfig) -> None:
    summary = Verifier(small_config).run_all(["fixtures"])
    assert summary.ok, [r.witness for r in summary.failures]
    assert all(r.case.n == 2 for r in summary.reports)


def test_run_all_preserves_registry_order(small_config: SchubertConfig) -> None:
    summary = Verifier(small_config).run_all(["jacobi-trudi", "dtoj"])
    checks = [r.case.check for r in summary.reports]
    assert checks == sorted(checks, key=["dtoj", "jacobi-trudi"].index)


def test_run_case_turns_exceptions_into_failures(small_config: SchubertConfig) -> None:
    broken = Check("dtoj", "raises", REGISTRY["dtoj"].cases, _raising)
    with patch.dict(REGISTRY, {"dtoj": broken}):
        report = Verifier(small_config).run_case(CheckCase(check="dtoj", n=2, target="D0"))
    assert report.status == CheckStatus.FAIL
    assert report.witness == "RuntimeError: boom"


def test_goal_mutation_is_caught(small_config: SchubertConfig) -> None:
    config = small_config.model_copy(update={"mutation": Mutation.GOAL})
    summary = Verifier(config).run_all(["fixtures"])
    assert not summary.ok
    assert summary.mutation == "goal"
    assert any(r.case.target == "j_0" for r in summary.failures)


def test_single_worker(small_config: SchubertConfig) -> None:
    config = small_config.model_copy(update={"workers": 1})
    assert Verifier(config).run_all(["hopf"]).ok


def test_summary_properties() -> None:
    summary = VerificationSummary(reports=[])
    assert summary.ok
    assert summary.failures == []
    assert summary.counts == {"pass": 0, "fail": 0, "skip": 0}


def test_default_config() -> None:
    assert Verifier().config.max_n == SchubertConfig().max_n
