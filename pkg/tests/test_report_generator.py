# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import json
from pathlib import Path
from unittest.mock import patch

import pytest

from coreason_schubert.core.registry import CheckCase, CheckStatus, VerificationReport
from coreason_schubert.core.report_generator import ReportGenerator
from coreason_schubert.core.verifier import VerificationSummary


@pytest.fixture
def generator() -> ReportGenerator:
    return ReportGenerator()


@pytest.fixture
def summary() -> VerificationSummary:
    return VerificationSummary(
        reports=[
            VerificationReport(case=CheckCase(check="dtoj", n=2, target="D0"), status=CheckStatus.PASS, millis=4),
            VerificationReport(
                case=CheckCase(check="positivity", n=2, target="L=4"),
                status=CheckStatus.PASS,
                detail="9 classes; extended classes: 4 checked, 0 violations",
                millis=10,
            ),
            VerificationReport(
                case=CheckCase(check="dtoj", n=2, target="D1"),
                status=CheckStatus.FAIL,
                witness="phi~(D1) = 0, expected j_t[-1,0]",
                millis=2,
            ),
        ]
    )


@pytest.fixture
def passing() -> VerificationSummary:
    return VerificationSummary(
        reports=[VerificationReport(case=CheckCase(check="hopf", n=2, target="coproducts"), status=CheckStatus.PASS)]
    )


def test_to_json(generator: ReportGenerator, summary: VerificationSummary) -> None:
    data = generator.to_json(summary)
    assert data["summary"] == {"pass": 2, "fail": 1, "skip": 0, "ok": False, "mutation": None}
    assert [c["case"] for c in data["cases"]] == ["dtoj n=2 D0", "positivity n=2 L=4", "dtoj n=2 D1"]
    assert data["cases"][2]["witness"] == "phi~(D1) = 0, expected j_t[-1,0]"


def test_write_json(generator: ReportGenerator, summary: VerificationSummary, tmp_path: Path) -> None:
    path = generator.write_json(summary, tmp_path / "nested" / "report.json")
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(text) == generator.to_json(summary)


def test_per_check(generator: ReportGenerator, summary: VerificationSummary) -> None:
    rows = generator.per_check(summary)
    assert [r["check"] for r in rows] == ["dtoj", "positivity"]
    assert rows[0] == {"check": "dtoj", "pass": 1, "fail": 1, "skip": 0, "millis": 6}


def test_render_failed(generator: ReportGenerator, summary: VerificationSummary) -> None:
    """Test the Markdown report of a run with a failure."""
    report = generator.render(summary)
    assert "# Verification Report" in report
    assert "**Status:** FAILED" in report
    assert "| dtoj | 1 | 1 | 0 | 6 |" in report
    assert "### dtoj n=2 D1" in report
    assert "phi~(D1) = 0, expected j_t[-1,0]" in report
    assert "**positivity n=2 L=4** (pass): 9 classes" in report


def test_render_passed(generator: ReportGenerator, passing: VerificationSummary) -> None:
    report = generator.render(passing)
    assert "**Status:** PASSED" in report
    assert "## Failures" not in report
    assert "Negative control" not in report


def test_render_mutation(generator: ReportGenerator, passing: VerificationSummary) -> None:
    passing.mutation = "goal"
    assert "mutation `goal`" in generator.render(passing)


def test_write_markdown(generator: ReportGenerator, summary: VerificationSummary, tmp_path: Path) -> None:
    path = generator.write_markdown(summary, tmp_path / "out" / "report.md")
    assert path.read_text(encoding="utf-8").startswith("# Verification Report")


def test_console_table(generator: ReportGenerator, summary: VerificationSummary) -> None:
    lines = generator.console_table(summary).splitlines()
    assert lines[0].startswith("case")
    assert lines[1].startswith("dtoj n=2 D0")
    assert "fail" in lines[3]
    assert lines[4].strip() == "-> phi~(D1) = 0, expected j_t[-1,0]"


def test_console_table_empty(generator: ReportGenerator) -> None:
    assert generator.console_table(VerificationSummary(reports=[])) == "case  status  millis"


def test_template_loading(generator: ReportGenerator) -> None:
    content = generator._load_template()
    assert "{{ status }}" in content


def test_load_template_failure(generator: ReportGenerator, summary: VerificationSummary) -> None:
    """Test failure during template loading."""
    with patch("importlib.resources.files", side_effect=Exception("Resource error")):
        with pytest.raises(RuntimeError, match="Failed to load template: Resource error"):
            generator.render(summary)


def test_render_template_failure(generator: ReportGenerator, summary: VerificationSummary) -> None:
    with patch("coreason_schubert.core.report_generator.Template") as mock_template_cls:
        mock_template_cls.return_value.render.side_effect = Exception("Render error")
        with pytest.raises(RuntimeError, match="Failed to render template: Render error"):
            generator.render(summary)
