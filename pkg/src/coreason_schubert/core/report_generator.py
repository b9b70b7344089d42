# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import importlib.resources
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List

from jinja2 import Template

from coreason_schubert.core.registry import CHECK_IDS
from coreason_schubert.core.verifier import VerificationSummary
from coreason_schubert.utils.logger import logger


class ReportGenerator:
    """Writes the JSON report and renders the Markdown report of a verification run."""

    TEMPLATE_PACKAGE = "coreason_schubert.templates"
    TEMPLATE_NAME = "report.md.j2"

    def to_json(self, summary: VerificationSummary) -> Dict[str, Any]:
        return {
            "summary": {**summary.counts, "ok": summary.ok, "mutation": summary.mutation},
            "cases": [report.to_record() for report in summary.reports],
        }

    def write_json(self, summary: VerificationSummary, path: Path) -> Path:
        """Writes the report with sorted keys and a trailing newline."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as handle:
            json.dump(self.to_json(summary), handle, indent=2, sort_keys=True)
            handle.write("\n")
        logger.info(f"JSON report written to {path}")
        return path

    def per_check(self, summary: VerificationSummary) -> List[Dict[str, Any]]:
        rows: Dict[str, Dict[str, Any]] = {}
        for report in summary.reports:
            check = report.case.check
            row = rows.setdefault(check, {"check": check, "pass": 0, "fail": 0, "skip": 0, "millis": 0})
            row[report.status.value] += 1
            row["millis"] += report.millis
        return [rows[c] for c in CHECK_IDS if c in rows]

    def render(self, summary: VerificationSummary) -> str:
        """
        Renders the Markdown report.

        Raises:
            RuntimeError: If the template cannot be loaded or rendering fails.
        """
        try:
            template = Template(self._load_template())
        except Exception as e:
            logger.error(f"Failed to load template: {e}")
            raise RuntimeError(f"Failed to load template: {e}") from e

        records = [report.to_record() for report in summary.reports]
        context = {
            "status": "PASSED" if summary.ok else "FAILED",
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "mutation": summary.mutation,
            "counts": summary.counts,
            "total": len(records),
            "checks": self.per_check(summary),
            "failures": [r for r in records if r["status"] == "fail"],
            "notes": [r for r in records if r["status"] != "fail" and r.get("detail")],
        }
        try:
            rendered: str = template.render(context)
            return rendered
        except Exception as e:
            logger.error(f"Failed to render template: {e}")
            raise RuntimeError(f"Failed to render template: {e}") from e

    def write_markdown(self, summary: VerificationSummary, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(summary), encoding="utf-8")
        logger.info(f"Markdown report written to {path}")
        return path

    def console_table(self, summary: VerificationSummary) -> str:
        """Fixed-width table of every case for the terminal."""
        width = max((len(r.case.case_id) for r in summary.reports), default=4)
        lines = [f"{'case'.ljust(width)}  status  millis"]
        for report in summary.reports:
            line = f"{report.case.case_id.ljust(width)}  {report.status.value.ljust(6)}  {report.millis:>6}"
            if report.witness:
                line += f"\n{' ' * width}  -> {report.witness}"
            lines.append(line)
        return "\n".join(lines)

    def _load_template(self) -> str:
        ref = importlib.resources.files(self.TEMPLATE_PACKAGE) / self.TEMPLATE_NAME
        return ref.read_text(encoding="utf-8")
