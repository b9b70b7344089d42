# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Mutation(str, Enum):
    """Negative-control switch: flip one sign in a single construction."""

    NONE = "none"
    COMMEQS = "commeqs"
    GOAL = "goal"
    SCHUBERT = "schubert"


class SchubertConfig(BaseSettings):
    """
    Configuration for the verification harness.
    Reads from SCHUBERT_* environment variables and .env file.
    """

    model_config = SettingsConfigDict(env_prefix="SCHUBERT_", env_file=".env", env_file_encoding="utf-8")

    # Ranks
    max_n: int = Field(default=4, description="Largest rank n that any check runs at")
    symbolic_max_n: int = Field(
        default=3, description="Largest n checked symbolically; above it identities are checked at sample points"
    )
    sample_points: int = Field(default=4, description="Exact rational sample points per sampled identity")
    sample_seed: int = Field(default=20240601, description="Seed for sample points")

    # Peterson algebra
    jsolve_slack: Optional[int] = Field(default=None, description="j_solve cutoff is length + slack (default n)")
    jsolve_retries: int = Field(default=3, description="Cutoff growth attempts in j_solve")
    oracle_max_length: int = Field(default=6, description="Length bound of the j-basis oracle comparison")
    oracle_max_n: int = Field(default=3, description="Largest n of the j-basis oracle comparison")
    positivity_max_length: int = Field(default=6, description="Length bound of the positivity scan")
    peterson_side_max_n: int = Field(default=3, description="Largest n of the Peterson-side main theorem check")
    solve_outside_box_max_n: int = Field(
        default=4, description="Largest n where a mu outside its box is compared through j_solve on w t_lambda"
    )
    hopf_max_length: int = Field(default=6, description="Length bound of the coproduct braid checks")

    # Symmetric series
    truncation: int = Field(default=8, description="y-degree truncation N")
    alphabet_radius: int = Field(default=10, description="Generic alphabet a_-M..a_M")
    jacobi_trudi_max_size: int = Field(default=6, description="Largest |lambda| in the Jacobi-Trudi suite")

    # n = 4 selections
    mapdet_spot_cases_n4: List[str] = Field(
        default=["1;1", "2;1", "3;1", "1;2", "2;2", "1,1;2", "2,1;2", "2,2;2", "1;3", "1,1;3", "1,1,1;3", ";4"],
        description="'lambda;k' cases for the n = 4 determinant map check",
    )
    main_theorem_sample_n4: List[str] = Field(
        default=[], description="Permutations (one-line) for the n = 4 main theorem; empty means all of S_4"
    )

    # Runner
    workers: int = Field(default=4, description="Worker threads for check cases")
    report_dir: str = Field(default="reports", description="Directory for JSON and Markdown reports")
    mutation: Mutation = Field(default=Mutation.NONE, description="Negative-control sign flip")
    check_overrides: Dict[str, Dict[str, Any]] = Field(
        default_factory=dict, description="Per-check field overrides, e.g. {'positivity': {'positivity_max_length': 4}}"
    )

    def for_check(self, check_id: str) -> "SchubertConfig":
        """Returns a copy with the overrides of one check applied."""
        overrides = self.check_overrides.get(check_id, {})
        unknown = set(overrides) - set(type(self).model_fields)
        if unknown:
            raise ValueError(f"Unknown override fields for {check_id}: {sorted(unknown)}")
        return self.model_copy(update=overrides)

    @property
    def mutation_name(self) -> Optional[str]:
        """The active mutation, or None."""
        return None if self.mutation == Mutation.NONE else self.mutation.value
