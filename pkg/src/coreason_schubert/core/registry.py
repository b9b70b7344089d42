# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

"""
The fixed catalogue of verification checks. Each check expands the configuration into
independent cases and knows how to run one case against a shared ``Workbench``.
"""

import random
import threading
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from coreason_schubert.config import SchubertConfig
from coreason_schubert.core.centralizer import CentralizerMatrix, KostantSubstitution, PhiTilde, matrix_for
from coreason_schubert.core.fixtures import Fixture, fixtures_for, run_fixture
from coreason_schubert.core.main_theorem import MainTheoremChecker, derive_lambda_w
from coreason_schubert.core.nilhecke import NilHeckeTensor
from coreason_schubert.core.peterson import PetersonAlgebra, grassmannian_for_partition
from coreason_schubert.core.schubert import kim_ideal_generators
from coreason_schubert.core.symfunc import FormalDeterminant, SeriesModel
from coreason_schubert.core.weyl import (
    Coweight,
    ExtAffineElement,
    Partition,
    all_permutations,
    all_reduced_words,
    bounded_partitions,
    elements_up_to,
    grassmannian_elements,
    parse_element,
    parse_permutation,
    partitions_in_box,
    translation,
)
from coreason_schubert.utils.logger import logger

CHECK_IDS = (
    "kostant-ideal",
    "fixtures",
    "mapdet",
    "dtoj",
    "main-theorem",
    "jacobi-trudi",
    "positivity",
    "hopf",
    "j-oracle",
)


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class CheckCase(BaseModel):
    """One independent unit of verification work."""

    check: str = Field(..., description="Check id from the registry")
    n: Optional[int] = Field(default=None, description="Rank, when the check is rank-specific")
    target: Optional[str] = Field(default=None, description="Element, partition or fixture the case is about")

    @field_validator("check")
    @classmethod
    def known_check(cls, value: str) -> str:
        if value not in CHECK_IDS:
            raise ValueError(f"Unknown check id {value!r}; expected one of {', '.join(CHECK_IDS)}")
        return value

    @property
    def case_id(self) -> str:
        parts = [self.check]
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.target:
            parts.append(self.target)
        return " ".join(parts)


class VerificationReport(BaseModel):
    case: CheckCase
    status: CheckStatus
    witness: Optional[str] = None
    detail: Optional[str] = None
    millis: int = 0

    @model_validator(mode="after")
    def failures_carry_witness(self) -> "VerificationReport":
        if self.status == CheckStatus.FAIL and not self.witness:
            raise ValueError(f"Failed case {self.case.case_id} has no witness")
        if self.status == CheckStatus.SKIP and not self.detail:
            raise ValueError(f"Skipped case {self.case.case_id} has no reason")
        return self

    def to_record(self) -> Dict[str, object]:
        record: Dict[str, object] = {"case": self.case.case_id, "status": self.status.value, "millis": self.millis}
        if self.witness:
            record["witness"] = self.witness
        if self.detail:
            record["detail"] = self.detail
        return record


@dataclass
class Outcome:
    status: CheckStatus
    witness: Optional[str] = None
    detail: Optional[str] = None

    @classmethod
    def passed(cls, detail: Optional[str] = None) -> "Outcome":
        return cls(CheckStatus.PASS, detail=detail)

    @classmethod
    def failed(cls, witness: str) -> "Outcome":
        return cls(CheckStatus.FAIL, witness=witness)

    @classmethod
    def skipped(cls, reason: str) -> "Outcome":
        return cls(CheckStatus.SKIP, detail=reason)

    @classmethod
    def from_witness(cls, witness: Optional[str], detail: Optional[str] = None) -> "Outcome":
        return cls.failed(witness) if witness else cls.passed(detail)


class Workbench:
    """Per-run holder of the shared algebras; construction is serialized, use is concurrent."""

    def __init__(self, config: SchubertConfig) -> None:
        self.config = config
        self.mutation = config.mutation_name
        self._lock = threading.Lock()
        self._matrices: Dict[int, CentralizerMatrix] = {}
        self._peterson: Dict[int, PetersonAlgebra] = {}
        self._fixtures: Dict[int, Dict[str, Fixture]] = {}
        self._settings: Dict[str, SchubertConfig] = {}

    def matrix(self, n: int) -> CentralizerMatrix:
        with self._lock:
            if n not in self._matrices:
                self._matrices[n] = matrix_for(n, self.mutation)
            return self._matrices[n]

    def peterson(self, n: int) -> PetersonAlgebra:
        with self._lock:
            if n not in self._peterson:
                self._peterson[n] = PetersonAlgebra(
                    n,
                    jsolve_slack=self.config.jsolve_slack,
                    jsolve_retries=self.config.jsolve_retries,
                    flip_goal_sign=self.mutation == "goal",
                )
            return self._peterson[n]

    def phi(self, n: int) -> PhiTilde:
        return PhiTilde(self.matrix(n), self.peterson(n))

    def checker(self, n: int, *, with_peterson: bool) -> MainTheoremChecker:
        return MainTheoremChecker(
            n,
            matrix=self.matrix(n),
            peterson=self.peterson(n) if with_peterson else None,
            flip_schubert=self.mutation == "schubert",
        )

    def fixture(self, n: int, name: str) -> Fixture:
        with self._lock:
            if n not in self._fixtures:
                self._fixtures[n] = {f.name: f for f in fixtures_for(n, self.mutation)}
            table = self._fixtures[n]
        if name not in table:
            raise ValueError(f"No fixture {name!r} for n={n}")
        return table[name]

    @cached_property
    def series(self) -> SeriesModel:
        return SeriesModel.get(self.config.alphabet_radius, self.config.truncation)

    def settings(self, check_id: str) -> SchubertConfig:
        with self._lock:
            if check_id not in self._settings:
                self._settings[check_id] = self.config.for_check(check_id)
            return self._settings[check_id]

    def rng(self, case: CheckCase) -> random.Random:
        return random.Random(f"{self.config.sample_seed}:{case.case_id}")


CaseBuilder = Callable[[SchubertConfig], List[CheckCase]]
CaseRunner = Callable[[CheckCase, Workbench], Outcome]


@dataclass(frozen=True)
class Check:
    check_id: str
    description: str
    cases: CaseBuilder
    run: CaseRunner


def ranks(config: SchubertConfig, cap: int = 4) -> range:
    return range(2, min(config.max_n, cap) + 1)


def parse_shape_and_k(text: str) -> Tuple[Partition, int]:
    """'2,1;2' -> ((2,1), 2); ';4' -> ((), 4)."""
    shape_text, _, k_text = text.partition(";")
    if not k_text.strip():
        raise ValueError(f"Expected 'lambda;k', got {text!r}")
    parts = tuple(int(p) for p in shape_text.split(",") if p.strip())
    return Partition(parts), int(k_text)


def format_shape_and_k(shape: Partition, k: int) -> str:
    return ",".join(str(p) for p in shape.parts) + f";{k}"


def _one_line(w: ExtAffineElement) -> str:
    return ",".join(str(v) for v in w.window)


# kostant-ideal


def _kostant_cases(config: SchubertConfig) -> List[CheckCase]:
    return [CheckCase(check="kostant-ideal", n=n, target=f"j={j}") for n in ranks(config) for j in range(1, n + 1)]


def _kostant_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    n, j = case.n, int(case.target.removeprefix("j="))
    generator = kim_ideal_generators(n)[j - 1]
    config = bench.settings(case.check)
    psi = KostantSubstitution(bench.matrix(n))
    if n <= config.symbolic_max_n:
        image = psi.apply(generator)
        if image:
            return Outcome.failed(f"Psi(g_{j},{n} - e_{j}) = {image.to_text()}")
        return Outcome.passed()
    rng = bench.rng(case)
    for _ in range(config.sample_points):
        point = bench.matrix(n).sample_point(rng)
        value = psi.apply_at(generator, point)
        if value:
            values = ", ".join(f"{v}={point[v]}" for v in sorted(point))
            return Outcome.failed(f"Psi(g_{j},{n} - e_{j}) = {value} at {values}")
    return Outcome.passed(f"{config.sample_points} exact sample points")


# fixtures


def _fixture_cases(config: SchubertConfig) -> List[CheckCase]:
    return [
        CheckCase(check="fixtures", n=n, target=f.name) for n in ranks(config) for f in fixtures_for(n, None)
    ]


def _fixture_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    return Outcome.from_witness(run_fixture(bench.fixture(case.n, case.target)))


# mapdet


def _mapdet_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = []
    for n in ranks(config):
        if n <= config.symbolic_max_n:
            for k in range(n + 1):
                for shape in partitions_in_box(k, n - k):
                    cases.append(CheckCase(check="mapdet", n=n, target=format_shape_and_k(shape, k)))
        else:
            cases.extend(CheckCase(check="mapdet", n=n, target=spot) for spot in config.mapdet_spot_cases_n4)
    return cases


def _mapdet_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    n = case.n
    shape, k = parse_shape_and_k(case.target)
    got = bench.phi(n).untwisted_minor(shape, k)
    w = grassmannian_for_partition(n, shape, k)
    expected = bench.peterson(n).j_class(w)
    if got != expected:
        return Outcome.failed(f"phi~(minor({shape}, {k})) t_k = {got.to_text()}, expected j_{w.label()}")
    return Outcome.passed()


# dtoj


def _dtoj_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = []
    for n in ranks(config):
        cases.extend(CheckCase(check="dtoj", n=n, target=f"D{i}") for i in range(n))
        cases.extend(CheckCase(check="dtoj", n=n, target=f"D'{i}") for i in range(1, n))
        cases.extend(CheckCase(check="dtoj", n=n, target=f"y{k}") for k in range(1, n + 1))
    return cases


def _dtoj_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    n, target = case.n, case.target
    peterson = bench.peterson(n)
    phi = bench.phi(n)
    matrix = bench.matrix(n)
    omega1 = Coweight.fundamental(n, 1)
    if target.startswith("y"):
        k = int(target[1:])
        got = phi.entry_image(k, k)
        weight = Coweight.fundamental(n, k) - Coweight.fundamental(n, k - 1) - omega1
        expected = peterson.translation_element(weight)
        label = f"t_{weight}"
    elif target.startswith("D'"):
        i = int(target[2:])
        got = phi.image(matrix.D_prime(i))
        w = ExtAffineElement.simple(n, i) * translation(-Coweight.fundamental(n, i))
        expected = peterson.j_class(w) * peterson.translation_element(omega1.scale(-(n - i)))
        label = f"j_{w.label()} t_-(n-i)omega_1"
    else:
        i = int(target[1:])
        got = phi.image(matrix.D(i))
        weight = -Coweight.fundamental(n, i)
        expected = peterson.j_translation(weight) * peterson.translation_element(omega1.scale(-(n - i)))
        label = f"j_{weight} t_-(n-i)omega_1"
    if got != expected:
        return Outcome.failed(f"phi~({target}) = {got.to_text()}, expected {label} = {expected.to_text()}")
    return Outcome.passed()


# main-theorem


def _main_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = []
    for n in ranks(config):
        if n > config.symbolic_max_n and config.main_theorem_sample_n4:
            elements = [parse_permutation(text, n) for text in config.main_theorem_sample_n4]
        else:
            elements = all_permutations(n)
        cases.extend(CheckCase(check="main-theorem", n=n, target=_one_line(w)) for w in elements)
    return cases


def _main_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    n = case.n
    config = bench.settings(case.check)
    w = parse_permutation(case.target, n)
    data = derive_lambda_w(w)
    if not data.fits_box and n > config.solve_outside_box_max_n:
        return Outcome.skipped(
            f"mu={data.shape} does not fit a {data.k} x {n - data.k} box; "
            f"the j_solve comparison is off above n={config.solve_outside_box_max_n}"
        )
    peterson_side = data.fits_box and n <= config.peterson_side_max_n
    checker = bench.checker(n, with_peterson=peterson_side or not data.fits_box)
    notes: List[str] = []
    if n <= config.symbolic_max_n:
        coordinates = checker.check_coordinates(w)
    else:
        coordinates = checker.check_coordinates_sampled(w, bench.rng(case), config.sample_points)
    if not coordinates.ok:
        return Outcome.failed(f"coordinates: {coordinates.witness}")
    if coordinates.note:
        notes.append(coordinates.note)
    if data.fits_box:
        peterson = checker.check_peterson(w)
        if not peterson.ok:
            return Outcome.failed(f"Peterson side: {peterson.witness}")
        if peterson.skipped:
            notes.append(f"Peterson side skipped above n={config.peterson_side_max_n}")
    return Outcome.passed("; ".join(notes) or None)


# jacobi-trudi


def _jacobi_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = [CheckCase(check="jacobi-trudi", target="omega-ratio")]
    for shape in bounded_partitions(config.jacobi_trudi_max_size, config.jacobi_trudi_max_size):
        if shape.parts:
            cases.append(CheckCase(check="jacobi-trudi", target=",".join(str(p) for p in shape.parts)))
    return cases


def _jacobi_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.target is not None
    model = bench.series
    if case.target == "omega-ratio":
        expected = model.one + model.dual_e(1).scale(model.a(0) - model.a(1))
        got = model.omega_ratio(1, 0)
        if got != expected:
            return Outcome.failed(f"Omega[(a1-a0)y] - 1 - (a0-a1)e^_1 = {(got - expected).to_text()}")
        return Outcome.passed()
    shape = Partition(tuple(int(p) for p in case.target.split(",")))
    hat = model.dual_schur(shape)
    transposed = model.dual_schur(shape.conjugate)
    if hat.omega().eta() != transposed:
        return Outcome.failed(f"s^{shape}^(omega eta) differs from s^{shape.conjugate}")
    if hat.classical_limit() != model.schur(shape):
        return Outcome.failed(f"a -> 0 limit of s^{shape} is not s{shape}")
    formal = FormalDeterminant.of(shape, len(shape)).evaluate(lambda r, t: model.dual_e(r).tau(t), model.one)
    if formal != transposed:
        return Outcome.failed(f"formal determinant of {shape} over e^ differs from s^{shape.conjugate}")
    return Outcome.passed()


# positivity


def _positivity_cases(config: SchubertConfig) -> List[CheckCase]:
    return [CheckCase(check="positivity", n=n, target=f"L={config.positivity_max_length}") for n in ranks(config, 3)]


def _positivity_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None
    report = bench.peterson(case.n).positivity_scan(bench.settings(case.check).positivity_max_length)
    hard = [v for v in report.violations if not v.extended]
    if hard:
        return Outcome.failed("; ".join(f"{v.label}: {v.witness}" for v in hard))
    extended = [v for v in report.verdicts if v.extended]
    broken = [v for v in extended if not v.positive]
    detail = f"{len(report.verdicts)} classes; extended classes: {len(extended)} checked, {len(broken)} violations"
    if broken:
        detail += " (" + "; ".join(f"{v.label}: {v.witness}" for v in broken) + ")"
        logger.warning(f"Extended positivity violations at n={case.n}: {detail}")
    return Outcome.passed(detail)


# hopf


def _hopf_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = [CheckCase(check="hopf", n=2, target="coproducts")]
    for n in ranks(config, 3):
        cases.append(CheckCase(check="hopf", n=n, target="group-like"))
        cases.append(CheckCase(check="hopf", n=n, target=f"braid L={config.hopf_max_length}"))
    return cases


def _hopf_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    n = case.n
    peterson = bench.peterson(n)
    algebra = peterson.nilhecke
    if case.target == "coproducts":
        return Outcome.from_witness(run_fixture(bench.fixture(2, "coproducts")))
    if case.target == "group-like":
        rng = bench.rng(case)
        samples = {Coweight(tuple(rng.randint(-1, 1) for _ in range(n))) for _ in range(4)}
        for weight in sorted(samples, key=lambda c: c.values):
            t = peterson.translation_element(weight).element
            if t.coproduct() != NilHeckeTensor.from_pair(t, t):
                return Outcome.failed(f"Delta(t_{weight}) is not t (x) t")
        return Outcome.passed(f"{len(samples)} translations")
    checked = compared = 0
    for k in range(n):
        for w in elements_up_to(n, bench.settings(case.check).hopf_max_length, tau_power=k):
            words = all_reduced_words(w)
            reference = algebra.coproduct_along(w.tau_power, words[0])
            for word in words[1:]:
                if algebra.coproduct_along(w.tau_power, word) != reference:
                    return Outcome.failed(f"Delta(A_{w.label()}) differs along {words[0]} and {word}")
            checked += 1
            compared += len(words)
    return Outcome.passed(f"{checked} elements, {compared} reduced words")


# j-oracle


def _oracle_cases(config: SchubertConfig) -> List[CheckCase]:
    cases = []
    for n in ranks(config, config.oracle_max_n):
        for k in range(n):
            for w in grassmannian_elements(n, config.oracle_max_length, tau_power=k):
                cases.append(CheckCase(check="j-oracle", n=n, target=w.label()))
    return cases


def _oracle_run(case: CheckCase, bench: Workbench) -> Outcome:
    assert case.n is not None and case.target is not None
    peterson = bench.peterson(case.n)
    w = parse_element(case.target, case.n)
    constructed = peterson.j_class(w)
    if not constructed.element.commutes_with_scalars():
        return Outcome.failed(f"j_{w.label()} does not commute with S")
    solved = peterson.j_solve(w)
    if constructed != solved:
        return Outcome.failed(f"j_{w.label()}: constructed {constructed.to_text()}, solved {solved.to_text()}")
    return Outcome.passed()


REGISTRY: Dict[str, Check] = {
    check.check_id: check
    for check in (
        Check(
            "kostant-ideal", "Kim ideal generators vanish under the Kostant substitution", _kostant_cases, _kostant_run
        ),
        Check("fixtures", "Reference values for n = 2, 3, 4", _fixture_cases, _fixture_run),
        Check("mapdet", "Centralizer minors map to j-classes", _mapdet_cases, _mapdet_run),
        Check("dtoj", "Images of D_i, D'_i and the diagonal entries", _dtoj_cases, _dtoj_run),
        Check("main-theorem", "Quantum Schubert classes map to centralizer minors", _main_cases, _main_run),
        Check("jacobi-trudi", "Dual Schur determinants and the omega-eta symmetry", _jacobi_cases, _jacobi_run),
        Check("positivity", "Graham positivity of j-class coefficients", _positivity_cases, _positivity_run),
        Check("hopf", "Coproduct group-likeness, reference coproducts, braid invariance", _hopf_cases, _hopf_run),
        Check("j-oracle", "Constructed j-classes agree with the linear solve", _oracle_cases, _oracle_run),
    )
}


def cases_for(config: SchubertConfig, checks: Optional[List[str]] = None) -> List[CheckCase]:
    """Every case of the selected checks in registry order."""
    selected = list(CHECK_IDS) if not checks else checks
    unknown = [c for c in selected if c not in REGISTRY]
    if unknown:
        raise ValueError(f"Unknown check ids: {', '.join(unknown)}")
    cases: List[CheckCase] = []
    for check_id in CHECK_IDS:
        if check_id in selected:
            cases.extend(REGISTRY[check_id].cases(config.for_check(check_id)))
    return cases
