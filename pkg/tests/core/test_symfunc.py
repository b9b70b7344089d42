# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import pytest

from coreason_schubert.core.symfunc import DualSchurName, FormalDeterminant, SeriesModel, kdouble_small
from coreason_schubert.core.weyl import Partition


@pytest.fixture(scope="module")
def model() -> SeriesModel:
    return SeriesModel(5, 4)


class TestModel:
    def test_bounds(self) -> None:
        with pytest.raises(ValueError, match="Need 1 <= cutoff <= radius"):
            SeriesModel(3, 4)
        with pytest.raises(ValueError, match="Need 1 <= cutoff <= radius"):
            SeriesModel(3, 0)

    def test_radius(self, model: SeriesModel) -> None:
        with pytest.raises(ValueError, match="outside the alphabet radius"):
            model.a(6)
        assert model.a(-5) != model.a(5)

    def test_cached_instances(self) -> None:
        assert SeriesModel.get(5, 3) is SeriesModel.get(5, 3)

    def test_classical_functions(self, model: SeriesModel) -> None:
        assert model.e(0) == model.one
        assert not model.e(5)
        assert model.h(2) == model.e(1) * model.e(1) - model.e(2)
        assert model.schur(Partition((1, 1))) == model.e(2)
        assert model.schur(Partition((2,))) == model.h(2)

    def test_truncation(self, model: SeriesModel) -> None:
        assert not model.e(3) * model.e(2)
        assert model.e(2) * model.e(2) == model.series(model.e(2).poly * model.e(2).poly)


class TestDualFunctions:
    def test_dual_e_zero_is_one(self, model: SeriesModel) -> None:
        assert model.dual_e(0) == model.one

    def test_classical_limit(self, model: SeriesModel) -> None:
        for j in range(1, 5):
            assert model.dual_e(j).classical_limit() == model.e(j)

    def test_omega_ratio(self, model: SeriesModel) -> None:
        expected = model.one + model.dual_e(1).scale(model.a(0) - model.a(1))
        assert model.omega_ratio(1, 0) == expected
        assert model.omega_ratio(2, 2) == model.one

    def test_single_box(self, model: SeriesModel) -> None:
        assert model.dual_schur(Partition((1,))) == model.dual_e(1)
        assert model.dual_h(1) == model.dual_e(1)

    @pytest.mark.parametrize("parts", [(2,), (1, 1), (2, 1), (3, 1)])
    def test_omega_eta_transposes(self, model: SeriesModel, parts: tuple) -> None:
        shape = Partition(parts)
        assert model.dual_schur(shape).omega().eta() == model.dual_schur(shape.conjugate)

    @pytest.mark.parametrize("parts", [(2,), (2, 1), (2, 2)])
    def test_schur_limit(self, model: SeriesModel, parts: tuple) -> None:
        shape = Partition(parts)
        assert model.dual_schur(shape).classical_limit() == model.schur(shape)

    def test_size_above_cutoff(self, model: SeriesModel) -> None:
        with pytest.raises(ValueError, match="exceeds the truncation degree"):
            model.dual_schur(Partition((3, 2)))


class TestSeriesOperations:
    def test_tau_and_eta(self, model: SeriesModel) -> None:
        shifted = model.one.scale(model.a(0))
        assert shifted.tau(1) == model.one.scale(model.a(1))
        assert shifted.tau(0) is shifted
        assert shifted.eta() == model.one.scale(-model.a(1))
        assert model.e(1).tau(3) == model.e(1)

    def test_omega(self, model: SeriesModel) -> None:
        assert model.e(2).omega() == model.h(2)
        assert model.h(3).omega() == model.e(3)

    def test_a_indices_and_text(self, model: SeriesModel) -> None:
        series = model.e(1).scale(model.a(-2) + model.a(3))
        assert series.a_indices() == [-2, 3]
        assert "e_1" in series.to_text()


class TestNames:
    def test_labels(self, model: SeriesModel) -> None:
        assert DualSchurName(Partition((1, 1))).label() == "s-hat[1,1]"
        name = DualSchurName(Partition((2,)), twist=1)
        assert name.label() == "s-hat[2]^tau^1"
        assert name.resolve(model) == model.dual_schur(Partition((2,))).tau(1)

    def test_kdouble_small(self) -> None:
        assert kdouble_small(Partition((1, 1)), 3) == DualSchurName(Partition((1, 1)))
        assert kdouble_small(Partition(), 2) == DualSchurName(Partition())
        with pytest.raises(ValueError, match="outside the small regime"):
            kdouble_small(Partition((2, 1)), 3)


class TestFormalDeterminant:
    def test_text(self) -> None:
        assert FormalDeterminant.of(Partition((1, 1)), 2).to_text() == "X1*X1^tau^-1 - X2^tau^-1"

    def test_evaluate(self) -> None:
        assert FormalDeterminant.of(Partition((1, 1)), 2).evaluate(lambda r, t: r, 1) == -1

    def test_too_many_rows(self) -> None:
        with pytest.raises(ValueError, match="more than 2 rows"):
            FormalDeterminant.of(Partition((1, 1, 1)), 2)

    def test_dual_realization(self, model: SeriesModel) -> None:
        formal = FormalDeterminant.of(Partition((2,)), 1)
        value = formal.evaluate(lambda r, t: model.dual_e(r).tau(t), model.one)
        assert value == model.dual_schur(Partition((1, 1)))
