# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import random
from dataclasses import replace

import pytest

from coreason_schubert.core.exactalg import SRing
from coreason_schubert.core.main_theorem import MainTheoremChecker, derive_lambda_w, quantum_to_affine
from coreason_schubert.core.peterson import PetersonAlgebra
from coreason_schubert.core.weyl import (
    Coweight,
    ExtAffineElement,
    Partition,
    all_permutations,
    parse_permutation,
    translation,
)


class TestLambdaData:
    def test_identity(self) -> None:
        data = derive_lambda_w(ExtAffineElement.identity(2))
        assert data.descents == ()
        assert data.weight == Coweight.zero(2)
        assert data.shape == Partition()
        assert data.k == 0
        assert data.unit_exponent == 0
        assert "denominators: none" in data.to_text()

    def test_simple_reflection(self) -> None:
        data = derive_lambda_w(ExtAffineElement.simple(2, 1))
        assert data.weight == -Coweight.fundamental(2, 1)
        assert data.k == 1
        assert data.shape == Partition()
        assert data.fits_box
        assert data.affine.is_grassmannian
        assert "lambda=t[-1,0]" in data.to_text()

    def test_all_rank_three(self) -> None:
        for w in all_permutations(3):
            data = derive_lambda_w(w)
            assert data.affine == w * translation(data.weight)
            assert data.affine.is_grassmannian
            assert data.unit_exponent >= 0

    def test_incongruent_rotation(self) -> None:
        data = derive_lambda_w(ExtAffineElement.simple(2, 1))
        with pytest.raises(RuntimeError, match="not congruent"):
            _ = replace(data, k=0).unit_exponent

    def test_affine_rejected(self) -> None:
        with pytest.raises(ValueError, match="not a finite permutation"):
            derive_lambda_w(ExtAffineElement.simple(2, 0))


class TestCoordinates:
    @pytest.mark.parametrize("n", [2, 3])
    def test_every_permutation(self, n: int) -> None:
        checker = MainTheoremChecker(n)
        for w in all_permutations(n):
            outcome = checker.check_coordinates(w)
            assert outcome.ok, outcome.witness

    def test_rank_two_sides(self) -> None:
        checker = MainTheoremChecker(2)
        lhs, rhs = checker.coordinate_sides(derive_lambda_w(ExtAffineElement.simple(2, 1)))
        assert lhs == rhs
        assert rhs.to_text() == "1"

    def test_flipped_recursion_fails(self) -> None:
        checker = MainTheoremChecker(2, flip_schubert=True)
        outcome = checker.check_coordinates(ExtAffineElement.identity(2))
        assert not outcome.ok
        assert outcome.witness is not None and "w=id" in outcome.witness

    def test_sampled_rank_three(self) -> None:
        checker = MainTheoremChecker(3)
        rng = random.Random(5)
        for w in all_permutations(3):
            assert checker.check_coordinates_sampled(w, rng, 2).ok

    def test_sampled_flipped_fails(self) -> None:
        checker = MainTheoremChecker(2, flip_schubert=True)
        outcome = checker.check_coordinates_sampled(ExtAffineElement.identity(2), random.Random(1), 1)
        assert not outcome.ok
        assert outcome.witness is not None and " at " in outcome.witness

    @pytest.mark.slow
    def test_sampled_rank_four(self) -> None:
        checker = MainTheoremChecker(4)
        rng = random.Random(9)
        for text in ("2,1,3,4", "1,3,2,4", "4,3,2,1", "2,4,1,3"):
            outcome = checker.check_coordinates_sampled(parse_permutation(text, 4), rng, 2)
            assert outcome.ok, outcome.witness


class TestPetersonSide:
    def test_rank_two(self) -> None:
        checker = MainTheoremChecker(2, peterson=PetersonAlgebra(2))
        for w in all_permutations(2):
            outcome = checker.check_peterson(w)
            assert outcome.ok, outcome.witness
            assert outcome.skipped is None

    def test_skipped_without_algebra(self) -> None:
        outcome = MainTheoremChecker(2).check_peterson(ExtAffineElement.identity(2))
        assert outcome.ok
        assert outcome.skipped == "no Peterson algebra attached"

    def test_constants(self) -> None:
        peterson = PetersonAlgebra(2)
        assert quantum_to_affine(peterson, SRing.for_rank(2).coords.one) == peterson.localize(peterson.one())

    def test_foreign_variables(self) -> None:
        peterson = PetersonAlgebra(2)
        ctx = SRing.for_rank(2)
        with pytest.raises(ValueError, match="is not a variable of S"):
            quantum_to_affine(peterson, ctx.parse("z"))
        with pytest.raises(ValueError, match="is not a variable of S"):
            quantum_to_affine(peterson, ctx.parse("x_1*g_1"))


class TestOutsideBox:
    def test_longest_rank_four_shape(self) -> None:
        data = derive_lambda_w(parse_permutation("4,3,2,1", 4))
        assert data.shape == Partition((2, 1, 1))
        assert data.k == 2
        assert not data.fits_box

    def test_solving_agrees_rank_three(self) -> None:
        checker = MainTheoremChecker(3, peterson=PetersonAlgebra(3))
        for w in all_permutations(3):
            data = derive_lambda_w(w)
            outcome = checker.check_by_solving(data)
            assert outcome.ok, outcome.witness
            assert outcome.note is not None and f"j_solve({data.affine.label()})" in outcome.note

    def test_skipped_without_algebra(self) -> None:
        data = derive_lambda_w(ExtAffineElement.simple(2, 1))
        outcome = MainTheoremChecker(2).check_by_solving(data)
        assert outcome.ok
        assert outcome.skipped is not None and "does not fit a 1 x 1 box" in outcome.skipped

    def test_flipped_recursion_fails(self) -> None:
        checker = MainTheoremChecker(2, peterson=PetersonAlgebra(2), flip_schubert=True)
        outcome = checker.check_by_solving(derive_lambda_w(ExtAffineElement.identity(2)))
        assert not outcome.ok
        assert outcome.witness is not None and "compared with j_solve" in outcome.witness

    def test_sampled_note(self) -> None:
        outcome = MainTheoremChecker(2).check_coordinates_sampled(ExtAffineElement.simple(2, 1), random.Random(2), 3)
        assert outcome.ok
        assert outcome.note == "coordinates at 3 exact sample points"

    @pytest.mark.slow
    def test_longest_rank_four(self) -> None:
        checker = MainTheoremChecker(4, peterson=PetersonAlgebra(4))
        outcome = checker.check_coordinates_sampled(parse_permutation("4,3,2,1", 4), random.Random(3), 1)
        assert outcome.ok, outcome.witness
        assert outcome.skipped is None
        assert outcome.note is not None and "mu=(2,1,1)" in outcome.note
