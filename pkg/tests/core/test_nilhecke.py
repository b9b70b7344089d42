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
from typing import Dict, Tuple

import pytest
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from coreason_schubert.core.nilhecke import NilHeckeAlgebra, NilHeckeElement, NilHeckeTensor, expand_group
from coreason_schubert.core.weyl import Coweight, ExtAffineElement, all_reduced_words, elements_up_to, translation


@pytest.fixture
def rank2() -> NilHeckeAlgebra:
    return NilHeckeAlgebra.for_rank(2)


@pytest.fixture
def rank3() -> NilHeckeAlgebra:
    return NilHeckeAlgebra.for_rank(3)


def basis(algebra: NilHeckeAlgebra, *word: int, tau_power: int = 0) -> NilHeckeElement:
    return NilHeckeElement.basis(algebra, ExtAffineElement.from_word(algebra.n, word, tau_power))


def random_scalar(algebra: NilHeckeAlgebra, rng: random.Random, degree: int = 2) -> PolyElement:
    count = len(algebra.S.variables)
    data: Dict[Tuple[int, ...], object] = {}
    for _ in range(3):
        monom = tuple(rng.randint(0, degree) for _ in range(count))
        data[monom] = QQ(rng.randint(-4, 4))
    return algebra.S.ring.from_dict(data)


def random_element(algebra: NilHeckeAlgebra, rng: random.Random) -> NilHeckeElement:
    total = NilHeckeElement.zero(algebra)
    for _ in range(2):
        w = rng.choice(elements_up_to(algebra.n, 3, tau_power=rng.randrange(algebra.n)))
        total = total + NilHeckeElement.basis(algebra, w, random_scalar(algebra, rng, 1))
    return total


class TestRelations:
    def test_nil_square(self, rank3: NilHeckeAlgebra) -> None:
        for i in range(3):
            assert not basis(rank3, i) * basis(rank3, i)

    def test_braid(self, rank3: NilHeckeAlgebra) -> None:
        left = basis(rank3, 1) * basis(rank3, 2) * basis(rank3, 1)
        assert left == basis(rank3, 2) * basis(rank3, 1) * basis(rank3, 2)
        assert basis(rank3, 0) * basis(rank3, 1) * basis(rank3, 0) == basis(rank3, 1, 0, 1)

    def test_length_additive_products(self, rank3: NilHeckeAlgebra) -> None:
        assert basis(rank3, 1) * basis(rank3, 2) == basis(rank3, 1, 2)
        assert rank3.product(ExtAffineElement.simple(3, 1), ExtAffineElement.simple(3, 1)) is None

    def test_tau_conjugation(self, rank3: NilHeckeAlgebra) -> None:
        tau = basis(rank3, tau_power=1)
        assert tau * basis(rank3, 1) == basis(rank3, 2) * tau
        assert basis(rank3, 1).twist(1) == basis(rank3, 2)
        assert basis(rank3, 1).twist(3) == basis(rank3, 1)

    def test_rank_mismatch(self, rank2: NilHeckeAlgebra, rank3: NilHeckeAlgebra) -> None:
        with pytest.raises(ValueError, match="ranks 2 and 3"):
            NilHeckeElement.one(rank2) + NilHeckeElement.one(rank3)


class TestScalars:
    def test_divided_difference(self, rank2: NilHeckeAlgebra) -> None:
        a1 = rank2.ctx.a(1)
        assert rank2.divided_difference(1, a1) == -rank2.S.one
        assert rank2.divided_difference(1, a1 * a1) == rank2.S.zero
        assert rank2.divided_difference(1, rank2.S.one) == rank2.S.zero

    def test_commutation_with_a(self, rank2: NilHeckeAlgebra) -> None:
        a1 = rank2.ctx.a(1)
        product = basis(rank2, 1) * NilHeckeElement.scalar(rank2, a1)
        expected = NilHeckeElement.basis(rank2, ExtAffineElement.simple(2, 1), -a1) - NilHeckeElement.one(rank2)
        assert product == expected

    def test_commutator_of_basis_element(self, rank2: NilHeckeAlgebra) -> None:
        assert NilHeckeElement.one(rank2).commutes_with_scalars()
        assert not basis(rank2, 1).commutes_with_scalars()

    def test_scale_by_zero(self, rank2: NilHeckeAlgebra) -> None:
        assert not basis(rank2, 1).scale(0)
        assert basis(rank2, 1).scale(2).coefficient(ExtAffineElement.simple(2, 1)) == rank2.S.const(2)

    def test_group_action(self, rank3: NilHeckeAlgebra) -> None:
        ctx = rank3.ctx
        s1 = expand_group(rank3, ExtAffineElement.simple(3, 1))
        assert s1.act(ctx.a(1)) == ctx.a(2)
        tau = expand_group(rank3, ExtAffineElement.tau(3))
        assert tau.act(ctx.a(1)) == ctx.a(2)
        assert tau.act(ctx.a(3)) == ctx.a(1)
        t = expand_group(rank3, translation(Coweight.fundamental(3, 1)))
        assert t.act(ctx.a(1)) == ctx.a(1)

    @pytest.mark.parametrize("seed", [1, 7, 42, 1234])
    def test_action_is_a_ring_action(self, rank3: NilHeckeAlgebra, seed: int) -> None:
        rng = random.Random(seed)
        x, y = random_element(rank3, rng), random_element(rank3, rng)
        s = random_scalar(rank3, rng, 3)
        assert (x * y).act(s) == x.act(y.act(s))
        assert (x + y).act(s) == x.act(s) + y.act(s)
        assert NilHeckeElement.one(rank3).act(s) == s

    @pytest.mark.parametrize("seed", [2, 11, 99])
    def test_group_elements_act_by_permutation(self, rank3: NilHeckeAlgebra, seed: int) -> None:
        rng = random.Random(seed)
        u = rng.choice(elements_up_to(3, 3, tau_power=rng.randrange(3)))
        v = rng.choice(elements_up_to(3, 3, tau_power=rng.randrange(3)))
        s = random_scalar(rank3, rng, 3)
        assert expand_group(rank3, u).act(s) == rank3.act_group(u, s)
        product = expand_group(rank3, u) * expand_group(rank3, v)
        assert product.act(s) == rank3.act_group(u, rank3.act_group(v, s))


class TestGroupElements:
    def test_simple_reflection_expansion(self, rank2: NilHeckeAlgebra) -> None:
        s1 = expand_group(rank2, ExtAffineElement.simple(2, 1))
        assert s1 == NilHeckeElement.one(rank2) + basis(rank2, 1).scale(rank2.alpha(1))

    def test_group_elements_multiply(self, rank3: NilHeckeAlgebra) -> None:
        for u in elements_up_to(3, 2):
            for v in elements_up_to(3, 2, tau_power=1):
                assert expand_group(rank3, u) * expand_group(rank3, v) == expand_group(rank3, u * v)

    def test_explicit_word(self, rank3: NilHeckeAlgebra) -> None:
        w = ExtAffineElement.from_word(3, (1, 2, 1))
        assert expand_group(rank3, w, (2, 1, 2)) == expand_group(rank3, w)
        with pytest.raises(ValueError, match="does not spell"):
            expand_group(rank3, w, (1, 2))

    def test_translations_centralize(self, rank3: NilHeckeAlgebra) -> None:
        t = expand_group(rank3, translation(-Coweight.fundamental(3, 2)))
        assert t.commutes_with_scalars()


class TestCoproduct:
    def test_simple_coproduct(self, rank2: NilHeckeAlgebra) -> None:
        assert basis(rank2, 1).coproduct() == rank2.simple_coproduct(1)

    def test_group_like(self, rank3: NilHeckeAlgebra) -> None:
        for w in (ExtAffineElement.simple(3, 0), translation(Coweight((1, -1, 0))), ExtAffineElement.tau(3, 2)):
            g = expand_group(rank3, w)
            assert g.coproduct() == NilHeckeTensor.from_pair(g, g)

    def test_coproduct_is_multiplicative(self, rank3: NilHeckeAlgebra) -> None:
        x, y = basis(rank3, 1), basis(rank3, 2, 0)
        assert (x * y).coproduct() == x.coproduct() * y.coproduct()

    @pytest.mark.parametrize("n", [2, 3])
    def test_independent_of_reduced_word(self, n: int) -> None:
        algebra = NilHeckeAlgebra.for_rank(n)
        for k in range(n):
            for w in elements_up_to(n, 4, tau_power=k):
                words = all_reduced_words(w)
                assert len(words) == len(set(words))
                tensors = {algebra.coproduct_along(k, word) for word in words}
                assert tensors == {algebra.basis_coproduct(w)}

    def test_word_prefixes_are_shared(self, rank3: NilHeckeAlgebra) -> None:
        first = rank3.coproduct_along(1, (1, 2))
        assert rank3.coproduct_along(4, (1, 2)) is first
        assert rank3.coproduct_along(1, (1, 2, 1)) == first * rank3.simple_coproduct(1)
        assert not rank3.coproduct_along(0, (1, 1))

    def test_text(self, rank2: NilHeckeAlgebra) -> None:
        assert "A[tau^0; 1]" in rank2.simple_coproduct(1).to_text()
        assert NilHeckeElement.zero(rank2).to_text() == "0"
