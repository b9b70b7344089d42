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
from itertools import permutations
from typing import Any, Dict, List, Sequence

import pytest
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from coreason_schubert.core.exactalg import (
    Alphabet,
    Family,
    NotDivisible,
    SRing,
    VarId,
    det,
    divide_exact,
    elementary,
)


@pytest.fixture
def alphabet() -> Alphabet:
    return Alphabet([VarId(Family.X, 1), VarId(Family.A, 1), VarId(Family.Q, 1), VarId(Family.A, -2)])


class TestAlphabet:
    def test_variables_sorted_by_family(self, alphabet: Alphabet) -> None:
        names = [v.name for v in alphabet.variables]
        assert names == ["a_m2", "a_1", "q_1", "x_1"]

    def test_empty_alphabet_rejected(self) -> None:
        with pytest.raises(ValueError, match="at least one variable"):
            Alphabet([])

    def test_unknown_variable(self, alphabet: Alphabet) -> None:
        with pytest.raises(ValueError, match="is not in this alphabet"):
            alphabet.gen(Family.G, 1)

    def test_to_text(self, alphabet: Alphabet) -> None:
        x, a = alphabet.gen(Family.X, 1), alphabet.gen(Family.A, 1)
        assert alphabet.to_text(x - a) == "-a_1 + x_1"
        assert alphabet.to_text(2 * a**2 * x) == "2*a_1^2*x_1"
        assert alphabet.to_text(alphabet.zero) == "0"
        assert alphabet.to_text(alphabet.const(QQ(1, 2))) == "1/2"

    def test_parse(self, alphabet: Alphabet) -> None:
        x, a, q = alphabet.gen(Family.X, 1), alphabet.gen(Family.A, 1), alphabet.gen(Family.Q, 1)
        assert alphabet.parse("x_1 - a_1 + q_1^2") == x - a + q**2
        assert alphabet.parse("(x_1 - a_1)*(x_1 + a_1)") == x**2 - a**2

    def test_parse_errors(self, alphabet: Alphabet) -> None:
        with pytest.raises(ValueError, match="Unknown variables"):
            alphabet.parse("x_1 + y_3")
        with pytest.raises(ValueError, match="not a polynomial"):
            alphabet.parse("1/x_1")

    def test_reindex(self, alphabet: Alphabet) -> None:
        a1, am2 = alphabet.gen(Family.A, 1), alphabet.gen(Family.A, -2)
        assert alphabet.reindex(a1, Family.A, lambda i: -2) == am2
        assert alphabet.reindex(a1 * a1, Family.A, lambda i: -2, sign=-1) == am2**2
        assert alphabet.reindex(a1, Family.A, lambda i: -2, sign=-1) == -am2
        with pytest.raises(ValueError, match="leaves the alphabet"):
            alphabet.reindex(a1, Family.A, lambda i: i + 5)

    def test_substitute_and_evaluate(self, alphabet: Alphabet) -> None:
        x, a = alphabet.gen(Family.X, 1), alphabet.gen(Family.A, 1)
        assert alphabet.substitute(x * a, {VarId(Family.X, 1): a}) == a**2
        value = alphabet.evaluate(x - a, {VarId(Family.X, 1): 3, VarId(Family.A, 1): QQ(1, 2)})
        assert value == QQ(5, 2)
        with pytest.raises(ValueError, match="No value given"):
            alphabet.evaluate(x, {})

    def test_truncate(self, alphabet: Alphabet) -> None:
        x, q = alphabet.gen(Family.X, 1), alphabet.gen(Family.Q, 1)
        weight = {Family.X: 1, Family.Q: 2}
        kept = alphabet.truncate(x + q + x * q, lambda v: weight.get(v.family, 0), 2)
        assert kept == x + q

    def test_fraction_text(self, alphabet: Alphabet) -> None:
        x = alphabet.gen(Family.X, 1)
        fraction = alphabet.to_fraction(alphabet.one) / alphabet.to_fraction(x)
        assert alphabet.fraction_text(fraction) == "(1)/(x_1)"


class TestDivision:
    def test_exact(self, alphabet: Alphabet) -> None:
        x, a = alphabet.gen(Family.X, 1), alphabet.gen(Family.A, 1)
        assert divide_exact(x**2 - a**2, x - a) == x + a
        assert divide_exact(alphabet.zero, x) == alphabet.zero

    def test_not_divisible(self, alphabet: Alphabet) -> None:
        x, a = alphabet.gen(Family.X, 1), alphabet.gen(Family.A, 1)
        with pytest.raises(NotDivisible):
            divide_exact(x + 1, x - a)
        with pytest.raises(ZeroDivisionError):
            divide_exact(x, alphabet.zero)


def test_det() -> None:
    assert det([[1, 2], [3, 4]], 1) == -2
    assert det([], 1) == 1
    assert det([[2, 0, 0], [5, 3, 0], [7, 8, 4]], 1) == 24
    with pytest.raises(ValueError, match="non-square"):
        det([[1, 2]], 1)


def test_elementary() -> None:
    values = [1, 2, 3]
    assert elementary(values, 2, 1) == 11
    assert elementary(values, 0, 1) == 1
    assert elementary(values, 4, 1) == 0


class TestSRing:
    def test_rank_bound(self) -> None:
        with pytest.raises(ValueError, match="at least 2"):
            SRing(1)

    def test_last_variable_eliminated(self) -> None:
        ctx = SRing.for_rank(3)
        a1, a2 = ctx.scalars.gen(Family.A, 1), ctx.scalars.gen(Family.A, 2)
        assert ctx.a(3) == -(a1 + a2)
        assert ctx.a(4) == a1
        assert ctx.a(0) == ctx.a(3)
        assert ctx.alpha(3) == ctx.a(3) - a1

    def test_symmetric_functions_of_a(self) -> None:
        ctx = SRing.for_rank(3)
        assert not ctx.e_sym(1)
        assert ctx.e_sym(0) == ctx.scalars.one

    def test_parse_with_eliminated_variable(self) -> None:
        ctx = SRing.for_rank(2)
        assert ctx.parse("a_2") == -ctx.coords.gen(Family.A, 1)
        assert ctx.parse("x_1 - a_1") == ctx.coords.gen(Family.X, 1) - ctx.coords.gen(Family.A, 1)

    def test_reduce_reads_indices_mod_n(self) -> None:
        ctx = SRing.for_rank(2)
        source = Alphabet([VarId(Family.A, i) for i in range(-1, 4)])
        reduced = ctx.reduce(source.gen(Family.A, -1) + source.gen(Family.A, 3) + source.gen(Family.A, 2), source)
        assert reduced == ctx.a(1)

    def test_permute_and_lift(self) -> None:
        ctx = SRing.for_rank(3)
        a1 = ctx.a(1)
        swapped = ctx.permute(a1, lambda i: {1: 2, 2: 1}.get(i, i))
        assert swapped == ctx.a(2)
        lifted = ctx.lift(a1)
        assert lifted == ctx.coords.gen(Family.A, 1)
        assert ctx.lower(lifted) == a1


def random_poly(alphabet: Alphabet, rng: random.Random, terms: int = 4, degree: int = 2) -> PolyElement:
    count = len(alphabet.variables)
    data: Dict[tuple, Any] = {}
    for _ in range(terms):
        monom = tuple(rng.randint(0, degree) for _ in range(count))
        data[monom] = data.get(monom, QQ.zero) + QQ(rng.randint(-5, 5), rng.randint(1, 3))
    return alphabet.ring.from_dict(data)


def random_point(alphabet: Alphabet, rng: random.Random) -> Dict[VarId, Any]:
    return {v: QQ(rng.randint(-9, 9), rng.randint(1, 4)) for v in alphabet.variables}


def signature(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def leibniz(matrix: List[List[PolyElement]], one: PolyElement) -> PolyElement:
    total = one - one
    for perm in permutations(range(len(matrix))):
        term = one * signature(perm)
        for row, column in enumerate(perm):
            term = term * matrix[row][column]
        total = total + term
    return total


SEEDS = [3, 17, 2024, 31337]


class TestRandomized:
    @pytest.fixture
    def source(self) -> Alphabet:
        return Alphabet([VarId(Family.A, i) for i in range(-2, 5)] + [VarId(Family.X, 1)])

    @pytest.mark.parametrize("seed", SEEDS)
    def test_ring_axioms(self, source: Alphabet, seed: int) -> None:
        rng = random.Random(seed)
        p, q, r = (random_poly(source, rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p + source.zero == p
        assert p * source.one == p
        assert p - p == source.zero

    @pytest.mark.parametrize("seed", SEEDS)
    def test_reduce_is_a_ring_map(self, source: Alphabet, seed: int) -> None:
        rng = random.Random(seed)
        ctx = SRing.for_rank(3)
        scalars = Alphabet([VarId(Family.A, i) for i in range(-2, 5)])
        p, q = random_poly(scalars, rng), random_poly(scalars, rng)
        reduced_p, reduced_q = ctx.reduce(p, scalars), ctx.reduce(q, scalars)
        assert ctx.reduce(p * q, scalars) == ctx.reduce(reduced_p * reduced_q, ctx.scalars)
        assert ctx.reduce(p + q, scalars) == reduced_p + reduced_q
        assert ctx.reduce(reduced_p, ctx.scalars) == reduced_p
        mixed_p, mixed_q = random_poly(source, rng), random_poly(source, rng)
        lifted_p, lifted_q = ctx.reduce(mixed_p, source, ctx.coords), ctx.reduce(mixed_q, source, ctx.coords)
        assert ctx.reduce(mixed_p * mixed_q, source, ctx.coords) == lifted_p * lifted_q

    @pytest.mark.parametrize("seed", SEEDS)
    def test_fractions_agree_with_evaluation(self, seed: int) -> None:
        rng = random.Random(seed)
        alphabet = Alphabet([VarId(Family.A, 1), VarId(Family.A, 2), VarId(Family.X, 1)])

        def value(f: FracElement, point: Dict[VarId, Any]) -> Any:
            numer = alphabet.evaluate(f.numer.set_ring(alphabet.ring), point)
            denom = alphabet.evaluate(f.denom.set_ring(alphabet.ring), point)
            return numer / denom

        polys = [random_poly(alphabet, rng) or alphabet.one for _ in range(4)]
        f = alphabet.to_fraction(polys[0]) / alphabet.to_fraction(polys[1])
        g = alphabet.to_fraction(polys[2]) / alphabet.to_fraction(polys[3])
        for _ in range(3):
            point = random_point(alphabet, rng)
            values = [alphabet.evaluate(p, point) for p in polys]
            if not (values[1] and values[3] and values[2]):
                continue
            fv, gv = values[0] / values[1], values[2] / values[3]
            assert value(f + g, point) == fv + gv
            assert value(f - g, point) == fv - gv
            assert value(f * g, point) == fv * gv
            assert value(f / g, point) == fv / gv

    @pytest.mark.parametrize("seed", SEEDS)
    def test_det_matches_leibniz_expansion(self, seed: int) -> None:
        rng = random.Random(seed)
        alphabet = Alphabet([VarId(Family.A, 1), VarId(Family.G, 1), VarId(Family.G, 2)])
        matrix = [[random_poly(alphabet, rng, terms=rng.randint(0, 3)) for _ in range(3)] for _ in range(3)]
        assert det(matrix, alphabet.one) == leibniz(matrix, alphabet.one)
        point = random_point(alphabet, rng)
        values = [[alphabet.evaluate(entry, point) for entry in row] for row in matrix]
        assert alphabet.evaluate(det(matrix, alphabet.one), point) == det(values, QQ.one)
