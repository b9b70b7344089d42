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
The centralizer family in y-coordinates (y_11 = 1), its first-rows minors, the Kostant
substitution and the map into the Peterson algebra.

Row 1 of the matrix is (1, g_1, ..., g_{n-1}); every later row follows from
y_ij = y_{i-1,j-1} + (a_{i-1} - a_j) y_{i-1,j} with a_0 read as a_n.
"""

import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from coreason_schubert.core.exactalg import Family, NotDivisible, SRing, VarId, det, divide_exact
from coreason_schubert.core.peterson import LocalizedPetersonElement, PetersonAlgebra, PetersonElement
from coreason_schubert.core.weyl import Coweight, Partition
from coreason_schubert.utils.logger import logger

Point = Dict[VarId, Any]


class CentralizerMatrix:
    """Upper-triangular n x n matrix over QQ[a][g_1..g_{n-1}], with memoized minors."""

    def __init__(self, n: int, *, flip_sign: bool = False) -> None:
        self.n = n
        self.ctx = SRing.for_rank(n)
        self.coords = self.ctx.coords
        self.flip_sign = flip_sign
        self.entries = self._build()
        self._minors: Dict[Tuple[Partition, int], PolyElement] = {}

    def _build(self) -> List[List[PolyElement]]:
        n, coords, ctx = self.n, self.coords, self.ctx
        y = [[coords.zero] * (n + 1) for _ in range(n + 1)]
        y[1][1] = coords.one
        for p in range(1, n):
            y[1][1 + p] = coords.gen(Family.G, p)
        sign = -1 if self.flip_sign else 1
        for i in range(2, n + 1):
            for j in range(i, n + 1):
                y[i][j] = y[i - 1][j - 1] + (ctx.a(i - 1, coords) - ctx.a(j, coords)) * y[i - 1][j] * sign
        return y

    def entry(self, i: int, j: int) -> PolyElement:
        """y_ij, 1-based."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"Entry ({i},{j}) is outside a {self.n} x {self.n} matrix")
        return self.entries[i][j]

    def minor(self, shape: Partition, k: int) -> PolyElement:
        """Rows 1..k, columns (shape_k + 1, shape_{k-1} + 2, ..., shape_1 + k)."""
        if not shape.fits_box(k, self.n - k):
            raise ValueError(f"Partition {shape} does not fit a {k} x {self.n - k} box")
        key = (shape, k)
        if key not in self._minors:
            columns = [shape[k + 1 - q] + q for q in range(1, k + 1)]
            matrix = [[self.entries[r][c] for c in columns] for r in range(1, k + 1)]
            self._minors[key] = det(matrix, self.coords.one)
        return self._minors[key]

    def D(self, i: int) -> PolyElement:
        """D_i = minor of the (n-i) x i rectangle; D_0 is the full determinant and D_n = 1."""
        if not 0 <= i <= self.n:
            raise ValueError(f"D_{i} is only defined for 0 <= i <= {self.n}")
        return self.minor(Partition.rectangle(self.n - i, i), self.n - i)

    def D_prime(self, i: int) -> PolyElement:
        """D'_i = minor of the rectangle with its last cell removed."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"D'_{i} is only defined for 1 <= i <= {self.n - 1}")
        rows = self.n - i
        return self.minor(Partition.rectangle(rows, i).minus_last_row(1, rows), rows)

    def diagonal_product(self) -> PolyElement:
        total = self.coords.one
        for k in range(1, self.n + 1):
            total = total * self.entries[k][k]
        return total

    def unipotent_inverse_entry(self, r: int, j: int) -> "KostantFraction":
        """
        Strictly lower entry (r, j) of u^-1 in the normal form of the matrix: the minor of the
        rectangle R_{r-1} with r - j cells removed from its last row, divided by D_{r-1}.
        """
        if not 1 <= j < r <= self.n:
            raise ValueError(f"({r},{j}) is not a strictly lower entry of a {self.n} x {self.n} matrix")
        rows = self.n - r + 1
        shape = Partition.rectangle(rows, r - 1).minus_last_row(r - j, rows)
        exponents = [0] * self.n
        exponents[r - 1] = -1
        return KostantFraction(self, self.minor(shape, rows), tuple(exponents))

    def to_text(self) -> str:
        lines = []
        for i in range(1, self.n + 1):
            lines.append(" | ".join(self.coords.to_text(self.entries[i][j]) for j in range(1, self.n + 1)))
        return "\n".join(lines)

    def sample_point(self, rng: random.Random, bound: int = 9) -> Point:
        """A random rational point in (a, g) where every D_i is nonzero."""
        while True:
            point: Point = {}
            for i in range(1, self.n):
                point[VarId(Family.A, i)] = QQ(rng.randint(-bound, bound), rng.randint(1, bound))
                point[VarId(Family.G, i)] = QQ(rng.randint(-bound, bound), rng.randint(1, bound))
            if all(self.coords.evaluate(self.D(i), point) for i in range(self.n)):
                return point


@dataclass(frozen=True)
class KostantFraction:
    """numerator * prod_i D_i^exponents[i] over the index range 0..n-1."""

    matrix: CentralizerMatrix
    numerator: PolyElement
    exponents: Tuple[int, ...]

    @classmethod
    def of(cls, matrix: CentralizerMatrix, p: PolyElement) -> "KostantFraction":
        return cls(matrix, p, (0,) * matrix.n)

    def _scaled(self, target: Tuple[int, ...]) -> PolyElement:
        result = self.numerator
        for i, (have, want) in enumerate(zip(self.exponents, target)):
            if have > want:
                result = result * self.matrix.D(i) ** (have - want)
        return result

    def __add__(self, other: "KostantFraction") -> "KostantFraction":
        common = tuple(min(a, b) for a, b in zip(self.exponents, other.exponents))
        return KostantFraction(self.matrix, self._scaled(common) + other._scaled(common), common)

    def __neg__(self) -> "KostantFraction":
        return KostantFraction(self.matrix, -self.numerator, self.exponents)

    def __sub__(self, other: "KostantFraction") -> "KostantFraction":
        return self + (-other)

    def __mul__(self, other: "KostantFraction") -> "KostantFraction":
        exponents = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        return KostantFraction(self.matrix, self.numerator * other.numerator, exponents)

    def scale(self, c: PolyElement) -> "KostantFraction":
        return KostantFraction(self.matrix, self.numerator * c, self.exponents)

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KostantFraction):
            return NotImplemented
        return not (self - other)

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def reduced(self) -> "KostantFraction":
        """Cancel D_i factors of the numerator against negative exponents."""
        numerator = self.numerator
        exponents = list(self.exponents)
        for i in range(len(exponents)):
            while exponents[i] < 0 and numerator:
                try:
                    numerator = divide_exact(numerator, self.matrix.D(i))
                except NotDivisible:
                    break
                exponents[i] += 1
        return KostantFraction(self.matrix, numerator, tuple(exponents))

    def to_fraction(self) -> FracElement:
        coords = self.matrix.coords
        numer, denom = self.numerator, coords.one
        for i, e in enumerate(self.exponents):
            if e > 0:
                numer = numer * self.matrix.D(i) ** e
            elif e < 0:
                denom = denom * self.matrix.D(i) ** (-e)
        return coords.to_fraction(numer) / coords.to_fraction(denom)

    def to_text(self) -> str:
        reduced = self.reduced()
        text = self.matrix.coords.to_text(reduced.numerator)
        factors = []
        for i, e in enumerate(reduced.exponents):
            if e:
                factors.append(f"D_{i}" if e == 1 else f"D_{i}^{e}")
        return text if not factors else f"({text})*" + "*".join(factors)

    def evaluate(self, point: Point) -> Any:
        coords = self.matrix.coords
        value = coords.evaluate(self.numerator, point)
        for i, e in enumerate(self.exponents):
            if e:
                value = value * coords.evaluate(self.matrix.D(i), point) ** e
        return value


class KostantSubstitution:
    """x_1 + ... + x_i -> a_1 + ... + a_i + D'_i / D_i and q_i -> D_{i-1} D_{i+1} / D_i^2."""

    def __init__(self, matrix: CentralizerMatrix) -> None:
        self.matrix = matrix
        self.n = matrix.n
        self.ctx = matrix.ctx
        coords = matrix.coords
        self._x_positions = [coords.position(VarId(Family.X, i)) for i in range(1, self.n + 1)]
        self._q_positions = [coords.position(VarId(Family.Q, i)) for i in range(1, self.n)]
        self._powers: Dict[Tuple[int, int], KostantFraction] = {}

    def _d_ratio(self, i: int) -> KostantFraction:
        if i <= 0 or i >= self.n:
            return KostantFraction.of(self.matrix, self.matrix.coords.zero)
        exponents = [0] * self.n
        exponents[i] = -1
        return KostantFraction(self.matrix, self.matrix.D_prime(i), tuple(exponents))

    def xsum(self, i: int) -> KostantFraction:
        asum = KostantFraction.of(self.matrix, self.ctx.asum(min(i, self.n), self.matrix.coords))
        return asum + self._d_ratio(i)

    def x(self, i: int) -> KostantFraction:
        return self.xsum(i) - self.xsum(i - 1)

    def q(self, i: int) -> KostantFraction:
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"q_{i} is only defined for 1 <= i <= {self.n - 1}")
        exponents = [0] * self.n
        exponents[i - 1] += 1
        exponents[i] -= 2
        if i + 1 < self.n:
            exponents[i + 1] += 1
        return KostantFraction(self.matrix, self.matrix.coords.one, tuple(exponents))

    def _power(self, slot: int, e: int) -> KostantFraction:
        key = (slot, e)
        if key not in self._powers:
            if e == 0:
                self._powers[key] = KostantFraction.of(self.matrix, self.matrix.coords.one)
            else:
                base = self.x(slot + 1) if slot < self.n else self.q(slot - self.n + 1)
                self._powers[key] = self._power(slot, e - 1) * base
        return self._powers[key]

    def apply(self, p: PolyElement) -> KostantFraction:
        """Psi(p) for p in S[x;q], as a reduced KostantFraction."""
        groups = _split(p, self._x_positions + self._q_positions)
        total = KostantFraction.of(self.matrix, self.matrix.coords.zero)
        for key, coefficient in groups.items():
            term = KostantFraction.of(self.matrix, coefficient)
            for slot, e in enumerate(key):
                if e:
                    term = term * self._power(slot, e)
            total = total + term
        return total.reduced()

    def apply_at(self, p: PolyElement, point: Point) -> Any:
        """Exact value of Psi(p) at a rational point of (a, g)."""
        coords = self.matrix.coords
        d_values = [coords.evaluate(self.matrix.D(i), point) for i in range(self.n)] + [QQ.one]
        sums = [QQ.zero]
        for i in range(1, self.n + 1):
            value = coords.evaluate(self.ctx.asum(i, coords), point)
            if i < self.n:
                value += coords.evaluate(self.matrix.D_prime(i), point) / d_values[i]
            sums.append(value)
        full: Point = dict(point)
        for i in range(1, self.n + 1):
            full[VarId(Family.X, i)] = sums[i] - sums[i - 1]
        for i in range(1, self.n):
            full[VarId(Family.Q, i)] = d_values[i - 1] * d_values[i + 1] / d_values[i] ** 2
        return coords.evaluate(p, full)


def _split(p: PolyElement, positions: List[int]) -> Dict[Tuple[int, ...], PolyElement]:
    """Group p by the exponents at ``positions``; values keep the remaining variables."""
    ring = p.ring
    grouped: Dict[Tuple[int, ...], Dict[Tuple[int, ...], object]] = {}
    for monom, coeff in p.items():
        key = tuple(monom[i] for i in positions)
        rest = list(monom)
        for i in positions:
            rest[i] = 0
        bucket = grouped.setdefault(key, {})
        bucket[tuple(rest)] = bucket.get(tuple(rest), QQ.zero) + coeff
    return {key: ring.from_dict(terms) for key, terms in grouped.items()}


class PhiTilde:
    """
    The algebra map from the coordinate ring into the Peterson algebra sending y_{k,k+p} to
    j_{tau^k c_p} t_{-omega_{k-1} - omega_1} and fixing the a's.
    """

    def __init__(self, matrix: CentralizerMatrix, peterson: PetersonAlgebra) -> None:
        if matrix.n != peterson.n:
            raise ValueError(f"Rank mismatch: matrix {matrix.n}, Peterson algebra {peterson.n}")
        self.matrix = matrix
        self.peterson = peterson
        self.n = matrix.n
        self._g_positions = [matrix.coords.position(VarId(Family.G, p)) for p in range(1, self.n)]
        self._powers: Dict[Tuple[int, int], PetersonElement] = {}

    def entry_image(self, k: int, j: int) -> PetersonElement:
        """The image of y_kj assigned directly from the j-classes."""
        if j < k:
            return PetersonElement.zero(self.peterson.nilhecke)
        shift = -(Coweight.fundamental(self.n, k - 1) + Coweight.fundamental(self.n, 1))
        return self.peterson.j_tau_c(k, j - k) * self.peterson.translation_element(shift)

    def _power(self, p: int, e: int) -> PetersonElement:
        key = (p, e)
        if key not in self._powers:
            if e == 0:
                self._powers[key] = self.peterson.one()
            else:
                self._powers[key] = self._power(p, e - 1) * self.entry_image(1, 1 + p)
        return self._powers[key]

    def image(self, p: PolyElement) -> PetersonElement:
        """phi~ of a polynomial in the a's and g's."""
        ctx = self.matrix.ctx
        total = PetersonElement.zero(self.peterson.nilhecke)
        for key, coefficient in _split(p, self._g_positions).items():
            term = PetersonElement.scalar(self.peterson.nilhecke, ctx.lower(coefficient))
            for slot, e in enumerate(key):
                if e:
                    term = self._power(slot + 1, e) * term
            total = total + term
        return total

    def untwisted_minor(self, shape: Partition, k: int) -> PetersonElement:
        """phi~(minor(shape, k)) * t_{k omega_1}; equals j_{tau^k w_shape} when the map is correct."""
        image = self.image(self.matrix.minor(shape, k))
        return image * self.peterson.translation_element(Coweight.fundamental(self.n, 1).scale(k))

    def fraction_image(self, f: KostantFraction) -> LocalizedPetersonElement:
        """phi~ of numerator * prod D_i^e_i with phi~(D_i) = j_{t_{-omega_i}} t_{-(n-i) omega_1}."""
        numerator = self.image(f.numerator)
        denominator = Coweight.zero(self.n)
        for i, e in enumerate(f.exponents):
            if not e:
                continue
            unit = self.peterson.translation_element(Coweight.fundamental(self.n, 1).scale(-(self.n - i) * e))
            numerator = numerator * unit
            if e > 0:
                for _ in range(e):
                    numerator = numerator * self.peterson.j_translation(-Coweight.fundamental(self.n, i))
            else:
                denominator = denominator + Coweight.fundamental(self.n, i).scale(e)
        return LocalizedPetersonElement(self.peterson, numerator, denominator)


def matrix_for(n: int, mutation: Optional[str] = None) -> CentralizerMatrix:
    matrix = CentralizerMatrix(n, flip_sign=mutation == "commeqs")
    if matrix.flip_sign:
        logger.warning(f"Centralizer matrix for n={n} built with a flipped recursion sign")
    return matrix
