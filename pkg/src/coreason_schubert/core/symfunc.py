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
Truncated model of symmetric series in y over QQ[a_i : |i| <= M].

A series is a polynomial in the classical e_1[y]..e_N[y] (weight of e_j is j) with every
term of y-degree above N dropped. Dual elementary functions are extracted from the generating
identity sum_j e^_j (t + a_0)...(t + a_{j-1}) = prod_i (1 + t y_i) / (1 - a_0 y_i).
"""

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

from sympy.polys.rings import PolyElement

from coreason_schubert.core.exactalg import Alphabet, Family, VarId, det, elementary
from coreason_schubert.core.weyl import Partition
from coreason_schubert.utils.logger import logger

T = TypeVar("T")


class DeterminantMismatch(AssertionError):
    """The two Jacobi-Trudi determinants of a dual Schur function disagree."""


class SeriesModel:
    """Alphabet a_{-M..M}, e_1..e_N and the memoized basic series."""

    def __init__(self, radius: int, cutoff: int) -> None:
        if cutoff < 1 or radius < cutoff:
            raise ValueError(f"Need 1 <= cutoff <= radius, got cutoff={cutoff}, radius={radius}")
        self.radius = radius
        self.cutoff = cutoff
        a_vars = [VarId(Family.A, i) for i in range(-radius, radius + 1)]
        self.alphabet = Alphabet(a_vars + [VarId(Family.EY, j) for j in range(1, cutoff + 1)])
        self._weights = [v.index if v.family == Family.EY else 0 for v in self.alphabet.variables]
        self._h: List[PolyElement] = []
        self._dual_e: Optional[List["TruncatedSeries"]] = None
        self._dual_schur: Dict[Partition, "TruncatedSeries"] = {}

    @staticmethod
    @cache
    def get(radius: int = 10, cutoff: int = 8) -> "SeriesModel":
        return SeriesModel(radius, cutoff)

    def degree(self, monom: Tuple[int, ...]) -> int:
        return sum(w * e for w, e in zip(self._weights, monom))

    def series(self, p: PolyElement) -> "TruncatedSeries":
        kept = {m: c for m, c in p.items() if self.degree(m) <= self.cutoff}
        return TruncatedSeries(self, self.alphabet.ring.from_dict(kept))

    @property
    def one(self) -> "TruncatedSeries":
        return TruncatedSeries(self, self.alphabet.one)

    @property
    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, self.alphabet.zero)

    def a(self, i: int) -> PolyElement:
        if abs(i) > self.radius:
            raise ValueError(f"a_{i} is outside the alphabet radius {self.radius}")
        return self.alphabet.gen(Family.A, i)

    def e(self, j: int) -> "TruncatedSeries":
        """Classical e_j[y]."""
        if j < 0 or j > self.cutoff:
            return self.zero
        if j == 0:
            return self.one
        return TruncatedSeries(self, self.alphabet.gen(Family.EY, j))

    def _h_poly(self, j: int) -> PolyElement:
        if not self._h:
            self._h.append(self.alphabet.one)
            for m in range(1, self.cutoff + 1):
                total = self.alphabet.zero
                for i in range(1, m + 1):
                    term = self.alphabet.gen(Family.EY, i) * self._h[m - i]
                    total = total + term if i % 2 else total - term
                self._h.append(total)
        return self._h[j]

    def h(self, j: int) -> "TruncatedSeries":
        """Classical h_j[y] from sum_i (-1)^(i-1) e_i h_{m-i} = h_m."""
        if j < 0 or j > self.cutoff:
            return self.zero
        return TruncatedSeries(self, self._h_poly(j))

    def dual_e(self, j: int) -> "TruncatedSeries":
        """e^_j(y||a) to y-degree N."""
        if j < 0 or j > self.cutoff:
            return self.zero
        if self._dual_e is None:
            self._dual_e = self._extract_dual_e()
        return self._dual_e[j]

    def _extract_dual_e(self) -> List["TruncatedSeries"]:
        N = self.cutoff
        a0 = self.a(0)
        base = self.zero
        for level in range(N + 1):
            base = base + self.h(level).scale(a0**level)
        values = [self.a(m) for m in range(N)]
        hats: List[Optional[TruncatedSeries]] = [None] * (N + 1)
        for m in range(N, -1, -1):
            current = self.e(m) * base
            for j in range(m + 1, N + 1):
                coefficient = elementary(values[:j], j - m, self.alphabet.one)
                later = hats[j]
                assert later is not None
                current = current - later.scale(coefficient)
            hats[m] = current
        logger.debug(f"Extracted dual elementary series to degree {N}")
        return [h for h in hats if h is not None]

    def dual_h(self, j: int) -> "TruncatedSeries":
        """h^_j = e^_j^(omega eta)."""
        return self.dual_e(j).eta().omega()

    def omega_ratio(self, numerator_index: int, denominator_index: int) -> "TruncatedSeries":
        """prod_i (1 - a_p y_i) / (1 - a_q y_i)."""
        ap, aq = self.a(numerator_index), self.a(denominator_index)
        top = self.zero
        bottom = self.zero
        for k in range(self.cutoff + 1):
            top = top + self.e(k).scale((-ap) ** k)
            bottom = bottom + self.h(k).scale(aq**k)
        return top * bottom

    def dual_schur(self, shape: Partition) -> "TruncatedSeries":
        """s^_lambda by both Jacobi-Trudi determinants; they must agree."""
        if shape.size > self.cutoff:
            raise ValueError(f"|{shape}| exceeds the truncation degree {self.cutoff}")
        if shape in self._dual_schur:
            return self._dual_schur[shape]
        by_h = self._jacobi_trudi(shape, self.dual_h, 1)
        by_e = self._jacobi_trudi(shape.conjugate, self.dual_e, -1)
        if by_h != by_e:
            raise DeterminantMismatch(f"Jacobi-Trudi determinants of s^{shape} differ: {(by_h - by_e).to_text()}")
        self._dual_schur[shape] = by_h
        return by_h

    def _jacobi_trudi(
        self, shape: Partition, entry: Callable[[int], "TruncatedSeries"], direction: int
    ) -> "TruncatedSeries":
        size = len(shape)
        matrix = [
            [self._entry(entry, shape[i + 1] - i + j, direction * j) for j in range(size)] for i in range(size)
        ]
        return det(matrix, self.one)

    def _entry(self, entry: Callable[[int], "TruncatedSeries"], r: int, twist: int) -> "TruncatedSeries":
        if r < 0:
            return self.zero
        if r == 0:
            return self.one
        return entry(r).tau(twist)

    def schur(self, shape: Partition) -> "TruncatedSeries":
        """Classical s_lambda[y] = det(h_{lambda_i - i + j})."""
        size = len(shape)
        matrix = [[self.h(shape[i + 1] - i + j) for j in range(size)] for i in range(size)]
        return det(matrix, self.one)


class TruncatedSeries:
    """An element of the truncated model; products drop y-degrees above the cutoff."""

    __slots__ = ("model", "poly", "_buckets")

    def __init__(self, model: SeriesModel, poly: PolyElement) -> None:
        self.model = model
        self.poly = poly
        self._buckets: Optional[Dict[int, PolyElement]] = None

    def buckets(self) -> Dict[int, PolyElement]:
        if self._buckets is None:
            grouped: Dict[int, Dict[Tuple[int, ...], object]] = {}
            for monom, coeff in self.poly.items():
                grouped.setdefault(self.model.degree(monom), {})[monom] = coeff
            ring = self.model.alphabet.ring
            self._buckets = {d: ring.from_dict(terms) for d, terms in grouped.items()}
        return self._buckets

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.model, self.poly + other.poly)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.model, self.poly - other.poly)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.model, -self.poly)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cutoff = self.model.cutoff
        total = self.model.alphabet.zero
        right = other.buckets()
        for d1, p1 in self.buckets().items():
            for d2, p2 in right.items():
                if d1 + d2 <= cutoff:
                    total = total + p1 * p2
        return TruncatedSeries(self.model, total)

    def scale(self, c: PolyElement) -> "TruncatedSeries":
        return TruncatedSeries(self.model, self.poly * c)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def tau(self, k: int = 1) -> "TruncatedSeries":
        """a_i -> a_{i+k}."""
        if not k:
            return self
        return TruncatedSeries(self.model, self.model.alphabet.reindex(self.poly, Family.A, lambda i: i + k))

    def eta(self) -> "TruncatedSeries":
        """a_i -> -a_{1-i}."""
        return TruncatedSeries(self.model, self.model.alphabet.reindex(self.poly, Family.A, lambda i: 1 - i, sign=-1))

    def omega(self) -> "TruncatedSeries":
        """e_j[y] <-> h_j[y] with coefficients fixed."""
        alphabet = self.model.alphabet
        images = {VarId(Family.EY, j): self.model._h_poly(j) for j in range(1, self.model.cutoff + 1)}
        return self.model.series(alphabet.substitute(self.poly, images))

    def a_indices(self) -> List[int]:
        return sorted(v.index for v in self.model.alphabet.support(self.poly) if v.family == Family.A)

    def classical_limit(self) -> "TruncatedSeries":
        """Every a_i set to zero."""
        positions = [i for i, v in enumerate(self.model.alphabet.variables) if v.family == Family.A]
        kept = {m: c for m, c in self.poly.items() if not any(m[i] for i in positions)}
        return TruncatedSeries(self.model, self.model.alphabet.ring.from_dict(kept))

    def to_text(self) -> str:
        return self.model.alphabet.to_text(self.poly)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.to_text()})"


@dataclass(frozen=True)
class DualSchurName:
    """A symbolic label for s^_shape twisted by tau^twist."""

    shape: Partition
    twist: int = 0

    def label(self) -> str:
        text = "s-hat[" + ",".join(str(p) for p in self.shape.parts) + "]"
        return text if not self.twist else f"{text}^tau^{self.twist}"

    def resolve(self, model: SeriesModel) -> TruncatedSeries:
        return model.dual_schur(self.shape).tau(self.twist)


def kdouble_small(shape: Partition, n: int) -> DualSchurName:
    """The dual Schur label of a k-double Schur function whose main hook is at most n - 1."""
    hook = shape.first + len(shape) - 1 if shape.parts else 0
    if hook > n - 1:
        raise ValueError(f"Partition {shape} has main hook {hook} > {n - 1}; outside the small regime")
    return DualSchurName(shape)


@dataclass(frozen=True)
class FormalDeterminant:
    """
    det(X_{lambda_i - i + j}^{tau^{-j}}) over labels (r, twist), 0-based j; X_0 = 1 and
    negative r gives 0. Shared by the Peterson and symmetric-series realizations.
    """

    terms: Tuple[Tuple[int, Tuple[Tuple[int, int], ...]], ...]

    @classmethod
    def of(cls, shape: Partition, size: int) -> "FormalDeterminant":
        if len(shape) > size:
            raise ValueError(f"Partition {shape} has more than {size} rows")
        terms = []
        for perm in itertools.permutations(range(size)):
            labels = []
            for i, j in enumerate(perm):
                r = shape[i + 1] - i + j
                if r < 0:
                    break
                if r > 0:
                    labels.append((r, -j))
            else:
                inversions = sum(1 for x, y in itertools.combinations(perm, 2) if x > y)
                terms.append((-1 if inversions % 2 else 1, tuple(labels)))
        return cls(tuple(terms))

    def evaluate(self, value: Callable[[int, int], T], one: T) -> T:
        total = one - one  # type: ignore[operator]
        for sign, labels in self.terms:
            product = one
            for r, twist in labels:
                product = product * value(r, twist)  # type: ignore[operator]
            total = total + product if sign > 0 else total - product  # type: ignore[operator]
        return total

    def to_text(self) -> str:
        parts = []
        for sign, labels in self.terms:
            body = "*".join(f"X{r}^tau^{t}" if t else f"X{r}" for r, t in labels) or "1"
            parts.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(parts).removeprefix("+ ") or "0"