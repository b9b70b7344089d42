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
The rational transformation from quantum double Schubert polynomials to centralizer minors,
checked in y-coordinates and in the localized Peterson algebra.
"""

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from coreason_schubert.core.centralizer import CentralizerMatrix, KostantFraction, KostantSubstitution
from coreason_schubert.core.exactalg import Family, VarId
from coreason_schubert.core.peterson import LocalizedPetersonElement, PetersonAlgebra, PetersonElement
from coreason_schubert.core.schubert import quantum_schubert
from coreason_schubert.core.weyl import (
    Coweight,
    ExtAffineElement,
    Partition,
    descent_set,
    factor_sigma,
    grassmannian_to_partition,
    translation,
)


@dataclass(frozen=True)
class LambdaData:
    """w t_lambda = tau^k w_mu with lambda = -sum of omega_i over the descents of w."""

    w: ExtAffineElement
    weight: Coweight
    affine: ExtAffineElement
    shape: Partition
    k: int
    descents: Tuple[int, ...]

    @property
    def fits_box(self) -> bool:
        return self.shape.fits_box(self.k, self.w.n - self.k)

    @property
    def unit_exponent(self) -> int:
        """(d - k) / n with d = sum over descents of n - i."""
        n = self.w.n
        d = sum(n - i for i in self.descents)
        if (d - self.k) % n:
            raise RuntimeError(f"Degree {d} and rotation {self.k} of {self.w.label()} are not congruent mod {n}")
        return (d - self.k) // n

    def to_text(self) -> str:
        denominators = ", ".join(f"D_{i}" for i in self.descents) or "none"
        return (
            f"w={self.w.label()} lambda={self.weight.to_text()} w*t_lambda={self.affine.label()} "
            f"mu={self.shape} k={self.k} denominators: {denominators}"
        )


def derive_lambda_w(w: ExtAffineElement) -> LambdaData:
    """Factor w t_lambda for the minimal antidominant lambda strict exactly at the descents of w."""
    if not w.is_finite:
        raise ValueError(f"{w.label()} is not a finite permutation")
    n = w.n
    descents = descent_set(w)
    weight = Coweight.zero(n)
    for i in descents:
        weight = weight - Coweight.fundamental(n, i)
    affine = w * translation(weight)
    if not affine.is_grassmannian:
        raise RuntimeError(f"{w.label()} * {weight.to_text()} = {affine.label()} is not Grassmannian")
    k, body = factor_sigma(affine)
    return LambdaData(w, weight, affine, grassmannian_to_partition(body), k, descents)


def quantum_to_affine(peterson: PetersonAlgebra, p: PolyElement) -> LocalizedPetersonElement:
    """
    Evaluate p in S[x;q] in the localized Peterson algebra through
    x_1 + ... + x_i -> psi_xsum(i) and q_i -> psi_q(i).
    """
    n = peterson.n
    ctx = peterson.nilhecke.ctx
    coords = ctx.coords
    xsums = [peterson.psi_xsum(i) for i in range(n + 1)]
    images: Dict[VarId, LocalizedPetersonElement] = {}
    for i in range(1, n + 1):
        images[VarId(Family.X, i)] = xsums[i] - xsums[i - 1]
    for i in range(1, n):
        images[VarId(Family.Q, i)] = peterson.psi_q(i)
    powers: Dict[Tuple[VarId, int], LocalizedPetersonElement] = {}

    def power(var: VarId, e: int) -> LocalizedPetersonElement:
        key = (var, e)
        if key not in powers:
            powers[key] = images[var] if e == 1 else power(var, e - 1) * images[var]
        return powers[key]

    # Monomials sharing an (x, q) part are multiplied out once.
    grouped: Dict[Tuple[Tuple[VarId, int], ...], PolyElement] = {}
    for monom, coeff in p.items():
        scalar = peterson.S.one * coeff
        key: List[Tuple[VarId, int]] = []
        for position, e in enumerate(monom):
            if not e:
                continue
            var = coords.variables[position]
            if var.family == Family.A:
                scalar = scalar * ctx.a(var.index) ** e
                continue
            if var.family not in (Family.X, Family.Q):
                raise ValueError(f"{var} is not a variable of S[x;q]")
            key.append((var, e))
        grouped[tuple(key)] = grouped.get(tuple(key), peterson.S.zero) + scalar

    total = peterson.localize(PetersonElement.zero(peterson.nilhecke))
    for part, scalar in grouped.items():
        if not scalar:
            continue
        term: Optional[LocalizedPetersonElement] = None
        for var, e in part:
            factor = power(var, e)
            term = factor if term is None else term * factor
        if term is None:
            term = peterson.localize(peterson.one())
        total = total + term.scale(scalar)
    return total
@dataclass
class TheoremOutcome:
    ok: bool
    witness: Optional[str] = None
    skipped: Optional[str] = None
    note: Optional[str] = None


class MainTheoremChecker:
    """Both sides of the main theorem for one rank."""

    def __init__(
        self,
        n: int,
        *,
        matrix: Optional[CentralizerMatrix] = None,
        peterson: Optional[PetersonAlgebra] = None,
        flip_schubert: bool = False,
    ) -> None:
        self.n = n
        self.matrix = matrix or CentralizerMatrix(n)
        self.psi = KostantSubstitution(self.matrix)
        self.peterson = peterson
        self.flip_schubert = flip_schubert

    def _schubert(self, w: ExtAffineElement) -> PolyElement:
        return quantum_schubert(w, flip_sign=self.flip_schubert).poly

    def coordinate_sides(self, data: LambdaData) -> Tuple[KostantFraction, KostantFraction]:
        """(Psi(S_w) prod D_i, minor(mu, k) D_0^e) as exact fractions."""
        lhs = self.psi.apply(self._schubert(data.w))
        exponents = [0] * self.n
        for i in data.descents:
            exponents[i] += 1
        lhs = lhs * KostantFraction(self.matrix, self.matrix.coords.one, tuple(exponents))
        unit = [0] * self.n
        unit[0] = data.unit_exponent
        rhs = KostantFraction(self.matrix, self.matrix.minor(data.shape, data.k), tuple(unit))
        return lhs.reduced(), rhs.reduced()

    def check_coordinates(self, w: ExtAffineElement) -> TheoremOutcome:
        data = derive_lambda_w(w)
        if not data.fits_box:
            return self.check_by_solving(data)
        lhs, rhs = self.coordinate_sides(data)
        if lhs == rhs:
            return TheoremOutcome(True)
        return TheoremOutcome(False, f"{data.to_text()}: {lhs.to_text()} != {rhs.to_text()}")

    def check_coordinates_sampled(self, w: ExtAffineElement, rng: random.Random, points: int) -> TheoremOutcome:
        data = derive_lambda_w(w)
        if not data.fits_box:
            return self.check_by_solving(data)
        poly = self._schubert(w)
        minor = self.matrix.minor(data.shape, data.k)
        coords = self.matrix.coords
        for _ in range(points):
            point = self.matrix.sample_point(rng)
            lhs = self.psi.apply_at(poly, point)
            for i in data.descents:
                lhs = lhs * coords.evaluate(self.matrix.D(i), point)
            rhs = coords.evaluate(minor, point) * coords.evaluate(self.matrix.D(0), point) ** data.unit_exponent
            if lhs != rhs:
                values = ", ".join(f"{v}={point[v]}" for v in sorted(point))
                return TheoremOutcome(False, f"{data.to_text()}: {lhs} != {rhs} at {values}")
        return TheoremOutcome(True, note=f"coordinates at {points} exact sample points")

    def _affine_side(self, data: LambdaData) -> LocalizedPetersonElement:
        assert self.peterson is not None
        peterson = self.peterson
        image = quantum_to_affine(peterson, self._schubert(data.w))
        return image * peterson.localize(peterson.j_translation(data.weight))

    def check_by_solving(self, data: LambdaData) -> TheoremOutcome:
        """
        psi(S_w) j_{t_lambda} = j_solve(w t_lambda) when mu(w) has no centralizer minor.
        Skipped without a Peterson algebra.
        """
        outside = f"mu={data.shape} does not fit a {data.k} x {self.n - data.k} box"
        if self.peterson is None:
            return TheoremOutcome(True, skipped=outside)
        note = f"{outside}; compared with j_solve({data.affine.label()})"
        lhs = self._affine_side(data)
        rhs = self.peterson.localize(self.peterson.j_solve(data.affine))
        if lhs == rhs:
            return TheoremOutcome(True, note=note)
        return TheoremOutcome(False, f"{data.to_text()}: {note}: {lhs.to_text()} != {rhs.to_text()}")

    def check_peterson(self, w: ExtAffineElement) -> TheoremOutcome:
        """psi(S_w) j_{t_lambda} = j_{w t_lambda} in the localized Peterson algebra."""
        if self.peterson is None:
            return TheoremOutcome(True, skipped="no Peterson algebra attached")
        data = derive_lambda_w(w)
        lhs = self._affine_side(data)
        rhs = self.peterson.localize(self.peterson.j_class(data.affine))
        if lhs == rhs:
            return TheoremOutcome(True)
        return TheoremOutcome(False, f"{data.to_text()}: {lhs.to_text()} != {rhs.to_text()}")
