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
Quantum double Schubert polynomials in S[x;q] and the tridiagonal presentation of the
equivariant quantum cohomology of the flag variety.

All polynomials live in ``SRing.coords`` (a_n eliminated). The top class is a product of
characteristic determinants of leading tridiagonal blocks; every other class follows by
S_w = -d_i S_{s_i w} with d_i the divided difference in the a-variables.
"""

from dataclasses import dataclass
from functools import cache
from typing import Dict, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from coreason_schubert.core.exactalg import Family, SRing, VarId, det, divide_exact
from coreason_schubert.core.weyl import ExtAffineElement, longest_element, permutation
from coreason_schubert.utils.logger import logger


def tridiagonal(ctx: SRing, size: int, shift: Optional[PolyElement] = None) -> List[List[PolyElement]]:
    """C_size - shift * id: diagonal x_i, superdiagonal -1, subdiagonal q_i."""
    coords = ctx.coords
    offset = coords.zero if shift is None else shift
    matrix = [[coords.zero] * size for _ in range(size)]
    for i in range(size):
        matrix[i][i] = coords.gen(Family.X, i + 1) - offset
        if i + 1 < size:
            matrix[i][i + 1] = -coords.one
            matrix[i + 1][i] = coords.gen(Family.Q, i + 1)
    return matrix


def characteristic_polynomial(ctx: SRing, size: int) -> PolyElement:
    """det(C_size - z id) with z the auxiliary variable."""
    z = ctx.coords.gen(Family.AUX, 0)
    return det(tridiagonal(ctx, size, z), ctx.coords.one)


def basic_invariants(n: int) -> List[PolyElement]:
    """[g_{1,n}, ..., g_{n,n}] with det(C_n - z) = sum_j (-z)^(n-j) g_{j,n}."""
    ctx = SRing.for_rank(max(n, 2))
    z = ctx.coords.gen(Family.AUX, 0)
    char = characteristic_polynomial(ctx, n)
    invariants = []
    for j in range(1, n + 1):
        coefficient = char.coeff_wrt(z, n - j)
        invariants.append(coefficient if (n - j) % 2 == 0 else -coefficient)
    return invariants


def kim_ideal_generators(n: int) -> List[PolyElement]:
    """g_{j,n}(x;q) - e_j(a), j = 1..n."""
    ctx = SRing.for_rank(n)
    return [g - ctx.e_sym(j, ctx.coords) for j, g in enumerate(basic_invariants(n), start=1)]


def divided_difference_a(ctx: SRing, i: int, p: PolyElement) -> PolyElement:
    """(p - s_i p) / (a_i - a_{i+1}) acting on the a-variables of the coordinate ring."""
    if not 1 <= i <= ctx.n - 1:
        raise ValueError(f"Divided difference index {i} is outside 1..{ctx.n - 1}")

    def swap(j: int) -> int:
        return i + 1 if j == i else i if j == i + 1 else j

    swapped = ctx.permute(p, swap, ctx.coords)
    return divide_exact(p - swapped, ctx.alpha(i, ctx.coords))


def weighted_degrees(ctx: SRing, p: PolyElement) -> set[int]:
    """Degrees of the terms of p with deg x = deg a = 1 and deg q = 2."""
    weights = []
    for v in ctx.coords.variables:
        weights.append(2 if v.family == Family.Q else 0 if v.family in (Family.G, Family.AUX) else 1)
    return {sum(w * e for w, e in zip(weights, monom)) for monom in p.keys()}


def is_homogeneous(ctx: SRing, p: PolyElement, degree: int) -> bool:
    return not p or weighted_degrees(ctx, p) == {degree}


@dataclass(frozen=True)
class QuantumSchubert:
    w: ExtAffineElement
    poly: PolyElement

    @property
    def n(self) -> int:
        return self.w.n

    def to_text(self) -> str:
        return SRing.for_rank(self.n).coords.to_text(self.poly)


def _top_quantum(ctx: SRing) -> PolyElement:
    n = ctx.n
    top = ctx.coords.one
    for i in range(1, n):
        top = top * det(tridiagonal(ctx, i, ctx.a(n - i, ctx.coords)), ctx.coords.one)
    return top


def _top_classical(ctx: SRing) -> PolyElement:
    coords = ctx.coords
    top = coords.one
    for i in range(1, ctx.n):
        for j in range(1, ctx.n - i + 1):
            top = top * (coords.gen(Family.X, i) - ctx.a(j, coords))
    return top


def _ascent(w: ExtAffineElement) -> int:
    """Smallest i with w^-1(i) < w^-1(i+1), i.e. s_i w is longer than w."""
    inverse = w.inverse
    for i in range(1, w.n):
        if inverse(i) < inverse(i + 1):
            return i
    raise ValueError(f"{w.label()} is the longest element")


@cache
def _descend(n: int, window: Tuple[int, ...], quantum: bool, flip_sign: bool) -> PolyElement:
    ctx = SRing.for_rank(n)
    w = permutation(window)
    if w == longest_element(n):
        return _top_quantum(ctx) if quantum else _top_classical(ctx)
    i = _ascent(w)
    above = _descend(n, (ExtAffineElement.simple(n, i) * w).window, quantum, flip_sign)
    step = divided_difference_a(ctx, i, above)
    return step if flip_sign else -step


def quantum_schubert(w: ExtAffineElement, *, flip_sign: bool = False) -> QuantumSchubert:
    """
    The quantum double Schubert polynomial of a finite permutation. ``flip_sign`` replaces the
    recursion sign and exists only as a negative control.
    """
    if not w.is_finite:
        raise ValueError(f"{w.label()} is not a finite permutation")
    poly = _descend(w.n, w.window, True, flip_sign)
    logger.debug(f"quantum_schubert({w.label()}) computed, {len(poly)} terms")
    return QuantumSchubert(w, poly)


def classical_double_schubert(w: ExtAffineElement) -> PolyElement:
    """Double Schubert polynomial from prod_{i+j<=n}(x_i - a_j) by the same recursion."""
    if not w.is_finite:
        raise ValueError(f"{w.label()} is not a finite permutation")
    return _descend(w.n, w.window, False, False)


def descend_along(w: ExtAffineElement, path: List[int]) -> PolyElement:
    """
    S_w computed along an explicit path: starting at w_0, apply -d_i for each i of ``path`` in
    turn (each must be a left descent of the current element). Used for path independence.
    """
    ctx = SRing.for_rank(w.n)
    current = longest_element(w.n)
    poly = _top_quantum(ctx)
    for i in path:
        if not current.has_left_descent(i):
            raise ValueError(f"s{i} is not a left descent of {current.label()}")
        current = current.left_multiply(i)
        poly = -divided_difference_a(ctx, i, poly)
    if current != w:
        raise ValueError(f"Path {path} ends at {current.label()}, not {w.label()}")
    return poly


def specialize_classical(ctx: SRing, p: PolyElement) -> PolyElement:
    """Set every q_i to zero."""
    images: Dict[VarId, PolyElement] = {VarId(Family.Q, i): ctx.coords.zero for i in range(1, ctx.n)}
    return ctx.coords.substitute(p, images)
