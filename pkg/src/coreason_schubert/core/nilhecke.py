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
The small-torus extended affine nilHecke algebra.

Elements are finite sums c_w A_w with c_w in S written on the left. Scalars move right
through basis elements with A_i s = (s_i . s) A_i + (A_i . s), where A_i . s = (s_i . s - s) / alpha_i,
and A_{tau^k u} = tau^k A_u.
"""

from functools import cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from coreason_schubert.core.exactalg import SRing, divide_exact
from coreason_schubert.core.weyl import ExtAffineElement
from coreason_schubert.utils.logger import logger

Terms = Dict[ExtAffineElement, PolyElement]


def _accumulate(target: Terms, key: ExtAffineElement, value: PolyElement) -> None:
    if not value:
        return
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class NilHeckeAlgebra:
    """Rank-n context: the coefficient ring S plus the commutation and product memos."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.ctx = SRing.for_rank(n)
        self.S = self.ctx.scalars
        self.identity = ExtAffineElement.identity(n)
        self._commute_memo: Dict[Tuple[ExtAffineElement, int], Terms] = {}
        self._product_memo: Dict[Tuple[ExtAffineElement, ExtAffineElement], Optional[ExtAffineElement]] = {}
        self._coproduct_memo: Dict[ExtAffineElement, "NilHeckeTensor"] = {}
        self._word_memo: Dict[Tuple[int, Tuple[int, ...]], "NilHeckeTensor"] = {}

    @staticmethod
    @cache
    def for_rank(n: int) -> "NilHeckeAlgebra":
        return NilHeckeAlgebra(n)

    def alpha(self, i: int) -> PolyElement:
        return self.ctx.alpha(i)

    def act_group(self, w: ExtAffineElement, c: PolyElement) -> PolyElement:
        """Level-zero action: w . a_i = a_{w(i) mod n}; translations act trivially."""
        if w == self.identity:
            return c
        return self.ctx.permute(c, w)

    def divided_difference(self, i: int, c: PolyElement) -> PolyElement:
        """A_i . c = (s_i . c - c) / alpha_i."""
        return divide_exact(self.act_group(ExtAffineElement.simple(self.n, i), c) - c, self.alpha(i))

    def product(self, x: ExtAffineElement, y: ExtAffineElement) -> Optional[ExtAffineElement]:
        """A_x A_y = A_{xy} when lengths add, otherwise zero (None)."""
        key = (x, y)
        if key not in self._product_memo:
            xy = x * y
            self._product_memo[key] = xy if xy.length == x.length + y.length else None
        return self._product_memo[key]

    def _linear_coefficients(self, p: PolyElement) -> List[Tuple[int, object]]:
        """(generator index, coefficient) pairs of a homogeneous linear form of S."""
        pairs = []
        for monom, coeff in p.items():
            pairs.append((monom.index(1), coeff))
        return pairs

    def commute_generator(self, x: ExtAffineElement, j: int) -> Terms:
        """A_x a_j as sum d_y A_y, memoized per (x, generator index j)."""
        key = (x, j)
        memo = self._commute_memo.get(key)
        if memo is not None:
            return memo
        gen = self.S.ring.gens[j]
        result: Terms = {}
        if x.tau_power:
            body = ExtAffineElement(0, x.body)
            tau = ExtAffineElement.tau(self.n, x.tau_power)
            for y, d in self.commute_generator(body, j).items():
                _accumulate(result, tau * y, self.act_group(tau, d))
        elif not x.length:
            result[x] = gen
        else:
            i = x.reduced_word[-1]
            prefix = x.right_multiply(i)
            moved = self.act_group(ExtAffineElement.simple(self.n, i), gen)
            for m, coeff in self._linear_coefficients(moved):
                for y, d in self.commute_generator(prefix, m).items():
                    ys = self.product(y, ExtAffineElement.simple(self.n, i))
                    if ys is not None:
                        _accumulate(result, ys, d * coeff)
            constant = self.divided_difference(i, gen)
            if constant:
                _accumulate(result, prefix, constant)
        self._commute_memo[key] = result
        return result

    def commute(self, x: ExtAffineElement, c: PolyElement) -> Terms:
        """A_x c as sum d_y A_y."""
        result: Terms = {}
        for monom, coeff in c.items():
            current: Terms = {x: self.S.const(coeff)}
            for j, exponent in enumerate(monom):
                for _ in range(exponent):
                    step: Terms = {}
                    for y, d in current.items():
                        for z, f in self.commute_generator(y, j).items():
                            _accumulate(step, z, d * f)
                    current = step
            for y, d in current.items():
                _accumulate(result, y, d)
        return result

    def act_basis(self, x: ExtAffineElement, c: PolyElement) -> PolyElement:
        """A_x . c, applying divided differences along a reduced word."""
        value = c
        for i in reversed(x.reduced_word):
            value = self.divided_difference(i, value)
            if not value:
                return value
        if x.tau_power:
            value = self.act_group(ExtAffineElement.tau(self.n, x.tau_power), value)
        return value

    def basis_coproduct(self, x: ExtAffineElement) -> "NilHeckeTensor":
        """Delta(A_x) along the canonical reduced word."""
        if x not in self._coproduct_memo:
            self._coproduct_memo[x] = self.coproduct_along(x.tau_power, x.reduced_word)
            logger.debug(
                f"n={self.n}: coproduct of {x.basis_label()} cached "
                f"({len(self._coproduct_memo)} coproducts, {len(self._commute_memo)} commutations)"
            )
        return self._coproduct_memo[x]

    def coproduct_along(self, tau_power: int, word: Sequence[int]) -> "NilHeckeTensor":
        """Delta(tau^k) Delta(A_i1) ... Delta(A_il) for an explicit word; prefixes are memoized."""
        key = (tau_power % self.n, tuple(word))
        cached = self._word_memo.get(key)
        if cached is not None:
            return cached
        if key[1]:
            result = self.coproduct_along(tau_power, key[1][:-1]) * self.simple_coproduct(key[1][-1])
        else:
            tau = ExtAffineElement.tau(self.n, tau_power)
            result = NilHeckeTensor(self, {(tau, tau): self.S.one})
        self._word_memo[key] = result
        return result

    def simple_coproduct(self, i: int) -> "NilHeckeTensor":
        """Delta(A_i) = A_i (x) 1 + 1 (x) A_i + alpha_i A_i (x) A_i."""
        s = ExtAffineElement.simple(self.n, i)
        one = self.identity
        return NilHeckeTensor(self, {(s, one): self.S.one, (one, s): self.S.one, (s, s): self.alpha(i)})


class NilHeckeElement:
    """A finite sum of c_w A_w with coefficients in S."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: NilHeckeAlgebra, terms: Optional[Mapping[ExtAffineElement, PolyElement]] = None):
        self.algebra = algebra
        self.terms: Terms = {w: c for w, c in (terms or {}).items() if c}

    @property
    def n(self) -> int:
        return self.algebra.n

    @classmethod
    def zero(cls, algebra: NilHeckeAlgebra) -> "NilHeckeElement":
        return cls(algebra)

    @classmethod
    def one(cls, algebra: NilHeckeAlgebra) -> "NilHeckeElement":
        return cls(algebra, {algebra.identity: algebra.S.one})

    @classmethod
    def basis(
        cls, algebra: NilHeckeAlgebra, w: ExtAffineElement, coefficient: Optional[PolyElement] = None
    ) -> "NilHeckeElement":
        return cls(algebra, {w: algebra.S.one if coefficient is None else coefficient})

    @classmethod
    def scalar(cls, algebra: NilHeckeAlgebra, c: PolyElement) -> "NilHeckeElement":
        return cls(algebra, {algebra.identity: c})

    def _check(self, other: "NilHeckeElement") -> None:
        if other.n != self.n:
            raise ValueError(f"Cannot combine nilHecke elements of ranks {self.n} and {other.n}")

    def coefficient(self, w: ExtAffineElement) -> PolyElement:
        return self.terms.get(w, self.algebra.S.zero)

    def support(self) -> List[ExtAffineElement]:
        return sorted(self.terms, key=ExtAffineElement.sort_key)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NilHeckeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "NilHeckeElement") -> "NilHeckeElement":
        self._check(other)
        result = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(result, w, c)
        return NilHeckeElement(self.algebra, result)

    def __neg__(self) -> "NilHeckeElement":
        return NilHeckeElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NilHeckeElement") -> "NilHeckeElement":
        return self + (-other)

    def scale(self, c: Union[PolyElement, int]) -> "NilHeckeElement":
        """Left multiplication by a scalar of S."""
        factor = self.algebra.S.const(c) if isinstance(c, int) else c
        if not factor:
            return NilHeckeElement.zero(self.algebra)
        return NilHeckeElement(self.algebra, {w: factor * d for w, d in self.terms.items()})

    def __mul__(self, other: "NilHeckeElement") -> "NilHeckeElement":
        self._check(other)
        algebra = self.algebra
        result: Terms = {}
        for x, c in self.terms.items():
            for y, d in other.terms.items():
                for z, e in algebra.commute(x, d).items():
                    zy = algebra.product(z, y)
                    if zy is not None:
                        _accumulate(result, zy, c * e)
        return NilHeckeElement(algebra, result)

    def multiply_centralizing(self, other: "NilHeckeElement") -> "NilHeckeElement":
        """
        Product when self commutes with S: (sum c_x A_x)(d A_y) = d sum c_x A_x A_y.
        """
        self._check(other)
        algebra = self.algebra
        result: Terms = {}
        for y, d in other.terms.items():
            for x, c in self.terms.items():
                xy = algebra.product(x, y)
                if xy is not None:
                    _accumulate(result, xy, d * c)
        return NilHeckeElement(algebra, result)

    def right_multiply_simple_group(self, i: int) -> "NilHeckeElement":
        """self * s_i with s_i = 1 + alpha_i A_i."""
        algebra = self.algebra
        s = ExtAffineElement.simple(algebra.n, i)
        result = dict(self.terms)
        alpha = algebra.alpha(i)
        for x, c in self.terms.items():
            for z, e in algebra.commute(x, alpha).items():
                zs = algebra.product(z, s)
                if zs is not None:
                    _accumulate(result, zs, c * e)
        return NilHeckeElement(algebra, result)

    def act(self, c: PolyElement) -> PolyElement:
        """The level-zero action on S."""
        total = self.algebra.S.zero
        for w, coefficient in self.terms.items():
            total = total + coefficient * self.algebra.act_basis(w, c)
        return total

    def twist(self, k: int) -> "NilHeckeElement":
        """tau^k self tau^-k."""
        if not k % self.n:
            return self
        algebra = self.algebra
        tau = ExtAffineElement.tau(self.n, k)
        return NilHeckeElement(
            algebra, {w.conjugate_by_tau(k): algebra.act_group(tau, c) for w, c in self.terms.items()}
        )

    def commutator_with(self, c: PolyElement) -> "NilHeckeElement":
        """self * c - c * self."""
        return self * NilHeckeElement.scalar(self.algebra, c) - self.scale(c)

    def commutes_with_scalars(self) -> bool:
        return all(not self.commutator_with(self.algebra.alpha(i)) for i in range(1, self.n))

    def coproduct(self) -> "NilHeckeTensor":
        total = NilHeckeTensor(self.algebra, {})
        for w, c in self.terms.items():
            total = total + self.algebra.basis_coproduct(w).scale_first(c)
        return total

    def max_length(self) -> int:
        return max((w.length for w in self.terms), default=0)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        S = self.algebra.S
        parts = []
        for w in self.support():
            c = self.terms[w]
            coefficient = S.to_text(c)
            if coefficient == "1":
                parts.append(w.basis_label())
            else:
                parts.append(f"({coefficient})*{w.basis_label()}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NilHeckeElement(n={self.n}, {self.to_text()})"


def expand_group(
    algebra: NilHeckeAlgebra, w: ExtAffineElement, word: Optional[Iterable[int]] = None
) -> NilHeckeElement:
    """The image of w in the A-basis, via s_i = 1 + alpha_i A_i along a reduced word."""
    element = NilHeckeElement.basis(algebra, ExtAffineElement.tau(algebra.n, w.tau_power))
    letters = w.reduced_word if word is None else tuple(word)
    for i in letters:
        element = element.right_multiply_simple_group(i)
    if word is not None and ExtAffineElement.from_word(algebra.n, letters, w.tau_power) != w:
        raise ValueError(f"Word {letters} does not spell {w.label()}")
    return element


class NilHeckeTensor:
    """
    Sums c A_u (x) A_v over S with scalars collected on the left of the first factor;
    products are taken componentwise.
    """

    __slots__ = ("algebra", "terms")

    def __init__(
        self,
        algebra: NilHeckeAlgebra,
        terms: Mapping[Tuple[ExtAffineElement, ExtAffineElement], PolyElement],
    ) -> None:
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def from_pair(cls, first: NilHeckeElement, second: NilHeckeElement) -> "NilHeckeTensor":
        terms: Dict[Tuple[ExtAffineElement, ExtAffineElement], PolyElement] = {}
        for y, d in second.terms.items():
            for x, c in first.terms.items():
                key = (x, y)
                value = d * c
                total = terms.get(key)
                terms[key] = value if total is None else total + value
        return cls(first.algebra, terms)

    def __add__(self, other: "NilHeckeTensor") -> "NilHeckeTensor":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            total = terms.get(key)
            terms[key] = c if total is None else total + c
        return NilHeckeTensor(self.algebra, terms)

    def __neg__(self) -> "NilHeckeTensor":
        return NilHeckeTensor(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "NilHeckeTensor") -> "NilHeckeTensor":
        return self + (-other)

    def scale_first(self, c: PolyElement) -> "NilHeckeTensor":
        return NilHeckeTensor(self.algebra, {k: c * d for k, d in self.terms.items()})

    def __mul__(self, other: "NilHeckeTensor") -> "NilHeckeTensor":
        algebra = self.algebra
        terms: Dict[Tuple[ExtAffineElement, ExtAffineElement], PolyElement] = {}
        for (u, v), c in self.terms.items():
            for (u2, v2), d in other.terms.items():
                vv = algebra.product(v, v2)
                if vv is None:
                    continue
                for z, e in algebra.commute(u, d).items():
                    zu = algebra.product(z, u2)
                    if zu is None:
                        continue
                    key = (zu, vv)
                    value = c * e
                    total = terms.get(key)
                    terms[key] = value if total is None else total + value
        return NilHeckeTensor(algebra, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NilHeckeTensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        S = self.algebra.S
        keys = sorted(self.terms, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
        return " + ".join(
            f"({S.to_text(self.terms[k])})*{k[0].basis_label()}#{k[1].basis_label()}" for k in keys
        )

