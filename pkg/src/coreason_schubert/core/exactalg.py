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
Exact arithmetic kernel.

Polynomials are sympy ``PolyElement`` values over ``QQ`` in rings whose generators are
indexed variables (``VarId``). An ``Alphabet`` owns one such ring and knows how to name,
reindex and print its variables. ``SRing`` is the modular coefficient context of rank n:
a_{i+rn} is a_i and a_n is eliminated as -(a_1 + ... + a_{n-1}).
"""

from dataclasses import dataclass
from enum import IntEnum
from functools import cache
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple, TypeVar

from sympy import Symbol, SympifyError, sympify
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

Monomial = Tuple[int, ...]


class RingElement(Protocol):
    def __add__(self, other: Any, /) -> Any: ...
    def __sub__(self, other: Any, /) -> Any: ...
    def __mul__(self, other: Any, /) -> Any: ...
    def __bool__(self) -> bool: ...


T = TypeVar("T", bound=RingElement)


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""

    def __init__(self, dividend: str, divisor: str) -> None:
        super().__init__(f"{dividend} is not divisible by {divisor}")
        self.dividend = dividend
        self.divisor = divisor


class Family(IntEnum):
    """Variable families, in canonical term order."""

    A = 0
    G = 1
    Q = 2
    X = 3
    EHAT = 4
    EY = 5
    AUX = 6
    ROOT = 7


_PREFIX = {
    Family.A: "a",
    Family.G: "g",
    Family.Q: "q",
    Family.X: "x",
    Family.EHAT: "ehat",
    Family.EY: "e",
    Family.AUX: "z",
    Family.ROOT: "alpha",
}


@dataclass(frozen=True, order=True)
class VarId:
    """An indexed variable such as a_3, g_1 or ehat_2."""

    family: Family
    index: int

    @property
    def name(self) -> str:
        prefix = _PREFIX[self.family]
        if self.family == Family.AUX:
            return prefix if self.index == 0 else f"{prefix}_{self.index}"
        if self.index < 0:
            return f"{prefix}_m{-self.index}"
        return f"{prefix}_{self.index}"

    def __str__(self) -> str:
        return self.name


class Alphabet:
    """A polynomial ring over QQ on an ordered tuple of indexed variables."""

    def __init__(self, variables: Iterable[VarId]) -> None:
        self.variables: Tuple[VarId, ...] = tuple(sorted(set(variables)))
        if not self.variables:
            raise ValueError("An alphabet needs at least one variable")
        self.symbols = tuple(Symbol(v.name) for v in self.variables)
        self.ring = PolyRing(self.symbols, QQ, lex)
        self._position: Dict[VarId, int] = {v: i for i, v in enumerate(self.variables)}
        self._field: Optional[FracField] = None

    @property
    def field(self) -> FracField:
        if self._field is None:
            self._field = FracField(self.symbols, QQ, lex)
        return self._field

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.ring.one

    def has(self, var: VarId) -> bool:
        return var in self._position

    def position(self, var: VarId) -> int:
        try:
            return self._position[var]
        except KeyError:
            raise ValueError(f"Variable {var} is not in this alphabet") from None

    def gen(self, family: Family, index: int = 0) -> PolyElement:
        return self.ring.gens[self.position(VarId(family, index))]

    def const(self, value: object) -> PolyElement:
        return self.ring.ground_new(QQ.convert(value))

    def indices(self, family: Family) -> List[int]:
        return [v.index for v in self.variables if v.family == family]

    def support(self, p: PolyElement) -> set[VarId]:
        """Variables that occur in p."""
        used: set[VarId] = set()
        for monom in p.keys():
            used.update(self.variables[i] for i, e in enumerate(monom) if e)
        return used

    def reindex(self, p: PolyElement, family: Family, shift: Callable[[int], int], sign: int = 1) -> PolyElement:
        """
        Relabel variables of one family by an index map, optionally scaling each such
        variable by ``sign``. Raises ValueError when a relabelled variable leaves the alphabet.
        """
        mapping: Dict[int, int] = {}
        for i, v in enumerate(self.variables):
            if v.family == family:
                target = VarId(family, shift(v.index))
                if target not in self._position:
                    mapping[i] = -1
                else:
                    mapping[i] = self._position[target]
        terms: Dict[Monomial, object] = {}
        for monom, coeff in p.items():
            new = [0] * len(monom)
            degree = 0
            for i, e in enumerate(monom):
                if not e:
                    continue
                j = mapping.get(i, i)
                if j < 0:
                    raise ValueError(f"Relabelling {self.variables[i]} leaves the alphabet")
                new[j] += e
                if i in mapping:
                    degree += e
            if sign < 0 and degree % 2:
                coeff = -coeff
            key = tuple(new)
            terms[key] = terms.get(key, QQ.zero) + coeff
        return self.ring.from_dict({m: c for m, c in terms.items() if c})

    def substitute(self, p: PolyElement, images: Mapping[VarId, PolyElement]) -> PolyElement:
        """Simultaneous substitution of variables by polynomials of this ring."""
        if not images:
            return p
        replacements = [(self.ring.gens[self.position(v)], image) for v, image in images.items()]
        return p.compose(replacements)

    def convert(self, p: PolyElement, source: "Alphabet", images: Mapping[VarId, PolyElement]) -> PolyElement:
        """
        Map a polynomial of another alphabet into this one. Variables listed in ``images`` are
        replaced; every other variable must exist here under the same name.
        """
        result = self.zero
        powers: Dict[Tuple[int, int], PolyElement] = {}
        for monom, coeff in p.items():
            term = self.const(coeff)
            for i, e in enumerate(monom):
                if not e:
                    continue
                key = (i, e)
                if key not in powers:
                    var = source.variables[i]
                    base = images[var] if var in images else self.ring.gens[self.position(var)]
                    powers[key] = base**e
                term = term * powers[key]
            result = result + term
        return result

    def truncate(self, p: PolyElement, weight: Callable[[VarId], int], cutoff: int) -> PolyElement:
        """Drop terms whose weighted degree exceeds ``cutoff``."""
        weights = [weight(v) for v in self.variables]
        kept = {m: c for m, c in p.items() if sum(w * e for w, e in zip(weights, m)) <= cutoff}
        return self.ring.from_dict(kept)

    def to_text(self, p: PolyElement) -> str:
        """
        Canonical text: terms sorted by the lex order of this alphabet, highest first,
        factors written as ``a_2^3*g_1``.
        """
        if not p:
            return "0"
        parts: List[str] = []
        for monom in sorted(p.keys(), reverse=True):
            coeff = p[monom]
            factors = []
            for i, e in enumerate(monom):
                if e == 1:
                    factors.append(self.variables[i].name)
                elif e > 1:
                    factors.append(f"{self.variables[i].name}^{e}")
            body = "*".join(factors)
            sign = "-" if coeff < 0 else "+"
            magnitude = -coeff if coeff < 0 else coeff
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            parts.append(f"{sign} {text}")
        joined = " ".join(parts)
        return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]

    def fraction_text(self, f: FracElement) -> str:
        numer = self.to_text(f.numer.set_ring(self.ring))
        denom = f.denom.set_ring(self.ring)
        if denom == self.one:
            return numer
        return f"({numer})/({self.to_text(denom)})"

    def parse(self, text: str, aliases: Optional[Mapping[str, Any]] = None) -> PolyElement:
        """Read a polynomial written with the variable names of this alphabet (``x_1 - a_1 + q_1``)."""
        namespace: Dict[str, Any] = {s.name: s for s in self.symbols}
        namespace.update(aliases or {})
        try:
            expr = sympify(text.replace("^", "**"), locals=namespace)
        except (SympifyError, SyntaxError, TypeError) as e:
            raise ValueError(f"Cannot parse polynomial {text!r}: {e}") from e
        unknown = sorted(str(s) for s in expr.free_symbols if s not in self.symbols)
        if unknown:
            raise ValueError(f"Unknown variables in {text!r}: {', '.join(unknown)}")
        try:
            return self.ring.from_expr(expr)
        except ValueError as e:
            raise ValueError(f"{text!r} is not a polynomial: {e}") from e

    def to_fraction(self, p: PolyElement) -> FracElement:
        return self.field.new(p.set_ring(self.field.ring))

    def evaluate(self, p: PolyElement, point: Mapping[VarId, object]) -> Any:
        """Exact value of p at a point assigning a rational to every variable it uses."""
        values = [QQ.convert(point[v]) if v in point else None for v in self.variables]
        total = QQ.zero
        for monom, coeff in p.items():
            term = coeff
            for i, e in enumerate(monom):
                if e:
                    value = values[i]
                    if value is None:
                        raise ValueError(f"No value given for {self.variables[i]}")
                    term *= value**e
            total += term
        return total


def divide_exact(p: PolyElement, q: PolyElement) -> PolyElement:
    """Exact quotient p / q; raises NotDivisible when q does not divide p."""
    if not q:
        raise ZeroDivisionError("Division by the zero polynomial")
    if not p:
        return p.ring.zero
    try:
        return p.exquo(q)
    except ExactQuotientFailed:
        raise NotDivisible(str(p.as_expr()), str(q.as_expr())) from None


def det(matrix: Sequence[Sequence[T]], one: T) -> T:
    """
    Fraction-free determinant by cofactor expansion along the first row with memoized
    minors (keyed by the set of remaining columns).
    """
    size = len(matrix)
    for row in matrix:
        if len(row) != size:
            raise ValueError("Determinant of a non-square matrix")
    if size == 0:
        return one
    memo: Dict[Tuple[int, Tuple[int, ...]], T] = {}

    def minor(row: int, columns: Tuple[int, ...]) -> T:
        if row == size:
            return one
        key = (row, columns)
        if key in memo:
            return memo[key]
        total: T = one - one
        for position, column in enumerate(columns):
            entry = matrix[row][column]
            if not entry:
                continue
            rest = minor(row + 1, columns[:position] + columns[position + 1 :])
            if position % 2:
                total = total - entry * rest
            else:
                total = total + entry * rest
        memo[key] = total
        return total

    return minor(0, tuple(range(size)))


class SRing:
    """
    Modular coefficient context of rank n.

    ``scalars`` is S = QQ[a_1..a_{n-1}] (a_n eliminated). ``coords`` adds the centralizer
    coordinates g_p, quantum parameters q_i, the x_i and the spectral variable z.
    """

    def __init__(self, n: int) -> None:
        if n < 2:
            raise ValueError(f"Rank n must be at least 2, got {n}")
        self.n = n
        a_vars = [VarId(Family.A, i) for i in range(1, n)]
        self.scalars = Alphabet(a_vars)
        self.coords = Alphabet(
            a_vars
            + [VarId(Family.G, p) for p in range(1, n)]
            + [VarId(Family.Q, i) for i in range(1, n)]
            + [VarId(Family.X, i) for i in range(1, n + 1)]
            + [VarId(Family.AUX, 0)]
        )

    @staticmethod
    @cache
    def for_rank(n: int) -> "SRing":
        return SRing(n)

    def residue(self, i: int) -> int:
        """Index in 1..n representing a_i."""
        r = i % self.n
        return self.n if r == 0 else r

    def a(self, i: int, alphabet: Optional[Alphabet] = None) -> PolyElement:
        target = alphabet or self.scalars
        r = self.residue(i)
        if r == self.n:
            return -sum((target.gen(Family.A, j) for j in range(1, self.n)), target.zero)
        return target.gen(Family.A, r)

    def alpha(self, i: int, alphabet: Optional[Alphabet] = None) -> PolyElement:
        """The simple root alpha_i = a_i - a_{i+1}, indices mod n."""
        return self.a(i, alphabet) - self.a(i + 1, alphabet)

    def asum(self, i: int, alphabet: Optional[Alphabet] = None) -> PolyElement:
        target = alphabet or self.scalars
        return sum((self.a(j, target) for j in range(1, i + 1)), target.zero)

    def e_sym(self, j: int, alphabet: Optional[Alphabet] = None) -> PolyElement:
        """Elementary symmetric polynomial e_j(a_1..a_n), reduced."""
        target = alphabet or self.scalars
        values = [self.a(i, target) for i in range(1, self.n + 1)]
        return elementary(values, j, target.one)

    def reduce(self, p: PolyElement, source: Alphabet, target: Optional[Alphabet] = None) -> PolyElement:
        """
        Canonical representative in S (or in ``coords``) of a polynomial written in any
        alphabet: every a_i is read modulo n and a_n is eliminated.
        """
        goal = target or self.scalars
        images = {v: self.a(v.index, goal) for v in source.variables if v.family == Family.A}
        return goal.convert(p, source, images)

    def permute(self, p: PolyElement, perm: Callable[[int], int], alphabet: Optional[Alphabet] = None) -> PolyElement:
        """The substitution a_i -> a_{perm(i)} (the level-zero action of a permutation)."""
        target = alphabet or self.scalars
        images = {VarId(Family.A, i): self.a(perm(i), target) for i in range(1, self.n)}
        return target.substitute(p, images)

    def parse(self, text: str, alphabet: Optional[Alphabet] = None) -> PolyElement:
        """Parse into ``coords`` (or ``alphabet``); a_n may be written and is eliminated."""
        target = alphabet or self.coords
        eliminated = -sum(Symbol(VarId(Family.A, i).name) for i in range(1, self.n))
        return target.parse(text, {VarId(Family.A, self.n).name: eliminated})

    def lift(self, p: PolyElement) -> PolyElement:
        """Embed S into the coordinate ring."""
        return p.set_ring(self.coords.ring)

    def lower(self, p: PolyElement) -> PolyElement:
        """Restrict an a-only polynomial of the coordinate ring to S."""
        return p.set_ring(self.scalars.ring)


def elementary(values: Sequence[PolyElement], j: int, one: PolyElement) -> PolyElement:
    """e_j of a list of ring elements."""
    if j < 0 or j > len(values):
        return one - one
    table = [one] + [one - one] * j
    for value in values:
        for k in range(j, 0, -1):
            table[k] = table[k] + value * table[k - 1]
    return table[j]
