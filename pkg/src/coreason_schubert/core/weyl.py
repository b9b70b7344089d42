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
Finite, affine and extended affine Weyl groups of type A_{n-1}.

Elements are bijections w of Z with w(i + n) = w(i) + n, stored by their window
[w(1), ..., w(n)]. The extended group is carried modulo the central shift by n, so an
element is tau^k * u with k in 0..n-1 and u in the affine symmetric group.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from coreason_schubert.utils.logger import logger


@dataclass(frozen=True)
class AffinePerm:
    """An element of the affine symmetric group in window notation."""

    n: int
    window: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.window) != self.n:
            raise ValueError(f"Window {self.window} does not have length {self.n}")
        if len({v % self.n for v in self.window}) != self.n:
            raise ValueError(f"Window {self.window} does not permute residues mod {self.n}")
        if sum(self.window) != self.n * (self.n + 1) // 2:
            raise ValueError(f"Window {self.window} is not in the affine symmetric group")

    def __call__(self, j: int) -> int:
        q, r = divmod(j - 1, self.n)
        return self.window[r] + q * self.n

    @classmethod
    def identity(cls, n: int) -> "AffinePerm":
        return cls(n, tuple(range(1, n + 1)))

    @property
    def is_finite(self) -> bool:
        return sorted(self.window) == list(range(1, self.n + 1))


@dataclass(frozen=True)
class ExtAffineElement:
    """tau^tau_power * body, with tau(j) = j + 1."""

    tau_power: int
    body: AffinePerm

    def __post_init__(self) -> None:
        if not 0 <= self.tau_power < self.body.n:
            raise ValueError(f"tau power {self.tau_power} is not reduced mod {self.body.n}")

    @property
    def n(self) -> int:
        return self.body.n

    @classmethod
    def from_window(cls, n: int, window: Sequence[int]) -> "ExtAffineElement":
        total = sum(window) - n * (n + 1) // 2
        if total % n:
            raise ValueError(f"Window {tuple(window)} is not an extended affine permutation")
        shift = total // n
        body = AffinePerm(n, tuple(v - shift for v in window))
        return cls(shift % n, body)

    @classmethod
    def identity(cls, n: int) -> "ExtAffineElement":
        return cls(0, AffinePerm.identity(n))

    @classmethod
    def tau(cls, n: int, k: int = 1) -> "ExtAffineElement":
        return cls(k % n, AffinePerm.identity(n))

    @classmethod
    def simple(cls, n: int, i: int) -> "ExtAffineElement":
        i %= n
        window = list(range(1, n + 1))
        if i == 0:
            window[0], window[-1] = 0, n + 1
        else:
            window[i - 1], window[i] = window[i], window[i - 1]
        return cls(0, AffinePerm(n, tuple(window)))

    @classmethod
    def from_word(cls, n: int, word: Sequence[int], tau_power: int = 0) -> "ExtAffineElement":
        element = cls.tau(n, tau_power)
        for i in word:
            element = element.right_multiply(i)
        return element

    @cached_property
    def window(self) -> Tuple[int, ...]:
        return tuple(v + self.tau_power for v in self.body.window)

    def __call__(self, j: int) -> int:
        q, r = divmod(j - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        if other.n != self.n:
            raise ValueError(f"Cannot multiply elements of ranks {self.n} and {other.n}")
        return ExtAffineElement.from_window(self.n, [self(other(j)) for j in range(1, self.n + 1)])

    @cached_property
    def inverse(self) -> "ExtAffineElement":
        n = self.n
        window = [0] * n
        for i, v in enumerate(self.window, start=1):
            q, r = divmod(v - 1, n)
            window[r] = i - q * n
        return ExtAffineElement.from_window(n, window)

    @cached_property
    def length(self) -> int:
        w, n = self.window, self.n
        return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))

    def right_multiply(self, i: int) -> "ExtAffineElement":
        """w * s_i."""
        n = self.n
        i %= n
        window = list(self.window)
        if i == 0:
            window[0], window[-1] = window[-1] - n, window[0] + n
        else:
            window[i - 1], window[i] = window[i], window[i - 1]
        return ExtAffineElement.from_window(n, window)

    def left_multiply(self, i: int) -> "ExtAffineElement":
        """s_i * w."""
        n = self.n
        i %= n
        window = []
        for v in self.window:
            r = v % n
            if r == i:
                window.append(v + 1)
            elif r == (i + 1) % n:
                window.append(v - 1)
            else:
                window.append(v)
        return ExtAffineElement.from_window(n, window)

    def has_right_descent(self, i: int) -> bool:
        i %= self.n
        return self(i) > self(i + 1)

    def has_left_descent(self, i: int) -> bool:
        return self.inverse.has_right_descent(i)

    @cached_property
    def right_descents(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.has_right_descent(i))

    @cached_property
    def left_descents(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.has_left_descent(i))

    @cached_property
    def reduced_word(self) -> Tuple[int, ...]:
        """A reduced word of the body, built by peeling the smallest right descent."""
        word: List[int] = []
        current = ExtAffineElement(0, self.body)
        while current.length:
            i = current.right_descents[0]
            word.append(i)
            current = current.right_multiply(i)
        return tuple(reversed(word))

    @property
    def is_grassmannian(self) -> bool:
        return all(a < b for a, b in zip(self.window, self.window[1:]))

    @property
    def is_finite(self) -> bool:
        return self.tau_power == 0 and self.body.is_finite

    def conjugate_by_tau(self, k: int) -> "ExtAffineElement":
        """tau^k * w * tau^-k."""
        return ExtAffineElement.from_window(self.n, [self(j - k) + k for j in range(1, self.n + 1)])

    def label(self) -> str:
        """Text form ``tau^k * s_i1 ... s_il``."""
        letters = " ".join(f"s{i}" for i in self.reduced_word)
        if self.tau_power and letters:
            return f"tau^{self.tau_power} * {letters}"
        if self.tau_power:
            return f"tau^{self.tau_power}"
        return letters or "id"

    def basis_label(self) -> str:
        """Text form of the nilHecke basis element ``A[tau^k; i1 ... il]``."""
        return f"A[tau^{self.tau_power}; {' '.join(str(i) for i in self.reduced_word)}]"

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.length, self.tau_power, self.window)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class Coweight:
    """An integer vector modulo (1, ..., 1), normalized so that the last entry is 0."""

    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("A coweight needs at least one coordinate")
        last = self.values[-1]
        if last:
            object.__setattr__(self, "values", tuple(v - last for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def zero(cls, n: int) -> "Coweight":
        return cls((0,) * n)

    @classmethod
    def fundamental(cls, n: int, k: int) -> "Coweight":
        """omega_k = (1^k, 0^(n-k)); omega_0 = omega_n = 0."""
        k %= n
        return cls((1,) * k + (0,) * (n - k))

    @classmethod
    def unit(cls, n: int, j: int) -> "Coweight":
        return cls(tuple(1 if i == j else 0 for i in range(1, n + 1)))

    @classmethod
    def simple_coroot(cls, n: int, i: int) -> "Coweight":
        return cls.unit(n, i) - cls.unit(n, i + 1)

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.values))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return self + (-other)

    def scale(self, c: int) -> "Coweight":
        return Coweight(tuple(c * a for a in self.values))

    @property
    def is_antidominant(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def act(self, u: ExtAffineElement) -> "Coweight":
        """Finite Weyl group action (u . lambda)_{u(j)} = lambda_j, through residues."""
        result = [0] * self.n
        for j, value in enumerate(self.values, start=1):
            result[(u(j) - 1) % self.n] = value
        return Coweight(tuple(result))

    def orbit(self) -> List["Coweight"]:
        """The finite Weyl group orbit, sorted."""
        return sorted({Coweight(p) for p in itertools.permutations(self.values)}, key=lambda c: c.values)

    def to_text(self) -> str:
        return "t[" + ",".join(str(v) for v in self.values) + "]"

    def __str__(self) -> str:
        return self.to_text()


def translation(weight: Coweight) -> ExtAffineElement:
    """t_lambda(j) = j + n * lambda_j."""
    n = weight.n
    return ExtAffineElement.from_window(n, [j + n * weight.values[j - 1] for j in range(1, n + 1)])


def factor_sigma(w: ExtAffineElement) -> Tuple[int, ExtAffineElement]:
    """The unique factorization w = tau^k * u with u in the non-extended affine group."""
    return w.tau_power, ExtAffineElement(0, w.body)


@dataclass(frozen=True)
class Partition:
    """A partition with weakly decreasing positive parts."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(p for p in self.parts if p)
        if any(p < 0 for p in self.parts):
            raise ValueError(f"Partition {self.parts} has a negative part")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Partition {self.parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def rectangle(cls, rows: int, columns: int) -> "Partition":
        return cls((columns,) * rows if columns > 0 else ())

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()[]")
        if not text:
            return cls()
        return cls(tuple(sorted((int(t) for t in text.split(",") if t.strip()), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part, 0 beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def first(self) -> int:
        return self.parts[0] if self.parts else 0

    @cached_property
    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.first)))

    def fits_box(self, rows: int, columns: int) -> bool:
        return len(self) <= rows and self.first <= columns

    def is_bounded(self, bound: int) -> bool:
        return self.first <= bound

    def minus_last_row(self, cells: int, rows: int) -> "Partition":
        """Remove ``cells`` cells from the end of row ``rows`` (the last row of a box)."""
        parts = list(self.parts) + [0] * (rows - len(self.parts))
        if rows < 1 or parts[rows - 1] < cells:
            raise ValueError(f"Cannot remove {cells} cells from row {rows} of {self}")
        parts[rows - 1] -= cells
        return Partition(tuple(parts))

    def cells(self) -> Iterator[Tuple[int, int]]:
        for r, part in enumerate(self.parts):
            for c in range(part):
                yield r, c

    def hook(self, r: int, c: int) -> int:
        arm = self.parts[r] - c - 1
        leg = sum(1 for p in self.parts[r + 1 :] if p > c)
        return arm + leg + 1

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_in_box(rows: int, columns: int) -> List[Partition]:
    """All partitions fitting an rows x columns box, by size then reverse lex."""
    found = [
        Partition(tuple(p))
        for p in itertools.combinations_with_replacement(range(columns, -1, -1), rows)
        if rows
    ]
    if not rows:
        found = [Partition()]
    return sorted(set(found), key=lambda p: (p.size, tuple(-x for x in p.parts)))


def bounded_partitions(bound: int, max_size: int) -> List[Partition]:
    """All partitions with parts at most ``bound`` and size at most ``max_size``."""
    result: List[Partition] = []

    def extend(prefix: List[int], remaining: int, largest: int) -> None:
        result.append(Partition(tuple(prefix)))
        for part in range(min(largest, remaining), 0, -1):
            extend(prefix + [part], remaining - part, part)

    extend([], max_size, bound)
    return sorted(set(result), key=lambda p: (p.size, tuple(-x for x in p.parts)))


def _add_residue(core: List[int], residue: int, n: int) -> List[int]:
    """Add every addable cell of the given residue; (r, c) has residue (c - r) mod n."""
    rows = core + [0]
    added = False
    result = list(rows)
    for r, length in enumerate(rows):
        addable = r == 0 or rows[r - 1] > length
        if addable and (length - r) % n == residue:
            result[r] = length + 1
            added = True
    if not added:
        raise ValueError(f"No addable cell of residue {residue} on core {tuple(core)}")
    return [p for p in result if p]


def grassmannian_to_partition(w: ExtAffineElement) -> Partition:
    """The (n-1)-bounded partition of the Grassmannian body of w."""
    body = ExtAffineElement(0, w.body)
    if not body.is_grassmannian:
        raise ValueError(f"{w.label()} is not Grassmannian")
    word: List[int] = []
    current = body
    while current.length:
        i = current.left_descents[0]
        word.append(i)
        current = current.left_multiply(i)
    core: List[int] = []
    for i in reversed(word):
        core = _add_residue(core, i, w.n)
    shape = Partition(tuple(core))
    bounded = tuple(sum(1 for c in range(part) if shape.hook(r, c) < w.n) for r, part in enumerate(shape.parts))
    return Partition(bounded)


def reading_word(shape: Partition, n: int) -> Tuple[int, ...]:
    """Residues read row by row from the bottom, each row right to left."""
    word: List[int] = []
    for r in range(len(shape) - 1, -1, -1):
        for c in range(shape.parts[r] - 1, -1, -1):
            word.append((c - r) % n)
    return tuple(word)


def partition_to_grassmannian(shape: Partition, n: int) -> ExtAffineElement:
    """The Grassmannian affine permutation of an (n-1)-bounded partition."""
    if not shape.is_bounded(n - 1):
        raise ValueError(f"Partition {shape} is not {n - 1}-bounded")
    candidate = ExtAffineElement.from_word(n, reading_word(shape, n))
    if candidate.length == shape.size and candidate.is_grassmannian and grassmannian_to_partition(candidate) == shape:
        return candidate
    logger.warning(f"Reading word of {shape} failed validation for n={n}; searching Grassmannian elements")
    for element in grassmannian_elements(n, shape.size, exact=True):
        if grassmannian_to_partition(element) == shape:
            return element
    raise ValueError(f"No Grassmannian element corresponds to {shape} for n={n}")


def grassmannian_elements(n: int, max_length: int, tau_power: int = 0, exact: bool = False) -> List[ExtAffineElement]:
    """Grassmannian elements tau^k * u, grown by left multiplication from the identity."""
    levels: List[Set[ExtAffineElement]] = [{ExtAffineElement.identity(n)}]
    for _ in range(max_length):
        grown: Set[ExtAffineElement] = set()
        for u in levels[-1]:
            for i in range(n):
                v = u.left_multiply(i)
                if v.length == u.length + 1 and v.is_grassmannian:
                    grown.add(v)
        levels.append(grown)
    selected = levels[max_length:] if exact else levels
    prefix = ExtAffineElement.tau(n, tau_power)
    return sorted((prefix * u for level in selected for u in level), key=ExtAffineElement.sort_key)


def elements_up_to(n: int, max_length: int, tau_power: int = 0) -> List[ExtAffineElement]:
    """All elements tau^k * u with length at most max_length."""
    levels: List[Set[ExtAffineElement]] = [{ExtAffineElement.identity(n)}]
    seen: Set[ExtAffineElement] = set(levels[0])
    for _ in range(max_length):
        grown: Set[ExtAffineElement] = set()
        for u in levels[-1]:
            for i in range(n):
                v = u.right_multiply(i)
                if v.length == u.length + 1 and v not in seen:
                    grown.add(v)
        seen |= grown
        levels.append(grown)
    prefix = ExtAffineElement.tau(n, tau_power)
    return sorted((prefix * u for u in seen), key=ExtAffineElement.sort_key)


def permutation(one_line: Sequence[int]) -> ExtAffineElement:
    """A finite permutation from its one-line notation."""
    n = len(one_line)
    if sorted(one_line) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(one_line)} is not a permutation of 1..{n}")
    return ExtAffineElement(0, AffinePerm(n, tuple(one_line)))


def all_permutations(n: int) -> List[ExtAffineElement]:
    return sorted(
        (permutation(p) for p in itertools.permutations(range(1, n + 1))),
        key=ExtAffineElement.sort_key,
    )


def longest_element(n: int) -> ExtAffineElement:
    return permutation(tuple(range(n, 0, -1)))


def cyclic_element(n: int, p: int) -> ExtAffineElement:
    """c_p = s_{p-1} ... s_1 s_0."""
    return ExtAffineElement.from_word(n, tuple(range(p - 1, -1, -1)))


_TOKEN = re.compile(r"t\[[^\]]*\]|\[[^\]]*\]|tau(?:\^-?\d+)?|s_?\d+|c_?\d+|id")


def parse_element(text: str, n: int) -> ExtAffineElement:
    """
    Parse ``tau^k * s1 s0``, ``tau c2``, ``t[-1,0,0]``, ``[w1,...,wn]`` or ``id`` (factors
    multiply left to right).
    """
    stripped = re.sub(r"[\s*]+", " ", text).strip()
    tokens = _TOKEN.findall(stripped)
    if not tokens or "".join(tokens).replace(" ", "") != stripped.replace(" ", ""):
        raise ValueError(f"Cannot parse element {text!r}")
    element = ExtAffineElement.identity(n)
    for token in tokens:
        element = element * _parse_token(token, n)
    return element


def _parse_token(token: str, n: int) -> ExtAffineElement:
    if token == "id":
        return ExtAffineElement.identity(n)
    if token.startswith("tau"):
        power = int(token[4:]) if "^" in token else 1
        return ExtAffineElement.tau(n, power)
    if token.startswith("t["):
        values = tuple(int(v) for v in token[2:-1].split(",") if v.strip())
        if len(values) != n:
            raise ValueError(f"Coweight {token} does not have {n} coordinates")
        return translation(Coweight(values))
    if token.startswith("["):
        values = tuple(int(v) for v in token[1:-1].split(",") if v.strip())
        if len(values) != n:
            raise ValueError(f"Window {token} does not have {n} entries")
        return ExtAffineElement.from_window(n, values)
    index = int(token.lstrip("sc_"))
    if token.startswith("c"):
        if not 0 <= index <= n - 1:
            raise ValueError(f"c_{index} is only defined for 0 <= p <= {n - 1}")
        return cyclic_element(n, index)
    return ExtAffineElement.simple(n, index)


def parse_permutation(text: str, n: int) -> ExtAffineElement:
    """A finite permutation from a word (``s2 s1``) or one-line notation (``3,1,2``)."""
    stripped = text.strip()
    if re.fullmatch(r"[\d,\s]+", stripped) and "," in stripped:
        return permutation(tuple(int(v) for v in stripped.split(",")))
    element = parse_element(stripped, n)
    if not element.is_finite:
        raise ValueError(f"{text!r} is not a finite permutation")
    return element


def descent_set(w: ExtAffineElement) -> Tuple[int, ...]:
    """Right descents of a finite permutation, in 1..n-1."""
    return tuple(i for i in w.right_descents if i != 0)


def words_equal(n: int, first: Sequence[int], second: Sequence[int]) -> bool:
    return ExtAffineElement.from_word(n, first) == ExtAffineElement.from_word(n, second)


def all_reduced_words(w: ExtAffineElement, limit: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Every reduced word of the body of w (optionally only the first ``limit``)."""
    memo: Dict[ExtAffineElement, List[Tuple[int, ...]]] = {}

    def words(u: ExtAffineElement) -> List[Tuple[int, ...]]:
        if u in memo:
            return memo[u]
        if not u.length:
            return [()]
        found: List[Tuple[int, ...]] = []
        for i in u.right_descents:
            for prefix in words(u.right_multiply(i)):
                if limit is not None and len(found) >= limit:
                    break
                found.append(prefix + (i,))
        memo[u] = found
        return found

    return words(ExtAffineElement(0, w.body))
