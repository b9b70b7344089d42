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
Reference values for n = 2, 3, 4: centralizer matrices, minors, the Kostant images, j-classes,
their products and coproducts, and quantum Schubert polynomials with their images.

j-class tables are stated with A_i = alpha_i^-1 (s_i - 1). Where a reference table uses the
opposite root orientation, odd-degree coefficients are negated here.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from coreason_schubert.core.centralizer import CentralizerMatrix, KostantFraction, KostantSubstitution, PhiTilde
from coreason_schubert.core.exactalg import Alphabet, Family, SRing, VarId
from coreason_schubert.core.main_theorem import quantum_to_affine
from coreason_schubert.core.nilhecke import NilHeckeElement, NilHeckeTensor
from coreason_schubert.core.peterson import PetersonAlgebra, PetersonElement
from coreason_schubert.core.schubert import quantum_schubert
from coreason_schubert.core.weyl import Coweight, ExtAffineElement, parse_permutation

Witness = Optional[str]


@dataclass(frozen=True)
class Fixture:
    """One reference value; ``run`` returns None on agreement, else a witness."""

    name: str
    n: int
    run: Callable[[], Witness]


class Data:
    """Builders for reference values of one rank."""

    def __init__(self, n: int, *, mutation: Optional[str] = None) -> None:
        self.n = n
        self.ctx = SRing.for_rank(n)
        self.coords = self.ctx.coords
        self.mutation = mutation
        self._matrix: Optional[CentralizerMatrix] = None
        self._peterson: Optional[PetersonAlgebra] = None

    @property
    def matrix(self) -> CentralizerMatrix:
        if self._matrix is None:
            self._matrix = CentralizerMatrix(self.n, flip_sign=self.mutation == "commeqs")
        return self._matrix

    @property
    def peterson(self) -> PetersonAlgebra:
        if self._peterson is None:
            self._peterson = PetersonAlgebra(self.n, flip_goal_sign=self.mutation == "goal")
        return self._peterson

    def psi(self) -> KostantSubstitution:
        return KostantSubstitution(self.matrix)

    # coordinate ring

    def a(self, i: int) -> PolyElement:
        return self.ctx.a(i, self.coords)

    def al(self, i: int, j: int) -> PolyElement:
        """a_i - a_j."""
        return self.a(i) - self.a(j)

    def alpha(self, i: int) -> PolyElement:
        return self.al(i, i + 1)

    def g(self, *parts: int) -> PolyElement:
        """g_{p1} g_{p2} ..."""
        result = self.coords.one
        for p in parts:
            result = result * self.coords.gen(Family.G, p)
        return result

    def x(self, i: int) -> PolyElement:
        return self.coords.gen(Family.X, i)

    def q(self, i: int) -> PolyElement:
        return self.coords.gen(Family.Q, i)

    def fraction(self, numerator: PolyElement, **exponents: int) -> KostantFraction:
        """numerator * prod D_i^e with keywords ``D0=-1`` etc."""
        values = [0] * self.n
        for key, e in exponents.items():
            values[int(key[1:])] = e
        return KostantFraction(self.matrix, numerator, tuple(values))

    # nilHecke side

    def S(self, p: PolyElement) -> PolyElement:
        return self.ctx.reduce(p, self.coords)

    def element(self, terms: Sequence[Tuple[PolyElement, int, Sequence[int]]]) -> NilHeckeElement:
        """sum of c * A_{tau^k s_word}."""
        algebra = self.peterson.nilhecke
        total = NilHeckeElement.zero(algebra)
        for c, k, word in terms:
            w = ExtAffineElement.from_word(self.n, word, k)
            total = total + NilHeckeElement.basis(algebra, w, self.S(c))
        return total

    def j(self, k: int, *word: int) -> PetersonElement:
        return self.peterson.j_class(ExtAffineElement.from_word(self.n, word, k))

    def one(self) -> PolyElement:
        return self.coords.one


def same_poly(data: Data, label: str, got: PolyElement, expected: PolyElement) -> Witness:
    if got == expected:
        return None
    return f"{label}: got {data.coords.to_text(got)}, expected {data.coords.to_text(expected)}"


def same_fraction(label: str, got: KostantFraction, expected: KostantFraction) -> Witness:
    if got == expected:
        return None
    return f"{label}: got {got.to_text()}, expected {expected.to_text()}"


def same_element(label: str, got: object, expected: object, text: Callable[[object], str]) -> Witness:
    if got == expected:
        return None
    return f"{label}: got {text(got)}, expected {text(expected)}"


def _element_text(value: object) -> str:
    if isinstance(value, (NilHeckeElement, PetersonElement, NilHeckeTensor)):
        return value.to_text()
    return repr(value)


def _j(label: str, got: PetersonElement, expected: NilHeckeElement) -> Witness:
    return same_element(label, got.element, expected, _element_text)


def _j_combination(
    data: Data, label: str, got: PetersonElement, terms: Sequence[Tuple[PolyElement, PetersonElement]]
) -> Witness:
    expected = PetersonElement.zero(data.peterson.nilhecke)
    for c, j in terms:
        expected = expected + j.scale(data.S(c))
    return same_element(label, got, expected, _element_text)


def _schubert(data: Data, word: str) -> PolyElement:
    return quantum_schubert(parse_permutation(word, data.n), flip_sign=data.mutation == "schubert").poly


def n2_fixtures(mutation: Optional[str] = None) -> List[Fixture]:
    d = Data(2, mutation=mutation)
    al = d.alpha(1)
    one = d.one()
    fixtures: List[Fixture] = []

    def add(name: str, run: Callable[[], Witness]) -> None:
        fixtures.append(Fixture(name, 2, run))

    add("matrix y22", lambda: same_poly(d, "y22", d.matrix.entry(2, 2), one + d.al(1, 2) * d.g(1)))
    add("D1", lambda: same_poly(d, "D1", d.matrix.D(1), d.g(1)))
    add("D0", lambda: same_poly(d, "D0", d.matrix.D(0), one + al * d.g(1)))
    add("u^-1 (2,1)", lambda: same_fraction("u21", d.matrix.unipotent_inverse_entry(2, 1), d.fraction(one, D1=-1)))
    add("q1", lambda: same_fraction("q1", d.psi().apply(d.q(1)), d.fraction(one, D0=1, D1=-2)))
    add("x1", lambda: same_fraction("x1", d.psi().apply(d.x(1)), d.fraction(d.a(1) * d.g(1) + one, D1=-1)))
    add("x1+x2", lambda: same_fraction("x1+x2", d.psi().apply(d.x(1) + d.x(2)), d.fraction(d.a(1) + d.a(2))))
    add(
        "psi(x1 - a1)",
        lambda: same_fraction("x1-a1", d.psi().apply(d.x(1) - d.a(1)), d.fraction(one, D1=-1)),
    )
    add(
        "psi(q1^-1)",
        lambda: same_fraction("1/q1", d.psi().q(1) * d.fraction(d.g(1) ** 2, D0=-1), d.fraction(one)),
    )
    add(
        "psi((x1 - a1 + alpha1) / q1) = g1",
        lambda: same_fraction(
            "(x1-a1+alpha1)/q1",
            d.psi().apply(d.x(1) - d.a(1) + al),
            d.fraction(d.g(1), D0=1, D1=-2),
        ),
    )

    # j-basis
    table = {
        "j_tau": ((1,), [(one, 1, ()), (-al, 1, (1,))]),
        "j_0": ((0, 0), [(one, 0, (0,)), (one, 0, (1,)), (-al, 0, (0, 1))]),
        "j_tau0": ((1, 0), [(one, 1, (0,)), (one, 1, (1,))]),
        "j_10": ((0, 1, 0), [(one, 0, (1, 0)), (one, 0, (0, 1))]),
        "j_tau10": ((1, 1, 0), [(one, 1, (1, 0)), (one, 1, (0, 1)), (-al, 1, (1, 0, 1))]),
        "j_010": ((0, 0, 1, 0), [(one, 0, (0, 1, 0)), (one, 0, (1, 0, 1)), (-al, 0, (0, 1, 0, 1))]),
        "j_tau010": ((1, 0, 1, 0), [(one, 1, (0, 1, 0)), (one, 1, (1, 0, 1))]),
        "j_1010": ((0, 1, 0, 1, 0), [(one, 0, (1, 0, 1, 0)), (one, 0, (0, 1, 0, 1))]),
    }
    for name, (key, terms) in table.items():
        k, word = key[0], key[1:]
        add(name, lambda k=k, word=word, terms=terms, name=name: _j(name, d.j(k, *word), d.element(terms)))

    def j(name: str) -> PetersonElement:
        key = table[name][0]
        return d.j(key[0], *key[1:])

    products = [
        ("j_tau j_tau", "j_tau", "j_tau", [(one, None), (-al, "j_0")]),
        ("j_tau j_0", "j_tau", "j_0", [(one, "j_tau0"), (-al, "j_tau10")]),
        ("j_tau j_tau0", "j_tau", "j_tau0", [(one, "j_0")]),
        ("j_tau j_10", "j_tau", "j_10", [(one, "j_tau10")]),
        ("j_tau j_tau10", "j_tau", "j_tau10", [(one, "j_10"), (-al, "j_010")]),
        ("j_tau0 j_0", "j_tau0", "j_0", [(one, "j_tau10")]),
        ("j_tau0 j_tau0", "j_tau0", "j_tau0", [(one, "j_10")]),
        ("j_tau0 j_10", "j_tau0", "j_10", [(one, "j_tau010")]),
        ("j_0 j_0", "j_0", "j_0", [(one, "j_10"), (-al, "j_010")]),
        ("j_0 j_10", "j_0", "j_10", [(one, "j_010")]),
    ]
    for label, left, right, combination in products:

        def run(label: str = label, left: str = left, right: str = right, combination: list = combination) -> Witness:
            terms = [(c, d.peterson.one() if name is None else j(name)) for c, name in combination]
            return _j_combination(d, label, j(left) * j(right), terms)

        add(label, run)

    def coproducts() -> Witness:
        one_j = d.peterson.one().element
        jt, j0, jt0 = j("j_tau").element, j("j_0").element, j("j_tau0").element
        alpha = d.S(al)
        expected = {
            "j_tau": NilHeckeTensor.from_pair(jt, jt),
            "j_0": NilHeckeTensor.from_pair(one_j, j0)
            + NilHeckeTensor.from_pair(j0, one_j)
            - NilHeckeTensor.from_pair(j0, j0).scale_first(alpha),
            "j_tau0": NilHeckeTensor.from_pair(jt0, jt)
            + NilHeckeTensor.from_pair(jt, jt0)
            + NilHeckeTensor.from_pair(jt0, jt0).scale_first(alpha),
        }
        for name, tensor in expected.items():
            witness = same_element(f"coproduct {name}", j(name).element.coproduct(), tensor, _element_text)
            if witness:
                return witness
        return None

    add("coproducts", coproducts)

    def peterson_images() -> Witness:
        peterson = d.peterson
        j10 = Coweight.simple_coroot(2, 1).scale(-1)
        image_q = peterson.psi_q(1)
        if image_q * peterson.localize(peterson.j_translation(j10)) != peterson.localize(peterson.one()):
            return f"q1^-1 -> j_10 failed: psi(q1) = {image_q.to_text()}"
        ratio = quantum_to_affine(peterson, d.x(1) - d.a(1)) * peterson.localize(peterson.j_translation(j10))
        if ratio != peterson.localize(j("j_0")):
            return f"(x1-a1)/q1 -> j_0 failed: {ratio.to_text()}"
        phi = PhiTilde(d.matrix, peterson)
        via_phi = phi.fraction_image(d.psi().apply(d.x(1) - d.a(1)))
        if via_phi != quantum_to_affine(peterson, d.x(1) - d.a(1)):
            return f"phi~(Psi(x1-a1)) = {via_phi.to_text()} differs from the quantum-to-affine image"
        return None

    add("Peterson images", peterson_images)
    return fixtures


def n3_fixtures(mutation: Optional[str] = None) -> List[Fixture]:
    d = Data(3, mutation=mutation)
    one = d.one()
    a1, a2 = d.alpha(1), d.alpha(2)
    fixtures: List[Fixture] = []

    def add(name: str, run: Callable[[], Witness]) -> None:
        fixtures.append(Fixture(name, 3, run))

    y22 = one + d.al(1, 2) * d.g(1)
    y23 = d.g(1) + d.al(1, 3) * d.g(2)
    y33 = one + d.al(1, 3) * d.g(1) + d.al(1, 3) * d.al(2, 3) * d.g(2)
    D1 = d.g(1, 1) - d.g(2) + d.al(2, 3) * d.g(2, 1)
    add("matrix y22", lambda: same_poly(d, "y22", d.matrix.entry(2, 2), y22))
    add("matrix y23", lambda: same_poly(d, "y23", d.matrix.entry(2, 3), y23))
    add("matrix y33", lambda: same_poly(d, "y33", d.matrix.entry(3, 3), y33))
    add("D2", lambda: same_poly(d, "D2", d.matrix.D(2), d.g(2)))
    add("D1", lambda: same_poly(d, "D1", d.matrix.D(1), D1))
    add("D0", lambda: same_poly(d, "D0", d.matrix.D(0), y22 * y33))
    inverse = {(2, 1): d.fraction(y23, D1=-1), (3, 1): d.fraction(one, D2=-1), (3, 2): d.fraction(d.g(1), D2=-1)}
    for (r, c), value in inverse.items():
        add(
            f"u^-1 ({r},{c})",
            lambda r=r, c=c, value=value: same_fraction(f"u{r}{c}", d.matrix.unipotent_inverse_entry(r, c), value),
        )
    add("q1", lambda: same_fraction("q1", d.psi().q(1), d.fraction(one, D2=1, D0=1, D1=-2)))
    add("q2", lambda: same_fraction("q2", d.psi().q(2), d.fraction(one, D1=1, D2=-2)))
    add("x1", lambda: same_fraction("x1", d.psi().apply(d.x(1)), d.fraction(d.a(1) * D1 + y23, D1=-1)))
    add(
        "x1+x2",
        lambda: same_fraction(
            "x1+x2", d.psi().apply(d.x(1) + d.x(2)), d.fraction((d.a(1) + d.a(2)) * d.g(2) + d.g(1), D2=-1)
        ),
    )
    add(
        "x1+x2+x3",
        lambda: same_fraction("x1+x2+x3", d.psi().apply(d.x(1) + d.x(2) + d.x(3)), d.fraction(d.coords.zero)),
    )

    schubert = {
        "id": one,
        "s1": d.x(1) - d.a(1),
        "s2": d.x(1) + d.x(2) - d.a(1) - d.a(2),
        "s1 s2": (d.x(1) - d.a(1)) * (d.x(2) - d.a(1)) + d.q(1),
        "s2 s1": (d.x(1) - d.a(1)) * (d.x(1) - d.a(2)) - d.q(1),
        "s1 s2 s1": (d.x(1) - d.a(1)) * (d.x(1) - d.a(2)) * (d.x(2) - d.a(1)) + d.q(1) * (d.x(1) - d.a(2)),
    }
    for word, poly in schubert.items():
        add(f"S_{word}", lambda word=word, poly=poly: same_poly(d, f"S_{word}", _schubert(d, word), poly))

    # S_w / (q1 q2) = Psi(S_w) D1 D2 / D0
    images = {
        "id": d.fraction(d.g(2) * D1, D0=-1),
        "s1": d.fraction(d.g(2) * y23, D0=-1),
        "s2": d.fraction(d.g(1) * D1, D0=-1),
        "s1 s2": d.fraction(D1, D0=-1),
        "s2 s1": d.fraction(d.g(2) * y22, D0=-1),
        "s1 s2 s1": d.fraction((d.g(1) + a2 * d.g(2)) * y22, D0=-1),
    }
    for word, value in images.items():

        def image(word: str = word, value: KostantFraction = value) -> Witness:
            got = d.psi().apply(_schubert(d, word)) * d.fraction(one, D0=-1, D1=1, D2=1)
            return same_fraction(f"S_{word}/(q1 q2)", got, value)

        add(f"image of S_{word}/(q1 q2)", image)

    # j-classes
    s12 = a1 + a2
    add(
        "j_tau",
        lambda: _j(
            "j_tau", d.j(1), d.element([(one, 1, ()), (-a1, 1, (1,)), (-s12, 1, (2,)), (a1 * s12, 1, (2, 1))])
        ),
    )
    add(
        "j_tau s0",
        lambda: _j(
            "j_tau0",
            d.j(1, 0),
            d.element([(one, 1, (0,)), (one, 1, (1,)), (one, 1, (2,)), (-a2, 1, (0, 2)), (-s12, 1, (2, 1))]),
        ),
    )
    add(
        "j_tau s1 s0",
        lambda: _j("j_tau10", d.j(1, 1, 0), d.element([(one, 1, (1, 0)), (one, 1, (2, 1)), (one, 1, (0, 2))])),
    )
    j0_terms = [
        (one, 0, (0,)),
        (one, 0, (1,)),
        (one, 0, (2,)),
        (-s12, 0, (0, 1)),
        (-s12, 0, (0, 2)),
        (-a1, 0, (2, 1)),
        (-a2, 0, (1, 2)),
        (a1 * s12, 0, (0, 2, 1)),
        (a2 * s12, 0, (0, 1, 2)),
        (a1 * a2, 0, (1, 2, 1)),
        (-a1 * a2 * s12, 0, (0, 1, 2, 1)),
    ]
    add("j_0", lambda: _j("j_0", d.j(0, 0), d.element(j0_terms)))
    j10_terms = [
        (one, 0, (1, 0)),
        (one, 0, (2, 1)),
        (one, 0, (0, 2)),
        (-s12, 0, (0, 1, 0)),
        (-s12, 0, (0, 2, 1)),
        (-a2, 0, (1, 2, 1)),
        (-a2, 0, (1, 0, 2)),
        (a2 * s12, 0, (0, 1, 2, 1)),
        (a2 * s12, 0, (0, 1, 0, 2)),
    ]
    add("j_10", lambda: _j("j_10", d.j(0, 1, 0), d.element(j10_terms)))
    add(
        "j_0 twisted",
        lambda: _j_combination(
            d,
            "j_0^tau",
            d.j(0, 0).twist(1),
            [(one, d.j(0, 0)), (a1, d.j(0, 1, 0)), (s12, d.j(0, 2, 0)), (a1 * s12, d.j(0, 1, 2, 0))],
        ),
    )
    add(
        "j_10 twisted",
        lambda: _j_combination(
            d,
            "j_10^tau",
            d.j(0, 1, 0).twist(1),
            [(one, d.j(0, 1, 0)), (s12, d.j(0, 2, 1, 0)), (a1 * s12, d.j(0, 1, 2, 1, 0))],
        ),
    )
    add("dual elementary images", lambda: ehat_images_n3(d))
    return fixtures


def ehat_images_n3(d: Data) -> Witness:
    """
    With Omega = 1 + (a_0 - a_1) e^_1 and a_3 = a_0: g_1 -> Omega^-1 (e^_1 + (a_0 - a_2) e^_2),
    g_2 -> Omega^-1 e^_2 send y_33 to Omega^-1 and D_1 Omega^2 to e^_1^2 - e^_2 + (a_1 - a_2) e^_1 e^_2.
    """
    alphabet = Alphabet(
        [VarId(Family.A, 1), VarId(Family.A, 2), VarId(Family.EHAT, 1), VarId(Family.EHAT, 2)]
    )
    field = alphabet.field
    ctx = d.ctx

    def f(p: PolyElement) -> object:
        return alphabet.to_fraction(p)

    a = {i: ctx.a(i, alphabet) for i in range(4)}
    e1, e2 = alphabet.gen(Family.EHAT, 1), alphabet.gen(Family.EHAT, 2)
    omega = f(alphabet.one + (a[0] - a[1]) * e1)
    images = {
        VarId(Family.G, 1): (f(e1 + (a[0] - a[2]) * e2), omega),
        VarId(Family.G, 2): (f(e2), omega),
    }
    def image(p: PolyElement) -> object:
        total = field.zero
        for monom, coeff in p.items():
            term = field.one * coeff
            for position, e in enumerate(monom):
                if not e:
                    continue
                var = d.coords.variables[position]
                if var in images:
                    numerator, denominator = images[var]
                    term = term * (numerator / denominator) ** e  # type: ignore[operator]
                elif var.family == Family.A:
                    term = term * f(ctx.a(var.index, alphabet)) ** e  # type: ignore[operator]
                else:
                    raise ValueError(f"{var} has no image")
            total = total + term
        return total

    matrix = d.matrix
    omega_02 = f(alphabet.one + (a[0] - a[2]) * e1 + (a[0] - a[2]) * (a[1] - a[2]) * e2)
    checks = [
        ("y33 = Omega^-1", image(matrix.entry(3, 3)), 1 / omega),  # type: ignore[operator]
        ("y22 = Omega^-1 Omega[(a0-a2)y]", image(matrix.entry(2, 2)), omega_02 / omega),  # type: ignore[operator]
        ("D0 = Omega^-2 Omega[(a0-a2)y]", image(matrix.D(0)), omega_02 / omega**2),  # type: ignore[operator]
        ("D2 = Omega^-1 e2", image(matrix.D(2)), f(e2) / omega),  # type: ignore[operator]
        (
            "D1 Omega^2",
            image(matrix.D(1)) * omega**2,  # type: ignore[operator]
            f(e1**2 - e2 + (a[1] - a[2]) * e1 * e2),
        ),
        (
            "(g1 + alpha2 g2) / y33 = e1",
            image(d.g(1) + d.alpha(2) * d.g(2)) / image(matrix.entry(3, 3)),  # type: ignore[operator]
            f(e1),
        ),
    ]
    for label, got, expected in checks:
        if got != expected:
            return f"{label}: got {got}, expected {expected}"
    return None


def n4_fixtures(mutation: Optional[str] = None) -> List[Fixture]:
    d = Data(4, mutation=mutation)
    one = d.one()
    al = d.al
    fixtures: List[Fixture] = []

    def add(name: str, run: Callable[[], Witness]) -> None:
        fixtures.append(Fixture(name, 4, run))

    simple1, simple3 = d.alpha(1), d.alpha(3)
    D2 = d.g(2, 2) - d.g(3, 1) + al(3, 4) * d.g(3, 2)
    D1 = (
        d.g(1, 1, 1)
        - 2 * d.g(2, 1)
        + d.g(3)
        - (al(1, 4) + al(2, 3)) * d.g(2, 2)
        + (simple1 - simple3) * d.g(3, 1)
        + (al(2, 3) + al(2, 4)) * d.g(2, 1, 1)
        + al(2, 3) * al(2, 4) * d.g(2, 2, 1)
        + al(2, 4) * al(3, 4) * d.g(3, 1, 1)
        - simple3 * (al(1, 4) + al(2, 3)) * d.g(3, 2)
        + al(2, 3) * al(2, 4) * al(3, 4) * d.g(3, 2, 1)
    )
    D0 = (
        (one + simple1 * d.g(1))
        * (one + al(1, 3) * d.g(1) + al(1, 3) * al(2, 3) * d.g(2))
        * (one + al(1, 4) * d.g(1) + al(1, 4) * al(2, 4) * d.g(2) + al(1, 4) * al(2, 4) * al(3, 4) * d.g(3))
    )
    add("D3", lambda: same_poly(d, "D3", d.matrix.D(3), d.g(3)))
    add("D2", lambda: same_poly(d, "D2", d.matrix.D(2), D2))
    add("D1", lambda: same_poly(d, "D1", d.matrix.D(1), D1))
    add("D0", lambda: same_poly(d, "D0", d.matrix.D(0), D0))
    add("D0 = diagonal product", lambda: same_poly(d, "D0", d.matrix.D(0), d.matrix.diagonal_product()))
    u21 = (
        d.g(1, 1)
        - d.g(2)
        + (al(1, 4) + al(2, 3)) * d.g(2, 1)
        - al(1, 4) * d.g(3)
        + al(1, 3) * al(1, 4) * d.g(2, 2)
        - al(1, 4) * (simple1 - simple3) * d.g(3, 1)
        + al(1, 3) * al(1, 4) * al(3, 4) * d.g(3, 2)
    )
    inverse = {
        (2, 1): d.fraction(u21, D1=-1),
        (3, 1): d.fraction(d.g(2) + al(1, 4) * d.g(3), D2=-1),
        (3, 2): d.fraction(d.g(2, 1) - d.g(3) + al(2, 4) * d.g(3, 1), D2=-1),
        (4, 1): d.fraction(one, D3=-1),
        (4, 2): d.fraction(d.g(1), D3=-1),
        (4, 3): d.fraction(d.g(2), D3=-1),
    }
    for (r, c), value in inverse.items():
        add(
            f"u^-1 ({r},{c})",
            lambda r=r, c=c, value=value: same_fraction(f"u{r}{c}", d.matrix.unipotent_inverse_entry(r, c), value),
        )
    quantum = {
        1: d.fraction(one, D2=1, D0=1, D1=-2),
        2: d.fraction(one, D3=1, D1=1, D2=-2),
        3: d.fraction(one, D2=1, D3=-2),
    }
    for i, value in quantum.items():
        add(f"q{i}", lambda i=i, value=value: same_fraction(f"q{i}", d.psi().q(i), value))
    for i, (r, c) in enumerate(((2, 1), (3, 2), (4, 3)), start=1):

        def xsum(i: int = i, r: int = r, c: int = c) -> Witness:
            psi = d.psi()
            got = psi.xsum(i)
            expected = d.fraction(d.ctx.asum(i, d.coords)) + d.matrix.unipotent_inverse_entry(r, c)
            return same_fraction(f"x1+..+x{i}", got, expected)

        add(f"x-sum {i}", xsum)

    schubert = {
        "s1": d.x(1) - d.a(1),
        "s2": d.x(1) + d.x(2) - d.a(1) - d.a(2),
        "s3": d.x(1) + d.x(2) + d.x(3) - d.a(1) - d.a(2) - d.a(3),
    }
    for word, poly in schubert.items():
        add(f"S_{word}", lambda word=word, poly=poly: same_poly(d, f"S_{word}", _schubert(d, word), poly))

    u32 = d.g(2, 1) - d.g(3) + al(2, 4) * d.g(3, 1)
    images = {
        "s1": d.fraction(u21, D1=-1),
        "s2": d.fraction(u32, D2=-1),
        "s3": d.fraction(d.g(2), D3=-1),
    }
    for word, value in images.items():
        add(
            f"image of S_{word}",
            lambda word=word, value=value: same_fraction(f"S_{word}", d.psi().apply(_schubert(d, word)), value),
        )

    # S_w / (q1 q2 q3) = Psi(S_w) D1 D3 / D0
    normalized = {
        "id": d.fraction(D1 * d.g(3), D0=-1),
        "s1": d.fraction(u21 * d.g(3), D0=-1),
        "s2": d.fraction(u32 * D1 * d.g(3), D0=-1, D2=-1),
        "s3": d.fraction(d.g(2) * D1, D0=-1),
    }
    for word, value in normalized.items():

        def image(word: str = word, value: KostantFraction = value) -> Witness:
            got = d.psi().apply(_schubert(d, word)) * d.fraction(one, D0=-1, D1=1, D3=1)
            return same_fraction(f"S_{word}/(q1 q2 q3)", got, value)

        add(f"image of S_{word}/(q1 q2 q3)", image)
    return fixtures


def fixtures_for(n: int, mutation: Optional[str] = None) -> List[Fixture]:
    builders = {2: n2_fixtures, 3: n3_fixtures, 4: n4_fixtures}
    if n not in builders:
        raise ValueError(f"No reference values for n={n}")
    return builders[n](mutation)


def run_fixture(fixture: Fixture) -> Witness:
    try:
        return fixture.run()
    except Exception as e:
        return f"{fixture.name}: {type(e).__name__}: {e}"
