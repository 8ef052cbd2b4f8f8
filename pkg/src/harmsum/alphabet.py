"""Letters ``(a, b, c, z)`` of the graded alphabet, standing for the summand
``z**i / (a*i + b)**c``."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .coeffring import CoefElem, PolyN, RatFunc


class InvalidLetter(ValueError):
    pass


class Letter(NamedTuple):
    """One alphabet symbol; ``c`` is its degree.

    Comparisons follow the alphabet order (degree, then a, b, z), not the
    field order of the tuple; equality and hashing are the tuple's.
    """

    a: int
    b: int
    c: int
    z: int

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.c, self.a, self.b, self.z)

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def validate(self) -> Letter:
        a, b, c, z = self
        if a < 1 or b < 0 or c < 1:
            raise InvalidLetter(f"letter {tuple(self)}: need a >= 1, b >= 0, c >= 1")
        if z not in (1, -1):
            raise InvalidLetter(f"letter {tuple(self)}: z must be 1 or -1")
        if math.gcd(a, b) != 1:
            raise InvalidLetter(f"letter {tuple(self)}: gcd(a, b) must be 1")
        if not (b < a):
            raise InvalidLetter(f"letter {tuple(self)}: need b < a")
        return self

    @property
    def is_harmonic_type(self) -> bool:
        return self.a == 1 and self.b == 0


def letter(a: int, b: int, c: int, z: int) -> Letter:
    return Letter(a, b, c, z).validate()


def harmonic(c: int) -> Letter:
    """Shorthand letter: ``c`` signed, ``-2`` meaning ``(1, 0, 2, -1)``."""
    if c == 0:
        raise InvalidLetter("harmonic index 0")
    return Letter(1, 0, abs(c), 1 if c > 0 else -1)


def letter_cmp(l1: Letter, l2: Letter) -> int:
    """-1, 0 or 1 as ``l1`` is below, equal to or above ``l2``."""
    k1, k2 = l1.key, l2.key
    return (k1 > k2) - (k1 < k2)


def lambda_eval(l: Letter, i: int) -> Fraction:
    """The summand ``z**i / (a*i + b)**c`` at ``i >= 1``."""
    sign = -1 if (l.z == -1 and i % 2) else 1
    return Fraction(sign, (l.a * i + l.b) ** l.c)


@lru_cache(maxsize=None)
def lambda_bar(l: Letter) -> CoefElem:
    """The summand as an element of K(n)[x]: ``x^((z-1)/2) / (a*n + b)**c``."""
    r = RatFunc(PolyN.const(1), PolyN.linear(l.a, l.b) ** l.c)
    return CoefElem(r, None) if l.z == 1 else CoefElem(None, r)


def _binom_neg(c: int, m: int) -> int:
    # binomial(-c, m)
    return (-1) ** m * math.comb(c + m - 1, m)


@lru_cache(maxsize=None)
def letter_product(l1: Letter, l2: Letter) -> tuple[tuple[Fraction, Letter], ...]:
    """Expand ``lambda(l1, i) * lambda(l2, i)`` as ``sum r_j * lambda(m_j, i)``.

    Equal bases merge exponents; distinct bases are split by partial
    fractions of ``1/(u**c1 * v**c2)`` with ``u, v`` the two linear forms.

    >>> letter_product(harmonic(1), Letter(2, 1, 1, 1))
    ((Fraction(1, 1), Letter(a=1, b=0, c=1, z=1)), (Fraction(-2, 1), Letter(a=2, b=1, c=1, z=1)))
    """
    z = l1.z * l2.z
    if (l1.a, l1.b) == (l2.a, l2.b):
        return ((Fraction(1), Letter(l1.a, l1.b, l1.c + l2.c, z)),)
    out = []
    for (p, q), (a1, b1, c1), (a2, b2, c2) in (
        ((0, 1), l1[:3], l2[:3]),
        ((1, 0), l2[:3], l1[:3]),
    ):
        # with u = a1*i + b1:  v = alpha*u + beta
        alpha = Fraction(a2, a1)
        beta = b2 - alpha * b1
        base = beta ** -c2
        for k in range(1, c1 + 1):
            m = c1 - k
            r = base * _binom_neg(c2, m) * (alpha / beta) ** m
            if r:
                out.append((r, Letter(a1, b1, k, z)))
    out.sort(key=lambda t: t[1].key)
    return tuple(out)


class AlphabetKind(enum.Enum):
    HARMONIC = "harmonic"
    ALTERNATING = "alternating"
    CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class AlphabetSpec:
    kind: AlphabetKind
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind is AlphabetKind.CYCLOTOMIC:
            if not self.moduli or any(m < 1 for m in self.moduli):
                raise ValueError("cyclotomic alphabet needs a nonempty set of positive moduli")
            object.__setattr__(self, "moduli", tuple(sorted(set(self.moduli))))
        elif self.moduli:
            raise ValueError(f"{self.kind.value} alphabet takes no moduli")

    @classmethod
    def harmonic(cls) -> AlphabetSpec:
        return cls(AlphabetKind.HARMONIC)

    @classmethod
    def alternating(cls) -> AlphabetSpec:
        return cls(AlphabetKind.ALTERNATING)

    @classmethod
    def cyclotomic(cls, *moduli: int) -> AlphabetSpec:
        return cls(AlphabetKind.CYCLOTOMIC, tuple(moduli))

    def contains(self, l: Letter) -> bool:
        try:
            l.validate()
        except InvalidLetter:
            return False
        if self.kind is AlphabetKind.HARMONIC:
            return l.is_harmonic_type and l.z == 1
        if self.kind is AlphabetKind.ALTERNATING:
            return l.is_harmonic_type
        return l.a in self.moduli

    def letters(self, c: int) -> list[Letter]:
        """All letters of degree ``c``, ascending."""
        if self.kind is AlphabetKind.HARMONIC:
            return [Letter(1, 0, c, 1)]
        if self.kind is AlphabetKind.ALTERNATING:
            return [Letter(1, 0, c, -1), Letter(1, 0, c, 1)]
        out = []
        for a in self.moduli:
            for b in range(a):
                if math.gcd(a, b) == 1:
                    out += [Letter(a, b, c, -1), Letter(a, b, c, 1)]
        return sorted(out)

    def issubset(self, other: AlphabetSpec) -> bool:
        """Letter-set inclusion (checked on degree-1 letters, which decide it)."""
        return all(other.contains(l) for l in self.letters(1))

    def describe(self) -> str:
        if self.kind is AlphabetKind.CYCLOTOMIC:
            return "cyclotomic " + ",".join(map(str, self.moduli))
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> AlphabetSpec:
        parts = text.split(None, 1)
        kind = AlphabetKind(parts[0].lower())
        moduli = tuple(int(m) for m in parts[1].split(",")) if len(parts) > 1 else ()
        return cls(kind, moduli)
