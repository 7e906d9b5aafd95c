"""Exact arithmetic in Z[sqrt(d)] for squarefree d = 2, 3 (mod 4), with
d = -14 as the distinguished instance, plus the norm-factorization data
feeding the two-squares criterion."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from . import numth
from .errors import ParameterError, UnsupportedInputError

DEFAULT_D = -14


@lru_cache(maxsize=None)
def _validate_ring_parameter(d: int) -> None:
    if d % 4 not in (2, 3):
        raise ParameterError(f"d must be 2 or 3 mod 4, got {d}")
    for _, e in numth.factorize(abs(d)):
        if e > 1:
            raise ParameterError(f"d must be squarefree, got {d}")


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(d) with integer coordinates."""

    a: int
    b: int
    d: int = DEFAULT_D

    def __post_init__(self) -> None:
        _validate_ring_parameter(self.d)

    def _check_ring(self, other: "QuadInt") -> None:
        if not isinstance(other, QuadInt):
            raise TypeError(f"expected QuadInt, got {type(other).__name__}")
        if other.d != self.d:
            raise ParameterError(f"mixed rings: d={self.d} and d={other.d}")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.d)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._check_ring(other)
        return QuadInt(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def conj(self) -> "QuadInt":
        return QuadInt(self.a, -self.b, self.d)

    def norm(self) -> int:
        return self.a * self.a - self.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}*sqrt({self.d})"

    def pair(self) -> str:
        return f"{self.a},{self.b}"


_PAIR_RE = re.compile(r"^\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*$")
_FULL_RE = re.compile(r"^\s*([+-]?\d+)\s*([+-]\s*\d+)\s*\*\s*sqrt\(\s*(-?\d+)\s*\)\s*$")


def parse_quadint(text: str, d: int = DEFAULT_D) -> QuadInt:
    """Parse the compact pair "a,b" or the full form "a+b*sqrt(d)"."""
    m = _PAIR_RE.match(text)
    if m:
        return QuadInt(int(m.group(1)), int(m.group(2)), d)
    m = _FULL_RE.match(text)
    if m:
        d_in = int(m.group(3))
        if d_in != d:
            raise ParameterError(f"ring mismatch: text has d={d_in}, expected {d}")
        return QuadInt(int(m.group(1)), int(m.group(2).replace(" ", "")), d)
    raise ParameterError(f"cannot parse quadratic integer from {text!r}")


class Splitting(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def split_type(p: int, d: int = DEFAULT_D) -> Splitting:
    """Behaviour of the rational prime p in Z[sqrt(d)]."""
    _validate_ring_parameter(d)
    if not numth.is_prime(p):
        raise ParameterError(f"split_type requires a prime, got {p}")
    if (2 * d) % p == 0:
        return Splitting.RAMIFIED
    return Splitting.SPLIT if numth.legendre(d, p) == 1 else Splitting.INERT


@dataclass(frozen=True)
class Place:
    """A place of Q(sqrt(d)): finite over a rational prime, or archimedean
    (prime is None).  For rational-integer decisions splitting is None."""

    prime: int | None
    splitting: Splitting | None = None

    @classmethod
    def archimedean(cls) -> "Place":
        return cls(None, None)

    @classmethod
    def finite(cls, p: int, d: int = DEFAULT_D) -> "Place":
        return cls(p, split_type(p, d))

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def label(self) -> str:
        return "oo" if self.prime is None else str(self.prime)


@dataclass(frozen=True)
class NormFactorization:
    """Shape data of N(delta) = 2^s1 * 7^s2 * p1^e1 * ... * pg^eg together
    with the 7-part of the rational coordinate a = 7^s3 * a1 (7 not
    dividing a1) and the sign classes D1, D2, D3 of the odd primes."""

    s1: int
    s2: int
    primes: tuple[tuple[int, int], ...]
    s3: int
    a1: int
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    d3: tuple[int, ...]


def _partition(primes: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], ...]:
    d1, d2, d3 = [], [], []
    for p, _ in primes:
        m1 = numth.legendre(-1, p)
        m14 = numth.legendre(14, p)
        m7 = numth.legendre(7, p)
        if m1 == 1 and m14 == 1 and m7 == -1:
            d1.append(p)
        if m1 == 1 and m14 == -1 and m7 == -1:
            d2.append(p)
        if m1 == 1 and m14 == 1 and not numth.is_quartic_residue(7, p):
            d3.append(p)
    return tuple(d1), tuple(d2), tuple(d3)


def partition_D(nf: NormFactorization) -> tuple[tuple[int, ...], ...]:
    """The classes (D1, D2, D3); depends only on the set of odd primes."""
    return _partition(nf.primes)


def norm_factorization(delta: QuadInt) -> NormFactorization:
    """Extract (s1, s2, primes; s3, a1; D1, D2, D3) from delta over Z[sqrt(-14)].

    Requires delta nonzero with nonzero rational coordinate a (the 7-part
    of a is undefined otherwise).
    """
    if delta.d != DEFAULT_D:
        raise ParameterError(f"norm factorization is specific to d={DEFAULT_D}, got d={delta.d}")
    if delta.is_zero():
        raise ParameterError("delta must be nonzero")
    if delta.a == 0:
        raise UnsupportedInputError("delta with a = 0 is outside the criterion's domain")
    fac = numth.factorize(abs(delta.norm()))
    s1 = s2 = 0
    primes: list[tuple[int, int]] = []
    for p, e in fac:
        if p == 2:
            s1 = e
        elif p == 7:
            s2 = e
        else:
            primes.append((p, e))
    s3 = numth.valuation(delta.a, 7)
    a1 = delta.a // 7**s3
    d1, d2, d3 = _partition(tuple(primes))
    return NormFactorization(s1, s2, tuple(primes), s3, a1, d1, d2, d3)
