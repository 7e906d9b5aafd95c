"""Brute-force ground truth: bounded exhaustive representation search over
Z[sqrt(d)], and the classical two-square search over Z."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .errors import ParameterError
from .ring import QuadInt

SQUARE_TABLE_CACHE_SIZE = 4


@dataclass(frozen=True)
class SearchReport:
    delta: QuadInt
    bound: int
    witness: tuple[QuadInt, QuadInt] | None
    states_examined: int


@lru_cache(maxsize=SQUARE_TABLE_CACHE_SIZE)
def _squares_by_value(d: int, bound: int) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
    # coordinates of z^2 for every z = s + t*sqrt(d) with |s|, |t| <= bound,
    # keyed by value; root lists are in ascending (s, t) order
    table: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for s in range(-bound, bound + 1):
        ss = s * s
        for t in range(-bound, bound + 1):
            table.setdefault((ss + d * t * t, 2 * s * t), []).append((s, t))
    return {key: tuple(roots) for key, roots in table.items()}


def find_representation(delta: QuadInt, bound: int) -> SearchReport:
    """Exhaustive search for x, y with x^2 + y^2 = delta and all coordinates
    within [-bound, bound].

    Returns the lexicographically smallest witness by (x.a, x.b, y.a, y.b).
    An odd b coordinate is rejected outright: the sqrt(d) coordinate of
    x^2 + y^2 is 2(uv + st), always even.
    """
    if bound < 1:
        raise ParameterError(f"bound must be >= 1, got {bound}")
    d = delta.d
    if delta.is_zero():
        zero = QuadInt(0, 0, d)
        return SearchReport(delta, bound, (zero, zero), 0)
    if delta.b % 2:
        return SearchReport(delta, bound, None, 0)
    table = _squares_by_value(d, bound)
    a, b = delta.a, delta.b
    states = 0
    for u in range(-bound, bound + 1):
        uu = u * u
        for v in range(-bound, bound + 1):
            states += 1
            roots = table.get((a - uu - d * v * v, b - 2 * u * v))
            if roots:
                s, t = roots[0]
                witness = (QuadInt(u, v, d), QuadInt(s, t, d))
                return SearchReport(delta, bound, witness, states)
    return SearchReport(delta, bound, None, states)


def two_square_search(n: int) -> tuple[int, int] | None:
    """Smallest-x representation n = x^2 + y^2 over nonnegative integers,
    or None."""
    if n < 0:
        return None
    for x in range(isqrt(n) + 1):
        w = n - x * x
        y = isqrt(w)
        if y * y == w:
            return (x, y)
    return None
