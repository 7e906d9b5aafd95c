"""Rational-integer kernels: primality, factorization, residue symbols,
modular square roots, and Hilbert symbols over the completions of Q."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import FactorizationError, ParameterError

# Strong-pseudoprime witnesses making Miller-Rabin deterministic for
# n < 3_317_044_064_679_887_385_961_981 (Sorenson-Webster bound).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 1_000_000
_RHO_BUDGET = 1 << 21


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit - 1) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(limit) if flags[i]]


_SMALL_PRIMES = _sieve(10_000)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below ~3.3e24, strong probable-prime above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:64]:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, c: int, budget: int) -> int | None:
    # Brent's cycle variant of Pollard rho with batched gcds; returns a
    # nontrivial factor of odd composite n, or None within the budget.
    y, r, q = 2, 1, 1
    g, x, ys = 1, y, y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            step = min(128, r - k)
            for _ in range(step):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += step
            spent += step
            if spent > budget:
                return None
        r <<= 1
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g if g != n else None


def _split_composite(n: int) -> int:
    for c in range(1, 20):
        f = _brent_rho(n, c, _RHO_BUDGET)
        if f is not None and 1 < f < n:
            return f
    raise FactorizationError(f"could not factor {n} within effort budget")


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as a sorted list of (p, e) pairs."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"factorize expects a positive integer, got {n}")
    exps: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    p = _SMALL_PRIMES[-1] + 2
    while p <= _TRIAL_BOUND and p * p <= n:
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            exps[m] = exps.get(m, 0) + 1
            continue
        f = _split_composite(m)
        stack.append(f)
        stack.append(m // f)
    return sorted(exps.items())


def valuation(n: int, p: int) -> int:
    """Exponent of p in n; n must be nonzero."""
    if n == 0:
        raise ParameterError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p: one of -1, 0, 1."""
    if p == 2 or not is_prime(p):
        raise ParameterError(f"legendre requires an odd prime modulus, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by the binary algorithm."""
    if n < 1 or n % 2 == 0:
        raise ParameterError(f"jacobi requires a positive odd modulus, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_quartic_residue(a: int, p: int) -> bool:
    """Whether x^4 = a (mod p) is solvable, for an odd prime p not dividing a.

    The subgroup of fourth powers in (Z/p)* has index gcd(4, p-1), so the
    test is a^((p-1)/gcd(4,p-1)) = 1 (mod p).
    """
    if p == 2 or not is_prime(p):
        raise ParameterError(f"quartic residue test requires an odd prime, got {p}")
    if a % p == 0:
        raise ParameterError(f"quartic residue test requires p coprime to a, got a={a}, p={p}")
    return pow(a % p, (p - 1) // gcd(4, p - 1), p) == 1


def sqrt_mod_prime(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p, by Tonelli-Shanks.

    Deterministic: uses the smallest quadratic nonresidue, and returns the
    smaller of the two roots.
    """
    if legendre(a, p) != 1:
        raise ParameterError(f"{a} is not a nonzero square mod {p}")
    a %= p
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def _square_class(x: int | Fraction) -> int:
    if isinstance(x, Fraction):
        x = x.numerator * x.denominator
    if not isinstance(x, int):
        raise ParameterError(f"hilbert symbol arguments must be int or Fraction, got {x!r}")
    if x == 0:
        raise ParameterError("hilbert symbol requires nonzero arguments")
    return x


def _split_off(n: int, p: int) -> tuple[int, int]:
    v = valuation(n, p)
    return v, n // p**v


def hilbert_symbol(a: int | Fraction, b: int | Fraction, place: int | None) -> int:
    """(a, b)_v: +1 if z^2 = a*x^2 + b*y^2 has a nontrivial solution over the
    completion of Q at `place`, else -1.

    `place` is a rational prime, or None for the real place.  Arguments are
    nonzero integers or Fractions (only their square classes matter).
    """
    a = _square_class(a)
    b = _square_class(b)
    if place is None:
        return -1 if a < 0 and b < 0 else 1
    p = place
    if not is_prime(p):
        raise ParameterError(f"hilbert symbol place must be prime or None, got {p}")
    alpha, u = _split_off(a, p)
    beta, w = _split_off(b, p)
    if p == 2:
        exponent = ((u - 1) // 2) * ((w - 1) // 2)
        exponent += alpha * ((w * w - 1) // 8) + beta * ((u * u - 1) // 8)
        return -1 if exponent % 2 else 1
    result = 1
    if alpha * beta % 2 and p % 4 == 3:
        result = -result
    if beta % 2:
        result *= legendre(u, p)
    if alpha % 2:
        result *= legendre(w, p)
    return result
