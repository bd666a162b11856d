"""Exact integer helpers: valuations, gcds, factorization, modular units."""

from __future__ import annotations

import math


class NilgenusError(ValueError):
    """Base class for all errors raised by this package."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid for every 64-bit and far beyond)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # These bases are a proven witness set for n < 3.3 * 10**24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def p_valuation(n: int, p: int) -> int | float:
    """Largest e with p**e dividing n; math.inf when n == 0."""
    if not is_prime(p):
        raise NilgenusError(f"valuation base {p} is not prime")
    if n == 0:
        return math.inf
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def vp_cap(n: int, p: int, cap: int) -> int:
    """min(p_valuation(n, p), cap) without the infinity special case."""
    if n == 0:
        return cap
    n = abs(n)
    e = 0
    while e < cap and n % p == 0:
        n //= p
        e += 1
    return e


def gcd_all(*values: int) -> int:
    """Nonnegative gcd with gcd(x, 0) = |x| and gcd() = 0."""
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


def lcm_all(*values: int) -> int:
    out = 1
    for v in values:
        if v:
            out = out * abs(v) // math.gcd(out, abs(v))
    return out


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def invmod(a: int, m: int) -> int:
    """Inverse of a modulo m (m >= 1); raises if gcd(a, m) != 1."""
    if m == 1:
        return 0
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise NilgenusError(f"{a} is not invertible modulo {m}")
    return x % m


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise NilgenusError(f"failed to factor {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; n must be nonzero."""
    if n == 0:
        raise NilgenusError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> tuple[int, ...]:
    if abs(n) == 1:
        return ()
    return tuple(factorize(n))


def binom_int(e: int, i: int) -> int:
    """Binomial coefficient e over i for arbitrary integer e, i >= 0."""
    if i < 0:
        raise NilgenusError("lower binomial index must be nonnegative")
    num = 1
    for j in range(i):
        num *= e - j
    return num // math.factorial(i)


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise NilgenusError(f"{a} is not divisible by {b}")
    return q


def unit_lift(u: int, p: int, k: int) -> int:
    """Integer congruent to u mod p**k that is odd and not divisible by 3.

    Used when a residue witness has to be lifted into an exponent matrix:
    the lift keeps the binomial corrections (e-1)/2 and (e-1)(e-2)/6 of the
    collection formulas integral.
    """
    if k == 0:
        return 1
    q = p ** k
    for j in range(6):
        cand = u % q + j * q
        if cand % 2 == 1 and cand % 3 != 0:
            return cand
    raise NilgenusError("no suitable unit lift found")  # unreachable
