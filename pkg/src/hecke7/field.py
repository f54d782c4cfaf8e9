"""Exact arithmetic in Z[eta], the ring of integers of Q(sqrt(-7)).

Here eta = (1 + sqrt(-7))/2 satisfies eta^2 = eta - 2.  An element
a + b*eta is stored as the integer pair (a, b); its norm is the binary
quadratic form a^2 + a*b + 2*b^2 (class number 1, units +-1).

The Grossencharacter is chi((a+b*eta)) = eps_{a,b} * (a+b*eta) where
eps_{a,b} is the Legendre symbol ((a^3 - 2a^2 b - a b^2 + b^3)/7); the
coefficient function chi^(k)(m) sums eps * (a+b*eta)^k over all
representations of m and halves the result.  All of that is done in
exact integer arithmetic; floating normalization is applied last.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from mpmath import mp, mpf, atan2, sqrt as mpsqrt

from .specfun import PrecisionContext, PrecisionError

# Legendre symbol (x/7): quadratic residues mod 7 are {1, 2, 4}.
_LEGENDRE7 = {0: 0, 1: 1, 2: 1, 3: -1, 4: 1, 5: -1, 6: -1}


def norm(a: int, b: int) -> int:
    """Norm of a + b*eta, the quadratic form a^2 + a*b + 2*b^2."""
    return a * a + a * b + 2 * b * b


def conj(a: int, b: int) -> tuple[int, int]:
    """Complex conjugate: a + b*etabar = (a+b) - b*eta."""
    return (a + b, -b)


def zmul(z: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    """Product in Z[eta], reducing by eta^2 = eta - 2."""
    a, b = z
    c, d = w
    bd = b * d
    return (a * c - 2 * bd, a * d + b * c + bd)


def zpow(z: tuple[int, int], k: int) -> tuple[int, int]:
    """k-th power in Z[eta] by binary exponentiation, k >= 0."""
    result = (1, 0)
    base = z
    while k:
        if k & 1:
            result = zmul(result, base)
        base = zmul(base, base)
        k >>= 1
    return result


def epsilon(a: int, b: int) -> int:
    """The sign character eps_{a,b} = ((a^3 - 2a^2 b - a b^2 + b^3)/7).

    Vanishes exactly when a + b*eta is not coprime to sqrt(-7).
    """
    t = (a * a * a - 2 * a * a * b - a * b * b + b * b * b) % 7
    return _LEGENDRE7[t]


def representations(m: int) -> list[tuple[int, int]]:
    """All integer pairs (a, b) with a^2 + a*b + 2*b^2 = m.

    Ordered lexicographically by (b, a).  The list is closed under
    negation and conjugation, so its length is even.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    out = []
    bmax = isqrt(4 * m // 7)
    for b in range(-bmax, bmax + 1):
        disc = 4 * m - 7 * b * b
        if disc < 0:
            continue
        d = isqrt(disc)
        if d * d != disc:
            continue
        if (d - b) & 1:
            continue
        roots = {(-b - d) // 2, (-b + d) // 2}
        for a in sorted(roots):
            out.append((a, b))
    return out


def half_representations(m: int) -> list[tuple[int, int]]:
    """One representative of each {z, -z} pair: b > 0, or b = 0 and a > 0."""
    return [(a, b) for (a, b) in representations(m) if b > 0 or (b == 0 and a > 0)]


def character_sum(k: int, m: int) -> tuple[int, int]:
    """Full sum of eps_{a,b} (a+b*eta)^k over all representations of m.

    Returned as a Z[eta] pair.  Test hook: for even k the sum cancels
    to (0, 0) identically; for odd k it equals 2*chi^(k)(m) and the
    eta-component is 0.
    """
    u = v = 0
    for a, b in representations(m):
        e = epsilon(a, b)
        if e == 0:
            continue
        pu, pv = zpow((a, b), k)
        u += e * pu
        v += e * pv
    return (u, v)


def hecke_coeff(k: int, m: int) -> int:
    """The rational integer chi^(k)(m) = (1/2) sum over representations.

    Exact big-integer powering throughout; negation pairs contribute
    equally for odd k, so the half-representation sum already is the
    halved full sum.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("character exponent k must be an odd positive integer")
    u = v = 0
    for a, b in half_representations(m):
        e = epsilon(a, b)
        if e == 0:
            continue
        pu, pv = zpow((a, b), k)
        u += e * pu
        v += e * pv
    if v != 0:
        raise ArithmeticError(f"character sum not real for k={k}, m={m}")
    return u


def normalized_coeff(k: int, m: int, digits: int = 15) -> mpf:
    """chi^(k)(m) / m^(k/2) at the requested decimal precision."""
    ctx = PrecisionContext(digits)
    c = hecke_coeff(k, m)
    with mp.workdps(ctx.working_dps):
        val = mpf(c) / mpf(m) ** (mpf(k) / 2)
        return +val


def theta(a: int, b: int, digits: int = 15) -> mpf:
    """Angle of a + b*eta in turns (fraction of a full revolution), in [0, 1).

    The degenerate 4*theta-integral cases (b = 0, or 2a = -b where the
    element is purely imaginary) are returned exactly.
    """
    if (a, b) == (0, 0):
        raise ValueError("theta undefined at 0")
    ctx = PrecisionContext(digits)
    if b == 0:
        return mpf(0) if a > 0 else mpf("0.5")
    if 2 * a == -b:
        return mpf("0.25") if b > 0 else mpf("0.75")
    with mp.workdps(ctx.working_dps):
        # a + b*eta = (a + b/2) + b*sqrt(7)/2 * i
        x = mpf(2 * a + b)
        y = mpf(b) * mpsqrt(7)
        t = atan2(y, x) / (2 * mp.pi)
        if t < 0:
            t += 1
        return +t


def prime_class(p: int) -> str:
    """Splitting type of a rational prime in Q(sqrt(-7)).

    'split' for p = 1, 2, 4 mod 7; 'inert' for p = 3, 5, 6 mod 7;
    'ramified' for p = 7.
    """
    from sympy import isprime

    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p == 7:
        return "ramified"
    return "split" if p % 7 in (1, 2, 4) else "inert"


def _spf_sieve(n: int) -> list[int]:
    """Smallest-prime-factor table for 0..n."""
    spf = list(range(n + 1))
    for i in range(2, isqrt(n) + 1):
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def factorizations(n: int) -> list[dict[int, int]]:
    """Prime factorizations of 0..n (index 0 and 1 give {})."""
    spf = _spf_sieve(n)
    out: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    for m in range(2, n + 1):
        p = spf[m]
        f = dict(out[m // p])
        f[p] = f.get(p, 0) + 1
        out[m] = f
    return out


def primes_up_to(n: int) -> list[int]:
    """Primes <= n, increasing."""
    if n < 2:
        return []
    spf = _spf_sieve(n)
    return [m for m in range(2, n + 1) if spf[m] == m]


@dataclass(frozen=True)
class CoeffTable:
    """Exact and normalized Hecke coefficients chi^(k)(m) for m <= maxM.

    exact[m] is the rational integer chi^(k)(m); normalized[m] is
    chi^(k)(m)/m^(k/2) as an mpf at the table's precision.  Immutable
    once built.
    """

    k: int
    maxM: int
    digits: int
    exact: dict[int, int]
    normalized: dict[int, mpf]


def coeff_table(k: int, maxM: int, digits: int = 15) -> CoeffTable:
    """Build a CoeffTable: direct sums at prime powers, multiplicative
    assembly at composites (both exact), floating normalization last."""
    if k < 1 or k % 2 == 0:
        raise ValueError("character exponent k must be an odd positive integer")
    if maxM < 1:
        raise ValueError("maxM must be >= 1")
    ctx = PrecisionContext(digits)
    spf = _spf_sieve(maxM)
    exact: dict[int, int] = {1: 1}
    for m in range(2, maxM + 1):
        p = spf[m]
        q, rest = p, m // p
        while rest % p == 0:
            q *= p
            rest //= p
        if rest == 1:
            exact[m] = hecke_coeff(k, m)  # prime power: direct sum
        else:
            exact[m] = exact[q] * exact[rest]
    normalized: dict[int, mpf] = {}
    with mp.workdps(ctx.working_dps):
        kh = mpf(k) / 2
        for m in range(1, maxM + 1):
            normalized[m] = +(mpf(exact[m]) / mpf(m) ** kh)
    return CoeffTable(k=k, maxM=maxM, digits=digits, exact=exact, normalized=normalized)
