"""Exact central values via the A(n)/B(n) polynomial recursions.

The b-sequence is the canonical path: rational polynomials with

    21 b_{k+1}(x) = ((32kx - 56k + 42) - (x-7)(64x-7) d/dx) b_k(x)
                    - 2k(2k-1)(11x+7) b_{k-1}(x),   b_0 = 1/2, b_1 = 1,

giving B(2n+1) = b_n(0), A(n) = B(n)^2, and the exact central value

    L(1/2, chi^(2n-1)) = 2 (2pi/sqrt7)^n Omega^(2n-1) A(n) / (n-1)!.

The a-sequence lives in the quadratic extension u(x) + v(x)*s with
s^2 = (1+x)(1-27x) and is kept behind a cross-check flag; evaluating at
x = -1 kills the s-component since s^2 vanishes there.  The printed
initial value a_1 = -(1/3) sqrt((1-x)(1+27x)) carries a typo'd
radicand: only s^2 = (1+x)(1-27x) throughout reproduces the A(n) table
(the other variant already fails at A(3)), so that is what we use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf, factorial, pi, sqrt as mpsqrt

from .specfun import PrecisionContext, DEFAULT_CTX, constants

Poly = list  # list of Fraction coefficients, index = degree


def _trim(p: Poly) -> Poly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pscale(p: Poly, c) -> Poly:
    c = Fraction(c)
    return _trim([c * a for a in p])


def _pmul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pdiff(p: Poly) -> Poly:
    if len(p) == 1:
        return [Fraction(0)]
    return _trim([i * p[i] for i in range(1, len(p))])


def _peval(p: Poly, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class VZPoly:
    """Element u(x) + v(x)*s of the recursion ring, s^2 = (1+x)(1-27x).

    Coefficients are exact rationals.  The b-sequence uses v = 0.
    """

    u: tuple
    v: tuple

    @staticmethod
    def make(u: Poly, v: Poly | None = None) -> "VZPoly":
        return VZPoly(tuple(u), tuple(v if v is not None else [Fraction(0)]))

    def eval_at(self, x) -> tuple[Fraction, Fraction]:
        """(u(x), v(x)); the element's value is u(x) + v(x)*s(x)."""
        return _peval(list(self.u), x), _peval(list(self.v), x)


@dataclass(frozen=True)
class ExactCentral:
    """Exact A(n), B(n) and the floating central value L(1/2, chi^(2n-1))."""

    n: int
    A: Fraction
    B: Fraction
    L: mpf


@lru_cache(maxsize=8)
def _b_sequence(kmax: int) -> tuple:
    """b_0..b_kmax as coefficient tuples, computed once."""
    # (x-7)(64x-7) = 64x^2 - 455x + 49
    quad = [Fraction(49), Fraction(-455), Fraction(64)]
    bs = [[Fraction(1, 2)], [Fraction(1)]]
    for k in range(1, kmax):
        bk, bk1 = bs[k], bs[k - 1]
        lin = [Fraction(42 - 56 * k), Fraction(32 * k)]
        term = _padd(_pmul(lin, bk), _pscale(_pmul(quad, _pdiff(bk)), -1))
        term = _padd(term, _pscale(_pmul([Fraction(7), Fraction(11)], bk1), -2 * k * (2 * k - 1)))
        bs.append(_pscale(term, Fraction(1, 21)))
    return tuple(tuple(p) for p in bs[: kmax + 1])


def b_poly(k: int) -> VZPoly:
    """The exact rational polynomial b_k(x)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return VZPoly.make(list(_b_sequence(max(k, 1))[k]))


# radicands for the a-path; 'recursion' is the one that reproduces the table
_RADICANDS = {
    "recursion": [Fraction(1), Fraction(-26), Fraction(-27)],  # (1+x)(1-27x)
    "initial": [Fraction(1), Fraction(26), Fraction(-27)],  # (1-x)(1+27x)
}


@lru_cache(maxsize=8)
def _a_sequence(kmax: int, variant: str = "recursion") -> tuple:
    """a_0..a_kmax in the ring u + v*s, s^2 = radicand(variant)."""
    R = _RADICANDS[variant]
    dR = _pdiff(R)
    seq = [([Fraction(1)], [Fraction(0)]), ([Fraction(0)], [Fraction(-1, 3)])]
    x = [Fraction(0), Fraction(1)]
    for k in range(1, kmax):
        u, v = seq[k]
        u1, v1 = seq[k - 1]
        c = Fraction(2 * k + 1, 3)
        # sqrt(R)*(x d/dx - c)(u + v s) = [x(v'R + vR'/2) - cvR] + [xu' - cu]s
        new_u = _padd(
            _pmul(x, _padd(_pmul(_pdiff(v), R), _pscale(_pmul(v, dR), Fraction(1, 2)))),
            _pscale(_pmul(v, R), -c),
        )
        new_v = _padd(_pmul(x, _pdiff(u)), _pscale(u, -c))
        corr = Fraction(k * k, 9)
        one5x = [Fraction(1), Fraction(-5)]
        new_u = _padd(new_u, _pscale(_pmul(one5x, u1), -corr))
        new_v = _padd(new_v, _pscale(_pmul(one5x, v1), -corr))
        seq.append((new_u, new_v))
    return tuple((tuple(u), tuple(v)) for (u, v) in seq[: kmax + 1])


def a_poly(k: int, variant: str = "recursion") -> VZPoly:
    """The a-sequence element a_k = u + v*s (cross-check path)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    u, v = _a_sequence(max(k, 1), variant)[k]
    return VZPoly.make(list(u), list(v))


def A_from_a_path(n: int, variant: str = "recursion") -> Fraction:
    """A(n) = a_{n-1}(-1)/4 for odd n, via the quadratic-extension path.

    At x = -1 the radicand (1+x)(1-27x) vanishes, so the limit is just
    the u-component there.
    """
    if n % 2 == 0:
        return Fraction(0)
    u_at, _v_at = a_poly(n - 1, variant).eval_at(-1)
    return u_at / 4


def B_of(n: int) -> Fraction:
    """B(n) = b_{(n-1)/2}(0) for odd n; B(1) = 1/2, integer for n > 1."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    return Fraction(_b_sequence(max((n - 1) // 2, 1))[(n - 1) // 2][0])


def A_of(n: int) -> Fraction:
    """A(n): zero for even n (odd functional equation), else B(n)^2."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2 == 0:
        return Fraction(0)
    b = B_of(n)
    return b * b


def central_value_exact(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> ExactCentral:
    """L(1/2, chi^(2n-1)) = 2 (2pi/sqrt7)^n Omega^(2n-1) A(n)/(n-1)!."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    A = A_of(n)
    B = B_of(n)
    omega = constants(ctx)["omega"]
    with mp.workdps(ctx.working_dps):
        L = 2 * (2 * pi / mpsqrt(7)) ** n * omega ** (2 * n - 1) / factorial(n - 1)
        L = L * mpf(A.numerator) / mpf(A.denominator)
        return ExactCentral(n=n, A=A, B=B, L=+L)


def congruence_check(max_n: int) -> list[tuple[int, int, bool]]:
    """B(n) = -n (mod 4) for odd 1 < n <= max_n: the nonvanishing sweep."""
    if max_n % 2 == 0:
        raise ValueError("max_n must be odd")
    _b_sequence((max_n - 1) // 2)  # build once
    out = []
    for n in range(3, max_n + 1, 2):
        B = B_of(n)
        ok = B.denominator == 1 and (B.numerator - (-n)) % 4 == 0
        out.append((n, B.numerator % 4 if B.denominator == 1 else -1, ok))
    return out
