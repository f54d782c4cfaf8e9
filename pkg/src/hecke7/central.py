"""Central values, the completed L-function on the critical line, and zeros.

Two indexings, following the source conventions:
  * central_value_series(n): the character is chi^(2n-1) (series index);
  * completed_lambda / hardy_Z / zeros_up_to(n): the character is
    chi^(4n-3) (family index; always even functional equation).

Central values use L(1/2, chi^(2n-1)) = 2 sum_m chi(m) Q(n, 2pi m/7)/m^n
... wait, spelled over the regularized incomplete gamma:

    L(1/2, chi^(2n-1)) = (2/(n-1)!) sum_m chi^(2n-1)(m) Gamma(n, 2pi m/7)/m^n
                       = 2 sum_m a(m) Q(n, 2pi m/7) / sqrt(m),

a(m) the normalized coefficients.  The critical line is reached through
the theta integral: with a = 2n - 3/2, Q = 7/(2pi),
f(y) = sum_m chi^(k)(m) e^(-2pi m y/7),

    Lambda(1/2+it) = Q^(-a) int_1^inf f(y) (y^(1/2+it+a) + y^(1/2-it+a)) dy/y,

which avoids complex-order incomplete gamma entirely.  Zero scans run
on a float64 engine that factorizes the t-dependence into a single
cosine dot product over precomputed, log-rescaled quadrature data.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import lgamma, log, exp, pi as fpi, sqrt as fsqrt, cos as fcos

import numpy as np
import mpmath
from mpmath import mp, mpf, mpc
from scipy.special import loggamma as c_loggamma

from . import field
from .specfun import (
    PrecisionContext,
    DEFAULT_CTX,
    ComputeCapError,
    ConvergenceError,
    reg_gamma_Q,
)

BETA = 2.0 * fpi / 7.0  # 2pi/7, the exponential rate of the theta series
MK_CAP = 50_000_000  # cap on truncation-length x exponent for the series route
T_CAP = 50.0  # desk-scale search height


@dataclass(frozen=True)
class CentralValue:
    """L(1/2, chi^(2n-1)) with its method tag and rigorous tail bound."""

    n: int
    value: mpf
    method: str
    tail_bound: mpf


@dataclass(frozen=True)
class ZeroRecord:
    """Positive ordinates of L(s, chi^(4n-3)) zeros up to t_max.

    scaled[i] = gammas[i] * log(2n) / pi (unit mean spacing at desk scale).
    """

    n: int
    gammas: tuple
    scaled: tuple
    t_max: float


def series_truncation(n: int, digits: int) -> int:
    """Truncation point M for the central-value series at exponent 2n-1.

    Rigorous: |chi^(k)(m)| <= d(m) m^(k/2) and d(m) <= 2 sqrt(m) give
    |term(m)| <= 4 Q(n, beta m); for beta m >= (4/3)(n-1) consecutive
    bounds decay by at least e^(-beta/4), so the remainder past M is
    under 5 * 4 * n e^(-beta M)(beta M)^(n-1)/(n-1)!.  We return the
    first M past the Tricomi transition where that bound is below
    10^(-digits-2).
    """
    target = -(digits + 2) * log(10.0)
    m = max(int(4.0 * (n - 1) / (3.0 * BETA)) + 1, int(n / BETA) + 2, 4)
    while True:
        x = BETA * (m + 1)
        logbound = log(20.0 * n) - x + (n - 1) * log(x) - lgamma(n)
        if logbound < target:
            return m
        m += max(1, m // 256)


def central_value_series(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> CentralValue:
    """L(1/2, chi^(2n-1)) by the incomplete-gamma series at ctx precision."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2 == 0:
        # odd functional equation: (-1)^(n-1) = -1 forces L(1/2) = 0
        return CentralValue(n=n, value=mpf(0), method="exact", tail_bound=mpf(0))
    k = 2 * n - 1
    M = series_truncation(n, ctx.digits)
    if M * k > MK_CAP:
        raise ComputeCapError(f"series length {M} x exponent {k} exceeds cap {MK_CAP}")
    table = field.coeff_table(k, M, ctx.digits)
    with mp.workdps(ctx.working_dps + 5):
        beta = 2 * mp.pi / 7
        acc = mpf(0)
        for m in range(1, M + 1):
            c = table.normalized[m]
            if c == 0:
                continue
            q = reg_gamma_Q(n, beta * m, ctx)
            if q == 0:
                continue
            acc += c * q / mpmath.sqrt(m)
        value = 2 * acc
        # remainder bound from series_truncation, evaluated at M
        x = BETA * (M + 1)
        logbound = log(20.0 * n) - x + (n - 1) * log(x) - lgamma(n)
        tail = mpmath.exp(logbound)
        return CentralValue(n=n, value=+value, method="series", tail_bound=+tail)


def gamma_factor_X(k: int, s, ctx: PrecisionContext = DEFAULT_CTX):
    """X_k(s) = (7/2pi)^(1-2s) Gamma(1-s+k/2)/Gamma(s+k/2), the
    asymmetric functional-equation factor L(s) = X(s) L(1-s)."""
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be an odd positive integer")
    with mp.workdps(ctx.working_dps):
        s = mpmath.mpmathify(s)
        kh = mpf(k) / 2
        for arg in (1 - s + kh, s + kh):
            if mpmath.im(arg) == 0 and mpmath.re(arg) <= 0 and arg == mpmath.floor(arg):
                raise ValueError(f"gamma pole at argument {arg}")
        q = 7 / (2 * mp.pi)
        return +(q ** (1 - 2 * s) * mpmath.gamma(1 - s + kh) / mpmath.gamma(s + kh))


# ---------------------------------------------------------------------------
# theta-integral machinery
# ---------------------------------------------------------------------------


def _theta_m_cutoff(a: float, y: float, drop: float) -> int:
    """Number of terms so that the discarded theta-series mass at height y
    is `drop` in natural log below the peak term (float bookkeeping)."""
    mstar = max(1.0, a / (BETA * y))
    peak = a * log(mstar) - BETA * mstar * y
    m = int(mstar) + 1
    while True:
        # d(m) <= 2 sqrt(m); fold into the exponent as log(2) + 0.5 log m
        if log(2.0) + (a + 0.5) * log(m) - BETA * m * y < peak - drop - log(1.0 + m):
            return m
        m += max(1, m // 64)


def _integral_Y(a: float, drop: float) -> float:
    """Upper endpoint Y with the m=1 tail integral `drop` below the
    integrand's peak scale (peak ~ exp(a ln(a/beta) - a) at y* = a/beta)."""
    ystar = max(1.0, (a + 0.5) / BETA)
    peak = (a - 0.5) * log(ystar) - BETA * ystar
    y = ystar + 1.0
    while (a - 0.5) * log(y) - BETA * y > peak - drop - log(1.0 + y):
        y *= 1.05
    return y


@lru_cache(maxsize=64)
def _norm_coeff_floats(k: int, M: int) -> np.ndarray:
    """Normalized coefficients chi^(k)(m)/m^(k/2), m = 1..M, as float64.

    Exact integers at prime powers, multiplicative assembly on floats
    (error ~ 1e-15, ample for the zero engine).
    """
    facs = field.factorizations(M)
    vals = np.zeros(M + 1)
    vals[1] = 1.0
    prime_power: dict[int, float] = {}
    for m in range(2, M + 1):
        f = facs[m]
        if len(f) == 1:
            ((p, e),) = f.items()
            c = field.hecke_coeff(k, m)
            if c == 0:
                prime_power[m] = 0.0
            else:
                with mp.workdps(40):
                    prime_power[m] = float(mpf(c) / mpf(m) ** (mpf(k) / 2))
            vals[m] = prime_power[m]
        else:
            acc = 1.0
            for p, e in f.items():
                acc *= vals[p**e]
            vals[m] = acc
    return vals


class ZEngine:
    """Fast Hardy-Z evaluator for the family member chi^(4n-3).

    Precomputes log-rescaled Gauss-Legendre data on [1, Y] so each
    evaluation is a cosine dot product:

        Z(t) = 2 [sum_j G_j cos(t L_j)] * exp(E* - (a+1/2) ln Q
                                              - Re log Gamma(a+1/2+it)).

    Reliable while the Gamma-modulus suppression stays above the
    float64 cancellation floor; t_reliable reports that ceiling.
    """

    DEGREE = 32

    def __init__(self, n: int, t_max: float = T_CAP):
        self.n = n
        self.k = 4 * n - 3
        self.a = 2.0 * n - 1.5
        a = self.a
        drop = 44.0  # ~19 digits of headroom in the truncations
        M = _theta_m_cutoff(a, 1.0, drop)
        coeff = _norm_coeff_floats(self.k, M)
        ms = np.nonzero(coeff)[0]
        cs = coeff[ms]
        lm = np.log(ms.astype(float))
        Y = _integral_Y(a, drop)
        # panel width: resolve both the cos(t ln y) oscillation and the
        # theta series' own structure scale
        h = min(0.22, 2.0 / (1.0 + t_max), 4.0 / (1.0 + fsqrt(a)))
        nodes, weights = np.polynomial.legendre.leggauss(self.DEGREE)
        edges = [1.0]
        while edges[-1] < Y:
            edges.append(edges[-1] * exp(h))
        ys, ws, Es, phis = [], [], [], []
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, rad = 0.5 * (hi + lo), 0.5 * (hi - lo)
            yy = mid + rad * nodes
            ww = rad * weights
            for y, w in zip(yy, ww):
                expo = a * lm - (BETA * y) * ms
                tj = expo.max()
                phi = float(np.dot(cs, np.exp(expo - tj)))
                ys.append(y)
                ws.append(w)
                phis.append(phi)
                Es.append(tj + (a - 0.5) * log(y) + log(w))
        Es = np.array(Es)
        phis = np.array(phis)
        self.Estar = float(Es.max())
        self.G = phis * np.exp(Es - self.Estar)
        self.L = np.log(np.array(ys))
        self.lgnorm = self.Estar - (a + 0.5) * log(7.0 / (2.0 * fpi))
        self.noise = 1e-15 * fsqrt(len(self.G)) * float(np.abs(self.G).sum())

    def lgamma_re(self, t: float) -> float:
        return float(c_loggamma(complex(self.a + 0.5, t)).real)

    def z(self, t: float) -> float:
        s = float(np.dot(self.G, np.cos(t * self.L)))
        return 2.0 * s * exp(self.lgnorm - self.lgamma_re(t))

    def z_many(self, ts: np.ndarray) -> np.ndarray:
        dots = 2.0 * (np.cos(np.outer(ts, self.L)) @ self.G)
        lg = c_loggamma(self.a + 0.5 + 1j * ts).real
        return dots * np.exp(self.lgnorm - lg)

    def t_reliable(self, floor: float = 1e-10) -> float:
        """Largest t where Gamma-modulus suppression keeps the cosine
        dot product above the float64 noise floor."""
        base = self.lgamma_re(0.0)
        t = 0.0
        while t < 4 * T_CAP and exp(self.lgamma_re(t) - base) > floor:
            t += 0.5
        return t


@lru_cache(maxsize=256)
def _engine(n: int, t_bucket: int) -> ZEngine:
    return ZEngine(n, t_max=float(t_bucket))


def get_engine(n: int, t_max: float = 10.0) -> ZEngine:
    """Shared per-n engine, bucketed by search height."""
    for bucket in (10, 25, 50):
        if t_max <= bucket:
            return _engine(n, bucket)
    return _engine(n, int(T_CAP))


def completed_lambda(n: int, t, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """Lambda(1/2+it) for chi^(4n-3) by panel Gauss-Legendre quadrature
    of the theta integral, at ctx precision."""
    if n < 1:
        raise ValueError("family index n must be >= 1")
    k = 4 * n - 3
    wp = ctx.working_dps + 12
    a_f = 2.0 * n - 1.5
    drop = (ctx.working_dps + 12) * log(10.0) + 25.0
    M = _theta_m_cutoff(a_f, 1.0, drop)
    table = field.coeff_table(k, M, ctx.digits + 12)
    Y = _integral_Y(a_f, drop)
    h = min(0.2, 1.5 / (1.0 + abs(float(t))), 3.0 / (1.0 + fsqrt(a_f)))
    edges = [1.0]
    while edges[-1] < Y:
        edges.append(edges[-1] * exp(h))
    with mp.workdps(wp):
        t_ = mpf(t)
        a = mpf(2 * n) - mpf(3) / 2
        beta = 2 * mp.pi / 7
        q = 7 / (2 * mp.pi)
        ms = [m for m in range(1, M + 1) if table.exact[m] != 0]
        cs = [table.normalized[m] for m in ms]
        lms = [mpmath.log(m) for m in ms]

        def f_times_kernel(y):
            ly = mpmath.log(y)
            # f(y) * y^(a-1/2), assembled in log space per term
            acc = mpf(0)
            for c, lm, m in zip(cs, lms, ms):
                acc += c * mpmath.exp(a * lm - beta * m * y + (a - mpf(1) / 2) * ly)
            return acc * 2 * mpmath.cos(t_ * ly)

        try:
            val = mpmath.quad(f_times_kernel, edges, method="gauss-legendre")
        except Exception as exc:  # pragma: no cover
            raise ConvergenceError(f"theta-integral quadrature failed: {exc}") from exc
        lam = q ** (-a) * val
        return mpc(+lam, 0)


def hardy_Z(n: int, t, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Z(t) = Lambda(1/2+it) / |(7/2pi)^(1/2+it) Gamma(1/2+it+2n-3/2)|;
    real and even with the same critical-line zeros as L."""
    with mp.workdps(ctx.working_dps + 12):
        lam = completed_lambda(n, t, ctx)
        a = mpf(2 * n) - mpf(3) / 2
        q = 7 / (2 * mp.pi)
        denom = mpmath.sqrt(q) * abs(mpmath.gamma(mpf(1) / 2 + a + mpc(0, 1) * mpf(t)))
        return +(mpmath.re(lam) / denom)


def zero_count_main_term(n: int, T: float) -> float:
    """(T/pi) log 2n, the source's zero-count main term."""
    return T / fpi * log(2 * n)


def zeros_up_to(n: int, T: float, ctx: PrecisionContext = DEFAULT_CTX) -> ZeroRecord:
    """All sign changes of Z on (0, T]: grid scan then bisection to 1e-10.

    The scan step refines the quarter-mean-spacing rule pi/(4 log(2n+4))
    with the local density log((7/2pi)(2n+t)) so tall scans at small n
    do not undersample.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    if T > T_CAP:
        raise ValueError(f"T={T} beyond desk-scale cap {T_CAP}")
    eng = get_engine(n, T)
    t_rel = eng.t_reliable()
    if T > t_rel:
        warnings.warn(
            f"n={n}: float64 engine unreliable past t={t_rel:.1f}; "
            f"truncating scan (requested {T})"
        )
        T = t_rel
    step = fpi / (4.0 * max(log(2 * n + 4), log(1.1141 * (2 * n + T))))
    # anchor at t=0 (Z(0) > 0 here: central nonvanishing holds family-wide)
    # so a first zero inside (0, step) is still bracketed
    ts = np.arange(0.0, T + step, step)
    ts = ts[ts <= T]
    zs = eng.z_many(ts)
    gammas = []
    for i in range(len(ts) - 1):
        if zs[i] == 0.0:
            gammas.append(float(ts[i]))
            continue
        if zs[i] * zs[i + 1] < 0:
            lo, hi = float(ts[i]), float(ts[i + 1])
            flo = zs[i]
            for _ in range(48):
                mid = 0.5 * (lo + hi)
                fm = eng.z(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
                if hi - lo < 1e-11:
                    break
            gammas.append(0.5 * (lo + hi))
    main = zero_count_main_term(n, T)
    if abs(len(gammas) - main) > 5 + log(2 * n):
        warnings.warn(
            f"n={n}, T={T}: found {len(gammas)} zeros vs main term {main:.2f}; "
            "grid may be too coarse"
        )
    scale = log(2 * n) / fpi
    return ZeroRecord(
        n=n,
        gammas=tuple(gammas),
        scaled=tuple(g * scale for g in gammas),
        t_max=float(T),
    )
