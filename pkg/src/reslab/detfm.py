r"""The determinant functions f_m(lam) = det(m S(lam) - (m-1) I) for a ball.

Because S is diagonal on spherical harmonics,

.. math::  \log f_m(\lambda) = \sum_l \mu(l)\,\mathrm{Log}(1 + m(s_l(\lambda) - 1)).

The imaginary part is the sum of per-factor principal logarithms, not a
branch of ``log f_m`` tracked continuously in ``lam``; only the real part,
``log|f_m|``, carries meaning.

Truncation
----------
The sum starts at ``l_max = ceil(c_L |lam| R) + 40``.  Past the turning point
``l ~ |lam| R`` the terms decay super-exponentially, so the tail is estimated
from the ratio of the last two terms (times a safety factor of 10) and
``l_max`` is doubled until that estimate drops below ``tail_tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bessel
from . import partialwave as pw
from .errors import DomainError, FitError, TruncationError

TAIL_SAFETY = 10.0
# terms below this fraction of tail_tol count as converged
NOISE_FRACTION = 1e-3
_L_MARGIN = 40


@dataclass(frozen=True)
class DetConfig:
    c_L: float = 2.0
    tail_tol: float = 1e-10
    max_l: int = 20000

    def __post_init__(self):
        if not self.c_L > 0:
            raise DomainError(f"c_L must be > 0, got {self.c_L}")
        if not self.tail_tol > 0:
            raise DomainError(f"tail_tol must be > 0, got {self.tail_tol}")
        if int(self.max_l) != self.max_l or self.max_l < 1:
            raise DomainError(f"max_l must be a positive integer, got {self.max_l}")

    def initial_l_max(self, modulus: float, R: float) -> int:
        return min(int(math.ceil(self.c_L * modulus * R)) + _L_MARGIN, self.max_l)

    def to_dict(self) -> dict:
        return {"c_L": self.c_L, "tail_tol": self.tail_tol, "max_l": self.max_l}


@dataclass(frozen=True)
class DetSum:
    """A truncated partial-wave sum and its bookkeeping."""

    value: complex
    l_max_used: int
    tail_estimate: float


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    log_coeff: float
    residual: float

    def to_dict(self) -> dict:
        return {"exponent": self.exponent, "log_coeff": self.log_coeff,
                "residual": self.residual}


def _tail_estimate(terms, tail_tol) -> float:
    a = abs(terms[-1])
    if a <= NOISE_FRACTION * tail_tol:
        # at the rounding floor the ratio test is meaningless
        return TAIL_SAFETY * a
    b = abs(terms[-2])
    if b == 0.0 or a >= b:
        return math.inf
    rho = a / b
    return TAIL_SAFETY * a * rho / (1.0 - rho)


def _fsum_complex(terms) -> complex:
    terms = np.asarray(terms, dtype=complex)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def truncated_sum(term_fn, l_start: int, cfg: DetConfig, l_fixed=None) -> DetSum:
    """Sum ``term_fn(ls)`` over l = 0, 1, ... with the doubling tail policy.

    ``term_fn`` maps an integer array of l values to the (multiplicity
    weighted) terms.  With ``l_fixed`` the sum runs over exactly
    ``0..l_fixed`` and the tail estimate is reported but not enforced.
    """
    l_max = l_fixed if l_fixed is not None else max(int(l_start), 2)
    terms = list(np.asarray(term_fn(np.arange(l_max + 1)), dtype=complex))
    tail = _tail_estimate(terms, cfg.tail_tol)
    while l_fixed is None and tail > cfg.tail_tol:
        if l_max >= cfg.max_l:
            raise TruncationError(
                f"tail estimate {tail:.3g} above {cfg.tail_tol:.3g} at l_max = {cfg.max_l}")
        new_max = min(2 * l_max, cfg.max_l)
        terms.extend(np.asarray(term_fn(np.arange(l_max + 1, new_max + 1)), dtype=complex))
        l_max = new_max
        tail = _tail_estimate(terms, cfg.tail_tol)
    return DetSum(_fsum_complex(terms), l_max, tail)


def _weights(p, ls):
    return np.array([pw.multiplicity(int(l), p.d) for l in ls], dtype=float)


def _check_m(m):
    if int(m) != m or m < 1:
        raise DomainError(f"sheet index m must be an integer >= 1, got {m}")


def log_factors(p: pw.BallProblem, m: int, lam, ls):
    """Per-l principal logs Log(1 + m(s_l(lam) - 1)) for an array of l.

    On the positive real axis the real part is taken from the exact identity
    ``|1 + m(s-1)|^2 = 1 + m(m-1)|s-1|^2`` (valid because |s| = 1 there), which
    keeps it nonnegative to the last bit.
    """
    lam = complex(lam)
    smo = pw.s_minus_one(p, ls, lam)
    w = smo * float(m)
    out = np.asarray(pw.log1p_scaled(w), dtype=complex)
    if lam.imag == 0.0 and lam.real > 0.0:
        with np.errstate(over="ignore"):
            sq = np.exp(2.0 * np.asarray(smo.log_modulus, dtype=float))
        out = 0.5 * np.log1p(m * (m - 1) * sq) + 1j * out.imag
    return out


def log_fm_detailed(p: pw.BallProblem, m: int, lam, cfg: DetConfig | None = None,
                    l_fixed=None) -> DetSum:
    """:func:`log_fm` together with the truncation order and tail estimate."""
    _check_m(m)
    cfg = cfg or DetConfig()
    lam = complex(lam)
    if lam == 0 or lam.imag < 0:
        raise DomainError("log_fm is defined on the closed upper half-plane minus 0")

    def terms(ls):
        return _weights(p, ls) * log_factors(p, m, lam, ls)

    return truncated_sum(terms, cfg.initial_l_max(abs(lam), p.R), cfg, l_fixed)


def log_fm(p: pw.BallProblem, m: int, lam, cfg: DetConfig | None = None) -> complex:
    """Sum over l of mu(l) Log(1 + m(s_l(lam) - 1)), per-factor principal logs."""
    return log_fm_detailed(p, m, lam, cfg).value


def _imag_axis_terms(p, m, sigma, debye_threshold):
    log_m_pi = math.log(m * math.pi)

    def terms(ls):
        out = np.empty(len(ls))
        for i, l in enumerate(ls):
            log_q, _ = pw.log_q_imaginary(p, int(l), sigma, debye_threshold=debye_threshold)
            # log(1 + x^2)/2 with x = m pi Q, safe for huge log Q
            out[i] = 0.5 * np.logaddexp(0.0, 2.0 * (log_m_pi + log_q))
        return _weights(p, ls) * out

    return terms


def log_abs_fm_imaginary_detailed(p: pw.BallProblem, m: int, sigma: float,
                                  cfg: DetConfig | None = None,
                                  debye_threshold=pw.DEBYE_NU_THRESHOLD) -> DetSum:
    _check_m(m)
    if not sigma > 0:
        raise DomainError("sigma must be > 0")
    cfg = cfg or DetConfig()
    terms = _imag_axis_terms(p, m, float(sigma), debye_threshold)
    out = truncated_sum(terms, cfg.initial_l_max(sigma, p.R), cfg)
    return DetSum(out.value.real, out.l_max_used, out.tail_estimate)


def log_abs_fm_imaginary(p: pw.BallProblem, m: int, sigma: float,
                         cfg: DetConfig | None = None) -> float:
    """log|f_m(i sigma)| = (1/2) sum mu(l) log(1 + (m pi Q_l(sigma))^2)."""
    return log_abs_fm_imaginary_detailed(p, m, sigma, cfg).value


def log_abs_fm_imaginary_debye_window(p: pw.BallProblem, m: int, sigma: float,
                                      tau_max: float = bessel.DEBYE_TAU_MAX) -> float:
    """Leading-Debye estimate of log|f_m(i sigma)|.

    Orders with ``sigma R / tau_max <= l <= sigma R`` use the leading Debye
    ratio; smaller l are summed exactly and larger l are dropped.  This is the
    restriction under which the exponential lower bound is derived, so the
    comparison with :func:`log_abs_fm_imaginary` measures how much of the
    determinant that window carries.
    """
    _check_m(m)
    x = sigma * p.R
    lo = int(math.ceil(x / tau_max))
    hi = int(math.floor(x))
    log_m_pi = math.log(m * math.pi)
    parts = []
    for l in range(0, hi + 1):
        nu = p.order(l)
        if l >= lo and nu >= 1 and 1.0 / tau_max <= x / nu <= tau_max:
            log_q, _ = pw.log_q_imaginary(p, l, sigma, debye_threshold=0, tau_max=tau_max)
        else:
            log_q, _ = pw.log_q_imaginary(p, l, sigma)
        parts.append(pw.multiplicity(l, p.d) * 0.5 * np.logaddexp(0.0, 2.0 * (log_m_pi + log_q)))
    return math.fsum(parts)


def log_abs_fm_negative_ray_detailed(p: pw.BallProblem, m: int, r: float,
                                     cfg: DetConfig | None = None,
                                     route: str = "reflection", l_fixed=None) -> DetSum:
    """log|f_m(r e^{i pi})| by one of two independent routes.

    ``route="reflection"`` uses ``det(m S(r e^{i pi}) - (m-1)I) = det((m+1)I - m S(r)^*)``
    factor by factor, with ``|(m+1) - m conj(s)|^2 = 1 + m(m+1)|s-1|^2``.
    ``route="continuation"`` evaluates s_l at ``r e^{i pi}`` from the continued
    Hankel functions and takes ``log|1 + m(s_l - 1)|`` directly.
    """
    _check_m(m)
    if not r > 0:
        raise DomainError("r must be > 0")
    cfg = cfg or DetConfig()
    r = float(r)

    if route == "reflection":
        def terms(ls):
            smo = pw.s_minus_one(p, ls, r)
            with np.errstate(over="ignore"):
                sq = np.exp(2.0 * np.asarray(smo.log_modulus, dtype=float))
            return _weights(p, ls) * 0.5 * np.log1p(m * (m + 1) * sq)
    elif route == "continuation":
        def terms(ls):
            out = np.empty(len(ls))
            for i, l in enumerate(ls):
                b1 = pw.boundary_functional_continued(p, "H1", r, int(l), 1)
                b2 = pw.boundary_functional_continued(p, "H2", r, int(l), 1)
                smo = -((b1 + b2) / b1)
                out[i] = pw.log1p_scaled(smo * float(m)).real
            return _weights(p, ls) * out
    else:
        raise DomainError(f"unknown route {route!r}")
    out = truncated_sum(terms, cfg.initial_l_max(r, p.R), cfg, l_fixed)
    return DetSum(out.value.real, out.l_max_used, out.tail_estimate)


def log_abs_fm_negative_ray(p: pw.BallProblem, m: int, r: float,
                            cfg: DetConfig | None = None) -> float:
    """log|f_m(r e^{i pi})| through the reflection identity."""
    return log_abs_fm_negative_ray_detailed(p, m, r, cfg).value


def fit_growth(samples) -> GrowthFit:
    """Least-squares fit of log y = exponent * log x + log_coeff.

    Needs at least 6 samples with x > 0, y > 0 and max(x)/min(x) >= 4.
    """
    pts = [(float(x), float(y)) for x, y in samples]
    if len(pts) < 6:
        raise FitError(f"need at least 6 samples, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.any(x <= 0) or np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise FitError("growth fits need x > 0 and finite y > 0")
    if x.max() / x.min() < 4.0:
        raise FitError(f"x spans a factor {x.max() / x.min():.3g} < 4")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return GrowthFit(float(slope), float(intercept), float(np.sqrt(np.mean(resid ** 2))))
