r"""Integer-order Bessel functions of complex argument on a logarithmic scale.

Every evaluator returns a :class:`ScaledValue`, i.e. ``log|f|`` together with
``arg f``, so that values such as :math:`K_{3000}(10)` or
:math:`I_\nu(\sigma R)/K_\nu(\sigma R)` at large :math:`\sigma R` never overflow.

Evaluation regimes
------------------
* The exponentially scaled AMOS routines (``scipy.special.jve``, ``yve``,
  ``hankel1e``, ``hankel2e``, ``ive``, ``kve``) cover every order whose scaled
  value is a normal double.  Scaling exponents are added back in log space.
* Orders beyond that range are reached by recurrences started from the
  highest order AMOS still represents: forward three-term recurrence for the
  dominant solutions (H1 in the upper half-plane, K), and a continued
  fraction for :math:`C_\nu/C_{\nu-1}` followed by downward ratio recurrence
  for the minimal ones (J, I).
* Points with ``Im z < 0`` are reflected into the upper half-plane.  There
  Y and H2 come from AMOS only when they agree with ``Y = -i(H1 - J)`` and
  ``H2 = 2J - H1``; otherwise from those identities.  Neither H2 nor Y has a
  stable recurrence direction for every order, and AMOS is known to
  misreport both at large order.
* :func:`debye_ratio` gives the leading uniform (Debye) asymptotic form of
  :math:`\log(I_\nu(\nu\tau)/K_\nu(\nu\tau))`.

All functions broadcast over numpy arrays of arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.special as sc

from .errors import AccuracyError, DomainError

# AMOS values outside this band are treated as over/underflowed
AMOS_TINY = 1e-280
AMOS_HUGE = 1e280
# forward recurrence rescales once the running value exceeds this
_RESCALE = 1e100
DEBYE_TAU_MAX = 8.0

CYL_KINDS = ("J", "Y", "H1", "H2")
MOD_KINDS = ("I", "K")
_SWAP = {"H1": "H2", "H2": "H1"}
# tolerance for accepting AMOS Y, H2 against the J, H1 identities
_IDENTITY_TOL = 1e-6


def wrap_phase(phase):
    """Reduce a phase to ``(-pi, pi]``."""
    return np.pi - np.mod(np.pi - phase, 2.0 * np.pi)


@dataclass(frozen=True)
class ScaledValue:
    """A complex number ``exp(log_modulus + 1j*phase)``.

    Both fields are finite except for zero, which is represented by
    ``log_modulus == -inf``.  Fields may be numpy arrays; arithmetic
    broadcasts.
    """

    log_modulus: np.ndarray | float
    phase: np.ndarray | float

    @classmethod
    def zero(cls) -> "ScaledValue":
        return cls(-np.inf, 0.0)

    @classmethod
    def from_complex(cls, value) -> "ScaledValue":
        value = np.asarray(value, dtype=complex)
        with np.errstate(divide="ignore"):
            lm = np.log(np.abs(value))
        return cls._make(lm, np.angle(value))

    @classmethod
    def from_log(cls, log_value) -> "ScaledValue":
        log_value = np.asarray(log_value, dtype=complex)
        return cls._make(log_value.real, log_value.imag)

    @classmethod
    def _make(cls, lm, ph):
        lm = np.asarray(lm, dtype=float)
        ph = np.where(np.isneginf(lm), 0.0, wrap_phase(np.asarray(ph, dtype=float)))
        if lm.ndim == 0:
            return cls(float(lm), float(ph))
        return cls(lm, ph)

    @property
    def is_zero(self):
        return np.isneginf(self.log_modulus)

    @property
    def shape(self):
        return np.shape(self.log_modulus)

    def __getitem__(self, idx) -> "ScaledValue":
        return ScaledValue._make(np.asarray(self.log_modulus)[idx], np.asarray(self.phase)[idx])

    def to_complex(self):
        with np.errstate(over="ignore"):
            out = np.exp(np.asarray(self.log_modulus) + 1j * np.asarray(self.phase))
        return complex(out) if np.ndim(out) == 0 else out

    def log(self):
        """Principal complex logarithm (``-inf`` real part at zero)."""
        out = np.asarray(self.log_modulus) + 1j * np.asarray(self.phase)
        return complex(out) if np.ndim(out) == 0 else out

    def __mul__(self, other) -> "ScaledValue":
        other = _as_scaled(other)
        return ScaledValue._make(np.add(self.log_modulus, other.log_modulus),
                                 np.add(self.phase, other.phase))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledValue":
        other = _as_scaled(other)
        with np.errstate(invalid="ignore"):
            lm = np.subtract(self.log_modulus, other.log_modulus)
        return ScaledValue._make(lm, np.subtract(self.phase, other.phase))

    def __rtruediv__(self, other) -> "ScaledValue":
        return _as_scaled(other) / self

    def __neg__(self) -> "ScaledValue":
        return ScaledValue._make(self.log_modulus, np.add(self.phase, np.pi))

    def conj(self) -> "ScaledValue":
        return ScaledValue._make(self.log_modulus, np.negative(self.phase))

    def __add__(self, other) -> "ScaledValue":
        other = _as_scaled(other)
        la, lb = np.broadcast_arrays(np.asarray(self.log_modulus, float),
                                     np.asarray(other.log_modulus, float))
        ref = np.maximum(la, lb)
        ref = np.where(np.isneginf(ref), 0.0, ref)
        total = (np.exp(la - ref + 1j * np.asarray(self.phase))
                 + np.exp(lb - ref + 1j * np.asarray(other.phase)))
        with np.errstate(divide="ignore"):
            lm = ref + np.log(np.abs(total))
        return ScaledValue._make(lm, np.angle(total))

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledValue":
        return self + (-_as_scaled(other))

    def __rsub__(self, other) -> "ScaledValue":
        return _as_scaled(other) + (-self)


def _as_scaled(x) -> ScaledValue:
    if isinstance(x, ScaledValue):
        return x
    return ScaledValue.from_complex(x)


def _principal(z):
    """Complex array with the negative real axis taken from above (arg = pi)."""
    z = np.asarray(z, dtype=complex)
    on_cut = (z.imag == 0.0) & (z.real < 0.0)
    if np.any(on_cut):
        z = np.where(on_cut, z.real + 0.0j, z)
    return z


def _check_order(nu):
    nu_arr = np.asarray(nu)
    if not np.issubdtype(nu_arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(nu_arr, 1), 0)):
            raise DomainError(f"order must be an integer, got {nu!r}")
        nu_arr = nu_arr.astype(np.int64)
    if np.any(nu_arr < 0):
        raise DomainError(f"order must be >= 0, got {nu!r}")
    return nu_arr


def _amos(kind, n, z):
    """Log-modulus, phase and validity mask from the scaled AMOS routines."""
    n, z = np.broadcast_arrays(np.asarray(n, dtype=float), np.asarray(z, dtype=complex))
    with np.errstate(all="ignore"):
        if kind == "J":
            v = sc.jve(n, z)
            shift_lm, shift_ph = np.abs(z.imag), 0.0
        elif kind == "Y":
            v = sc.yve(n, z)
            shift_lm, shift_ph = np.abs(z.imag), 0.0
        elif kind == "H1":
            v = sc.hankel1e(n, z)
            shift_lm, shift_ph = -z.imag, z.real
        elif kind == "H2":
            v = sc.hankel2e(n, z)
            shift_lm, shift_ph = z.imag, -z.real
        elif kind == "I":
            v = sc.ive(n, z)
            shift_lm, shift_ph = np.abs(z.real), 0.0
        elif kind == "K":
            v = sc.kve(n, z)
            shift_lm, shift_ph = -z.real, -z.imag
        else:
            raise DomainError(f"unknown Bessel kind {kind!r}")
        mag = np.abs(v)
        ok = np.isfinite(v) & (mag > AMOS_TINY) & (mag < AMOS_HUGE)
        lm = np.log(np.where(np.isfinite(mag), mag, 1.0)) + shift_lm
        ph = np.angle(v) + shift_ph
        small = np.isfinite(v) & (mag <= AMOS_TINY)
    return lm, ph, ok, small


def _amos_scalar(kind, n, z):
    lm, ph, ok, _ = _amos(kind, n, z)
    return float(lm), float(ph), bool(ok)


def _highest_valid_order(kind, n, z):
    """Largest k <= n with a representable AMOS value (monotone in the order)."""
    if not _amos_scalar(kind, 0, z)[2]:
        raise AccuracyError(f"{kind}_0({z}) is not representable by any regime")
    lo, hi = 0, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _amos_scalar(kind, mid, z)[2]:
            lo = mid
        else:
            hi = mid
    return lo


def _forward(kind, n, z):
    """Dominant solution at order n by forward recurrence from AMOS seeds."""
    k0 = _highest_valid_order(kind, n, z)
    if k0 == 0:
        lm1, ph1, ok1 = _amos_scalar(kind, 1, z)
        if not ok1:
            raise AccuracyError(f"{kind}_1({z}) is not representable by any regime")
        k0 = 1
    lm0, ph0, _ = _amos_scalar(kind, k0 - 1, z)
    lm1, ph1, _ = _amos_scalar(kind, k0, z)
    scales = [lm1]
    a = math.exp(lm0 - lm1) * complex(math.cos(ph0), math.sin(ph0))
    b = complex(math.cos(ph1), math.sin(ph1))
    sign = 1.0 if kind == "K" else -1.0
    for k in range(k0, n):
        a, b = b, (2.0 * k / z) * b + sign * a
        mag = abs(b)
        if mag > _RESCALE:
            a /= mag
            b /= mag
            scales.append(math.log(mag))
    scales.append(math.log(abs(b)))
    return math.fsum(scales), math.atan2(b.imag, b.real)


def _cf1_ratio(kind, n, z):
    """C_n/C_{n-1} for the minimal solution (J or I) by modified Lentz."""
    tiny = 1e-300
    a_coef = -1.0 if kind == "J" else 1.0
    f = 2.0 * n / z
    if f == 0:
        f = tiny
    c, d = f, 0.0
    for j in range(1, 100000):
        b = 2.0 * (n + j) / z
        d = b + a_coef * d
        d = tiny if d == 0 else d
        d = 1.0 / d
        c = b + a_coef / c
        c = tiny if c == 0 else c
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return 1.0 / f
    raise AccuracyError(f"continued fraction for {kind}_{n}({z}) did not converge")


def _downward(kind, n, z):
    """Minimal solution at order n: AMOS anchor times a product of ratios."""
    k0 = _highest_valid_order(kind, n, z)
    lm0, ph0, _ = _amos_scalar(kind, k0, z)
    sign = -1.0 if kind == "J" else 1.0
    r = _cf1_ratio(kind, n, z)
    logs = [complex(np.log(r))]
    for k in range(n - 1, k0, -1):
        r = 1.0 / (2.0 * k / z + sign * r)
        logs.append(complex(np.log(r)))
    lm = math.fsum([lm0] + [v.real for v in logs])
    ph = math.fsum([ph0] + [v.imag for v in logs])
    return lm, ph


def _primitive(kind, n, z):
    """J, I, K anywhere, or H1 with Im z >= 0, from AMOS plus recurrences.

    These are the kinds whose recurrence direction is stable: J and I are
    minimal as the order grows (downward ratios), K and H1 (in the upper
    half-plane) dominate it (forward).  Arrays are flat.
    """
    lm, ph, ok, small = _amos(kind, n, z)
    if np.all(ok):
        return lm, ph
    lm, ph = np.array(lm, dtype=float), np.array(ph, dtype=float)
    for i in np.nonzero(~ok)[0]:
        ni, zi = int(n[i]), complex(z[i])
        if kind in ("J", "I"):
            if small[i] and _amos_scalar(kind, ni + 1, zi)[2]:
                # the next order is representable, so a tiny C_n is a genuine
                # near-zero of an oscillating function, not an underflow
                continue
            lm[i], ph[i] = _downward(kind, ni, zi)
        else:
            lm[i], ph[i] = _forward(kind, ni, zi)
    return lm, ph


def _mantissa(lm, ph, ref):
    with np.errstate(over="ignore", invalid="ignore"):
        return np.exp(lm - ref + 1j * ph)


def _second_kind(kind, n, z):
    """Y or H2 for Im z >= 0, checked against Y = -i(H1 - J) and H2 = 2J - H1.

    AMOS drops the exponentially scaled-out Hankel part of Y, and loses H2
    entirely for some orders, so its value is accepted only when it agrees
    with the identity to ``_IDENTITY_TOL`` of the local scale.  Otherwise the
    identity itself is used; it cancels only near zeros of the result.
    """
    lj, pj = _primitive("J", n, z)
    lh, phh = _primitive("H1", n, z)
    ref = np.maximum(lj, lh)
    mj, mh = _mantissa(lj, pj, ref), _mantissa(lh, phh, ref)
    derived = -1j * (mh - mj) if kind == "Y" else 2.0 * mj - mh
    lm, ph, ok, _ = _amos(kind, n, z)
    with np.errstate(invalid="ignore"):
        use = ok & (np.abs(_mantissa(lm, ph, ref) - derived) <= _IDENTITY_TOL)
    with np.errstate(divide="ignore"):
        lm_d = np.log(np.abs(derived)) + ref
    return np.where(use, lm, lm_d), np.where(use, ph, np.angle(derived))


def _upper(kind, n, z):
    if kind in ("Y", "H2"):
        return _second_kind(kind, n, z)
    return _primitive(kind, n, z)


def _evaluate(kind, n, z):
    n = _check_order(n)
    z = _principal(z)
    if np.any(z == 0):
        raise DomainError("Bessel functions are evaluated at z != 0 only")
    n, z = np.broadcast_arrays(n, z)
    shape = z.shape
    n, z = n.ravel(), z.ravel()
    lower = z.imag < 0
    # C(conj z) = conj C(z) for J, Y, I, K; the Hankel kinds swap
    zu = np.where(lower, z.conjugate(), z)
    lm = np.empty(z.shape)
    ph = np.empty(z.shape)
    for mask, k in ((~lower, kind), (lower, _SWAP.get(kind, kind))):
        if np.any(mask):
            lm[mask], ph[mask] = _upper(k, n[mask], zu[mask])
    ph = np.where(lower, -ph, ph)
    return ScaledValue._make(lm.reshape(shape), ph.reshape(shape))


def eval_cyl(kind: str, nu, z) -> ScaledValue:
    """J, Y, H1 or H2 of integer order ``nu >= 0`` on the principal branch.

    ``z`` may be a scalar or array; the negative real axis is read as
    ``arg z = pi``.
    """
    if kind not in CYL_KINDS:
        raise DomainError(f"kind must be one of {CYL_KINDS}, got {kind!r}")
    return _evaluate(kind, nu, z)


def eval_mod(kind: str, nu, x) -> ScaledValue:
    """I or K of integer order for arguments with positive real part."""
    if kind not in MOD_KINDS:
        raise DomainError(f"kind must be one of {MOD_KINDS}, got {kind!r}")
    x = np.asarray(x, dtype=complex)
    if np.any(x.real <= 0):
        raise DomainError("modified Bessel functions need Re x > 0")
    return _evaluate(kind, nu, x)


def _neighbours(kind, nu, z):
    """Values at orders nu-1 and nu+1, using the reflection for order -1."""
    nu = _check_order(nu)
    up = _evaluate(kind, nu + 1, z)
    below = _evaluate(kind, np.abs(nu - 1), z)
    if kind in CYL_KINDS:
        # C_{-1} = -C_1
        flip = np.where(nu == 0, np.pi, 0.0)
        below = ScaledValue._make(below.log_modulus, np.add(below.phase, flip))
    return below, up


def derivative(kind: str, nu, z) -> ScaledValue:
    """d/dz of the given kind from the order-neighbour identities.

    J, Y, H1, H2:  C' = (C_{nu-1} - C_{nu+1})/2
    I:             I' = (I_{nu-1} + I_{nu+1})/2
    K:             K' = -(K_{nu-1} + K_{nu+1})/2
    """
    if kind in MOD_KINDS:
        z = np.asarray(z, dtype=complex)
        if np.any(z.real <= 0):
            raise DomainError("modified Bessel functions need Re x > 0")
    elif kind not in CYL_KINDS:
        raise DomainError(f"unknown Bessel kind {kind!r}")
    below, up = _neighbours(kind, nu, z)
    if kind == "I":
        return (below + up) * 0.5
    if kind == "K":
        return (below + up) * -0.5
    return (below - up) * 0.5


def continuation_coefficients(nu, m):
    """Coefficients (a, b) with H1_n(z e^{i m pi}) = a*H1_n(z) + b*H2_n(z).

    Integer-order limit of the rotation connection formula; the companion
    relation for H2 is in :func:`continue_H2`.
    """
    sign = 1.0 if (int(m) * int(nu)) % 2 == 0 else -1.0
    return sign * (1 - m), -sign * m


def continue_H1(nu: int, z, m: int) -> ScaledValue:
    """H1 of integer order continued along ``m`` half-turns from ``z``."""
    h1 = eval_cyl("H1", nu, z)
    if m == 0:
        return h1
    a, b = continuation_coefficients(nu, m)
    h2 = eval_cyl("H2", nu, z)
    if a == 0:
        return h2 * b
    return h1 * a + h2 * b


def continue_H2(nu: int, z, m: int) -> ScaledValue:
    """H2 of integer order continued along ``m`` half-turns from ``z``.

    H2_n(z e^{i m pi}) = (-1)^{mn} [(1+m) H2_n(z) + m H1_n(z)].
    """
    h2 = eval_cyl("H2", nu, z)
    if m == 0:
        return h2
    sign = 1.0 if (int(m) * int(nu)) % 2 == 0 else -1.0
    h1 = eval_cyl("H1", nu, z)
    if m == -1:
        return h1 * (-sign)
    return h2 * (sign * (1 + m)) + h1 * (sign * m)


def debye_eta(tau):
    """eta(tau) = sqrt(1+tau^2) + log(tau / (1 + sqrt(1+tau^2)))."""
    root = np.sqrt(1.0 + np.square(tau))
    return root + np.log(tau / (1.0 + root))


def debye_ratio(nu: int, tau: float, tau_max: float = DEBYE_TAU_MAX) -> float:
    """Leading Debye form of log(I_nu(nu*tau) / K_nu(nu*tau)): 2*nu*eta - log(pi)."""
    if nu < 1:
        raise DomainError(f"Debye ratio needs nu >= 1, got {nu}")
    if not (1.0 / tau_max <= tau <= tau_max):
        raise DomainError(f"tau={tau} outside [{1.0 / tau_max}, {tau_max}]")
    return float(2.0 * nu * debye_eta(tau) - math.log(math.pi))
