r"""Partial-wave reduction of scattering by a ball.

For the exterior of the ball of radius ``R`` in even dimension ``d`` the
scattering matrix is diagonal in spherical harmonics.  On degree-``l``
harmonics (Bessel order ``nu = l - 1 + d/2``) it acts by

.. math::  s_l(\lambda) = -\frac{B[H^{(2)}_\nu](\lambda)}{B[H^{(1)}_\nu](\lambda)}

where the boundary functional is

* Dirichlet:  ``B[C](lam) = C_nu(lam R)``
* Robin(h0):  ``B[C](lam) = (h0 + (d-2)/2) C_nu(lam R) - lam R C'_nu(lam R)``

The ``(d-2)/2`` comes from the radial factor ``r^{-(d-2)/2}`` and the minus
sign from the exterior normal pointing towards the origin.  The phase factors
of the transmission coefficient and the half-integer power of ``lam`` in the
kernel of ``S - I`` cancel out of this ratio and never appear here.

Since ``H1 + H2 = 2J`` and ``B`` is linear, ``s_l - 1 = -2 B[J]/B[H1]``; this
form is used wherever ``s_l`` is close to 1 (large ``l``, small ``lam``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bessel
from .bessel import ScaledValue
from .errors import DomainError, PoleError

DEBYE_NU_THRESHOLD = 400
# log of the smallest |B[H1]| (relative to its two terms) still treated as nonzero
_POLE_LOG_TOL = math.log(1e-280)

_BC_NAMES = ("dirichlet", "robin")


@dataclass(frozen=True)
class BallProblem:
    """Exterior of ``B(0; R)`` in even dimension ``d``.

    ``bc`` is ``"dirichlet"`` or ``"robin"``; the Robin boundary function on
    the sphere is the constant ``h0/R`` and ``h0 = 0`` is Neumann.
    """

    d: int = 2
    R: float = 1.0
    bc: str = "dirichlet"
    h0: float = 0.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2 or self.d % 2:
            raise DomainError(f"dimension must be even and >= 2, got {self.d}")
        if not (self.R > 0) or not math.isfinite(self.R):
            raise DomainError(f"radius must be > 0, got {self.R}")
        if self.bc not in _BC_NAMES:
            raise DomainError(f"bc must be one of {_BC_NAMES}, got {self.bc!r}")
        if self.h0 < 0 or not math.isfinite(self.h0):
            raise DomainError(f"Robin constant must be >= 0 (admissible), got {self.h0}")
        if self.bc == "dirichlet" and self.h0 != 0:
            raise DomainError("h0 is only meaningful for the Robin condition")

    @classmethod
    def dirichlet(cls, d=2, R=1.0):
        return cls(d, R, "dirichlet", 0.0)

    @classmethod
    def neumann(cls, d=2, R=1.0):
        return cls(d, R, "robin", 0.0)

    @classmethod
    def robin(cls, h0, d=2, R=1.0):
        return cls(d, R, "robin", float(h0))

    @property
    def is_dirichlet(self) -> bool:
        return self.bc == "dirichlet"

    @property
    def label(self) -> str:
        if self.is_dirichlet:
            return "dirichlet"
        return "neumann" if self.h0 == 0 else "robin"

    @property
    def robin_constant(self) -> float:
        """Coefficient of C_nu in the Robin functional, h0 + (d-2)/2."""
        return self.h0 + (self.d - 2) / 2

    def order(self, l: int) -> int:
        return l - 1 + self.d // 2

    def to_dict(self) -> dict:
        return {"d": self.d, "R": self.R, "bc": self.label, "h0": self.h0}


@dataclass(frozen=True)
class PartialWave:
    l: int
    nu: int
    mult: int


def multiplicity(l: int, d: int) -> int:
    """Dimension of the degree-``l`` spherical harmonics on the unit sphere in R^d."""
    if d < 2 or d % 2:
        raise DomainError(f"dimension must be even and >= 2, got {d}")
    if l < 0:
        raise DomainError(f"l must be >= 0, got {l}")
    if d == 2:
        return 1 if l == 0 else 2
    # (2l+d-2)/(d-2) * binom(l+d-3, d-3), always an integer
    return (2 * l + d - 2) * math.comb(l + d - 3, d - 3) // (d - 2)


def partial_wave(p: BallProblem, l: int) -> PartialWave:
    return PartialWave(l, p.order(l), multiplicity(l, p.d))


def _orders_like(nu, z):
    """``nu`` reshaped so that it broadcasts against ``z`` into nu.shape + z.shape."""
    nu = np.asarray(nu)
    return nu.reshape(nu.shape + (1,) * np.ndim(z))


def _three_orders(family, nu, z):
    """C_{nu-1}, C_nu, C_{nu+1} from a single broadcast evaluation."""
    nu = _orders_like(nu, z)
    vals = bessel.eval_cyl(family, np.stack([np.abs(nu - 1), nu, nu + 1]), z)
    below, mid, up = vals[0], vals[1], vals[2]
    # C_{-1} = -C_1
    below = ScaledValue._make(below.log_modulus,
                              np.add(below.phase, np.where(nu == 0, np.pi, 0.0)))
    return below, mid, up


def _functional(p, family, lam, l, with_derivative=False, with_scale=False):
    """B[C] for scalar-or-array ``l`` and scalar-or-array ``lam``.

    When both are arrays the result has shape ``l.shape + lam.shape``.
    """
    nu = p.order(np.asarray(l))
    z = np.asarray(lam, dtype=complex) * p.R
    if p.is_dirichlet and not with_derivative:
        value = bessel.eval_cyl(family, _orders_like(nu, z), z)
        return (value, value.log_modulus) if with_scale else value
    below, c, up = _three_orders(family, nu, z)
    deriv = (below - up) * 0.5
    if p.is_dirichlet:
        value = c
        dvalue = deriv * p.R
        scale = c.log_modulus
    else:
        a = p.robin_constant
        nu_b = _orders_like(nu, z)
        first, second = c * a, deriv * z
        value = first - second
        dvalue = (deriv * a + c * (z - nu_b * nu_b / z)) * p.R
        scale = np.maximum(first.log_modulus, second.log_modulus)
    if with_derivative:
        return value, dvalue
    return (value, scale) if with_scale else value


def boundary_functional(p: BallProblem, family: str, lam, l: int) -> ScaledValue:
    """B[C](lam) for C in {J, Y, H1, H2} on the principal branch."""
    return _functional(p, family, lam, l)


def boundary_functional_with_derivative(p: BallProblem, family: str, lam, l: int):
    """(B[C](lam), d/dlam B[C](lam)), using the Bessel equation for C''."""
    return _functional(p, family, lam, l, with_derivative=True)


def boundary_functional_continued(p: BallProblem, family: str, lam, l: int, m: int) -> ScaledValue:
    """B[C] at ``lam * e^{i m pi}`` for C in {H1, H2}, via the connection formulas.

    ``lam`` is a principal-branch representative; each order nu-1, nu, nu+1 is
    continued separately and the derivative is taken with respect to the
    rotated argument ``w = lam R (-1)^m``.
    """
    nu = p.order(l)
    z = np.asarray(lam, dtype=complex) * p.R
    cont = {"H1": bessel.continue_H1, "H2": bessel.continue_H2}[family]
    c = cont(nu, z, m)
    below = cont(abs(nu - 1), z, m)
    if nu == 0:
        below = -below
    up = cont(nu + 1, z, m)
    if p.is_dirichlet:
        return c
    w = z * (-1.0) ** m
    return c * p.robin_constant - (below - up) * (0.5 * w)


def _h1_functional_checked(p, lam, l):
    b1, scale = _functional(p, "H1", lam, l, with_scale=True)
    lm = np.asarray(b1.log_modulus)
    with np.errstate(invalid="ignore"):
        gap = lm - np.asarray(scale)
    if np.any(~np.isfinite(lm)) or np.any(gap < _POLE_LOG_TOL):
        raise PoleError("B[H1] vanishes: point is a pole of the scattering matrix",
                        location=lam)
    return b1


def s_minus_one(p: BallProblem, l: int, lam) -> ScaledValue:
    """s_l(lam) - 1 = -2 B[J]/B[H1], accurate when s_l is close to 1."""
    bj = boundary_functional(p, "J", lam, l)
    b1 = _h1_functional_checked(p, lam, l)
    return -(bj / b1) * 2.0


def s_coefficient(p: BallProblem, l: int, lam):
    """Eigenvalue of S(lam) on degree-l harmonics, for Im lam >= 0, lam != 0."""
    lam_arr = np.asarray(lam, dtype=complex)
    if np.any(lam_arr.imag < 0):
        raise DomainError("s_coefficient is defined on the closed upper half-plane")
    b2 = boundary_functional(p, "H2", lam_arr, l)
    b1 = _h1_functional_checked(p, lam_arr, l)
    return (-(b2 / b1)).to_complex()


def log_q_imaginary(p: BallProblem, l: int, sigma, debye_threshold=DEBYE_NU_THRESHOLD,
                    tau_max=bessel.DEBYE_TAU_MAX):
    """log|Q_l(sigma)| and sign(Q_l) on the imaginary axis.

    Dirichlet: Q = I_nu(x)/K_nu(x); Robin: Q = (a I - x I')/(a K - x K'),
    with x = sigma R and a = h0 + (d-2)/2.  Above ``debye_threshold`` the
    leading Debye forms replace the direct evaluation when tau = x/nu lies in
    [1/tau_max, tau_max].
    """
    nu = p.order(l)
    x = float(sigma) * p.R
    if sigma <= 0:
        raise DomainError("sigma must be > 0")
    if nu > debye_threshold and 1.0 / tau_max <= x / nu <= tau_max:
        log_ik = bessel.debye_ratio(nu, x / nu, tau_max)
        if p.is_dirichlet:
            return log_ik, 1.0
        # leading order: I'/I ~ sqrt(1+tau^2)/tau, K'/K ~ -sqrt(1+tau^2)/tau
        a = p.robin_constant
        root = nu * math.sqrt(1.0 + (x / nu) ** 2)
        q = (a - root) / (a + root)
        return log_ik + math.log(abs(q)), math.copysign(1.0, q)
    i_nu = bessel.eval_mod("I", nu, x)
    k_nu = bessel.eval_mod("K", nu, x)
    if p.is_dirichlet:
        return float(i_nu.log_modulus - k_nu.log_modulus), 1.0
    a = p.robin_constant
    num = i_nu * a - bessel.derivative("I", nu, x) * x
    den = k_nu * a - bessel.derivative("K", nu, x) * x
    q = num / den
    if q.is_zero:
        return -math.inf, 1.0
    return float(q.log_modulus), 1.0 if math.cos(q.phase) > 0 else -1.0


def s_on_imaginary(p: BallProblem, l: int, sigma: float, **kwargs) -> complex:
    """s_l(i sigma) = 1 - i pi (-1)^nu Q_l(sigma)."""
    log_q, sign = log_q_imaginary(p, l, sigma, **kwargs)
    parity = -1.0 if p.order(l) % 2 else 1.0
    with np.errstate(over="ignore"):
        q = sign * math.exp(log_q) if log_q < 709 else sign * math.inf
    return complex(1.0, -math.pi * parity * q)


def eigenphase(p: BallProblem, l: int, r):
    """Phase of s_l(r) on the positive real axis, folded to (-pi, pi]."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("eigenphase needs r > 0")
    b2 = boundary_functional(p, "H2", r, l)
    b1 = _h1_functional_checked(p, r, l)
    theta = (-(b2 / b1)).phase
    return float(theta) if np.ndim(theta) == 0 else theta


def interior_char(p: BallProblem, l: int, lam) -> ScaledValue:
    """B[J](lam); its positive zeros are square roots of interior eigenvalues."""
    return boundary_functional(p, "J", lam, l)


def log1p_scaled(w: ScaledValue):
    """Principal log(1 + w) for w given on a log scale."""
    lm = np.asarray(w.log_modulus, dtype=float)
    ph = np.asarray(w.phase, dtype=float)
    big = lm > 600.0
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        wc = np.where(big, 0.0, np.exp(np.where(big, 0.0, lm)) * np.exp(1j * ph))
        small = np.abs(wc) <= 0.5
        re_small = 0.5 * np.log1p(2.0 * wc.real + np.abs(wc) ** 2)
        re_mod = np.log(np.abs(1.0 + wc))
        im_direct = np.arctan2(wc.imag, 1.0 + wc.real)
        # |w| huge: log(1+w) = log w + log1p(1/w)
        inv = np.where(big, np.exp(-lm) * np.exp(-1j * ph), 0.0)
        corr = np.log1p(inv)
        re_big = lm + corr.real
        im_big = bessel.wrap_phase(ph + corr.imag)
    re = np.where(big, re_big, np.where(small, re_small, re_mod))
    im = np.where(big, im_big, im_direct)
    out = re + 1j * im
    return complex(out) if out.ndim == 0 else out


def log_factor(p: BallProblem, l: int, m: int, lam):
    """Principal Log(1 + m (s_l(lam) - 1)), the l-th factor of log det(mS - (m-1)I)."""
    w = s_minus_one(p, l, lam) * float(m)
    return log1p_scaled(w)
