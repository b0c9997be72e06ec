"""Points on the logarithmic cover of the punctured plane.

A point keeps its argument as an unbounded real number, so rotating by a
half-turn is plain addition and points whose arguments differ by 2*pi stay
distinct.  Sheet ``m`` is the open angle ``m*pi < arg < (m+1)*pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class LogPoint:
    modulus: float
    arg: float

    def __post_init__(self):
        if not (self.modulus > 0.0) or not math.isfinite(self.modulus):
            raise ValueError(f"modulus must be finite and > 0, got {self.modulus!r}")
        if not math.isfinite(self.arg):
            raise ValueError(f"arg must be finite, got {self.arg!r}")

    @classmethod
    def from_complex(cls, z: complex, sheet_shift: int = 0) -> "LogPoint":
        """Principal-branch lift of ``z`` rotated by ``sheet_shift`` half-turns."""
        z = complex(z)
        if z.imag == 0.0 and z.real < 0.0:
            z = complex(z.real, 0.0)
        return cls(abs(z), math.atan2(z.imag, z.real) + sheet_shift * math.pi)

    def __str__(self) -> str:
        return format_logpoint(self)


@dataclass(frozen=True)
class Boundary:
    """The ray ``arg = k*pi`` separating sheets ``k-1`` and ``k``."""

    k: int


def sheet_of(p: LogPoint, tol: float = BOUNDARY_TOL) -> int | Boundary:
    """Sheet index of ``p``, or ``Boundary(k)`` when ``arg`` is within ``tol`` of ``k*pi``."""
    t = p.arg / math.pi
    k = round(t)
    if abs(p.arg - k * math.pi) <= tol:
        return Boundary(int(k))
    return int(math.floor(t))


def rotate(p: LogPoint, k: int) -> LogPoint:
    return LogPoint(p.modulus, p.arg + k * math.pi)


def project(p: LogPoint) -> complex:
    return complex(p.modulus * math.cos(p.arg), p.modulus * math.sin(p.arg))


def format_logpoint(p: LogPoint) -> str:
    return f"{p.modulus:.17g}@{p.arg:.17g}"


def parse_logpoint(text: str) -> LogPoint:
    try:
        mod, arg = text.strip().split("@")
        return LogPoint(float(mod), float(arg))
    except ValueError as exc:
        raise ValueError(f"not a modulus@arg pair: {text!r}") from exc
