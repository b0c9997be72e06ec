r"""Resonances of the ball on the sheets of the logarithmic cover.

A resonance on sheet ``m >= 1`` is ``lam e^{i m pi}`` for a zero ``lam`` of
``f_m`` in the open upper half-plane.  Since S is diagonal, the zeros of
``f_m`` are those of the per-l factors ``1 + m(s_l - 1)``, i.e. of the sheet
functions

.. math::  g_{l,m}(\lambda) = m\,B[H^{(2)}](\lambda) + (m-1)\,B[H^{(1)}](\lambda),

each counted ``mu(l)`` times.  Zeros are counted with the argument principle
on rectangles, isolated by recursive subdivision and polished by Newton's
method.  Sheets ``m <= -1`` follow from ``m >= 1`` by the reflection
``arg -> pi - arg`` of the cover, which maps sheet ``m`` onto sheet ``-m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
import numpy as np

from . import detfm
from . import partialwave as pw
from ._parallel import ordered_map, worker_count
from .bessel import ScaledValue
from .errors import (AccuracyError, ContourError, DomainError, FitError,
                     NoConvergence, ReslabError)
from .logcover import LogPoint, rotate

PHASE_STEP_MAX = math.pi / 2
# extra refinement trigger: neighbouring samples whose |fn| differ by > e^3
LOG_STEP_MAX = 3.0
STRIP_HEIGHT = 1e-3
STRIP_FLOOR = 1e-8
NEWTON_BOX = 2.0
CLUSTER_DIAM = 1e-7
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class SearchBox:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        if not (self.re_hi > self.re_lo and self.im_hi > self.im_lo):
            raise DomainError(f"degenerate box {self}")
        if self.im_lo < 0:
            raise DomainError("boxes live in the closed upper half-plane")

    @property
    def diameter(self) -> float:
        return math.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_lo + self.re_hi), 0.5 * (self.im_lo + self.im_hi))

    def contains(self, z, margin=0.0) -> bool:
        return (self.re_lo - margin <= z.real <= self.re_hi + margin
                and self.im_lo - margin <= z.imag <= self.im_hi + margin)

    def grown(self, amount: float) -> "SearchBox":
        """The box enlarged by ``amount`` on every side (im_lo kept >= 0)."""
        return SearchBox(self.re_lo - amount, self.re_hi + amount,
                         max(self.im_lo - amount, 0.5 * self.im_lo), self.im_hi + amount)

    def split(self, frac=0.5):
        """Two halves across the longer side, cut at ``frac`` of its length."""
        if self.re_hi - self.re_lo >= self.im_hi - self.im_lo:
            cut = self.re_lo + frac * (self.re_hi - self.re_lo)
            return (SearchBox(self.re_lo, cut, self.im_lo, self.im_hi),
                    SearchBox(cut, self.re_hi, self.im_lo, self.im_hi))
        cut = self.im_lo + frac * (self.im_hi - self.im_lo)
        return (SearchBox(self.re_lo, self.re_hi, self.im_lo, cut),
                SearchBox(self.re_lo, self.re_hi, cut, self.im_hi))


@dataclass(frozen=True)
class ResonanceRecord:
    location: LogPoint
    l: int
    zero_order: int
    total_mult: int
    residual: float
    merged: bool = False

    @property
    def lambda0(self) -> complex:
        """Representative of the resonance in the physical half-plane."""
        m = math.floor(self.location.arg / math.pi)
        return complex(self.location.modulus * math.cos(self.location.arg - m * math.pi),
                       self.location.modulus * math.sin(self.location.arg - m * math.pi))


@dataclass
class CountingTable:
    m: int
    r_grid: np.ndarray
    counts: np.ndarray
    fit: detfm.GrowthFit | None = None


@dataclass
class SearchResult:
    records: list
    box_counts: dict = field(default_factory=dict)
    partial: bool = False
    errors: list = field(default_factory=list)


# --- sheet functions ---------------------------------------------------------

def _sheet_combination(b1, b2, m):
    if m == 1:
        return b2
    return b2 * float(m) + b1 * float(m - 1)


def sheet_function(p: pw.BallProblem, l: int, m: int, lam) -> ScaledValue:
    """g_{l,m}(lam) = m B[H2](lam) + (m-1) B[H1](lam)."""
    if m < 1:
        raise DomainError(f"sheet functions are built for m >= 1, got {m}")
    b2 = pw.boundary_functional(p, "H2", lam, l)
    if m == 1:
        return b2
    return _sheet_combination(pw.boundary_functional(p, "H1", lam, l), b2, m)


def sheet_function_with_derivative(p: pw.BallProblem, l: int, m: int, lam):
    b2, d2 = pw.boundary_functional_with_derivative(p, "H2", lam, l)
    if m == 1:
        return b2, d2
    b1, d1 = pw.boundary_functional_with_derivative(p, "H1", lam, l)
    return _sheet_combination(b1, b2, m), _sheet_combination(d1, d2, m)


def continued_function(p: pw.BallProblem, l: int, m: int, lam) -> ScaledValue:
    """B[H1] at ``lam e^{i m pi}`` from the connection formulas.

    Its zeros in the upper half-plane are the sheet-m resonances; this
    route shares no code with :func:`sheet_function` beyond the Bessel core.
    """
    return pw.boundary_functional_continued(p, "H1", lam, l, m)


def _function_scale(p, l, lam):
    """log(|B[H1]| + |B[H2]|), the size of the terms combined in g."""
    b1 = pw.boundary_functional(p, "H1", lam, l)
    b2 = pw.boundary_functional(p, "H2", lam, l)
    return np.logaddexp(b1.log_modulus, b2.log_modulus)


# --- argument principle ------------------------------------------------------

def _as_log_phase(values):
    if isinstance(values, ScaledValue):
        return (np.atleast_1d(np.asarray(values.log_modulus, dtype=float)),
                np.atleast_1d(np.asarray(values.phase, dtype=float)))
    v = np.atleast_1d(np.asarray(values, dtype=complex))
    with np.errstate(divide="ignore"):
        return np.log(np.abs(v)), np.angle(v)


def _perimeter_points(box, t):
    """Map perimeter parameters t in [0, 4) to the counterclockwise boundary."""
    t = np.asarray(t, dtype=float)
    side = np.minimum(np.floor(t), 3).astype(int)
    u = t - side
    a, b, c, d = box.re_lo, box.re_hi, box.im_lo, box.im_hi
    x = np.choose(side, [a + u * (b - a), np.full_like(u, b), b - u * (b - a), np.full_like(u, a)])
    y = np.choose(side, [np.full_like(u, c), c + u * (d - c), np.full_like(u, d), d - u * (d - c)])
    return x + 1j * y


def _winding(fn, box, scale, max_step=None, max_rounds=200):
    """Winding number of fn around the box boundary, or None if unresolved.

    Segments are bisected until every phase increment is below pi/2 and every
    log-modulus increment below LOG_STEP_MAX.  A wrapped increment can still
    hide a full turn when the contour passes close to a zero or a singularity,
    so each segment with a noticeable increment is bisected once more as a
    check; the count is accepted only when no check uncovers a bad step.
    ``max_step(z)`` optionally bounds the length of a segment near ``z``.
    """
    width, height = box.re_hi - box.re_lo, box.im_hi - box.im_lo
    per_side = [max(8, int(math.ceil(s / (0.25 * scale)))) for s in (width, height, width, height)]
    t = np.concatenate([k + np.arange(n) / n for k, n in enumerate(per_side)])
    lm, ph = _as_log_phase(fn(_perimeter_points(box, t)))
    checked = np.zeros(t.shape, dtype=bool)
    min_dt = 1e-13
    for _ in range(max_rounds):
        if not np.all(np.isfinite(lm)):
            return None
        dphi = np.angle(np.exp(1j * (np.roll(ph, -1) - ph)))
        dlog = np.abs(np.roll(lm, -1) - lm)
        t_next = np.roll(t, -1)
        t_next[-1] += 4.0
        long_enough = (t_next - t) > min_dt
        bad = (np.abs(dphi) >= PHASE_STEP_MAX) | (dlog > LOG_STEP_MAX)
        if max_step is not None:
            z = _perimeter_points(box, t)
            z_next = np.roll(z, -1)
            bad |= np.abs(z_next - z) > max_step(0.5 * (z + z_next))
        if np.any(bad):
            split, mark = bad, False
            if not np.any(bad & long_enough):
                return None
        else:
            split = ~checked & ((np.abs(dphi) > PHASE_STEP_MAX / 4) | (dlog > LOG_STEP_MAX / 12))
            mark = True
            if not np.any(split & long_enough):
                total = math.fsum(dphi) / (2.0 * math.pi)
                n = int(round(total))
                if abs(total - n) > 1e-6:
                    raise AccuracyError(f"winding sum {total} is not an integer",
                                        attained=abs(total - n))
                return n
        split &= long_enough
        mids = np.mod(0.5 * (t + t_next)[split], 4.0)
        lm_new, ph_new = _as_log_phase(fn(_perimeter_points(box, mids)))
        checked[split] = mark
        t = np.concatenate([t, mids])
        order = np.argsort(t, kind="stable")
        t = t[order]
        lm = np.concatenate([lm, lm_new])[order]
        ph = np.concatenate([ph, ph_new])[order]
        checked = np.concatenate([checked, np.full(mids.shape, mark)])[order]
    return None


def count_zeros(fn, box: SearchBox, scale: float = 1.0, attempts: int = 3,
                max_step=None) -> int:
    """Number of zeros of ``fn`` inside ``box``, counted with multiplicity.

    ``fn`` maps an array of complex points to values (complex or
    :class:`ScaledValue`).  The phase of ``fn`` is tracked along the boundary
    with adaptive bisection until successive increments stay below pi/2.  If
    tracking cannot settle (a zero sits on or extremely close to the contour)
    the box is enlarged by ``1e-4 * diameter`` and the count retried, at most
    ``attempts`` times.  ``scale`` is the initial sample spacing divided by
    four, in units of the argument, and ``max_step(z)`` (optional) bounds
    the sample spacing near ``z``, e.g. close to a branch point.
    """
    current = box
    for _ in range(attempts + 1):
        try:
            n = _winding(fn, current, scale, max_step)
        except (FloatingPointError, ZeroDivisionError):
            n = None
        if n is not None:
            if n < 0:
                raise ContourError(f"negative winding {n} on {current}: fn has poles inside")
            return n
        current = current.grown(1e-4 * box.diameter)
    raise ContourError(f"could not move the contour of {box} off a zero of fn")


# --- refinement --------------------------------------------------------------

def _complex_step(value, dvalue):
    if isinstance(value, ScaledValue):
        return (value / dvalue).to_complex()
    return complex(value) / complex(dvalue)


def _numeric_derivative(fn, z, h):
    vals = fn(np.array([z + h, z - h, z + 1j * h, z - 1j * h]))
    if isinstance(vals, ScaledValue):
        vals = vals.to_complex()
    vals = np.asarray(vals, dtype=complex)
    return 0.25 * ((vals[0] - vals[1]) / h - 1j * (vals[2] - vals[3]) / h)


def refine_zero(fn, seed: complex, tol: float = 1e-11, dfn=None, max_iter: int = 50,
                order: int | None = None):
    """Newton refinement of a zero of ``fn`` from ``seed``.

    ``dfn(z)`` returns ``(fn(z), fn'(z))``; without it a central difference is
    used.  The order of the zero comes from a winding count on a small square
    around the result unless ``order`` is given.  Higher-order zeros are then
    polished with the modified step ``order * f/f'``.

    Returns ``(zero, order)``.  Raises :class:`NoConvergence` after
    ``max_iter`` iterations without ``|step| < tol * max(1, |z|)``.
    """
    z = complex(seed)

    def f_and_df(w):
        if dfn is not None:
            return dfn(w)
        v = fn(np.array([w]))
        v = v[0] if isinstance(v, ScaledValue) else complex(np.asarray(v)[0])
        return v, _numeric_derivative(fn, w, 1e-6 * max(1.0, abs(w)))

    def newton(z0, mult, iters):
        z = z0
        for _ in range(iters):
            v, dv = f_and_df(z)
            if isinstance(v, ScaledValue) and v.is_zero:
                return z, True
            step = mult * _complex_step(v, dv)
            if not np.isfinite(step):
                raise NoConvergence(f"Newton step undefined at {z}")
            z -= step
            if abs(step) < tol * max(1.0, abs(z)):
                return z, True
        return z, False

    z, ok = newton(z, 1, max_iter)
    if order is None:
        rho = min(1e-6 * max(1.0, abs(z)), 0.25 * abs(z.imag) if z.imag else 1e-6)
        tiny = SearchBox(z.real - rho, z.real + rho, z.imag - rho, z.imag + rho)
        order = count_zeros(fn, tiny, scale=rho)
        if order == 0:
            if ok:
                raise NoConvergence(f"Newton converged to {z}, which is not a zero")
            order = 1
    if order > 1:
        z, ok = newton(z, order, max_iter)
    if not ok:
        raise NoConvergence(f"no convergence from seed {seed} after {max_iter} iterations")
    return z, int(order)


# --- search ------------------------------------------------------------------

@dataclass
class _Found:
    zero: complex
    order: int


def _isolate(fn, dfn, counter, box, count, found, depth=0):
    """Recursively locate the ``count`` zeros inside ``box``.

    A box holding one zero is handed to Newton's method from its center once
    its diameter is below NEWTON_BOX; the result is kept only if it lies in
    the box, otherwise subdivision continues.  Zeros that stay together down
    to CLUSTER_DIAM are reported as one zero of order ``count``.
    """
    if count == 0:
        return
    if count == 1 and box.diameter < NEWTON_BOX:
        try:
            z, _ = refine_zero(fn, box.center, dfn=dfn, order=1)
        except NoConvergence:
            z = None
        if z is not None and z.imag > 0 and box.contains(z, margin=1e-9 * max(1.0, abs(z))):
            found.append(_Found(z, 1))
            return
    if box.diameter < CLUSTER_DIAM * max(1.0, abs(box.center)):
        z, _ = refine_zero(fn, box.center, dfn=dfn, order=count)
        found.append(_Found(z, count))
        return
    for frac in (0.5, 0.5 + 1e-3, 0.5 - 2e-3, 0.5 + 5e-3):
        halves = box.split(frac)
        try:
            counts = [counter(h) for h in halves]
        except ContourError:
            continue
        if sum(counts) == count:
            break
    else:
        raise ContourError(f"subdivision of {box} does not reproduce its count {count}")
    for h, c in zip(halves, counts):
        _isolate(fn, dfn, counter, h, c, found, depth + 1)


def _search_region(fn, dfn, counter, boxes):
    """Zeros of fn inside the union of the given boxes, with per-box counts."""
    found, counts = [], []
    for box in boxes:
        n = counter(box)
        counts.append(n)
        _isolate(fn, dfn, counter, box, n, found)
    return found, counts


def search_boxes(r_max: float, bands=(0.5, 0.75, 0.9)):
    """Boxes covering the half-disk ``|lam| <= r_max``, ``Im lam > 0``.

    Horizontal bands whose half-width is that of the disk at the band's lower
    edge, starting at Im = STRIP_HEIGHT, plus a thin strip down to
    STRIP_FLOOR next to the real axis.
    """
    edges = [STRIP_HEIGHT] + [f * r_max for f in bands if f * r_max > STRIP_HEIGHT] + [r_max]
    boxes = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = math.sqrt(max(r_max ** 2 - lo ** 2, 0.0))
        boxes.append(SearchBox(-half, half, lo, hi))
    boxes.append(SearchBox(-r_max, r_max, STRIP_FLOOR, STRIP_HEIGHT))
    return boxes


def _route_functions(p, l, m, route):
    if route == "factor":
        def fn(z):
            return sheet_function(p, l, m, z)

        def dfn(z):
            v, dv = sheet_function_with_derivative(p, l, m, z)
            return v, dv
        return fn, dfn
    if route == "connection":
        def fn(z):
            return continued_function(p, l, m, z)
        return fn, None
    raise DomainError(f"unknown route {route!r}")


def _box_counter(p, l, fn):
    """count_zeros for the l-th functions, with steps limited near the branch point.

    Close to 0 these functions behave like a power ``lam^{-nu}`` (or a log);
    keeping steps below ``|lam| / (2(nu+2))`` bounds the rotation per step.
    """
    order = p.order(l) + 2

    def max_step(z):
        return np.abs(z) / (2.0 * order)

    def counter(box):
        return count_zeros(fn, box, scale=1.0 / p.R, max_step=max_step)

    return counter


def search_l(p: pw.BallProblem, m: int, r_max: float, l: int, route: str = "factor"):
    """Refined zeros of the l-th sheet function with ``|lam| <= r_max``.

    Returns ``(zeros, orders, counts, residuals)`` where ``counts`` are the
    argument-principle counts of the search boxes (which cover the whole
    rectangle, so may include zeros slightly outside the half-disk).
    """
    fn, dfn = _route_functions(p, l, m, route)
    counter = _box_counter(p, l, fn)
    found, counts = _search_region(fn, dfn, counter, search_boxes(r_max))
    found.sort(key=lambda f: (abs(f.zero), f.zero.real))
    unique = []
    for f in found:
        # a zero on a shared band edge can be picked up by both bands
        if abs(f.zero) <= r_max and not any(abs(f.zero - u.zero) < MERGE_TOL for u in unique):
            unique.append(f)
    zeros = [f.zero for f in unique]
    orders = [f.order for f in unique]
    residuals = []
    for z in zeros:
        g = sheet_function(p, l, m, z)
        residuals.append(float((g.log_modulus - _function_scale(p, l, z)) / math.log(10))
                         if not g.is_zero else -math.inf)
    return zeros, orders, counts, residuals


def _l_task(args):
    p, m, r_max, l = args
    try:
        return l, search_l(p, m, r_max, l), None
    except ReslabError as exc:
        return l, None, f"l={l}: {exc}"


def reflect_record(rec: ResonanceRecord) -> ResonanceRecord:
    """Image of a record under arg -> pi - arg (sheet m -> sheet -m)."""
    loc = LogPoint(rec.location.modulus, math.pi - rec.location.arg)
    return ResonanceRecord(loc, rec.l, rec.zero_order, rec.total_mult, rec.residual, rec.merged)


def _merge(records):
    """Combine records whose locations agree to MERGE_TOL (coincident zeros of different l)."""
    out = []
    for rec in records:
        for i, prev in enumerate(out):
            if (abs(prev.location.modulus - rec.location.modulus) < MERGE_TOL
                    and abs(prev.location.arg - rec.location.arg) * rec.location.modulus < MERGE_TOL):
                out[i] = ResonanceRecord(prev.location, prev.l, prev.zero_order,
                                         prev.total_mult + rec.total_mult,
                                         max(prev.residual, rec.residual), merged=True)
                break
        else:
            out.append(rec)
    return out


def find_resonances_detailed(p: pw.BallProblem, m: int, r_max: float,
                             workers: int | None = None) -> SearchResult:
    """Resonances on sheet ``m`` with modulus at most ``r_max``.

    The l loop stops after two consecutive l whose search boxes are certified
    empty.  Per-l searches are independent and run in batches of ``workers``;
    results are assembled in l order, so the output does not depend on
    scheduling.
    """
    if int(m) != m or m == 0:
        raise DomainError(f"sheet index must be a nonzero integer, got {m}")
    if not r_max > 0:
        raise DomainError("r_max must be > 0")
    if m < 0:
        res = find_resonances_detailed(p, -m, r_max, workers)
        res.records = sorted((reflect_record(r) for r in res.records),
                             key=lambda r: (r.l, r.location.modulus))
        return res
    workers = worker_count() if workers is None else workers
    batch = max(1, workers)
    result = SearchResult([])
    records, empty_run, l = [], 0, 0
    while empty_run < 2:
        tasks = [(p, m, r_max, l + k) for k in range(batch)]
        for li, out, err in ordered_map(_l_task, tasks, workers):
            if empty_run >= 2:
                break
            if err is not None:
                result.partial = True
                result.errors.append(err)
                empty_run = 0
                continue
            zeros, orders, counts, residuals = out
            result.box_counts[li] = counts
            mu = pw.multiplicity(li, p.d)
            for z, k, res in zip(zeros, orders, residuals):
                loc = rotate(LogPoint.from_complex(z), m)
                records.append(ResonanceRecord(loc, li, k, k * mu, res))
            empty_run = empty_run + 1 if sum(counts) == 0 else 0
        l += batch
    records.sort(key=lambda r: (r.l, r.location.modulus))
    result.records = _merge(records)
    return result


def find_resonances(p: pw.BallProblem, m: int, r_max: float) -> list:
    return find_resonances_detailed(p, m, r_max).records


def counting_function(records, r_grid, m: int | None = None) -> CountingTable:
    """n_m(r) = number of records with modulus < r, counted with multiplicity."""
    r_grid = np.asarray(r_grid, dtype=float)
    if r_grid.ndim != 1 or np.any(np.diff(r_grid) <= 0):
        raise DomainError("r_grid must be strictly increasing")
    moduli = np.array([rec.location.modulus for rec in records], dtype=float)
    mults = np.array([rec.total_mult for rec in records], dtype=int)
    counts = np.array([int(mults[moduli < r].sum()) for r in r_grid], dtype=int)
    if m is None:
        m = math.floor(records[0].location.arg / math.pi) if records else 0
    fit = None
    pos = counts > 0
    try:
        fit = detfm.fit_growth(zip(r_grid[pos], counts[pos]))
    except FitError:
        fit = None
    return CountingTable(m, r_grid, counts, fit)


__all__ = [
    "SearchBox", "ResonanceRecord", "CountingTable", "SearchResult",
    "sheet_function", "sheet_function_with_derivative", "continued_function",
    "count_zeros", "refine_zero", "search_l", "search_boxes",
    "find_resonances", "find_resonances_detailed", "counting_function", "reflect_record",
]
