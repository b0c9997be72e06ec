"""Comparison of the Bessel evaluators with the frozen high-precision samples."""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from . import bessel

EPS = np.finfo(float).eps
TOL_REGULAR = 1e-12
TOL_TRANSITION = 1e-9
TOL_CONTINUATION = 1e-11


def load_samples() -> dict:
    text = resources.files("reslab").joinpath("data/bessel_oracle.json").read_text()
    return json.loads(text)


def relative_error(value: bessel.ScaledValue, log_modulus: float, phase: float) -> float:
    """|value/ref - 1| computed from log-modulus and phase differences."""
    dlm = float(value.log_modulus) - log_modulus
    dph = float(bessel.wrap_phase(float(value.phase) - phase))
    if math.isinf(log_modulus) and float(value.log_modulus) == log_modulus:
        return 0.0
    return abs(np.expm1(complex(dlm, dph)))


def allowed_error(tol: float, log_modulus: float) -> float:
    """Tolerance widened to the representation floor of a log-scaled value.

    A double holds ``log|C|`` only to ``eps*|log|C||`` in absolute terms, which
    is a relative error of the same size in ``C`` itself.
    """
    return max(tol, 4 * EPS * abs(log_modulus))


def _evaluate(rec):
    z = complex(rec["re"], rec["im"])
    if rec.get("m") is not None:
        return bessel.continue_H1(rec["nu"], z, rec["m"])
    if rec["kind"] in bessel.MOD_KINDS:
        return bessel.eval_mod(rec["kind"], rec["nu"], z)
    return bessel.eval_cyl(rec["kind"], rec["nu"], z)


def compare(samples=None) -> dict:
    """Per-regime worst errors, measured against the widened tolerances.

    Returns ``{regime: {"n", "max_rel_error", "worst_ratio", "tol"}}`` where
    ``worst_ratio`` is the largest error/allowed ratio (pass iff <= 1).
    """
    samples = samples or load_samples()
    out = {}
    rows = [(r, TOL_TRANSITION if r["transition"] else TOL_REGULAR) for r in samples["points"]]
    rows += [(r, TOL_CONTINUATION) for r in samples["continuation"]]
    for rec, tol in rows:
        key = "transition" if rec["transition"] and "m" not in rec else rec["regime"]
        err = relative_error(_evaluate(rec), rec["log_modulus"], rec["phase"])
        ratio = err / allowed_error(tol, rec["log_modulus"])
        slot = out.setdefault(key, {"n": 0, "max_rel_error": 0.0, "worst_ratio": 0.0, "tol": tol})
        slot["n"] += 1
        slot["max_rel_error"] = max(slot["max_rel_error"], err)
        slot["worst_ratio"] = max(slot["worst_ratio"], ratio)
    return out
