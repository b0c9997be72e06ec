import math

import pytest
from hypothesis import given, strategies as st

from reslab.logcover import (Boundary, LogPoint, format_logpoint, parse_logpoint, project,
                             rotate, sheet_of)

moduli = st.floats(1e-6, 1e6)
args = st.floats(-50.0, 50.0)


def test_sheet_of_examples():
    assert sheet_of(LogPoint(1.0, 0.5 * math.pi)) == 0
    assert sheet_of(LogPoint(1.0, 1.5 * math.pi)) == 1
    assert sheet_of(LogPoint(2.0, -0.5 * math.pi)) == -1
    assert sheet_of(LogPoint(1.0, math.pi)) == Boundary(1)
    assert sheet_of(LogPoint(1.0, 0.0)) == Boundary(0)


def test_from_complex_principal_and_shift():
    p = LogPoint.from_complex(1j)
    assert p.modulus == 1.0 and p.arg == pytest.approx(math.pi / 2)
    q = LogPoint.from_complex(1j, sheet_shift=2)
    assert sheet_of(q) == 2
    # the cut is read from above
    assert LogPoint.from_complex(complex(-2.0, -0.0)).arg == pytest.approx(math.pi)


def test_points_two_pi_apart_are_distinct():
    a = LogPoint(1.0, 0.3)
    b = rotate(a, 2)
    assert a != b
    assert project(a) == pytest.approx(project(b))


@given(moduli, args, st.integers(-20, 20))
def test_rotation_shifts_sheet(r, a, k):
    p = LogPoint(r, a)
    s = sheet_of(p)
    q = rotate(p, k)
    if isinstance(s, int) and isinstance(sheet_of(q), int):
        assert sheet_of(q) == s + k


@given(moduli, args, st.integers(-20, 20))
def test_rotate_composes(r, a, k):
    p = LogPoint(r, a)
    assert rotate(rotate(p, k), -k).arg == pytest.approx(p.arg, abs=1e-12)


@given(moduli, args)
def test_format_round_trip(r, a):
    p = LogPoint(r, a)
    assert parse_logpoint(format_logpoint(p)) == p


@pytest.mark.parametrize("text", ["1.0", "a@b", "", "-1@0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_logpoint(text)


@pytest.mark.parametrize("r,a", [(0.0, 1.0), (-1.0, 0.0), (math.inf, 0.0), (1.0, math.nan)])
def test_invalid_points(r, a):
    with pytest.raises(ValueError):
        LogPoint(r, a)


@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False,
                          allow_infinity=False))
def test_project_inverts_lift(z):
    assert abs(project(LogPoint.from_complex(z)) - z) <= 1e-12 * abs(z)
