import mpmath
import pytest

from polybern.app.exceptions import DomainError
from polybern.app.services.asymptotics import (
    c_diagonal_asymptote,
    c_diagonal_ratio,
    d_diagonal_asymptote,
    d_diagonal_ratio,
    trend,
)


def test_c_ratio_approaches_one():
    assert abs(c_diagonal_ratio(40) - 1) < 0.02
    assert abs(c_diagonal_ratio(40) - 1) < abs(c_diagonal_ratio(10) - 1)


def test_corrected_d_ratio_approaches_one():
    assert abs(d_diagonal_ratio(40) - 1) < 0.02
    assert abs(d_diagonal_ratio(40) - 1) < abs(d_diagonal_ratio(10) - 1)


def test_printed_d_form_drifts_away():
    small, large = d_diagonal_ratio(10, "printed"), d_diagonal_ratio(40, "printed")
    assert large < small < 0.2
    # the drift goes like 1/sqrt(n)
    assert abs(large * mpmath.sqrt(40) - small * mpmath.sqrt(10)) < 0.05


def test_corrected_d_is_half_of_c():
    assert mpmath.almosteq(d_diagonal_asymptote(12) * 2, c_diagonal_asymptote(12))


def test_trend_summary():
    summary = trend(c_diagonal_ratio, small=10, large=30)
    assert summary["within_tolerance"] is True
    assert summary["improving"] is True
    assert summary["ratio_large"].startswith("0.9")


def test_trend_flags_printed_form():
    summary = trend(lambda n: d_diagonal_ratio(n, "printed"), small=10, large=30)
    assert summary["within_tolerance"] is False


def test_domain_errors():
    with pytest.raises(DomainError):
        d_diagonal_ratio(0)
    with pytest.raises(DomainError):
        d_diagonal_asymptote(5, "guess")
