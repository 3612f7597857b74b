"""Ratios of the exact diagonal values D(n,n), C(n,n) to their asymptotic forms.

Evaluated with mpmath at 60 significant digits; the exact values come from
:mod:`sequences`.
"""

from __future__ import annotations

import logging
from typing import Literal

import mpmath

from ..exceptions import DomainError
from .sequences import SequenceId, value

logger = logging.getLogger(__name__)

DPS = 60

DForm = Literal["corrected", "printed"]


def _check(n: int) -> None:
    if n < 1:
        raise DomainError(f"asymptotic ratios need n >= 1, got {n}")


def c_diagonal_asymptote(n: int) -> mpmath.mpf:
    """(1/(2 ln2 √(1-ln2))) (1/(2 ln2))^{2n} (2n)!"""
    with mpmath.workdps(DPS):
        ln2 = mpmath.log(2)
        lead = 1 / (2 * ln2 * mpmath.sqrt(1 - ln2))
        return lead * (1 / (2 * ln2)) ** (2 * n) * mpmath.factorial(2 * n)


def d_diagonal_asymptote(n: int, form: DForm = "corrected") -> mpmath.mpf:
    """Asymptotic form of D(n,n).

    ``printed``    √(1/(2π(1-ln2))) (n!)^2 / (ln2)^{2n}
    ``corrected``  half of :func:`c_diagonal_asymptote`

    The printed form is off by a factor that decays like 1/√n.
    """
    with mpmath.workdps(DPS):
        if form == "corrected":
            return c_diagonal_asymptote(n) / 2
        if form == "printed":
            ln2 = mpmath.log(2)
            lead = mpmath.sqrt(1 / (2 * mpmath.pi * (1 - ln2)))
            return lead * mpmath.factorial(n) ** 2 / ln2 ** (2 * n)
        raise DomainError(f"unknown asymptote form {form!r}")


def d_diagonal_ratio(n: int, form: DForm = "corrected") -> mpmath.mpf:
    _check(n)
    with mpmath.workdps(DPS):
        ratio = mpmath.mpf(value(SequenceId.D, n, n)) / d_diagonal_asymptote(n, form)
    logger.debug("D(%d,%d) ratio (%s) = %s", n, n, form, mpmath.nstr(ratio, 10))
    return ratio


def c_diagonal_ratio(n: int) -> mpmath.mpf:
    _check(n)
    with mpmath.workdps(DPS):
        ratio = mpmath.mpf(value(SequenceId.C, n, n)) / c_diagonal_asymptote(n)
    logger.debug("C(%d,%d) ratio = %s", n, n, mpmath.nstr(ratio, 10))
    return ratio


def trend(ratio_fn, small: int = 10, large: int = 40, tolerance: float = 0.1) -> dict:
    """Whether the ratio at *large* lies within *tolerance* of 1 and beats the one at *small*."""
    at_small, at_large = ratio_fn(small), ratio_fn(large)
    return {
        "small": small,
        "large": large,
        "ratio_small": mpmath.nstr(at_small, 15),
        "ratio_large": mpmath.nstr(at_large, 15),
        "within_tolerance": bool(abs(at_large - 1) <= tolerance),
        "improving": bool(abs(at_large - 1) < abs(at_small - 1)),
    }
