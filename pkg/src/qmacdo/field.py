"""Scalar helpers: rational literals, q-Pochhammer symbols, non-specialness.

Scalars themselves are constant elements of a :class:`qmacdo.ring.Ring`; in
symbolic mode they are rational functions of ``q`` and ``t``, in evaluation
mode plain rationals.  Everything here is written against the arithmetic
protocol only, so it works for ``Fraction``, ``MRat`` and ``DiffOp`` alike.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .errors import ConfigError, DegenerateBase


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or an integer literal."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational literal: {text!r}") from exc


def qpochhammer(a, base, k: int):
    """(a; base)_k = (1 - a)(1 - a base) ... (1 - a base^(k-1))."""
    if k < 0:
        raise ValueError("k must be non-negative")
    result = _one_like(a)
    power = _one_like(base)
    for _ in range(k):
        result = result * (1 - a * power)
        power = power * base
    return result


def _one_like(x):
    try:
        return x.ring.one
    except AttributeError:
        return type(x)(1) if isinstance(x, Fraction) else 1


def qbinomial_coefficients(a, base, order: int) -> list:
    """[(a; base)_k / (base; base)_k for k = 0..order].

    These are the Taylor coefficients of (a g; base)_inf / (g; base)_inf in g.
    """
    out = [_one_like(a)]
    num = _one_like(a)
    den = _one_like(base)
    power = _one_like(base)
    for _ in range(order):
        num = num * (1 - a * power)
        power = power * base
        den = den * (1 - power)
        if _is_zero(den):
            raise DegenerateBase("(base; base)_k vanished")
        out.append(num / den)
    return out


def _is_zero(x) -> bool:
    try:
        return x.is_zero()
    except AttributeError:
        return x == 0


def is_non_special(q, t, bound: int) -> bool:
    """True iff q^i t^j != 1 for all 0 <= i, j <= bound with i + j >= 1."""
    q = Fraction(q)
    t = Fraction(t)
    if q == 0 or t == 0:
        raise ValueError("q and t must be nonzero")
    qi = Fraction(1)
    for i in range(bound + 1):
        tj = Fraction(1)
        for j in range(bound + 1):
            if i + j >= 1 and qi * tj == 1:
                return False
            tj *= t
        qi *= q
    return True


def is_root_of_unity_free(x: Fraction) -> bool:
    """Rationals are roots of unity only at +-1."""
    return abs(x.numerator) != abs(x.denominator)


def random_rational(rng: random.Random, lo: int = 2, hi: int = 97) -> Fraction:
    while True:
        num = rng.randint(lo, hi)
        den = rng.randint(lo, hi)
        if num == den:
            continue
        value = Fraction(num, den)
        if rng.random() < 0.5:
            value = -value
        return value


def random_nonspecial_points(rng: random.Random, bound: int) -> Iterator[tuple[Fraction, Fraction]]:
    """Endless stream of (q, t) with numerator/denominator in [2, 97], non-special up to ``bound``."""
    while True:
        q = random_rational(rng)
        t = random_rational(rng)
        if is_non_special(q, t, bound):
            yield q, t
