"""Tuple-of-Fraction vector helpers shared across modules."""

from __future__ import annotations

from fractions import Fraction


def vec(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def vzero(n: int) -> tuple:
    return tuple([Fraction(0)] * n)


def vadd(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a) -> tuple:
    return tuple(-x for x in a)


def vscale(c, a) -> tuple:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vdot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def basis_vec(n: int, i: int) -> tuple:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
