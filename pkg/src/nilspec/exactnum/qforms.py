"""Exact enumeration of integer vectors on shells of a positive form."""

from __future__ import annotations

from fractions import Fraction


def ldl(gram):
    """G = L^T D L with L unit upper triangular, over Q.

    Requires G symmetric positive definite; raises otherwise.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise ValueError("gram matrix not symmetric")
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        l[i][i] = Fraction(1)
    for i in range(n):
        d[i] = g[i][i] - sum(d[k] * l[k][i] * l[k][i] for k in range(i))
        if d[i] <= 0:
            raise ValueError("gram matrix not positive definite")
        for j in range(i + 1, n):
            l[i][j] = (g[i][j] - sum(d[k] * l[k][i] * l[k][j] for k in range(i))) / d[i]
    return d, l


def _int_range(d: Fraction, c: Fraction, budget: Fraction):
    """All integers x with d*(x+c)^2 <= budget, exactly."""
    if budget < 0:
        return range(0)
    # |x + c| <= sqrt(budget/d); bracket with integer square roots and trim.
    bound = budget / d
    import math

    approx = math.isqrt(bound.numerator * bound.denominator) // bound.denominator + 2
    lo = math.ceil(-approx - c)
    hi = math.floor(approx - c)
    while lo <= hi and d * (Fraction(lo) + c) ** 2 > budget:
        lo += 1
    while hi >= lo and d * (Fraction(hi) + c) ** 2 > budget:
        hi -= 1
    return range(lo, hi + 1)


def enumerate_on_shell(gram, target):
    """All x in Z^n with x^T G x == target, for G positive definite."""
    return [x for x, val in enumerate_up_to(gram, target) if val == target]


def enumerate_up_to(gram, bound):
    """All (x, x^T G x) with value <= bound, G positive definite over Q.

    The zero vector is included.  Recursion over an exact LDL split keeps
    every bound rational.
    """
    n = len(gram)
    bound = Fraction(bound)
    if n == 0:
        return [((), Fraction(0))] if bound >= 0 else []
    d, l = ldl(gram)
    out = []
    x = [0] * n

    def rec(i: int, used: Fraction):
        if i < 0:
            out.append((tuple(x), used))
            return
        c = sum(Fraction(l[i][j]) * x[j] for j in range(i + 1, n))
        for xi in _int_range(d[i], c, bound - used):
            x[i] = xi
            rec(i - 1, used + d[i] * (Fraction(xi) + c) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(0))
    return out
