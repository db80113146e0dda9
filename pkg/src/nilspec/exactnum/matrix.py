"""Exact dense matrix routines over Q, Q(i), Q(i)[p] and quadratic extensions.

Matrices are lists of row lists.  Elements only need ring arithmetic through
operators plus an exact-division hook; fraction-free (Bareiss) elimination
keeps every intermediate value inside the ring.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly
from .quadext import QuadExtElem
from .scalars import GaussRat


def _exact_div(x, y):
    if isinstance(x, (UniPoly, QuadExtElem)):
        return x.exact_div(y)
    return x / y


def _is_zero(x) -> bool:
    if isinstance(x, (GaussRat, UniPoly, QuadExtElem)):
        return x.is_zero()
    return x == 0


def _one_like(x):
    if isinstance(x, GaussRat):
        return GaussRat(1)
    if isinstance(x, UniPoly):
        return UniPoly.const(1)
    if isinstance(x, QuadExtElem):
        return x.with_parts(UniPoly.const(1), UniPoly())
    return Fraction(1)


def dims(m):
    return len(m), len(m[0]) if m else 0


def identity(n: int, one=Fraction(1)):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise ValueError("dimension mismatch in matrix product")
    return [
        [sum((a[i][k] * b[k][j] for k in range(1, ca)), a[i][0] * b[0][j]) for j in range(cb)]
        for i in range(ra)
    ]


def mat_vec(a, v):
    return [sum((a[i][k] * v[k] for k in range(1, len(v))), a[i][0] * v[0]) for i in range(len(a))]


def transpose(m):
    return [list(col) for col in zip(*m)]


def bareiss_echelon(m):
    """Fraction-free elimination with column pivoting.

    Returns (rows, pivot_cols, det) where det is the exact determinant for
    square input (None otherwise).  All divisions are exact by the Sylvester
    identity, over any integral domain.
    """
    rows = [list(r) for r in m]
    nr, nc = dims(rows)
    if nr == 0 or nc == 0:
        return rows, [], _one_like(Fraction(1)) if nr == nc else None
    prev = _one_like(rows[0][0])
    pivot_cols = []
    sign_flip = False
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if not _is_zero(rows[i][c])), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            sign_flip = not sign_flip
        piv = rows[r][c]
        for i in range(r + 1, nr):
            head = rows[i][c]
            for j in range(c, nc):
                rows[i][j] = _exact_div(piv * rows[i][j] - head * rows[r][j], prev)
        prev = piv
        pivot_cols.append(c)
        r += 1
    det = None
    if nr == nc:
        if len(pivot_cols) < nr:
            det = prev - prev
        else:
            det = rows[nr - 1][nc - 1]
            if sign_flip:
                det = -det
    return rows, pivot_cols, det


def bareiss_det(m):
    nr, nc = dims(m)
    if nr != nc:
        raise ValueError("determinant of a non-square matrix")
    if nr == 0:
        return Fraction(1)
    return bareiss_echelon(m)[2]


def cofactor_det(m):
    """Expansion by minors; reference oracle for small matrices."""
    nr, nc = dims(m)
    if nr != nc:
        raise ValueError("determinant of a non-square matrix")
    if nr == 0:
        return Fraction(1)
    if nr == 1:
        return m[0][0]
    acc = None
    for j in range(nc):
        if _is_zero(m[0][j]):
            continue
        sub = [[row[k] for k in range(nc) if k != j] for row in m[1:]]
        term = m[0][j] * cofactor_det(sub)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return m[0][0] - m[0][0]
    return acc


def rank_and_kernel(m):
    """Exact rank and a right-kernel basis over the fraction field.

    Kernel vectors are returned with ring entries (denominators cleared by
    staying fraction-free: free variable set to the pivot product).
    """
    rows, pivot_cols, _ = bareiss_echelon(m)
    nr, nc = dims(m)
    rank = len(pivot_cols)
    free_cols = [c for c in range(nc) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        # Back-substitute with the free coordinate at an exact ring value.
        sol = [None] * nc
        one = _one_like(rows[0][0]) if rows and rows[0] else Fraction(1)
        zero = one - one
        for c in free_cols:
            sol[c] = one if c == fc else zero
        denom = one
        for r in range(rank - 1, -1, -1):
            pc = pivot_cols[r]
            rhs = zero
            for c in range(pc + 1, nc):
                if not _is_zero(rows[r][c]) and not _is_zero(sol[c]):
                    rhs = rhs + rows[r][c] * sol[c]
            piv = rows[r][pc]
            # sol[pc]/denom = -rhs / (piv * denom): rescale everything by piv.
            for c in range(nc):
                if sol[c] is not None and c != pc:
                    sol[c] = sol[c] * piv
            sol[pc] = -rhs
            denom = denom * piv
        basis.append([sol[c] if sol[c] is not None else zero for c in range(nc)])
    return rank, basis


def pfaffian(m):
    """Pfaffian of an even-dimensional skew-symmetric matrix.

    Recursive expansion along the first row; the standard symplectic block
    diag[[0,1],[-1,0]]^n has Pfaffian +1 under this convention.
    """
    nr, nc = dims(m)
    if nr != nc:
        raise ValueError("pfaffian of a non-square matrix")
    for i in range(nr):
        if not _is_zero(m[i][i]):
            raise ValueError("pfaffian requires zero diagonal")
        for j in range(i + 1, nr):
            if not _is_zero(m[i][j] + m[j][i]):
                raise ValueError("pfaffian requires a skew-symmetric matrix")
    if nr % 2:
        raise ValueError("pfaffian of an odd-dimensional matrix")
    return _pf_rec(m)


def _pf_rec(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 2:
        return m[0][1]
    acc = None
    for j in range(1, n):
        if _is_zero(m[0][j]):
            continue
        keep = [k for k in range(1, n) if k != j]
        sub = [[m[r][c] for c in keep] for r in keep]
        term = m[0][j] * _pf_rec(sub)
        if j % 2 == 0:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return m[0][0] - m[0][0]
    return acc


def rref(m):
    """Reduced row echelon form over the fraction field (Fraction entries).

    Returns (rows, pivot_cols); rows are canonical for the row space.
    """
    rows = [[Fraction(x) for x in r] for r in m]
    nr, nc = dims(rows)
    pivot_cols = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    return rows[: len(pivot_cols)], pivot_cols


def solve_rational(a, b):
    """One solution x of a x = b over Q, or None if inconsistent.

    b may be a vector or a matrix of stacked right-hand-side columns.
    Returns (particular, kernel_basis).
    """
    vec = not isinstance(b[0], (list, tuple))
    rhs = [[x] for x in b] if vec else [list(r) for r in b]
    nr, nc = dims(a)
    aug = [list(map(Fraction, a[i])) + list(map(Fraction, rhs[i])) for i in range(nr)]
    rows, pivots = rref(aug)
    for i in range(len(rows)):
        if pivots[i] >= nc:
            return None
    nrhs = len(rhs[0])
    part = [[Fraction(0)] * nrhs for _ in range(nc)]
    for i, pc in enumerate(pivots):
        for j in range(nrhs):
            part[pc][j] = rows[i][nc + j]
    # Rows of the rref beyond the pivot count are zero; consistency was the
    # pivot-in-rhs check above.
    kernel = []
    free = [c for c in range(nc) if c not in pivots]
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        kernel.append(v)
    if vec:
        return [row[0] for row in part], kernel
    return part, kernel


def invert_rational(m):
    n, nc = dims(m)
    if n != nc:
        raise ValueError("inverse of a non-square matrix")
    sol = solve_rational(m, identity(n))
    if sol is None:
        raise ValueError("singular matrix")
    part, kernel = sol
    if kernel:
        raise ValueError("singular matrix")
    return part
