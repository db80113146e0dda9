"""Integer and rational lattices: Hermite/Smith normal forms, duals, kernels.

Lattices are stored as generator rows in an ambient Q^n.  The canonical form
is a row-style Hermite normal form of the denominator-cleared matrix, so
lattice equality is literal equality of canonical data.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .matrix import invert_rational, transpose


def _xgcd(a: int, b: int):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf(rows):
    """Row-style Hermite normal form of an integer matrix.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into [0, pivot).  The result is the unique canonical basis
    of the row lattice.
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis: list[list[int]] = []
    pivots: list[int] = []
    for vec in work:
        vec = vec.copy()
        for j in range(ncols):
            if vec[j] == 0:
                continue
            if j not in pivots:
                pos = next((i for i, p in enumerate(pivots) if p > j), len(pivots))
                basis.insert(pos, vec)
                pivots.insert(pos, j)
                break
            row = basis[pivots.index(j)]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                for k in range(j, ncols):
                    vec[k] -= q * row[k]
            else:
                # Both vectors vanish before column j, so the gcd combination
                # keeps the echelon shape.
                g, x, y = _xgcd(a, b)
                ag, bg = a // g, b // g
                for k in range(j, ncols):
                    ra, rb = row[k], vec[k]
                    row[k] = x * ra + y * rb
                    vec[k] = -bg * ra + ag * rb
    # Positive pivots, then reduce above.
    for row in basis:
        j = next(i for i, x in enumerate(row) if x)
        if row[j] < 0:
            for k in range(ncols):
                row[k] = -row[k]
    for i in range(len(basis)):
        j = next(k for k, x in enumerate(basis[i]) if x)
        p = basis[i][j]
        for r in range(i):
            q = basis[r][j] // p
            if q:
                for k in range(ncols):
                    basis[r][k] -= q * basis[i][k]
    return basis


def snf(mat):
    """Smith normal form with transforms: returns (s, u, v) with u*m*v = s.

    s is diagonal (as a rectangular matrix) with s[i] | s[i+1]; u and v are
    unimodular.
    """
    m = [list(map(int, r)) for r in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, f):
        for k in range(nc):
            m[dst][k] += f * m[src][k]
        for k in range(nr):
            u[dst][k] += f * u[src][k]

    def addmul_col(dst, src, f):
        for row in m:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nr, nc):
        # Find a nonzero entry to pivot.
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j]:
                    if piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    addmul_row(i, t, -q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    addmul_col(j, t, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # Divisibility fix-up: fold any non-multiple into the pivot.
        stray = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % m[t][t]:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            addmul_row(t, stray, 1)
            continue
        if m[t][t] < 0:
            addmul_row(t, t, -2)
        t += 1
    return m, u, v


def smith_diagonal(mat):
    s, _, _ = snf(mat)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


def integer_kernel(mat):
    """Z-basis of {x in Z^n : mat. x = 0} for an integer matrix."""
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    if nr == 0:
        return [[int(i == j) for j in range(nc)] for i in range(nc)]
    s, _, v = snf(mat)
    rank = sum(1 for i in range(min(nr, nc)) if s[i][i])
    return [[v[r][j] for r in range(nc)] for j in range(rank, nc)]


def solve_integer(mat, rhs):
    """One x in Z^n with mat.x = rhs, or None.  rhs entries are ints."""
    nr = len(mat)
    nc = len(mat[0]) if nr else 0
    if nr == 0:
        return [0] * nc
    s, u, v = snf(mat)
    w = [sum(u[i][k] * rhs[k] for k in range(nr)) for i in range(nr)]
    y = [0] * nc
    for i in range(min(nr, nc)):
        if s[i][i]:
            if w[i] % s[i][i]:
                return None
            y[i] = w[i] // s[i][i]
        elif w[i]:
            return None
    for i in range(min(nr, nc), nr):
        if w[i]:
            return None
    return [sum(v[i][k] * y[k] for k in range(nc)) for i in range(nc)]


class IntLattice:
    """Finitely generated subgroup of Q^n, canonicalized via HNF."""

    __slots__ = ("ambient", "den", "rows")

    def __init__(self, ambient: int, generators):
        self.ambient = ambient
        gens = [[Fraction(x) for x in g] for g in generators]
        for g in gens:
            if len(g) != ambient:
                raise ValueError("generator dimension mismatch")
        den = 1
        for g in gens:
            for x in g:
                den = lcm(den, x.denominator)
        scaled = [[int(x * den) for x in g] for g in gens]
        basis = hnf(scaled)
        # Normalize the scale so the representation is unique.
        g_all = den
        for row in basis:
            for x in row:
                g_all = gcd(g_all, x)
        if basis and g_all > 1:
            den //= g_all
            basis = [[x // g_all for x in row] for row in basis]
        self.den = den
        self.rows = tuple(tuple(r) for r in basis)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis_vectors(self):
        return [[Fraction(x, self.den) for x in row] for row in self.rows]

    def member(self, v) -> bool:
        vec = [Fraction(x) * self.den for x in v]
        if any(x.denominator != 1 for x in vec):
            return False
        vec = [int(x) for x in vec]
        for row in self.rows:
            j = next(i for i, x in enumerate(row) if x)
            if vec[j] == 0:
                continue
            if vec[j] % row[j]:
                return False
            q = vec[j] // row[j]
            vec = [a - q * b for a, b in zip(vec, row)]
        return not any(vec)

    def coordinates(self, v):
        """Integer coordinates of v in the canonical basis, or None."""
        vec = [Fraction(x) * self.den for x in v]
        if any(x.denominator != 1 for x in vec):
            return None
        vec = [int(x) for x in vec]
        coords = []
        for row in self.rows:
            j = next(i for i, x in enumerate(row) if x)
            if vec[j] % row[j]:
                return None
            q = vec[j] // row[j]
            coords.append(q)
            vec = [a - q * b for a, b in zip(vec, row)]
        if any(vec):
            return None
        return coords

    def __eq__(self, other):
        if not isinstance(other, IntLattice):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.den == other.den
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient, self.den, self.rows))

    def dual(self) -> "IntLattice":
        """Dual lattice of a full-rank lattice: basis rows of (B^T)^{-1}."""
        if self.rank != self.ambient:
            raise ValueError("dual lattice requires full rank")
        binv = invert_rational([list(r) for r in self.basis_vectors()])
        return IntLattice(self.ambient, transpose(binv))

    def intersect_kernel(self, mat):
        """Sublattice {v in L : mat.v = 0} plus a complement basis.

        Returns (kernel_gens, complement_gens) as vectors in Q^n; the
        complement generators map to a Z-basis of L / (L cap ker mat).
        """
        basis = self.basis_vectors()
        if not basis:
            return [], []
        # mat acts on lattice coordinates: rows of (mat . basis^T).
        den = 1
        prod = []
        for mrow in mat:
            row = [
                sum(Fraction(mrow[k]) * basis[j][k] for k in range(self.ambient))
                for j in range(len(basis))
            ]
            prod.append(row)
            for x in row:
                den = lcm(den, x.denominator)
        scaled = [[int(x * den) for x in row] for row in prod]
        nr = len(scaled)
        ncoord = len(basis)
        s, _, v = snf(scaled) if nr else ([], [], [[int(i == j) for j in range(ncoord)] for i in range(ncoord)])
        if nr:
            rank = sum(1 for i in range(min(nr, ncoord)) if s[i][i])
        else:
            rank = 0
        cols = [[v[r][j] for r in range(ncoord)] for j in range(ncoord)]
        kernel_coords = cols[rank:]
        compl_coords = cols[:rank]

        def assemble(coords):
            return [
                [
                    sum(Fraction(c[j]) * basis[j][k] for j in range(ncoord))
                    for k in range(self.ambient)
                ]
                for c in coords
            ]

        return assemble(kernel_coords), assemble(compl_coords)

    def __repr__(self):
        return f"IntLattice(dim={self.ambient}, rank={self.rank}, den={self.den})"


def lattice_equal(a: IntLattice, b: IntLattice) -> bool:
    return a == b
