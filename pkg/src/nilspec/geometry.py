"""Left-invariant metrics, the Koszul connection, one-form Laplacians.

A metric is a choice of orthonormal frame E_1..E_n given by columns in the
structure basis.  All geometric data is computed in that frame: connection
coefficients from the Koszul formula, and the Laplacian on invariant
one-forms as the exact Gram matrix of the exterior derivative.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import rat_from_str, rat_to_str
from .exactnum.matrix import invert_rational, mat_vec
from .liealg import NilLieAlgebra, Subspace
from .vecops import vec

F0 = Fraction(0)


class Metric:
    """Orthonormal frame for a left-invariant metric."""

    def __init__(self, algebra: NilLieAlgebra, columns):
        self.algebra = algebra
        n = algebra.dim
        cols = [vec(c) for c in columns]
        if len(cols) != n or any(len(c) != n for c in cols):
            raise ValueError("need one frame column per dimension")
        self.columns = cols
        matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
        try:
            self._inv = invert_rational(matrix)
        except ValueError:
            raise ValueError("frame columns are dependent") from None
        self.matrix = matrix

    @staticmethod
    def standard(algebra: NilLieAlgebra) -> "Metric":
        n = algebra.dim
        return Metric(
            algebra,
            [[Fraction(1) if i == j else F0 for i in range(n)] for j in range(n)],
        )

    def to_frame(self, v):
        return tuple(mat_vec(self._inv, v))

    def from_frame(self, coords):
        return tuple(mat_vec(self.matrix, coords))

    def inner(self, u, v) -> Fraction:
        cu, cv = self.to_frame(u), self.to_frame(v)
        return sum((a * b for a, b in zip(cu, cv)), F0)

    def covector_from_frame(self, coeffs):
        """Structure-dual coordinates of sum_i coeffs[i] * eps_i."""
        n = self.algebra.dim
        coeffs = list(coeffs) + [F0] * (n - len(coeffs))
        return tuple(
            sum((Fraction(coeffs[i]) * self._inv[i][m] for i in range(n)), F0)
            for m in range(n)
        )

    def frame_brackets(self):
        """Structure constants in the frame: [E_i, E_j] = sum_k c[i][j][k] E_k."""
        n = self.algebra.dim
        c = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                c[i][j] = self.to_frame(
                    self.algebra.bracket(self.columns[i], self.columns[j])
                )
        return c

    def quotient(self, ideal: Subspace, quot_algebra: NilLieAlgebra, proj):
        """Induced metric on the quotient by a frame-spanned ideal.

        Requires the ideal to be spanned by a subset of the frame columns;
        the remaining columns are then orthonormal for the induced metric.
        """
        inside = [j for j, c in enumerate(self.columns) if ideal.contains(c)]
        if Subspace(self.algebra.dim, [self.columns[j] for j in inside]) != ideal:
            raise ValueError("ideal is not spanned by frame columns")
        cols = [
            tuple(mat_vec(proj, self.columns[j]))
            for j in range(self.algebra.dim)
            if j not in inside
        ]
        return Metric(quot_algebra, cols)

    def to_json(self, algebra_ref: str) -> dict:
        return {
            "algebra_ref": algebra_ref,
            "orthonormal_columns": [[rat_to_str(x) for x in c] for c in self.columns],
        }

    @staticmethod
    def from_json(data: dict, algebra: NilLieAlgebra) -> "Metric":
        cols = [[rat_from_str(x) for x in c] for c in data["orthonormal_columns"]]
        return Metric(algebra, cols)


class ConnectionTable:
    """Levi-Civita coefficients in the frame: nabla_{E_i} E_j = sum_k g[i][j][k] E_k.

    Because covectors are moved by duality, the same table gives
    nabla_{E_i} eps_m = sum_k g[i][m][k] eps_k.
    """

    def __init__(self, metric: Metric):
        self.metric = metric
        n = metric.algebra.dim
        c = metric.frame_brackets()
        half = Fraction(1, 2)
        self.gamma = [
            [
                [half * (c[k][i][j] + c[k][j][i] + c[i][j][k]) for k in range(n)]
                for j in range(n)
            ]
            for i in range(n)
        ]

    def nabla(self, i: int, j: int):
        """Frame coordinates of nabla_{E_i} E_j (equally of nabla_{E_i} eps_j)."""
        return tuple(self.gamma[i][j])

    def check_identities(self) -> bool:
        """Metric compatibility and torsion-freeness, exactly."""
        n = self.metric.algebra.dim
        c = self.metric.frame_brackets()
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.gamma[i][j][k] + self.gamma[i][k][j] != 0:
                        return False
                    if self.gamma[i][j][k] - self.gamma[j][i][k] != c[i][j][k]:
                        return False
        return True


def koszul_connection(algebra: NilLieAlgebra, metric: Metric) -> ConnectionTable:
    if metric.algebra is not algebra:
        raise ValueError("metric belongs to a different algebra")
    return ConnectionTable(metric)


def laplacian_on_invariant_oneforms(algebra: NilLieAlgebra, metric: Metric):
    """Matrix of delta d on invariant one-forms in the dual frame.

    d eps_m (E_i, E_j) = -eps_m([E_i, E_j]); the codifferential of every
    invariant one-form vanishes, so the Laplacian is the Gram matrix of d
    with respect to the orthonormal bases of one- and two-forms.
    """
    if metric.algebra is not algebra:
        raise ValueError("metric belongs to a different algebra")
    n = algebra.dim
    c = metric.frame_brackets()
    out = [[F0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                if c[i][j][l] == 0:
                    continue
                for m in range(n):
                    out[l][m] += c[i][j][l] * c[i][j][m]
    return out


def nabla_chart(algebra: NilLieAlgebra, metric: Metric, directions=None, covectors=None):
    """Chart of nabla_{E_i} eps_m as sparse coefficient lists.

    Returns {(i, m): [(k, coeff), ...]} restricted to the requested frame
    indices; defaults cover the whole frame.
    """
    table = koszul_connection(algebra, metric)
    n = algebra.dim
    directions = list(range(n)) if directions is None else list(directions)
    covectors = list(range(n)) if covectors is None else list(covectors)
    chart = {}
    for i in directions:
        for m in covectors:
            coeffs = table.nabla(i, m)
            chart[(i, m)] = [(k, coeffs[k]) for k in range(n) if coeffs[k] != 0]
    return chart


def format_chart(chart, names) -> str:
    lines = []
    for (i, m), terms in sorted(chart.items()):
        if not terms:
            continue
        expr = " + ".join(f"({rat_to_str(c)}){names[k]}*" for k, c in terms)
        lines.append(f"nabla_{names[i]} {names[m]}* = {expr}")
    return "\n".join(lines)
