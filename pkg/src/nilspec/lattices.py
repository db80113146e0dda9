"""Cocompact discrete subgroups via adapted exponential generators.

A lattice is specified by ordered generator logs v_1..v_n: every group
element factors uniquely as exp(t_1 v_1)...exp(t_n v_n), and membership is
integrality of all t_i.  Each generator tail must span an ideal, which makes
the peeling in `malcev_coordinates` triangular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import IntLattice, bareiss_det, rat_from_str, rat_to_str
from .exactnum.matrix import invert_rational, mat_vec
from .liealg import NilLieAlgebra, Subspace
from .vecops import is_zero_vec, vneg, vscale, vzero


class LatticeSpec:
    """Ordered adapted generator logs of a cocompact discrete subgroup."""

    def __init__(self, algebra: NilLieAlgebra, generators, name: str = ""):
        self.algebra = algebra
        self.name = name
        gens = [tuple(Fraction(x) for x in g) for g in generators]
        n = algebra.dim
        if len(gens) != n:
            raise ValueError("need one generator per dimension")
        for g in gens:
            if len(g) != n:
                raise ValueError("generator dimension mismatch")
        self.generators = gens
        # Change of basis: columns are generator logs.
        cols = [[gens[j][i] for j in range(n)] for i in range(n)]
        try:
            self._to_gen_coords = invert_rational(cols)
        except ValueError:
            raise ValueError("generators are linearly dependent") from None
        self._validate_adapted()

    def _validate_adapted(self):
        n = self.algebra.dim
        for i in range(1, n):
            tail = Subspace(n, self.generators[i:])
            if not self.algebra.is_ideal(tail):
                raise ValueError(f"generator tail starting at {i} is not an ideal")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                prod = self.algebra.cbh(self.generators[i], self.generators[j])
                coords = self.malcev_coordinates(prod)
                if any(t.denominator != 1 for t in coords):
                    raise ValueError(
                        "generator products leave the lattice: not an adapted basis"
                    )

    def generator_coordinates(self, v):
        """Linear coordinates of a vector in the generator basis."""
        return tuple(
            sum(
                (self._to_gen_coords[i][k] * Fraction(v[k]) for k in range(1, len(v))),
                self._to_gen_coords[i][0] * Fraction(v[0]),
            )
            for i in range(self.algebra.dim)
        )

    # -- group arithmetic in log coordinates ------------------------------------

    def malcev_coordinates(self, g_log):
        """The unique exponents with exp(g) = exp(t_1 v_1)...exp(t_n v_n)."""
        w = tuple(Fraction(x) for x in g_log)
        coords = []
        for i in range(self.algebra.dim):
            t = sum(
                (self._to_gen_coords[i][k] * w[k] for k in range(1, len(w))),
                self._to_gen_coords[i][0] * w[0],
            )
            coords.append(t)
            if t:
                w = self.algebra.cbh(vneg(vscale(t, self.generators[i])), w)
        if not is_zero_vec(w):
            raise AssertionError("peeling failed to terminate")
        return coords

    def contains(self, g_log) -> bool:
        return all(t.denominator == 1 for t in self.malcev_coordinates(g_log))

    def assemble(self, coords):
        """log of the word exp(t_1 v_1)...exp(t_n v_n)."""
        w = vzero(self.algebra.dim)
        for t, g in zip(coords, self.generators):
            if t:
                w = self.algebra.cbh(w, vscale(t, g))
        return w

    def product(self, a_log, b_log):
        return self.algebra.cbh(a_log, b_log)

    def inverse(self, a_log):
        return vneg(a_log)

    # -- center ------------------------------------------------------------------

    def center_intersection(self) -> "CentralLattice":
        """Lattice log(Gamma cap Z(G)), from the central generator suffix."""
        center = self.algebra.center()
        n = self.algebra.dim
        suffix = n
        while suffix > 0 and center.contains(self.generators[suffix - 1]):
            suffix -= 1
        tail = self.generators[suffix:]
        if Subspace(n, tail) != center:
            raise ValueError("central generator suffix does not span the center")
        lattice = IntLattice(n, tail)
        for g in tail:
            if self.contains(vscale(Fraction(1, 2), g)):
                raise ValueError("central suffix is not maximal in the lattice")
        return CentralLattice(center=center, lattice=lattice)

    # -- quotient ------------------------------------------------------------------

    def quotient(self, ideal: Subspace | None = None):
        """Project to the quotient group; returns (spec, log_lattice).

        Default ideal is the last nonzero term of the lower central series.
        The returned IntLattice is the Z-span of the projected generator
        logs; the projection is only accepted when that span is closed under
        the quotient group law (pairwise products and brackets stay inside),
        so the span really is the log of the projected subgroup.
        """
        if ideal is None:
            ideal = self.algebra.derived(self.algebra.step - 1)
        quot_alg, proj = self.algebra.quotient(ideal)
        projected = [tuple(mat_vec(proj, g)) for g in self.generators]
        surviving = [p for p in projected if not is_zero_vec(p)]
        if len(surviving) != quot_alg.dim:
            raise ValueError("projected generators do not form a basis")
        spec = LatticeSpec(quot_alg, surviving, name=f"{self.name}~" if self.name else "")
        lattice = IntLattice(quot_alg.dim, surviving)
        for a in surviving:
            for b in surviving:
                if not lattice.member(quot_alg.cbh(a, b)):
                    raise ValueError("projected span is not closed under the group law")
                if not lattice.member(quot_alg.bracket(a, b)):
                    raise ValueError("projected span is not bracket-closed")
        return spec, lattice

    def log_cover_lattice(self, subspace: Subspace) -> IntLattice:
        """A lattice containing log(Gamma cap exp S) for an ideal S.

        Valid when the generators outside S stay independent in g/S, so the
        S-generators generate the intersection subgroup.  The Z-span of
        their logs is saturated under products and brackets; the result can
        be strictly larger than the true log set, which is fine for callers
        that re-verify membership, and never smaller.
        """
        if not self.algebra.is_ideal(subspace):
            raise ValueError("subspace is not an ideal")
        inside = [g for g in self.generators if subspace.contains(g)]
        outside = [g for g in self.generators if not subspace.contains(g)]
        if outside:
            quot_alg, proj = self.algebra.quotient(subspace)
            images = [tuple(mat_vec(proj, g)) for g in outside]
            if Subspace(quot_alg.dim, images).dim != len(outside):
                raise ValueError("generators do not split along the subspace")
        lattice = IntLattice(self.algebra.dim, inside)
        for _ in range(6):
            basis = [tuple(b) for b in lattice.basis_vectors()]
            extra = []
            for a in basis:
                for b in basis:
                    for v in (self.algebra.cbh(a, b), self.algebra.bracket(a, b)):
                        if not lattice.member(v):
                            extra.append(v)
            if not extra:
                return lattice
            lattice = IntLattice(self.algebra.dim, basis + extra)
        raise ValueError("log cover did not stabilize")

    # -- serialization ----------------------------------------------------------

    def to_json(self, algebra_ref: str) -> dict:
        return {
            "algebra_ref": algebra_ref,
            "generators": [[rat_to_str(x) for x in g] for g in self.generators],
        }

    @staticmethod
    def from_json(data: dict, algebra: NilLieAlgebra, name: str = "") -> "LatticeSpec":
        gens = [[rat_from_str(x) for x in g] for g in data["generators"]]
        return LatticeSpec(algebra, gens, name=name)


@dataclass
class CentralLattice:
    center: Subspace
    lattice: IntLattice


def quotient_covolume(log_lattice: IntLattice, orthonormal_columns) -> Fraction:
    """Squared covolume: Gram determinant in the orthonormal frame."""
    basis = log_lattice.basis_vectors()
    if len(basis) != log_lattice.ambient:
        raise ValueError("squared covolume requires a full-rank lattice")
    frame_inv = invert_rational(orthonormal_columns)
    coords = [mat_vec(frame_inv, b) for b in basis]
    gram = [
        [
            sum(coords[a][k] * coords[b][k] for k in range(len(coords)))
            for b in range(len(coords))
        ]
        for a in range(len(coords))
    ]
    return bareiss_det(gram)
