"""One-form Laplacian matrices on character waves, and the eigenvalue tests.

For a functional tau vanishing on the derived algebra, the associated wave
function F(exp v) = e^{2 pi i tau(v)} spans a one-dimensional invariant
subspace, and the Laplacian on F tensor (invariant one-forms) becomes an
n x n matrix with entries in Q(i)[p], p standing for pi.  Candidate
eigenvalues live in a quadratic extension ring and are accepted or rejected
by exact polynomial vanishing, which is equivalent to the analytic statement
because pi is transcendental.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactnum import IntLattice, UniPoly, enumerate_on_shell, enumerate_up_to
from .exactnum.matrix import bareiss_echelon, mat_vec, rank_and_kernel
from .exactnum.poly import POLY_ONE
from .exactnum.quadext import QuadExtElem
from .exactnum.scalars import GaussRat, rat_to_str
from .geometry import Metric, koszul_connection, laplacian_on_invariant_oneforms
from .liealg import NilLieAlgebra


@dataclass(frozen=True)
class CharacterWave:
    """tau with tau(derived algebra) = 0, in structure-dual coordinates."""

    algebra: NilLieAlgebra
    metric: Metric
    tau: tuple

    def __post_init__(self):
        for b in self.algebra.derived(1).basis():
            val = sum(
                (Fraction(t) * x for t, x in zip(self.tau, b)), Fraction(0)
            )
            if val != 0:
                raise ValueError("functional does not vanish on the derived algebra")

    def frame_values(self):
        """tau(E_j) for each frame direction."""
        return [
            sum((Fraction(t) * x for t, x in zip(self.tau, col)), Fraction(0))
            for col in self.metric.columns
        ]

    def s_squared(self) -> Fraction:
        return sum((v * v for v in self.frame_values()), Fraction(0))


class CharacterMatrix:
    """Matrix of the one-form Laplacian on a character wave's sector."""

    def __init__(self, algebra, metric, tau, entries, s2):
        self.algebra = algebra
        self.metric = metric
        self.tau = tau
        self.entries = entries
        self.s2 = s2
        self._check_shape()

    def _check_shape(self):
        n = self.algebra.dim
        lap = laplacian_on_invariant_oneforms(self.algebra, self.metric)
        for j in range(n):
            for k in range(n):
                e = self.entries[j][k]
                if e != self.entries[k][j].conj():
                    raise AssertionError("assembled matrix is not Hermitian")
                if e.degree() > 2:
                    raise AssertionError("entry degree exceeds two")
                c2 = e.coeff(2)
                want2 = GaussRat(4 * self.s2) if j == k else GaussRat(0)
                if c2 != want2:
                    raise AssertionError("quadratic part is not 4 S^2 I")
                if e.coeff(0) != GaussRat(lap[j][k]):
                    raise AssertionError("constant part is not the invariant Laplacian")
                if e.coeff(1).re != 0:
                    raise AssertionError("linear part is not purely imaginary")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def shifted(self, lam: QuadExtElem):
        """E - lambda I with entries promoted to lambda's extension ring."""
        n = self.dim
        out = []
        for j in range(n):
            row = []
            for k in range(n):
                cell = QuadExtElem(self.entries[j][k], UniPoly(), lam.q, _validated=True)
                if j == k:
                    cell = cell - lam
                row.append(cell)
            out.append(row)
        return out


def assemble_E(algebra: NilLieAlgebra, metric: Metric, wave: CharacterWave) -> CharacterMatrix:
    """Matrix of the Laplacian on F tensor (one-forms), in the dual frame.

    Diagonal: 4 p^2 S^2 plus the invariant-form Laplacian; off-diagonal
    linear terms come from -2 nabla_{grad F}, with grad F = 2 pi i F times
    the frame vector of tau.
    """
    if wave.algebra is not algebra or wave.metric is not metric:
        raise ValueError("wave carries different geometry")
    n = algebra.dim
    t = wave.frame_values()
    s2 = wave.s_squared()
    lap = laplacian_on_invariant_oneforms(algebra, metric)
    gamma = koszul_connection(algebra, metric).gamma
    entries = []
    for l in range(n):
        row = []
        for m in range(n):
            coeff1 = Fraction(0)
            for j in range(n):
                if t[j]:
                    coeff1 += t[j] * gamma[j][m][l]
            coeffs = [GaussRat(lap[l][m]), GaussRat(0, -4 * coeff1)]
            if l == m:
                coeffs.append(GaussRat(4 * s2))
            row.append(UniPoly(coeffs))
        entries.append(row)
    return CharacterMatrix(algebra, metric, wave.tau, entries, s2)


def det_at(matrix: CharacterMatrix, lam: QuadExtElem):
    """Exact det(E - lambda I) plus the eigenvalue verdict."""
    shifted = matrix.shifted(lam)
    det = bareiss_echelon(shifted)[2]
    return det, det.is_zero()


def leading_pi_coefficient(matrix: CharacterMatrix, lam: QuadExtElem) -> Fraction:
    """Coefficient of p^(2n) in the polynomial part of det(E - lambda I).

    For the candidates treated here (lambda = c p^2 + lower order, possibly
    plus s), that is the top coefficient whose vanishing pins S^2.
    """
    det, _ = det_at(matrix, lam)
    top = det.a.coeff(2 * matrix.dim)
    if not top.is_real():
        raise AssertionError("leading coefficient is not real")
    return top.re


def nullity_at(matrix: CharacterMatrix, lam: QuadExtElem):
    """Exact nullity of E - lambda I with a kernel basis over the extension."""
    shifted = matrix.shifted(lam)
    rank, kernel = rank_and_kernel(shifted)
    return matrix.dim - rank, kernel


def numeric_spectrum(matrix: CharacterMatrix, pi_value: float, tolerance: float):
    """Floating-point eigenvalues of the specialized Hermitian matrix.

    A numeric cross-check only; a non-Hermitian specialization beyond the
    tolerance signals an assembly bug.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = matrix.dim
    a = np.empty((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            a[j, k] = matrix.entries[j][k].eval_complex(complex(pi_value))
    if np.max(np.abs(a - a.conj().T)) > tolerance:
        raise AssertionError("specialized matrix is not Hermitian within tolerance")
    return sorted(np.linalg.eigvalsh(a).tolist())


# -- character shells ---------------------------------------------------------


def character_dual_data(algebra: NilLieAlgebra, metric: Metric, log_lattice: IntLattice):
    """Dual lattice of the projected log lattice, with its S^2 Gram form.

    Characters are functionals vanishing on the derived algebra; the ones
    occurring for the lattice are exactly the integer-valued ones on the
    projected logs, i.e. the dual lattice downstairs.
    """
    derived = algebra.derived(1)
    ab_alg, proj = algebra.quotient(derived)
    d = ab_alg.dim
    projected = IntLattice(d, [mat_vec(proj, b) for b in log_lattice.basis_vectors()])
    if projected.rank != d:
        raise ValueError("projected lattice is not full rank")
    dual = projected.dual()
    dual_basis = dual.basis_vectors()
    w = [mat_vec(proj, col) for col in metric.columns]
    gram = [
        [
            sum(
                sum(da[a] * w[j][a] for a in range(d))
                * sum(db[b] * w[j][b] for b in range(d))
                for j in range(algebra.dim)
            )
            for db in dual_basis
        ]
        for da in dual_basis
    ]

    def lift(coeffs):
        # tau(e_m) = taubar(proj e_m).
        taubar = [
            sum(Fraction(c) * db[a] for c, db in zip(coeffs, dual_basis))
            for a in range(d)
        ]
        return tuple(
            sum(
                (taubar[a] * proj[a][m] for a in range(1, d)),
                taubar[0] * proj[0][m],
            )
            for m in range(algebra.dim)
        )

    return dual, gram, lift


def enumerate_shell(algebra, metric, log_lattice, s2_target) -> list:
    """All character functionals of the lattice with S^2 equal to the target."""
    _, gram, lift = character_dual_data(algebra, metric, log_lattice)
    taus = [lift(m) for m in enumerate_on_shell(gram, Fraction(s2_target))]
    return sorted(taus)


def s2_values_up_to(algebra, metric, log_lattice, bound) -> list:
    """Multiset of S^2 over all characters with S^2 <= bound (sorted)."""
    _, gram, _ = character_dual_data(algebra, metric, log_lattice)
    return sorted(val for _, val in enumerate_up_to(gram, Fraction(bound)))


# -- eigenvalue candidates ------------------------------------------------------


def plain_candidate(poly_coeffs) -> QuadExtElem:
    """Candidate a(p) + 0*s; the modulus is irrelevant and kept minimal."""
    return QuadExtElem(UniPoly(poly_coeffs), UniPoly(), UniPoly([0, 1]))


def sqrt_candidate(q_coeffs) -> QuadExtElem:
    """Candidate q(p) + s with s^2 = q(p)."""
    q = UniPoly(q_coeffs)
    return QuadExtElem(q, POLY_ONE, q)


def candidate_to_json(lam: QuadExtElem) -> dict:
    def poly_json(p: UniPoly):
        return [[rat_to_str(c.re), rat_to_str(c.im)] for c in p.coeffs]

    return {
        "a_coeffs": poly_json(lam.a),
        "b_coeffs": poly_json(lam.b),
        "q_coeffs": poly_json(lam.q),
    }


# -- pairwise verdicts ------------------------------------------------------------


def central_dual_generator(spec) -> tuple:
    """Covector supported on the center pairing to 1 with the central lattice.

    Only implemented for rank-one centers, which covers the bundled data.
    """
    central = spec.center_intersection()
    basis = central.lattice.basis_vectors()
    if len(basis) != 1:
        raise ValueError("central dual generator needs a rank-one center")
    b = basis[0]
    pivots = [next(i for i, x in enumerate(r) if x) for r in central.center.rows]
    tau = [Fraction(0)] * spec.algebra.dim
    # Supported on the center, pairing to 1: solve on the pivot coordinates.
    from .exactnum.matrix import solve_rational

    sol = solve_rational([[b[m] for m in pivots]], [Fraction(1)])
    for m, v in zip(pivots, sol[0]):
        tau[m] = v
    return tuple(tau)


def distinguish_pair(example_id: str, n_samples: int = 20, seed: int | None = None) -> dict:
    """One-form comparison report for a bundled example pair.

    Representation-equivalent pairs are reported as equal on one-forms.  For
    the rest, the character sector is compared exactly: shells at the
    example's S^2 target, determinant and nullity at the candidate
    eigenvalue, and the resulting multiplicities; the remaining sectors are
    covered by the representation-level facts configured per example.
    """
    from .liealg import DEFAULT_SEED
    from .registry import load
    from .repspec import (
        certify_rep_equivalent,
        moore_wolf_multiplicity,
        orbit_pairing_report,
        pesce_occurrence_and_multiplicity,
        _sample_sector_functional,
    )

    seed = DEFAULT_SEED if seed is None else seed
    record = load(example_id)
    pair = record.pair()
    out = {"example": example_id}
    cor = certify_rep_equivalent(pair, record.rep_equivalent_witness, seed=seed)
    if cor.kind == "rep_equivalent" and cor.ok:
        out["verdict"] = "one_form_isospectral"
        out["reason"] = "representation equivalent fundamental groups"
        return out
    lam = record.eigen_candidate
    out["lambda"] = candidate_to_json(lam)
    out["s2_target"] = rat_to_str(record.s2_target)

    algebra, metric = record.algebra, record.metric
    full1 = IntLattice(algebra.dim, record.spec1.generators)
    full2 = IntLattice(algebra.dim, record.spec2.generators)
    shells = []
    per_tau = []
    mults = []
    for lat in (full1, full2):
        shell = enumerate_shell(algebra, metric, lat, record.s2_target)
        shells.append([[rat_to_str(t) for t in tau] for tau in shell])
        rows = []
        total = 0
        for tau in shell:
            wave = CharacterWave(algebra, metric, tau)
            e = assemble_E(algebra, metric, wave)
            _, is_eig = det_at(e, lam)
            nullity, _ = nullity_at(e, lam) if is_eig else (0, [])
            rows.append(
                {
                    "tau": [rat_to_str(t) for t in tau],
                    "det_zero": is_eig,
                    "nullity": nullity,
                }
            )
            total += nullity
        per_tau.append(rows)
        mults.append(total)
    out["shells"] = {"lattice1": shells[0], "lattice2": shells[1]}
    out["per_tau"] = {"lattice1": per_tau[0], "lattice2": per_tau[1]}
    out["character_multiplicities"] = {"lattice1": mults[0], "lattice2": mults[1]}

    sector_checks = {}
    qalg, proj, _, (qspec1, qlat1), (qspec2, qlat2) = pair.quotient_data()
    sectors_ok = True
    for label, mode in sorted(record.sector_modes.items()):
        if mode == "moore_wolf":
            gen1 = central_dual_generator(record.spec1)
            ok = True
            for c in (1, -1, 2, -2, 3, -3):
                tau = tuple(Fraction(c) * t for t in gen1)
                r1 = moore_wolf_multiplicity(record.spec1, tau)
                r2 = moore_wolf_multiplicity(record.spec2, tau)
                if (r1.occurs, r1.multiplicity) != (r2.occurs, r2.multiplicity):
                    ok = False
                    break
            sector_checks[label] = {"mode": "moore_wolf", "ok": ok}
        elif mode == "pesce_equal":
            import random as _random

            rng = _random.Random(seed)
            checked = 0
            ok = True
            while checked < n_samples:
                tau_q = _sample_sector_functional(
                    pair, record.sector_flag, label, rng, qalg, proj
                )
                if tau_q is None:
                    ok = False
                    break
                r1 = pesce_occurrence_and_multiplicity(qalg, qlat1, tau_q)
                r2 = pesce_occurrence_and_multiplicity(qalg, qlat2, tau_q)
                if (r1.occurs, r1.multiplicity) != (r2.occurs, r2.multiplicity):
                    ok = False
                    break
                checked += 1
            sector_checks[label] = {
                "mode": "pesce_equal",
                "ok": ok,
                "checked": checked,
                "note": "verified_on_sample",
            }
        elif mode == "pairing":
            report = orbit_pairing_report(
                pair, record.sector_flag, label, record.pairing_map,
                n_samples=n_samples, seed=seed,
            )
            sector_checks[label] = {"mode": "pairing", **report}
        else:
            raise ValueError(f"unknown sector mode {mode!r}")
        sectors_ok = sectors_ok and sector_checks[label]["ok"]
    out["sector_checks"] = sector_checks
    out["seed"] = seed

    if sectors_ok and mults[0] != mults[1]:
        out["verdict"] = "not_one_form_isospectral"
    else:
        out["verdict"] = "inconclusive"
    return out
