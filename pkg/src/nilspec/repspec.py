"""Representation multiplicities and the isospectrality certifiers.

Occurrence and multiplicity of induced representations in the quasi-regular
representation of a nilmanifold are computed exactly: for 2-step quotients
from the skew form tau([.,.]) on a lattice basis (square root of its
determinant), and for central functionals from a Pfaffian normalized by a
Z-basis of the quotient log lattice.  Certificates bundle every verified
claim so a verdict can be replayed check by check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import IntLattice, perfect_square_root, pfaffian
from .exactnum.matrix import bareiss_det, identity, invert_rational, mat_mul, mat_vec, solve_rational
from .exactnum.scalars import rat_to_str
from .geometry import Metric
from .lattices import LatticeSpec, quotient_covolume
from .liealg import (
    DEFAULT_SEED,
    NilLieAlgebra,
    coadjoint_orbit_equal_2step,
    find_inner_witness,
    is_almost_inner_2step,
    is_strictly_nonsingular_sampled,
    sample_fraction,
)
from .vecops import vdot, vec


@dataclass(frozen=True)
class MultiplicityRecord:
    tau: tuple
    occurs: bool
    multiplicity: Fraction
    method: str  # "pesce" | "moore_wolf" | "character"

    def to_json(self) -> dict:
        return {
            "tau": [rat_to_str(t) for t in self.tau],
            "occurs": self.occurs,
            "multiplicity": rat_to_str(self.multiplicity),
            "method": self.method,
        }


@dataclass
class SectorFlag:
    """Increasing chain of central subspaces classifying functionals.

    labels[j] names the sector of functionals vanishing on chain[0..j-1]
    but not on chain[j]; labels[-1] is the everything-vanishes sector.
    """

    chain: list
    labels: list

    def __post_init__(self):
        if len(self.labels) != len(self.chain) + 1:
            raise ValueError("need one label per chain step plus one")
        for a, b in zip(self.chain, self.chain[1:]):
            if not (b.contains_subspace(a) and b.dim > a.dim):
                raise ValueError("chain must be strictly increasing")

    def classify(self, tau) -> str:
        for j, sub in enumerate(self.chain):
            if any(vdot(tau, b) != 0 for b in sub.basis()):
                return self.labels[j]
        return self.labels[-1]


class Pair:
    """A pair of lattices in one group with a common left-invariant metric."""

    def __init__(self, name: str, algebra: NilLieAlgebra, metric: Metric,
                 spec1: LatticeSpec, spec2: LatticeSpec):
        self.name = name
        self.algebra = algebra
        self.metric = metric
        self.spec1 = spec1
        self.spec2 = spec2
        self._quotient = None

    def quotient_data(self):
        """(qalgebra, proj, qmetric, (qspec1, qlat1), (qspec2, qlat2))."""
        if self._quotient is None:
            ideal = self.algebra.derived(self.algebra.step - 1)
            qalg, proj = self.algebra.quotient(ideal)
            qmetric = self.metric.quotient(ideal, qalg, proj)
            q1 = self.spec1.quotient(ideal)
            q2 = self.spec2.quotient(ideal)
            # The quotient specs share one algebra object for map checks.
            qspec1 = LatticeSpec(qalg, q1[0].generators, name=q1[0].name)
            qspec2 = LatticeSpec(qalg, q2[0].generators, name=q2[0].name)
            self._quotient = (qalg, proj, qmetric, (qspec1, q1[1]), (qspec2, q2[1]))
        return self._quotient


# -- multiplicities -------------------------------------------------------------


def radical_matrix(algebra: NilLieAlgebra, tau):
    """Matrix whose kernel is {Y : tau([Y, g]) = 0}."""
    n = algebra.dim
    return [
        [vdot(tau, algebra.basis_bracket(k, j)) for k in range(n)] for j in range(n)
    ]


def pesce_occurrence_and_multiplicity(
    algebra: NilLieAlgebra, log_lattice: IntLattice, tau
) -> MultiplicityRecord:
    """Occurrence and multiplicity for a 2-step lattice quotient.

    Occurrence is integrality of tau on the lattice's intersection with the
    radical of tau([.,.]); the multiplicity is 1 for characters and the
    square root of det tau([u_a, u_b]) over a Z-basis of the complement
    otherwise.
    """
    if algebra.step > 2:
        raise ValueError("occurrence test implemented only for 2-step algebras")
    tau = vec(tau)
    m = radical_matrix(algebra, tau)
    kern_gens, compl_gens = log_lattice.intersect_kernel(m)
    occurs = all(vdot(tau, vec(g)).denominator == 1 for g in kern_gens)
    derived = algebra.derived(1)
    character = all(vdot(tau, b) == 0 for b in derived.basis())
    if character:
        return MultiplicityRecord(
            tau=tuple(tau),
            occurs=occurs,
            multiplicity=Fraction(1 if occurs else 0),
            method="character",
        )
    b = [
        [vdot(tau, algebra.bracket(vec(u), vec(v))) for v in compl_gens]
        for u in compl_gens
    ]
    det = bareiss_det(b)
    mult = perfect_square_root(det)
    if mult != abs(pfaffian(b)):
        raise AssertionError("Pfaffian and square-root multiplicities disagree")
    return MultiplicityRecord(
        tau=tuple(tau),
        occurs=occurs,
        multiplicity=mult if occurs else Fraction(0),
        method="pesce",
    )


def is_square_integrable(algebra: NilLieAlgebra, tau) -> bool:
    """Nondegeneracy of tau([.,.]) on g modulo its center."""
    tau = vec(tau)
    center = algebra.center()
    rows, pivots = (
        [list(r) for r in center.rows],
        [next(i for i, x in enumerate(r) if x) for r in center.rows],
    )
    from .vecops import basis_vec

    compl = [basis_vec(algebra.dim, m) for m in range(algebra.dim) if m not in pivots]
    if not compl:
        return False
    b = [[vdot(tau, algebra.bracket(u, v)) for v in compl] for u in compl]
    return bareiss_det(b) != 0


def moore_wolf_multiplicity(spec: LatticeSpec, tau) -> MultiplicityRecord:
    """Occurrence and multiplicity for a central functional.

    tau must be supported on the center (zero on the complementary standard
    coordinates) and square integrable.  The unit-covolume normalization is
    realized by evaluating the Pfaffian of tau([.,.]) in a Z-basis of the
    quotient-by-center log lattice.
    """
    algebra = spec.algebra
    tau = vec(tau)
    center = algebra.center()
    pivots = [next(i for i, x in enumerate(r) if x) for r in center.rows]
    if any(tau[m] != 0 for m in range(algebra.dim) if m not in pivots):
        raise ValueError("functional is not supported on the center")
    if not is_square_integrable(algebra, tau):
        raise ValueError("functional is not square integrable")
    central = spec.center_intersection()
    occurs = all(
        vdot(tau, vec(g)).denominator == 1 for g in central.lattice.basis_vectors()
    )
    qspec, qlat = spec.quotient(ideal=center)
    # Sections of the projection differ by central vectors, which brackets
    # kill, so any lift computes tau([.,.]) on the quotient.
    _, proj = algebra.quotient(center)
    section, _ = solve_rational(proj, identity(qspec.algebra.dim))
    lifts = [mat_vec(section, v) for v in qlat.basis_vectors()]
    b = [[vdot(tau, algebra.bracket(vec(u), vec(v))) for v in lifts] for u in lifts]
    pf = pfaffian(b)
    return MultiplicityRecord(
        tau=tuple(tau),
        occurs=occurs,
        multiplicity=abs(pf) if occurs else Fraction(0),
        method="moore_wolf",
    )


# -- witnesses ------------------------------------------------------------------


@dataclass
class Witness:
    kind: str  # "almost_inner" | "inner" | "isometry" | "composite"
    matrix: list | None = None
    factors: list = field(default_factory=list)
    name: str = ""

    def total_matrix(self):
        if self.kind != "composite":
            return self.matrix
        total = None
        for f in self.factors:
            m = f.total_matrix()
            total = m if total is None else mat_mul(total, m)
        return total

    def atoms(self):
        if self.kind == "composite":
            out = []
            for f in self.factors:
                out.extend(f.atoms())
            return out
        return [self]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "name": self.name}
        if self.kind == "composite":
            out["factors"] = [f.to_json() for f in self.factors]
        else:
            out["matrix"] = [[rat_to_str(x) for x in row] for row in self.matrix]
        return out


def is_signed_permutation(m) -> bool:
    n = len(m)
    seen_cols = set()
    for j in range(n):
        hits = [i for i in range(n) if m[i][j] != 0]
        if len(hits) != 1 or abs(m[hits[0]][j]) != 1:
            return False
        seen_cols.add(hits[0])
    return len(seen_cols) == n


def frame_matrix(metric: Metric, m):
    """Matrix of the map in the orthonormal frame."""
    return mat_mul(metric._inv, mat_mul(m, metric.matrix))


def is_isometry(metric: Metric, m) -> bool:
    f = frame_matrix(metric, m)
    n = len(f)
    ft = [[f[j][i] for j in range(n)] for i in range(n)]
    return mat_mul(ft, f) == identity(n)


# -- certificates -----------------------------------------------------------------


@dataclass
class Certificate:
    kind: str  # "isospectral" | "rep_equivalent" | "not_rep_equivalent"
    ok: bool
    pair: str
    checked_claims: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    failed_check: str | None = None

    def claim(self, name: str, ok: bool, **details):
        entry = {"name": name, "ok": bool(ok)}
        if details:
            entry["details"] = details
        self.checked_claims.append(entry)
        if not ok and self.failed_check is None:
            self.failed_check = name
        return ok

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "pair": self.pair,
            "failed_check": self.failed_check,
            "checked_claims": self.checked_claims,
            "witnesses": self.witnesses,
        }


def _verify_atom(cert: Certificate, qalg, qmetric, atom: Witness,
                 n_samples: int, seed: int) -> bool:
    label = atom.name or atom.kind
    okauto = qalg.is_automorphism(atom.matrix)
    cert.claim(f"{label}:automorphism", okauto)
    if not okauto:
        return False
    if atom.kind == "isometry":
        ok = is_isometry(qmetric, atom.matrix)
        cert.claim(
            f"{label}:isometry",
            ok,
            signed_permutation=is_signed_permutation(frame_matrix(qmetric, atom.matrix)),
        )
        return ok
    if atom.kind == "inner":
        witness = find_inner_witness(qalg, atom.matrix)
        ok = witness is not None
        cert.claim(
            f"{label}:inner",
            ok,
            conjugator=[rat_to_str(x) for x in witness] if witness else None,
        )
        return ok
    if atom.kind == "almost_inner":
        verdict = is_almost_inner_2step(qalg, atom.matrix, n_samples=n_samples, seed=seed)
        cert.claim(
            f"{label}:almost_inner",
            verdict.ok,
            checked=verdict.checked,
            seed=seed,
            note="verified_on_sample",
        )
        return verdict.ok
    cert.claim(f"{label}:kind", False, unknown_kind=atom.kind)
    return False


def _witness_maps_lattices(cert: Certificate, label, qspec1, qspec2, total) -> bool:
    inv = invert_rational(total)
    fwd = all(qspec2.contains(mat_vec(total, g)) for g in qspec1.generators)
    bwd = all(qspec1.contains(mat_vec(inv, g)) for g in qspec2.generators)
    return cert.claim(f"{label}:maps_lattice_onto", fwd and bwd)


def certify_isospectral(
    pair: Pair, witness: Witness, n_samples: int = 200, seed: int = DEFAULT_SEED
) -> Certificate:
    """Isospectrality certificate for a lattice pair.

    Verifies strict nonsingularity (sampled), equality of center lattices,
    the quotient-isospectrality witness (isometry, almost inner, or a
    composition), covolume agreement, and that the witness carries one
    projected lattice onto the other.
    """
    cert = Certificate(kind="isospectral", ok=False, pair=pair.name)
    cert.witnesses.append(witness.to_json())
    sns = is_strictly_nonsingular_sampled(pair.algebra, n_samples=max(n_samples, 200), seed=seed)
    cert.claim(
        "strictly_nonsingular",
        sns.ok,
        checked=sns.checked,
        seed=seed,
        note="verified_on_sample",
    )
    c1 = pair.spec1.center_intersection()
    c2 = pair.spec2.center_intersection()
    cert.claim("center_lattices_equal", c1.lattice == c2.lattice)
    qalg, _, qmetric, (qspec1, qlat1), (qspec2, qlat2) = pair.quotient_data()
    cert.claim(
        "quotient_covolumes_equal",
        quotient_covolume(qlat1, qmetric.matrix)
        == quotient_covolume(qlat2, qmetric.matrix),
    )
    ok_atoms = all(
        _verify_atom(cert, qalg, qmetric, atom, n_samples, seed)
        for atom in witness.atoms()
    )
    if ok_atoms:
        total = witness.total_matrix()
        _witness_maps_lattices(cert, witness.name or witness.kind, qspec1, qspec2, total)
    cert.ok = all(c["ok"] for c in cert.checked_claims)
    return cert


OCCURRENCE_GRID = (
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(1),
    Fraction(-1),
    Fraction(1, 4),
    Fraction(-1, 4),
    Fraction(2),
    Fraction(-2),
)


def find_occurrence_mismatch(pair: Pair):
    """A functional occurring for exactly one of the projected lattices.

    Deterministic scan over functionals with at most two nonzero dual
    coordinates from a small grid; returns (tau, record1, record2) or None.
    """
    qalg, _, _, (qspec1, qlat1), (qspec2, qlat2) = pair.quotient_data()
    n = qalg.dim

    def candidates():
        for i in range(n):
            for a in OCCURRENCE_GRID:
                t = [Fraction(0)] * n
                t[i] = a
                yield tuple(t)
        for i in range(n):
            for j in range(i + 1, n):
                for a in OCCURRENCE_GRID:
                    for b in OCCURRENCE_GRID:
                        t = [Fraction(0)] * n
                        t[i], t[j] = a, b
                        yield tuple(t)

    for tau in candidates():
        r1 = pesce_occurrence_and_multiplicity(qalg, qlat1, tau)
        r2 = pesce_occurrence_and_multiplicity(qalg, qlat2, tau)
        if r1.occurs != r2.occurs:
            return tau, r1, r2
    return None


def certify_rep_equivalent(
    pair: Pair,
    witness: Witness | None = None,
    n_samples: int = 200,
    seed: int = DEFAULT_SEED,
) -> Certificate:
    """Representation-equivalence verdict for a lattice pair.

    YES requires equal center lattices plus a verified almost-inner (or
    inner) quotient witness mapping one projected lattice onto the other.
    NO is proved constructively by a functional whose occurrence differs
    between the two quotients.
    """
    qalg, _, qmetric, (qspec1, _), (qspec2, _) = pair.quotient_data()
    c1 = pair.spec1.center_intersection()
    c2 = pair.spec2.center_intersection()
    centers_equal = c1.lattice == c2.lattice

    witness_ok = False
    if witness is not None and centers_equal:
        probe = Certificate(kind="rep_equivalent", ok=False, pair=pair.name)
        atoms = witness.atoms()
        kinds_ok = all(a.kind in ("almost_inner", "inner") for a in atoms)
        if kinds_ok and all(
            _verify_atom(probe, qalg, qmetric, a, n_samples, seed) for a in atoms
        ):
            witness_ok = _witness_maps_lattices(
                probe, witness.name or witness.kind, qspec1, qspec2, witness.total_matrix()
            )
        if witness_ok:
            cert = probe
            cert.witnesses.append(witness.to_json())
            cert.claim("center_lattices_equal", True)
            cert.ok = True
            return cert

    mismatch = find_occurrence_mismatch(pair)
    if mismatch is not None:
        tau, r1, r2 = mismatch
        cert = Certificate(kind="not_rep_equivalent", ok=True, pair=pair.name)
        cert.claim(
            "occurrence_mismatch",
            True,
            tau=[rat_to_str(t) for t in tau],
            lattice1=r1.to_json(),
            lattice2=r2.to_json(),
        )
        if not centers_equal:
            cert.claim("center_lattices_differ", True)
        return cert
    if not centers_equal:
        cert = Certificate(kind="not_rep_equivalent", ok=True, pair=pair.name)
        cert.claim("center_lattices_differ", True)
        return cert
    cert = Certificate(kind="rep_equivalent", ok=False, pair=pair.name)
    cert.claim("no_witness_and_no_refutation", False)
    return cert


def orbit_pairing_report(
    pair: Pair,
    sector: SectorFlag,
    sector_label: str,
    phi_full,
    n_samples: int = 30,
    seed: int = DEFAULT_SEED,
) -> dict:
    """Pairing of a sector with its image under an isometric automorphism.

    For sampled functionals in the named sector (nonzero central value kept
    integral so occurrence is possible), checks that tau o phi satisfies the
    same occurrence conditions, lies in a different coadjoint orbit, and has
    the same multiplicity.  This pairs eigenvalue contributions in twos on
    top of even multiplicities, the computable core of the mod-4 statement.
    """
    algebra = pair.algebra
    if not algebra.is_automorphism(phi_full):
        raise ValueError("pairing map is not an automorphism")
    if not is_isometry(pair.metric, phi_full):
        raise ValueError("pairing map is not an isometry")
    qalg, proj, _, (qspec1, qlat1), (qspec2, qlat2) = pair.quotient_data()
    section, _ = solve_rational(proj, identity(qalg.dim))
    phi_q = mat_mul(proj, mat_mul(phi_full, section))
    rng = __import__("random").Random(seed)
    checked = 0
    while checked < n_samples:
        tau_q = _sample_sector_functional(pair, sector, sector_label, rng, qalg, proj)
        if tau_q is None:
            break
        tau_phi = tuple(
            sum(Fraction(tau_q[m]) * phi_q[m][j] for m in range(qalg.dim))
            for j in range(qalg.dim)
        )
        for qlat in (qlat1, qlat2):
            r = pesce_occurrence_and_multiplicity(qalg, qlat, tau_q)
            rp = pesce_occurrence_and_multiplicity(qalg, qlat, tau_phi)
            if r.occurs != rp.occurs or r.multiplicity != rp.multiplicity:
                return {
                    "ok": False,
                    "checked": checked,
                    "failure": {"tau": [rat_to_str(t) for t in tau_q]},
                }
            if r.occurs and r.multiplicity % 2 != 0:
                return {
                    "ok": False,
                    "checked": checked,
                    "failure": {
                        "tau": [rat_to_str(t) for t in tau_q],
                        "reason": "odd multiplicity",
                    },
                }
        if coadjoint_orbit_equal_2step(qalg, tau_q, tau_phi):
            return {
                "ok": False,
                "checked": checked,
                "failure": {
                    "tau": [rat_to_str(t) for t in tau_q],
                    "reason": "paired orbits coincide",
                },
            }
        checked += 1
    return {
        "ok": checked >= min(n_samples, 1),
        "checked": checked,
        "seed": seed,
        "note": "verified_on_sample",
    }


def _lift_through(proj, tau_q, dim):
    """Covector on the full algebra induced by a quotient covector."""
    qdim = len(proj)
    return tuple(
        sum(Fraction(tau_q[a]) * proj[a][m] for a in range(qdim)) for m in range(dim)
    )


def _sample_sector_functional(pair, sector, sector_label, rng, qalg, proj):
    """Random quotient functional whose lift lies in the named sector.

    Vanishing on the deeper chain subspaces is linear, so sample inside that
    solution space, then scale to make the sector's central values integral
    (occurrence-relevant) and nonzero.
    """
    from math import lcm

    idx = sector.labels.index(sector_label)
    if idx >= len(sector.chain):
        return None
    constraints = [list(mat_vec(proj, b)) for b in (sector.chain[idx - 1].basis() if idx > 0 else [])]
    if constraints:
        _, kernel = solve_rational(
            constraints, [Fraction(0)] * len(constraints)
        )
    else:
        kernel = identity(qalg.dim)
    for _ in range(60):
        tau_q = tuple(
            sum(sample_fraction(rng) * Fraction(k[a]) for k in kernel)
            for a in range(qalg.dim)
        )
        lift = _lift_through(proj, tau_q, pair.algebra.dim)
        vals = [vdot(lift, b) for b in sector.chain[idx].basis()]
        if all(v == 0 for v in vals):
            continue
        scale = lcm(*[v.denominator for v in vals]) if vals else 1
        tau_q = tuple(scale * t for t in tau_q)
        if sector.classify(_lift_through(proj, tau_q, pair.algebra.dim)) == sector_label:
            return tau_q
    return None
