"""Bundled example pairs: algebras, lattices, metrics, witnesses, targets.

Five pairs ship as JSON under ``nilspec/data`` (override the directory with
the ``NILSPEC_DATA`` environment variable).  ``load`` returns a fully
validated record; ``table_one`` recomputes the comparison table from
scratch.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .exactnum import rat_from_str
from .exactnum.quadext import QuadExtElem
from .exactnum.poly import UniPoly
from .exactnum.scalars import GaussRat
from .geometry import Metric
from .lattices import LatticeSpec
from .liealg import NilLieAlgebra, Subspace
from .repspec import Pair, SectorFlag, Witness

EXAMPLE_IDS = ("I", "II", "III", "IV", "V")


def _data_text(name: str) -> str:
    override = os.environ.get("NILSPEC_DATA")
    if override:
        with open(os.path.join(override, name), "r", encoding="utf-8") as fh:
            return fh.read()
    return resources.files("nilspec.data").joinpath(name).read_text(encoding="utf-8")


def _parse_matrix(rows):
    return [[rat_from_str(x) for x in row] for row in rows]


def _parse_witness(data: dict) -> Witness:
    if data["kind"] == "composite":
        return Witness(
            kind="composite",
            factors=[_parse_witness(f) for f in data["factors"]],
            name=data.get("name", ""),
        )
    return Witness(
        kind=data["kind"], matrix=_parse_matrix(data["matrix"]), name=data.get("name", "")
    )


def _parse_poly(coeffs) -> UniPoly:
    return UniPoly([GaussRat(rat_from_str(re), rat_from_str(im)) for re, im in coeffs])


def _parse_candidate(data: dict) -> QuadExtElem:
    return QuadExtElem(
        _parse_poly(data["a_coeffs"]),
        _parse_poly(data["b_coeffs"]),
        _parse_poly(data["q_coeffs"]),
    )


@dataclass
class ExampleRecord:
    id: str
    algebra: NilLieAlgebra
    metric: Metric
    spec1: LatticeSpec
    spec2: LatticeSpec
    quotient_witness: Witness
    rep_equivalent_witness: Witness | None
    sector_flag: SectorFlag
    sector_modes: dict
    pairing_map: list | None
    iso_witness: list | None
    eigen_candidate: QuadExtElem | None
    s2_target: Fraction | None
    expected_table: dict

    def pair(self) -> Pair:
        return Pair(self.id, self.algebra, self.metric, self.spec1, self.spec2)


_CACHE: dict = {}


def load(example_id: str) -> ExampleRecord:
    """Load and validate one bundled example pair."""
    if example_id in _CACHE:
        return _CACHE[example_id]
    if example_id not in EXAMPLE_IDS:
        raise KeyError(f"unknown example id: {example_id!r}")
    algebras = json.loads(_data_text("algebras.json"))
    data = json.loads(_data_text(f"example_{example_id}.json"))
    algebra = NilLieAlgebra.from_json(algebras[data["algebra_ref"]])
    report = algebra.validate()
    if not (report.jacobi_ok and report.nilpotent):
        raise ValueError(f"algebra {data['algebra_ref']} fails validation")
    metric = Metric.from_json(data["metric"], algebra)
    spec1 = LatticeSpec.from_json(data["lattices"][0], algebra, name=f"{example_id}.1")
    spec2 = LatticeSpec.from_json(data["lattices"][1], algebra, name=f"{example_id}.2")
    chain = [
        Subspace(algebra.dim, _parse_matrix(vectors))
        for vectors in data["sector_chain"]
    ]
    flag = SectorFlag(chain=chain, labels=list(data["sector_labels"]))
    record = ExampleRecord(
        id=example_id,
        algebra=algebra,
        metric=metric,
        spec1=spec1,
        spec2=spec2,
        quotient_witness=_parse_witness(data["quotient_witness"]),
        rep_equivalent_witness=(
            _parse_witness(data["rep_equivalent_witness"])
            if data.get("rep_equivalent_witness")
            else None
        ),
        sector_flag=flag,
        sector_modes=dict(data["sector_modes"]),
        pairing_map=_parse_matrix(data["pairing_map"]) if data.get("pairing_map") else None,
        iso_witness=_parse_matrix(data["iso_witness"]) if data.get("iso_witness") else None,
        eigen_candidate=(
            _parse_candidate(data["eigen_candidate"]) if data.get("eigen_candidate") else None
        ),
        s2_target=rat_from_str(data["s2_target"]) if data.get("s2_target") else None,
        expected_table=dict(data["expected_table"]),
    )
    _CACHE[example_id] = record
    return record


def table_one(ids=EXAMPLE_IDS, search_budget=None) -> list:
    """Recompute the comparison table for the requested examples.

    Columns: isospectral (certificate), representation equivalence
    (certificate or constructive refutation), same one-form spectrum,
    isomorphic fundamental groups (verified witness when bundled, otherwise
    a bounded search, labeled as evidence only), and the out-of-scope
    length-spectrum columns.
    """
    from .isosearch import SearchBudget, bounded_lattice_isomorphism_search
    from .oneform import distinguish_pair
    from .repspec import certify_rep_equivalent, certify_isospectral

    rows = []
    for example_id in ids:
        record = load(example_id)
        pair = record.pair()
        iso_cert = certify_isospectral(pair, record.quotient_witness)
        cor = certify_rep_equivalent(pair, record.rep_equivalent_witness)
        rep_equivalent = cor.kind == "rep_equivalent" and cor.ok
        if rep_equivalent:
            one_form = "equal (representation equivalent)"
        else:
            report = distinguish_pair(example_id)
            one_form = (
                "distinct (one-form spectra differ)"
                if report["verdict"] == "not_one_form_isospectral"
                else report["verdict"]
            )
        if record.iso_witness is not None:
            ok = record.algebra.is_automorphism(record.iso_witness)
            fwd = all(
                record.spec2.contains(
                    tuple(
                        sum(record.iso_witness[i][j] * g[j] for j in range(record.algebra.dim))
                        for i in range(record.algebra.dim)
                    )
                )
                for g in record.spec1.generators
            )
            isomorphic = "yes (verified witness)" if ok and fwd else "witness failed"
        else:
            from .isosearch import SearchSpaceExceeded

            budget = search_budget or SearchBudget(bound=1, denominators=(1, 2), node_ceiling=8000)
            try:
                outcome = bounded_lattice_isomorphism_search(
                    record.algebra, record.spec1, record.spec2, budget
                )
            except SearchSpaceExceeded:
                outcome = None
            if outcome is None:
                isomorphic = "none found (search truncated at ceiling; evidence only)"
            elif outcome.found is not None:
                isomorphic = "yes (found by search)"
            else:
                isomorphic = f"no isomorphism within bound {budget.bound} (evidence, not proof)"
        rows.append(
            {
                "example": example_id,
                "isospectral": "yes (certified)" if iso_cert.ok else f"FAILED: {iso_cert.failed_check}",
                "rep_equivalent": "yes (certified)" if rep_equivalent else "no (refuted)",
                "same_one_form_spectrum": one_form,
                "isomorphic_fundamental_groups": isomorphic,
                "same_length_spectrum": "out of scope",
                "same_marked_length_spectrum": "out of scope",
            }
        )
    return rows
