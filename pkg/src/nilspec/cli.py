"""Command-line interface.

Subcommands: validate, certify, multiplicities, distinguish, table1,
search-iso.  Exit code 0 on success, 1 on a valid-but-negative verdict
(for example "not representation equivalent"), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exactnum.quadext import ModulusMismatch
from .exactnum.scalars import rat_to_str
from .geometry import Metric
from .lattices import LatticeSpec
from .liealg import DEFAULT_SEED, NilLieAlgebra
from .registry import EXAMPLE_IDS, load, table_one


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_record(example_id: str):
    try:
        return load(example_id)
    except KeyError as exc:
        raise InputError(str(exc)) from exc


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_validate(args) -> int:
    data = _read_json(args.target)
    algebra = NilLieAlgebra.from_json(data)
    report = algebra.validate()
    payload = {
        "jacobi_ok": report.jacobi_ok,
        "jacobi_violations": report.jacobi_violations,
        "nilpotent": report.nilpotent,
        "step": report.step,
    }
    lines = []
    if report.jacobi_ok and report.nilpotent:
        lines.append(f"ok: nilpotent of step {report.step}, dim {algebra.dim}")
        series = [s.dim for s in report.series]
        lines.append(f"lower central series dims: {series}")
        _emit(args, payload, lines)
        return 0
    for triple in report.jacobi_violations:
        lines.append(f"Jacobi violation at basis triple {triple}")
    if not report.nilpotent:
        lines.append("lower central series does not terminate")
    _emit(args, payload, lines)
    return 2


def _witness_from_json(data):
    from .registry import _parse_witness

    return _parse_witness(data)


def cmd_certify(args) -> int:
    from .repspec import Pair, certify_rep_equivalent, certify_isospectral

    if args.replay:
        saved = _read_json(args.replay)
        record = _load_record(saved["pair"].split(".")[0] if "." in saved["pair"] else saved["pair"])
        pair = record.pair()
        if saved["kind"] == "isospectral":
            fresh = certify_isospectral(pair, record.quotient_witness, seed=args.seed)
        else:
            fresh = certify_rep_equivalent(pair, record.rep_equivalent_witness, seed=args.seed)
        same = fresh.to_json() == saved
        payload = {"replay_matches": same, "certificate": fresh.to_json()}
        _emit(args, payload, [f"replay: {'identical verdicts' if same else 'MISMATCH'}"])
        return 0 if same else 1

    if args.files:
        alg = NilLieAlgebra.from_json(_read_json(args.files[0]))
        metric = Metric.from_json(_read_json(args.files[1]), alg)
        spec1 = LatticeSpec.from_json(_read_json(args.files[2]), alg, name="file.1")
        spec2 = LatticeSpec.from_json(_read_json(args.files[3]), alg, name="file.2")
        witness = _witness_from_json(_read_json(args.witness)) if args.witness else None
        from .repspec import Pair as PairCls

        pair = PairCls("files", alg, metric, spec1, spec2)
        iso_cert = certify_isospectral(pair, witness, n_samples=args.samples, seed=args.seed) if witness else None
        cor = certify_rep_equivalent(pair, witness, n_samples=args.samples, seed=args.seed)
    else:
        record = _load_record(args.target)
        pair = record.pair()
        iso_cert = certify_isospectral(
            pair, record.quotient_witness, n_samples=args.samples, seed=args.seed
        )
        cor = certify_rep_equivalent(
            pair, record.rep_equivalent_witness, n_samples=args.samples, seed=args.seed
        )
    payload = {
        "isospectral": iso_cert.to_json() if iso_cert else None,
        "rep_equivalence": cor.to_json(),
    }
    lines = []
    if iso_cert:
        lines.append(
            f"isospectral: {'yes (certified)' if iso_cert.ok else 'NOT CERTIFIED: ' + str(iso_cert.failed_check)}"
        )
    rep_yes = cor.kind == "rep_equivalent" and cor.ok
    if rep_yes:
        lines.append("representation equivalent: yes (certified)")
    elif cor.kind == "not_rep_equivalent":
        tau = cor.checked_claims[0].get("details", {}).get("tau")
        lines.append(f"representation equivalent: no (occurrence mismatch at tau = {tau})")
    else:
        lines.append("representation equivalence: undetermined")
    _emit(args, payload, lines)
    if iso_cert and not iso_cert.ok:
        return 1
    return 0 if rep_yes else 1


def cmd_multiplicities(args) -> int:
    from .oneform import central_dual_generator, enumerate_shell
    from .exactnum import IntLattice
    from .repspec import moore_wolf_multiplicity, pesce_occurrence_and_multiplicity

    record = _load_record(args.target)
    pair = record.pair()
    flag = record.sector_flag
    if args.sector not in flag.labels:
        raise InputError(
            f"unknown sector {args.sector!r}; choose from {flag.labels}"
        )
    rows = []
    idx = flag.labels.index(args.sector)
    if idx == 0:
        gen = central_dual_generator(record.spec1)
        for c in range(-args.range, args.range + 1):
            if c == 0:
                continue
            tau = tuple(Fraction(c) * t for t in gen)
            r1 = moore_wolf_multiplicity(record.spec1, tau)
            r2 = moore_wolf_multiplicity(record.spec2, tau)
            rows.append({"tau": r1.to_json()["tau"], "lattice1": r1.to_json(), "lattice2": r2.to_json()})
    elif idx < len(flag.chain):
        qalg, proj, _, (_, qlat1), (_, qlat2) = pair.quotient_data()
        # Dual direction of the sector's own central coordinate.
        fresh = flag.chain[idx].basis()
        news = [b for b in fresh if not flag.chain[idx - 1].contains(b)] if idx else fresh
        from .exactnum.matrix import mat_vec
        from .vecops import vdot

        direction = mat_vec(proj, news[0])
        for c in range(-args.range, args.range + 1):
            if c == 0:
                continue
            tau = tuple(
                Fraction(c) if direction[m] != 0 else Fraction(0)
                for m in range(qalg.dim)
            )
            r1 = pesce_occurrence_and_multiplicity(qalg, qlat1, tau)
            r2 = pesce_occurrence_and_multiplicity(qalg, qlat2, tau)
            rows.append({"tau": r1.to_json()["tau"], "lattice1": r1.to_json(), "lattice2": r2.to_json()})
    else:
        from .exactnum import IntLattice as IL

        for side, spec in (("lattice1", record.spec1), ("lattice2", record.spec2)):
            lat = IL(record.algebra.dim, spec.generators)
            shell_rows = []
            for s2 in range(1, args.range + 1):
                for tau in enumerate_shell(record.algebra, record.metric, lat, Fraction(s2)):
                    shell_rows.append([rat_to_str(t) for t in tau])
            rows.append({side: {"characters_with_integer_s2_up_to": args.range, "taus": shell_rows}})
    payload = {"example": args.target, "sector": args.sector, "rows": rows}
    lines = [f"example {args.target}, sector {args.sector}:"]
    for row in rows:
        lines.append(json.dumps(row))
    _emit(args, payload, lines)
    return 0


def cmd_distinguish(args) -> int:
    from .oneform import distinguish_pair

    record = _load_record(args.target)
    report = distinguish_pair(args.target, n_samples=args.samples_small, seed=args.seed)
    lines = []
    if report["verdict"] == "one_form_isospectral":
        lines.append(f"{args.target}: one-form spectra equal ({report['reason']})")
    elif report["verdict"] == "not_one_form_isospectral":
        m = report["character_multiplicities"]
        lines.append(
            f"{args.target}: candidate eigenvalue multiplicity "
            f"{m['lattice1']} vs {m['lattice2']} -> not isospectral on one-forms"
        )
    else:
        lines.append(f"{args.target}: inconclusive")
    if args.pi is not None:
        report["numeric_check"] = _numeric_cross_check(record, report, args.pi)
        lines.append(f"numeric oracle at pi={args.pi}: {report['numeric_check']['ok']}")
    _emit(args, report, lines)
    return 0


def _numeric_cross_check(record, report, pi_value: float) -> dict:
    """Float eigenvalue check of the exact verdicts (oracle only)."""
    from .oneform import CharacterWave, assemble_E, numeric_spectrum
    from .exactnum.scalars import rat_from_str

    lam = record.eigen_candidate
    lam_val = lam.a.eval_complex(complex(pi_value)).real
    if not lam.b.is_zero():
        import math

        lam_val += math.sqrt(lam.q.eval_complex(complex(pi_value)).real)
    checks = []
    for side in ("lattice1", "lattice2"):
        for row in report["per_tau"][side]:
            tau = tuple(rat_from_str(t) for t in row["tau"])
            wave = CharacterWave(record.algebra, record.metric, tau)
            spec = numeric_spectrum(
                assemble_E(record.algebra, record.metric, wave), pi_value, 1e-9
            )
            near = min(abs(x - lam_val) for x in spec)
            agrees = (near < 1e-6) == row["det_zero"]
            checks.append({"tau": row["tau"], "agrees": agrees})
    return {"ok": all(c["agrees"] for c in checks), "count": len(checks)}


def cmd_table1(args) -> int:
    rows = table_one(args.ids or EXAMPLE_IDS)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    cols = [
        ("example", 7),
        ("isospectral", 17),
        ("rep_equivalent", 15),
        ("same_one_form_spectrum", 34),
        ("isomorphic_fundamental_groups", 44),
    ]
    header = "  ".join(name.ljust(w) for name, w in cols)
    print(header)
    print("-" * len(header))
    for row in rows:
        print("  ".join(str(row[name]).ljust(w) for name, w in cols))
    print("length spectrum columns: out of scope")
    return 0


def cmd_search_iso(args) -> int:
    from .isosearch import SearchBudget, SearchSpaceExceeded, bounded_lattice_isomorphism_search

    record = _load_record(args.target)
    denoms = tuple(int(x) for x in args.denoms.split(","))
    budget = SearchBudget(bound=args.bound, denominators=denoms)
    outcome = bounded_lattice_isomorphism_search(
        record.algebra, record.spec1, record.spec2, budget
    )
    payload = {
        "example": args.target,
        "bound": args.bound,
        "denominators": list(denoms),
        "found": [[rat_to_str(x) for x in row] for row in outcome.found]
        if outcome.found
        else None,
        "exhausted": outcome.exhausted,
        "nodes": outcome.nodes,
        "note": outcome.note,
        "disclaimer": "bounded search: no-hit is evidence, not a nonisomorphism proof",
    }
    if outcome.found is not None:
        _emit(args, payload, [f"{args.target}: isomorphism found ({outcome.nodes} nodes)"])
        return 0
    _emit(
        args,
        payload,
        [
            f"{args.target}: no isomorphism within bound {args.bound} "
            f"(denominators {denoms}; evidence, not proof)"
        ],
    )
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilspec",
        description="Exact isospectrality certification for bundled nilmanifold pairs",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON reports")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    parser.add_argument("--samples", type=int, default=200, help="sample count for sampled checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an algebra definition file")
    p.add_argument("target")

    p = sub.add_parser("certify", help="isospectrality / representation equivalence certificates")
    p.add_argument("target", nargs="?", help="example id")
    p.add_argument("--files", nargs=4, metavar=("ALGEBRA", "METRIC", "LAT1", "LAT2"))
    p.add_argument("--witness", help="witness JSON file (with --files)")
    p.add_argument("--replay", help="re-verify a stored certificate JSON")

    p = sub.add_parser("multiplicities", help="occurrence and multiplicity tables")
    p.add_argument("target")
    p.add_argument("--sector", required=True)
    p.add_argument("--range", type=int, default=3)

    p = sub.add_parser("distinguish", help="one-form spectrum comparison")
    p.add_argument("target")
    p.add_argument("--pi", type=float, default=None, help="run the numeric oracle at this value")
    p.add_argument("--samples-small", type=int, default=12, help="sector sampling size")

    p = sub.add_parser("table1", help="recompute the comparison table")
    p.add_argument("ids", nargs="*", help="example ids (default: all)")

    p = sub.add_parser("search-iso", help="bounded lattice isomorphism search")
    p.add_argument("target")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--denoms", default="1,2,4")
    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "certify": cmd_certify,
        "multiplicities": cmd_multiplicities,
        "distinguish": cmd_distinguish,
        "table1": cmd_table1,
        "search-iso": cmd_search_iso,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModulusMismatch as exc:
        print(f"error: modulus mismatch: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
