"""Command-line front end.

Subcommands:

- ``posmap classify INPUT --k-max K --seed S``: run the positivity hierarchy
  on a map document and emit a certification report.
- ``posmap modular-verify --dim D --trials T --seed S``: verify the modular
  identities on random (or supplied) faithful states.
- ``posmap cone {member,pq,bounds,flags,polar,weakdec} INPUT``: bipartite
  cone diagnostics on a cone-input document.
- ``posmap verify REPORT``: independently re-check every witness embedded in
  a report.

Exit codes: 0 success, 1 verification/defect failure, 2 input error.
Reports are byte-identical for identical input and seed; timing is only
written when requested and lives in its own excluded field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .choi import block_positivity, cp_verdict
from .cones import (
    bipartite_context,
    cone_member,
    odd_part_flags,
    odd_part_polar,
    pq_split,
    split_bounds_check,
    transposed_cone_consistency,
    weak_kdec_cone_check,
)
from .docio import (
    cone_input_from_document,
    load_document,
    map_from_document,
    state_from_document,
)
from .errors import ParseError, PosmapError, StaleWitnessError
from .kpositivity import (
    decomposability_witness,
    is_k_copositive,
    is_k_positive,
    pk_check,
    sk_check,
)
from .linalg import (
    HERMITIAN_RTOL,
    PSD_RTOL,
    frobenius,
    hermitian_part,
    random_faithful_state,
    rng_stream,
)
from .modular import (
    check_polar_factorization,
    check_unitary_relations,
    gns_context,
    transpose_via_conjugations,
    v_beta_duality_check,
)
from .report import add_record, new_report, verify_report, write_report
from .verdicts import EVIDENCE, VIOLATION, KVerdict

DEFECT_LIMIT = 1e-9


def _emit(report: dict, out: str | None, timing: dict | None) -> None:
    if out:
        write_report(report, out, timing=timing)
    else:
        payload = dict(report)
        if timing is not None:
            payload["timing"] = timing
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")


def _verdict_record(report: dict, record_id: str, verdict, seed: int) -> None:
    if verdict.is_violation:
        add_record(
            report,
            record_id,
            VIOLATION,
            verdict.value,
            witness=verdict.witness if verdict.witness else None,
            stats=verdict.stats,
            seed=seed,
        )
    else:
        add_record(report, record_id, EVIDENCE, verdict.value, stats=verdict.stats, seed=seed)


def cmd_classify(args) -> int:
    doc = load_document(args.input)
    phi = map_from_document(doc)
    h = phi.choi()
    if frobenius(h - h.conj().T) > 1e-8 * max(1.0, frobenius(h)):
        raise ParseError("map is not Hermiticity-preserving; positivity tests need a Hermitian Choi matrix")
    params = {
        "k_max": args.k_max,
        "restarts": args.restarts,
        "samples": args.samples,
        "projections": args.projections,
        "defect_limit": DEFECT_LIMIT,
        "psd_rtol": PSD_RTOL,
        "hermitian_rtol": HERMITIAN_RTOL,
    }
    report = new_report(doc, args.seed, params)
    m, n = phi.m, phi.n

    cpv = cp_verdict(phi)
    if cpv.completely_positive:
        add_record(report, "cp", "pass", cpv.min_eig, seed=args.seed)
    else:
        add_record(
            report, "cp", VIOLATION, cpv.min_eig, witness={"vector": cpv.witness}, seed=args.seed
        )

    bp = block_positivity(hermitian_part(h), m, n, restarts=args.restarts, seed=args.seed)
    if bp.is_violation:
        add_record(
            report, "block_positivity", VIOLATION, bp.value,
            witness={"x": bp.x, "y": bp.y}, stats=bp.stats, seed=args.seed,
        )
    else:
        add_record(report, "block_positivity", EVIDENCE, bp.value, stats=bp.stats, seed=args.seed)

    summary_kpos: dict[str, str] = {}
    summary_kcopos: dict[str, str] = {}
    summary_sk: dict[str, str] = {}
    summary_pk: dict[str, str] = {}
    for k in range(1, args.k_max + 1):
        # compressions cannot exceed the output dimension; k-positivity for
        # k >= n coincides with the exact test at k = n
        k_eff = min(k, n)
        kv = is_k_positive(phi, k_eff, restarts=args.restarts, seed=args.seed)
        if k_eff != k:
            kv = KVerdict(k, kv.kind, kv.value, kv.projection, kv.vector,
                          dict(kv.stats, clamped_to=k_eff))
        _verdict_record(
            report,
            f"k_positive_{k}",
            _as_witnessed(kv),
            args.seed,
        )
        summary_kpos[str(k)] = kv.kind
        kc = is_k_copositive(phi, k_eff, restarts=args.restarts, seed=args.seed)
        if k_eff != k:
            kc = KVerdict(k, kc.kind, kc.value, kc.projection, kc.vector,
                          dict(kc.stats, clamped_to=k_eff))
        _verdict_record(report, f"k_copositive_{k}", _as_witnessed(kc), args.seed)
        summary_kcopos[str(k)] = kc.kind
        sv = sk_check(phi, k, samples=args.samples, seed=args.seed)
        _verdict_record(report, f"sk_{k}", sv, args.seed)
        summary_sk[str(k)] = sv.kind
        pv = pk_check(phi, k, projections=args.projections, seed=args.seed)
        _verdict_record(report, f"pk_{k}", pv, args.seed)
        summary_pk[str(k)] = pv.kind

    dec = decomposability_witness(hermitian_part(h), m, n, seed=args.seed)
    _verdict_record(report, "decomposability", dec, args.seed)

    def highest_evidence(table: dict[str, str]) -> int:
        best = 0
        for k in range(1, args.k_max + 1):
            if table[str(k)] == EVIDENCE:
                best = k
            else:
                break
        return best

    report["summary"] = {
        "completely_positive": bool(cpv.completely_positive),
        "block_positive": bp.kind,
        "highest_k_positive_evidence": highest_evidence(summary_kpos),
        "highest_k_copositive_evidence": highest_evidence(summary_kcopos),
        "k_positive": summary_kpos,
        "k_copositive": summary_kcopos,
        "sk": summary_sk,
        "pk": summary_pk,
        "decomposability": dec.kind,
    }
    _emit(report, args.out, _timing(args))
    return 0


class _WitnessedVerdict:
    """Adapter exposing KVerdict witnesses in the record payload shape."""

    def __init__(self, verdict):
        self.kind = verdict.kind
        self.value = verdict.value
        self.stats = verdict.stats
        self.is_violation = verdict.is_violation
        self.witness = None
        if verdict.is_violation:
            self.witness = {"projection": verdict.projection, "vector": verdict.vector}


def _as_witnessed(verdict) -> _WitnessedVerdict:
    return _WitnessedVerdict(verdict)


def cmd_modular_verify(args) -> int:
    if not 2 <= args.dim <= 8:
        raise ParseError(f"--dim must be in 2..8, got {args.dim}")
    if args.rho_file:
        rhos = [state_from_document(load_document(args.rho_file))]
    else:
        rhos = [
            random_faithful_state(rng_stream(args.seed, t), args.dim) for t in range(args.trials)
        ]
    params = {
        "dim": args.dim,
        "trials": len(rhos),
        "defect_limit": DEFECT_LIMIT,
        "rho_file": args.rho_file or "",
    }
    input_doc = {"kind": "modular-suite", "dim": args.dim, "trials": len(rhos)}
    report = new_report(input_doc, args.seed, params)

    worst: dict[str, float] = {}
    for t, rho in enumerate(rhos):
        ctx = gns_context(rho)
        rels = check_unitary_relations(ctx)
        for name, val in rels.items():
            if name != "max":
                worst[name] = max(worst.get(name, 0.0), val)
        worst["polar"] = max(worst.get("polar", 0.0), check_polar_factorization(ctx))
        rng = rng_stream(args.seed, 1000 + t)
        for _ in range(10):
            a = rng.standard_normal((args.dim, args.dim)) + 1j * rng.standard_normal(
                (args.dim, args.dim)
            )
            xi = rng.standard_normal((args.dim, args.dim)) + 1j * rng.standard_normal(
                (args.dim, args.dim)
            )
            _, _, gap = transpose_via_conjugations(ctx, a, xi)
            worst["transpose_identity"] = max(worst.get("transpose_identity", 0.0), gap)
        dual = v_beta_duality_check(ctx, 0.25, samples=20, seed=args.seed + t)
        worst["cone_duality_imag"] = max(worst.get("cone_duality_imag", 0.0), dual["max_imag_pairing"])
        worst["cone_duality_negative"] = max(
            worst.get("cone_duality_negative", 0.0), max(0.0, -dual["min_real_pairing"])
        )
        worst["cone_flip_failures"] = max(
            worst.get("cone_flip_failures", 0.0), dual["flip_failures"]
        )

    failed = False
    for name in sorted(worst):
        ok = worst[name] <= DEFECT_LIMIT
        failed = failed or not ok
        add_record(
            report, f"identity:{name}", "defect", worst[name],
            defects={"max": worst[name]}, seed=args.seed,
        )
    report["summary"] = {"max_defect": max(worst.values()), "passed": not failed}
    _emit(report, args.out, _timing(args))
    return 1 if failed else 0


def _cone_vector_from_input(cone_input, ctx):
    if cone_input.vector is not None:
        return np.asarray(cone_input.vector, dtype=complex)
    if cone_input.blocks is not None:
        return ctx.cone_vector(ctx.from_blocks(cone_input.blocks))
    raise ParseError("cone-input document carries no vector or blocks")


def cmd_cone(args) -> int:
    doc = load_document(args.input)
    if args.seed is None:
        if args.subcommand in ("member", "bounds", "weakdec"):
            raise ParseError(f"cone {args.subcommand} samples; --seed is mandatory")
        args.seed = 0
    cone_input = cone_input_from_document(doc)
    ctx = bipartite_context(cone_input.rho_a, cone_input.rho_b)
    params = {"subcommand": args.subcommand, "samples": args.samples}
    report = new_report(doc, args.seed, params)
    exit_code = 0

    if args.subcommand == "member":
        xi = _cone_vector_from_input(cone_input, ctx)
        membership = cone_member(ctx, xi, hull_samples=args.samples, seed=args.seed)
        report["summary"] = {
            "in_p": membership.in_p,
            "in_ptau": membership.in_ptau,
            "in_intersection": membership.in_intersection,
            "p_min_eig": membership.p_min_eig,
            "ptau_min_eig": membership.ptau_min_eig,
            "cross_route_defect": membership.cross_route_defect,
            "in_hull_evidence": membership.in_hull_evidence,
        }
        add_record(report, "member", "pass", membership.p_min_eig, seed=args.seed)
    elif args.subcommand == "pq":
        xi = _cone_vector_from_input(cone_input, ctx)
        p_xi, q_xi = pq_split(ctx, xi)
        cross = abs(np.vdot(p_xi, q_xi))
        pythagoras = abs(
            np.vdot(xi, xi).real - np.vdot(p_xi, p_xi).real - np.vdot(q_xi, q_xi).real
        )
        report["summary"] = {
            "p_norm": float(np.linalg.norm(p_xi)),
            "q_norm": float(np.linalg.norm(q_xi)),
            "orthogonality_defect": float(cross),
            "pythagoras_defect": float(pythagoras),
        }
        add_record(report, "pq", "defect", float(max(cross, pythagoras)), seed=args.seed)
        exit_code = 0 if max(cross, pythagoras) <= DEFECT_LIMIT else 1
    elif args.subcommand == "bounds":
        xi = _cone_vector_from_input(cone_input, ctx)
        margins = split_bounds_check(ctx, xi, eta_samples=args.samples, seed=args.seed)
        report["summary"] = {k: float(v) for k, v in margins.items()}
        add_record(report, "bounds", "pass" if margins["violations"] == 0 else "defect",
                   margins["violations"], seed=args.seed)
        exit_code = 0 if margins["violations"] == 0 else 1
    elif args.subcommand == "flags":
        xi = _cone_vector_from_input(cone_input, ctx)
        flags = odd_part_flags(ctx, xi)
        report["summary"] = {
            "q_in_p": flags.q_in_p,
            "q_zero": flags.q_zero,
            "fixed": flags.fixed,
            "agree": flags.agree(),
        }
        add_record(report, "flags", "pass" if flags.agree() else "defect",
                   0.0 if flags.agree() else 1.0, seed=args.seed)
        exit_code = 0 if flags.agree() else 1
    elif args.subcommand == "polar":
        xi = _cone_vector_from_input(cone_input, ctx)
        polar = odd_part_polar(ctx, xi)
        xi_b_ok = polar.degenerate or cone_member(ctx, polar.xi_b).in_p
        report["summary"] = {
            "reconstruction_defect": polar.reconstruction_defect,
            "degenerate": polar.degenerate,
            "xi_b_in_p": bool(xi_b_ok),
        }
        add_record(report, "polar", "defect", polar.reconstruction_defect, seed=args.seed)
        exit_code = 0 if polar.reconstruction_defect <= 1e-9 and xi_b_ok else 1
    elif args.subcommand == "weakdec":
        if cone_input.map_doc is None:
            raise ParseError("cone weakdec needs a 'map' entry in the input document")
        phi = map_from_document(cone_input.map_doc)
        k = args.k if args.k is not None else (cone_input.k or 1)
        ctx_a = gns_context(cone_input.rho_a)
        verdict = weak_kdec_cone_check(
            ctx_a, phi, k, samples=args.samples, dual_samples=args.samples, seed=args.seed
        )
        _verdict_record(report, f"weakdec_{k}", verdict, args.seed)
        report["summary"] = {"weakdec": verdict.kind, "k": k, "min_pairing": verdict.value}
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown cone subcommand {args.subcommand}")

    if args.subcommand == "weakdec":
        consistency = transposed_cone_consistency(ctx, samples=min(args.samples, 50), seed=args.seed)
        report["summary"]["transposed_cone_identity_defect"] = consistency["identity_defect"]
    _emit(report, args.out, _timing(args))
    return exit_code


def cmd_verify(args) -> int:
    report = load_document(args.report)
    failures = verify_report(report)
    if failures:
        for failure in failures:
            print(f"stale witness: {failure}", file=sys.stderr)
        return 1
    print("all witnesses re-verified")
    return 0


def _timing(args) -> dict | None:
    if getattr(args, "timings", False):
        return {"wall_clock": time.time()}
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posmap",
        description="Positivity classification of maps between matrix algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="run the positivity hierarchy on a map document")
    p_classify.add_argument("input")
    p_classify.add_argument("--k-max", type=int, default=2, dest="k_max")
    p_classify.add_argument("--seed", type=int, required=True)
    p_classify.add_argument("--restarts", type=int, default=32)
    p_classify.add_argument("--samples", type=int, default=200)
    p_classify.add_argument("--projections", type=int, default=40)
    p_classify.add_argument("--out")
    p_classify.add_argument("--timings", action="store_true")
    p_classify.set_defaults(func=cmd_classify)

    p_mod = sub.add_parser("modular-verify", help="verify the modular identity suite")
    p_mod.add_argument("--dim", type=int, required=True)
    p_mod.add_argument("--trials", type=int, default=10)
    p_mod.add_argument("--seed", type=int, required=True)
    p_mod.add_argument("--rho-file", dest="rho_file")
    p_mod.add_argument("--out")
    p_mod.add_argument("--timings", action="store_true")
    p_mod.set_defaults(func=cmd_modular_verify)

    p_cone = sub.add_parser("cone", help="bipartite cone diagnostics")
    p_cone.add_argument("subcommand", choices=["member", "pq", "bounds", "flags", "polar", "weakdec"])
    p_cone.add_argument("input")
    p_cone.add_argument("--seed", type=int, default=None,
                        help="mandatory for the sampling subcommands member/bounds/weakdec")
    p_cone.add_argument("--samples", type=int, default=100)
    p_cone.add_argument("--k", type=int)
    p_cone.add_argument("--out")
    p_cone.add_argument("--timings", action="store_true")
    p_cone.set_defaults(func=cmd_cone)

    p_verify = sub.add_parser("verify", help="re-check every witness stored in a report")
    p_verify.add_argument("report")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StaleWitnessError as exc:
        print(f"stale witness: {exc}", file=sys.stderr)
        return 1
    except PosmapError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
