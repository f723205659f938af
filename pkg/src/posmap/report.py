"""Machine-readable certification reports and independent witness re-checks.

A report embeds its input document, a digest of the canonical input bytes,
every tolerance and search parameter used, and one record per test.  Records
for violations carry complete witnesses; `verify_report` re-evaluates each
witness through plain quadratic forms and eigenvalue checks, never re-running
any search, and reports records whose stored values have gone stale.

Timing is never part of the canonical payload; when requested it is written
into the separate top-level "timing" field, which comparisons exclude.
"""

from __future__ import annotations

import hashlib
import json
import warnings

import numpy as np

from .choi import MatrixMap, product_form
from .cones import bipartite_context, cone_member
from .docio import map_from_document, matrix_from_doc, matrix_to_doc
from .errors import StaleWitnessError
from .linalg import frobenius, hermitian_part, partial_transpose
from .modular import gns_context, t_phi

TOOL_NAME = "posmap"
TOOL_VERSION = "0.1.0"
VALUE_TOL = 1e-10


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def input_digest(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()


def new_report(input_doc, seed: int, params: dict) -> dict:
    return {
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "input": input_doc,
        "input_digest": input_digest(input_doc),
        "seed": seed,
        "params": params,
        "records": [],
        "summary": {},
    }


def add_record(
    report: dict,
    record_id: str,
    kind: str,
    value: float,
    *,
    witness: dict | None = None,
    stats: dict | None = None,
    defects: dict | None = None,
    seed: int | None = None,
) -> None:
    record = {"id": record_id, "kind": kind, "value": float(value)}
    if witness is not None:
        record["witness"] = {
            key: matrix_to_doc(val) if isinstance(val, np.ndarray) else val
            for key, val in witness.items()
        }
    if stats:
        record["stats"] = {k: _plain(v) for k, v in stats.items()}
    if defects:
        record["defects"] = {k: float(v) for k, v in defects.items()}
    if seed is not None:
        record["seed"] = int(seed)
    report["records"].append(record)


def _plain(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    return v


def write_report(report: dict, path: str, *, timing: dict | None = None) -> None:
    payload = dict(report)
    if timing is not None:
        payload["timing"] = timing
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def report_body(report: dict) -> dict:
    """The deterministic payload: everything except the timing field."""
    return {k: v for k, v in report.items() if k != "timing"}


# ---------------------------------------------------------------------------
# witness re-verification
# ---------------------------------------------------------------------------


def _value_gap(stated: float, recomputed: float) -> float:
    return abs(stated - recomputed)


def _check_close(record_id: str, stated: float, recomputed: float, failures: list) -> None:
    if _value_gap(stated, recomputed) > VALUE_TOL * max(1.0, abs(stated)):
        failures.append(
            f"{record_id}: stated value {stated:.12e} re-evaluates to {recomputed:.12e}"
        )


def _witness_matrix(record: dict, key: str) -> np.ndarray:
    return matrix_from_doc(record["witness"][key], f"witness[{key}]")


def _verify_map_record(record: dict, phi: MatrixMap, failures: list) -> None:
    rid = record["id"]
    h = hermitian_part(phi.choi())
    m, n = phi.m, phi.n
    if rid == "cp":
        z = _witness_matrix(record, "vector").reshape(-1)
        val = float(np.vdot(z, h @ z).real / max(np.vdot(z, z).real, 1e-300))
        _check_close(rid, record["value"], val, failures)
        if val >= 0:
            failures.append(f"{rid}: witness no longer certifies a negative eigenvalue")
    elif rid == "block_positivity":
        x = _witness_matrix(record, "x").reshape(-1)
        y = _witness_matrix(record, "y").reshape(-1)
        _check_close(rid, record["value"], product_form(h, m, n, x, y), failures)
    elif rid.startswith("k_positive_") or rid.startswith("k_copositive_"):
        k = int(rid.rsplit("_", 1)[1])
        target = phi.compose_transposition() if rid.startswith("k_copositive_") else phi
        ht = hermitian_part(target.choi())
        p = _witness_matrix(record, "projection")
        z = _witness_matrix(record, "vector").reshape(-1)
        if np.trace(p).real > k + 1e-9 or frobenius(p @ p - p) > 1e-9:
            failures.append(f"{rid}: stored projection is not a rank-<=k projection")
            return
        lifted = np.kron(np.eye(target.m), p) @ z
        if np.linalg.norm(lifted - z) > 1e-8:
            failures.append(f"{rid}: witness vector escapes the projection range")
            return
        val = float(np.vdot(z, ht @ z).real / max(np.vdot(z, z).real, 1e-300))
        _check_close(rid, record["value"], val, failures)
    elif rid.startswith("sk_"):
        k = int(rid.rsplit("_", 1)[1])
        a = _witness_matrix(record, "block")
        amin = np.linalg.eigvalsh(hermitian_part(a))[0]
        pt = partial_transpose(a, k, m, side="first")
        ptmin = np.linalg.eigvalsh(hermitian_part(pt))[0]
        if amin < -1e-9 or ptmin < -1e-9:
            failures.append(f"{rid}: stored block is not PSD in both orderings")
            return
        image = hermitian_part(phi.apply_blockwise(a, k))
        val = float(np.linalg.eigvalsh(image)[0])
        _check_close(rid, record["value"], val, failures)
    elif rid.startswith("pk_"):
        iso = _witness_matrix(record, "isometry")
        w = _witness_matrix(record, "state")
        rank = iso.shape[1]
        corner = MatrixMap.from_function(lambda x: iso.conj().T @ phi(x) @ iso, m, rank)
        hc = hermitian_part(corner.choi())
        _verify_ppt_pairing(rid, record, w, hc, m, rank, failures)
    elif rid == "decomposability":
        w = _witness_matrix(record, "state")
        _verify_ppt_pairing(rid, record, w, h, m, n, failures)
    else:
        failures.append(f"{rid}: unknown record type for a map report")


def _verify_ppt_pairing(
    rid: str, record: dict, w: np.ndarray, h: np.ndarray, m: int, n: int, failures: list
) -> None:
    wmin = np.linalg.eigvalsh(hermitian_part(w))[0]
    pt = partial_transpose(w, m, n, side="first")
    ptmin = np.linalg.eigvalsh(hermitian_part(pt))[0]
    if wmin < -1e-12 or ptmin < -1e-12:
        failures.append(f"{rid}: stored witness state is not a PPT state")
        return
    val = float(np.trace(w @ h).real)
    _check_close(rid, record["value"], val, failures)


def _verify_weakdec_record(record: dict, report: dict, failures: list) -> None:
    rid = record["id"]
    input_doc = report["input"]
    phi = map_from_document(input_doc["map"])
    rho_a = matrix_from_doc(input_doc["rho_a"], "rho_a")
    n = int(record["witness"]["n"])
    ctx_a = gns_context(rho_a)
    bctx = bipartite_context(rho_a, np.eye(n, dtype=complex) / n)
    eta = _witness_matrix(record, "eta")
    xi = _witness_matrix(record, "xi")
    if not cone_member(bctx, eta).in_intersection:
        failures.append(f"{rid}: stored eta left the intersection cone")
        return
    if not cone_member(bctx, xi).in_p:
        failures.append(f"{rid}: stored xi left the positive cone")
        return
    with warnings.catch_warnings():
        # rebuilding the induced operator re-raises the invariance warning
        # that already fired when the report was produced
        warnings.simplefilter("ignore")
        t_star = t_phi(ctx_a, phi).operator.matrix.conj().T
    zeta = bctx.apply_first_factor(t_star, xi)
    val = float(np.vdot(eta, zeta).real)
    _check_close(rid, record["value"], val, failures)


def verify_report(report: dict) -> list[str]:
    """Re-evaluate every stored witness; returns a list of failure messages."""
    failures: list[str] = []
    if report.get("input_digest") != input_digest(report.get("input")):
        failures.append("input_digest: embedded input does not match its digest")
    input_doc = report.get("input")
    phi = None
    if isinstance(input_doc, dict) and input_doc.get("kind") == "map":
        phi = map_from_document(input_doc)
    for record in report.get("records", []):
        if record.get("kind") != "violation" or "witness" not in record:
            continue
        rid = record["id"]
        try:
            if rid.startswith("weakdec"):
                _verify_weakdec_record(record, report, failures)
            elif phi is not None:
                _verify_map_record(record, phi, failures)
            else:
                failures.append(f"{rid}: no input map available to re-check the witness")
        except Exception as exc:  # malformed witness payloads are stale too
            failures.append(f"{rid}: witness re-evaluation failed ({exc})")
    return failures


def require_fresh(report: dict) -> None:
    failures = verify_report(report)
    if failures:
        raise StaleWitnessError("; ".join(failures))
