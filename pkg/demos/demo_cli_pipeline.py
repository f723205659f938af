"""End-to-end certification pipeline through the command-line interface.

Writes a map document, classifies it, re-verifies every witness embedded in
the report, and shows that reruns with the same seed are byte-identical.
"""

import json
import pathlib
import subprocess
import sys
import tempfile

from posmap.docio import dump_document, map_to_document
from posmap.maps import transposition_map


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "posmap.cli", *args], capture_output=True, text=True
    )
    return proc.returncode, proc.stdout, proc.stderr


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    doc = tmp / "transposition.json"
    dump_document(map_to_document(transposition_map(2), "choi", metadata={"name": "t"}), str(doc))

    report1 = tmp / "report1.json"
    report2 = tmp / "report2.json"
    code, _, _ = run("classify", str(doc), "--k-max", "2", "--seed", "42", "--out", str(report1))
    print("classify exit code:", code)
    run("classify", str(doc), "--k-max", "2", "--seed", "42", "--out", str(report2))
    print("byte-identical rerun:", report1.read_bytes() == report2.read_bytes())

    payload = json.loads(report1.read_text())
    print("\nsummary:")
    for key, value in sorted(payload["summary"].items()):
        print(f"  {key}: {value}")
    print("\nrecords:")
    for record in payload["records"]:
        print(f"  {record['id']:18s} {record['kind']:9s} value {record['value']:+.4e}")

    code, out, err = run("verify", str(report1))
    print("\nverify exit code:", code, "-", out.strip())

    # corrupt a stored witness value and watch verification fail
    payload["records"][0]["value"] += 0.25
    report1.write_text(json.dumps(payload, indent=2, sort_keys=True))
    code, out, err = run("verify", str(report1))
    print("after corrupting a witness:", code, "-", err.strip().splitlines()[0])
