#!/usr/bin/env python3
"""Run every subcommand with --json and validate the reports against the schema."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, schema_path, corpus = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
schema = json.loads(schema_path.read_text())
validator = jsonschema.Draft202012Validator(schema)
codes = {"ok": 0, "safe-proved": 0, "unsafe-witness": 1, "inconclusive": 2, "error": 3}

runs = [["corpus", "list"]]
specs = sorted(p for p in corpus.glob("*.pas") if not p.is_symlink())
for spec in specs:
    s = str(spec)
    runs += [
        ["check", s],
        ["normalize", s],
        ["unfold", s, "--max-nodes", "6"],
        ["verify-ground", s, "--tree", "0"],
        ["traps", s, "--tree", "0"],
        ["emit", s],
        ["oracle-check", s, "--max-nodes", "5", "--suite", "path-automaton", "--suite", "flow"],
        ["paths", s, "--from", "1.x", "--to", "1.x"],
    ]
runs += [
    ["verify-ground", str(corpus / "alt-philo-sym.pas"), "--size", "3"],
    ["verify", str(corpus / "token-ring.pas"), "--mona-path", "/nonexistent/mona"],
    ["check", "/nonexistent.pas"],
    ["verify-ground", str(corpus / "tree-linked-leaves.pas"), "--size", "2"],
]

bad = 0
for args in runs:
    p = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
    try:
        report = json.loads(p.stdout)
        validator.validate(report)
        if p.returncode != codes[report["verdict"]]:
            raise ValueError(f"exit {p.returncode} for verdict {report['verdict']}")
    except Exception as e:  # noqa: BLE001
        bad += 1
        print("FAIL", " ".join(args), "->", str(e).splitlines()[0])
        continue
    print("ok  ", " ".join(args), report["verdict"])

print(f"{len(runs) - bad}/{len(runs)} reports valid")
sys.exit(1 if bad else 0)
