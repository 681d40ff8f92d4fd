"""Runs every subcommand with --format json and validates the output against the report schema."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

cli, root = sys.argv[1], Path(sys.argv[2])
schema = json.loads((root / "schema" / "reports.schema.json").read_text())
samples = root / "samples"

runs = [
    ["breakeven", "--scenario", samples / "plain.json"],
    ["breakeven", "--scenario", samples / "credit.json", "--scenario", samples / "seasonal.json"],
    ["simulate", "--scenario", samples / "credit.json"],
    ["simulate", "--scenario", samples / "seasonal.json", "--granularity", "month"],
    ["leverage", "--F", "8000000", "--m", "8", "--Q", "2400000"],
    ["leverage", "--scenario", samples / "credit.json", "--Q", "9000", "--basis", "immediate", "--raw"],
    ["curves", "--F", "8000000", "--m", "8", "--Q", "2000000", "--indifference", "6000000"],
    ["surplus", "--ledger", samples / "ledger3.json"],
    ["cash-table", "--ledger", samples / "ledger3.csv", "--period", "2", "--raw"],
    ["waterfall", "--ledger", samples / "ledger3.json"],
    ["validate", "--ledger", samples / "ledger3.json", "--scenario", samples / "upfront.json"],
]

failed = 0
for args in runs:
    cmd = [cli, *map(str, args), "--format", "json"]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    try:
        if proc.returncode != 0:
            raise RuntimeError(f"exit {proc.returncode}: {proc.stderr.strip()}")
        jsonschema.validate(json.loads(proc.stdout), schema)
        print("ok  ", " ".join(map(str, args[:1])))
    except Exception as exc:
        failed += 1
        print("FAIL", " ".join(map(str, args)), "-", exc)
sys.exit(1 if failed else 0)
