#!/usr/bin/env python3
"""Run a handful of lfr commands and validate their JSON against the output schema."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CASES = [
    (["classify", "--normal-form", "2,0"], 0),
    (["classify", "--map", "fig01"], 0),
    (["orbit", "--normal-form", "1,0"], 0),
    (["charpoly", "--lists", "c:1,1,7"], 0),
    (["delta", "--n", "9"], 0),
    (["delta", "--coeffs", "-1,-1,1"], 0),
    (["vn", "--a", "2", "--b", "0"], 0),
    (["catalog"], 0),
    (["oracle", "--normal-form", "1,0", "--k", "10", "--kappa-max", "6"], 0),
    (["scan", "--a", "-1,1,3", "--b", "-1,1,2"], 0),
    (["verify"], 0),
    (["classify", "--normal-form", "1/0,2"], 1),
    (["classify", "--map", "ab:0,0,0,0,0,0"], 2),
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as fh:
        schema = json.load(fh)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        cases = CASES + [(["render", "--preset", "fig01", "--points", "500", "--size", "64x64",
                           "--out", os.path.join(tmp, "r.png")], 0)]
        for args, want in cases:
            proc = subprocess.run([exe] + args, capture_output=True, text=True)
            label = " ".join(args)
            if proc.returncode != want:
                print(f"FAIL {label}: exit {proc.returncode}, expected {want}\n{proc.stderr}")
                failures += 1
                continue
            try:
                doc = json.loads(proc.stdout)
            except json.JSONDecodeError as e:
                print(f"FAIL {label}: not JSON ({e})")
                failures += 1
                continue
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            if errors:
                failures += 1
                print(f"FAIL {label}:")
                for e in errors[:5]:
                    print(f"  {list(e.path)}: {e.message}")
            elif want != 0 and "error" not in doc:
                failures += 1
                print(f"FAIL {label}: nonzero exit without an error object")
            else:
                print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
