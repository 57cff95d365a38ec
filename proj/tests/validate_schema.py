"""Run every cpf subcommand with --format json and validate against the output schema."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["fidelity", "--m", "3", "--protocol", "all"],
    ["fidelity", "--m", "2", "--protocol", "mixed", "--db"],
    ["kappa", "--m", "2", "--eta-b", "0.55", "--eta-t", "0.9", "--ns", "50"],
    ["sweep", "--variable", "n_s", "--from", "0.1", "--to", "100", "--points", "5", "--log"],
    ["sweep", "--variable", "kappa", "--values", "0", "0.5", "1", "--protocols", "mixed"],
    ["region", "--axes", "eta_b,eta_t", "--x-points", "4", "--y-points", "4"],
    ["region", "--axes", "eta_t,n_s", "--x-from", "0.7", "--x-to", "1", "--y-from", "1", "--y-to", "100",
     "--x-points", "4", "--y-points", "4", "--m", "3", "--eta-b", "1", "--total-photons", "1800"],
] + [["figure", "--id", str(i), "--resolution", "5"] for i in range(1, 9)]


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        out = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
        label = " ".join(args)
        if out.returncode != 0:
            print(f"FAIL {label}: exit {out.returncode}: {out.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(out.stdout)
        errors = [e.message for e in validator.iter_errors(doc)]
        # row width is not expressible in the schema itself
        errors += [f"row {i} has {len(r)} cells" for i, r in enumerate(doc["rows"]) if len(r) != len(doc["columns"])]
        if errors or doc["command"] != args[0]:
            print(f"FAIL {label}: {errors or 'command mismatch'}")
            failures += 1
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
