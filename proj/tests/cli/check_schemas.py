#!/usr/bin/env python3
# Validates every catalog problem, its report, and a few error reports
# against the shipped JSON schemas.
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

genvi, schema_dir = sys.argv[1], Path(sys.argv[2])
problem_schema = json.loads((schema_dir / "problem.schema.json").read_text())
report_schema = json.loads((schema_dir / "report.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(problem_schema)
jsonschema.Draft202012Validator.check_schema(report_schema)


def run(*args):
    p = subprocess.run([genvi, *args, "--quiet"] if args[0] not in ("show-demo", "list-demos") else [genvi, *args],
                       capture_output=True, text=True)
    return p.returncode, p.stdout


_, listing = run("list-demos")
names = [d["name"] for d in json.loads(listing)]
assert len(names) >= 10, listing

failures = 0
for name in names:
    _, text = run("show-demo", name)
    problem = json.loads(text)
    jsonschema.validate(problem, problem_schema)
    code, out = run("demo", name, "--certify")
    report = json.loads(out)
    jsonschema.validate(report, report_schema)
    jsonschema.validate(report["problem"], problem_schema)
    if code != 0:
        failures += 1
        print(f"{name}: exit {code}")

# A document the strict parser rejects must also fail the schema.
_, text = run("show-demo", "scaled-gvi")
bad = json.loads(text)
del bad["operators"]["a"]
try:
    jsonschema.validate(bad, problem_schema)
    failures += 1
    print("schema accepted a gvi problem without operator a")
except jsonschema.ValidationError:
    pass

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump(bad, f)
code, out = run("solve-gvi", f.name)
Path(f.name).unlink()
jsonschema.validate(json.loads(out), report_schema)
assert code == 2, code

print(f"{len(names)} demos validated")
sys.exit(1 if failures else 0)
