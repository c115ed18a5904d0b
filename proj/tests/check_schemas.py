#!/usr/bin/env python3
"""Validates sample specs and CLI output against the shipped JSON schemas.

usage: check_schemas.py LIENIL_CLI SCHEMA_DIR SPEC_DIR
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def main():
    cli, schema_dir, spec_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    data_dir = pathlib.Path(__file__).resolve().parent / "data"
    schemas = {
        name: load(schema_dir / f"{name}.schema.json")
        for name in ("algebra-spec", "report", "search-record")
    }
    validators = {}
    for name, schema in schemas.items():
        jsonschema.Draft202012Validator.check_schema(schema)
        validators[name] = jsonschema.Draft202012Validator(schema)

    failures = []

    def expect_valid(kind, doc, what):
        errors = sorted(validators[kind].iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            failures.append(f"{what}: {errors[0].message} at /{'/'.join(map(str, errors[0].path))}")

    def expect_invalid(kind, doc, what):
        if validators[kind].is_valid(doc):
            failures.append(f"{what}: accepted by the {kind} schema")

    def run(*args):
        out = subprocess.run([cli, *args], capture_output=True, text=True, check=True)
        return json.loads(out.stdout)

    specs = sorted(spec_dir.glob("*.json"))
    for spec in specs:
        expect_valid("algebra-spec", load(spec), spec.name)
        expect_valid("report", run("check", str(spec), "--json"), f"check {spec.name}")
        expect_valid("algebra-spec", run("export", str(spec)), f"export {spec.name}")

    for bad in ("unknown_field.json",):
        expect_invalid("algebra-spec", load(data_dir / bad), bad)

    ki4 = str(spec_dir / "ki4_r4_1111.json")
    expect_valid("report", run("center", ki4, "--n", "2", "--json"), "center")
    expect_valid("report", run("radical", ki4, "--json"), "radical")
    expect_valid("report", run("verify", "--zoo", "--json"), "verify --zoo")

    explore = run("explore", "--m", "3", "--n", "1", "--trials", "30", "--json")
    expect_valid("report", explore, "explore")
    expect_valid("search-record", explore["result"], "explore result")

    with tempfile.TemporaryDirectory() as tmp:
        out = pathlib.Path(tmp) / "record.json"
        out.write_text(json.dumps(explore["result"]))
        subprocess.run([cli, "recheck", str(out)], capture_output=True, check=True)

    for f in failures:
        print("FAIL", f)
    print(f"{len(specs)} specs, {len(failures)} schema failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
