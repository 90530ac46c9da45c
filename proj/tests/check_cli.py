"""End-to-end checks of the fricke_zeros command line."""
import csv
import io
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

exe, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as fh:
    schema = json.load(fh)

failed = []


def run(*args):
    return subprocess.run([exe, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failed.append(what)


r = run("zeros", "--p", "5", "--k", "3")
expect(r.returncode == 2, "odd weight exits 2")
r = run("verify", "--suite", "")
expect(r.returncode == 2, "empty suite exits 2")
r = run("verify", "--suite", "lemmas")
expect(r.returncode == 1, "lemmas suite reports its failures with exit 1")
expect(any(l.startswith("PASS 4.2(1)/Y1 3.8101") for l in r.stdout.splitlines()), "4.2(1) Y1 line")
r = run("sweep", "--p", "5", "--k-min", "10", "--k-max", "8", "--format", "csv")
expect(r.returncode == 0 and len(r.stdout.strip().splitlines()) == 1, "empty sweep prints header only")

for args in (["zeros", "--p", "7", "--k", "12"], ["zeros", "--p", "5", "--k", "6"],
             ["sweep", "--p", "7", "--k-min", "4", "--k-max", "20"]):
    c = run(*args, "--format", "csv")
    j = run(*args, "--format", "json")
    expect(c.returncode == 0 and j.returncode == 0, " ".join(args) + " exits 0")
    doc = json.loads(j.stdout)
    try:
        jsonschema.validate(doc, schema)
        expect(True, " ".join(args) + " json validates")
    except jsonschema.ValidationError as e:
        expect(False, " ".join(args) + " json validates: " + e.message)
    rows = list(csv.reader(io.StringIO(c.stdout)))
    cols = doc["results"]["columns"]
    expect(rows[0] == cols, " ".join(args) + " csv header matches json columns")
    expect(all(len(row) == len(cols) for row in rows), " ".join(args) + " csv column count fixed")
    same = len(rows) - 1 == len(doc["results"]["rows"])
    for row, obj in zip(rows[1:], doc["results"]["rows"]):
        for name, text in zip(cols, row):
            v = obj[name]
            if v is None:
                same = same and text == ""
            elif isinstance(v, str):
                same = same and v == text
            else:
                same = same and float(text) == v
    expect(same, " ".join(args) + " csv and json values agree")

with tempfile.TemporaryDirectory() as tmp:
    svgs = []
    for name in ("a.svg", "b.svg"):
        path = os.path.join(tmp, name)
        run("zeros", "--p", "7", "--k", "12", "--svg", path)
        with open(path, "rb") as fh:
            svgs.append(fh.read())
expect(svgs[0] == svgs[1], "svg output is byte-identical across runs")
expect(svgs[0].count(b"<circle") == 4, "svg marks 4 zeros for p=7 k=12")

sys.exit(1 if failed else 0)
