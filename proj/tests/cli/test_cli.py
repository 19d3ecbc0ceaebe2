#!/usr/bin/env python3
# CLI checks: JSON schemas, byte-for-byte determinism, exit codes, and two
# cross-checks against independently written reference data.
#
# usage: test_cli.py <qeslab> <schema dir>

import csv
import io
import json
import pathlib
import random
import subprocess
import sys
from fractions import Fraction

import jsonschema
from referencing import Registry, Resource

EXE = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

failures = []


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def run(*args):
    p = subprocess.run([EXE, *args], capture_output=True, timeout=600)
    return p.returncode, p.stdout


def registry():
    reg = Registry()
    for f in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(f.read_text())
        reg = reg.with_resource(doc["$id"], Resource.from_contents(doc))
    return reg


REG = registry()


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    v = jsonschema.Draft202012Validator(schema, registry=REG)
    errs = list(v.iter_errors(doc))
    for e in errs[:3]:
        print("     ", e.message, list(e.path))
    return not errs


JSON_RUNS = [
    ("polyfamily", ["generate-polys", "--parity", "c", "--nmax", "5"], 0),
    ("polyfamily", ["generate-polys", "--parity", "s", "--nmax", "4", "--N", "3/2"], 0),
    ("energies", ["energies", "--N", "2", "--parity", "c", "--zeta", "3/2", "--json"], 0),
    ("energies", ["energies", "--N", "2", "--parity", "c", "--zeta", "4", "--json"], 0),
    ("exceptional_points", ["exceptional-points", "--Nmax", "5/2", "--json"], 0),
    ("mathieu_limit", ["mathieu-limit", "--kind", "xi", "--lmax", "10", "--tol", "1e-3", "--json"], 0),
    ("moments", ["moments", "--family", "s", "--N", "5/2", "--nmax", "4", "--json"], 0),
    ("weights", ["weights", "--family", "c", "--N", "3/2", "--zeta", "1", "--json"], 0),
    ("wavefunction", ["wavefunction", "--N", "3/2", "--parity", "s", "--zeta", "1", "--root-index", "0",
                      "--grid", "128", "--json"], 0),
]

for name, args, want in JSON_RUNS:
    rc, out = run(*args)
    label = " ".join(args)
    check(rc == want, f"exit {want}: {label} (got {rc})")
    try:
        doc = json.loads(out)
    except json.JSONDecodeError:
        check(False, f"parses as JSON: {label}")
        continue
    check(validate(doc, name), f"schema {name}: {label}")
    rc2, out2 = run(*args)
    check(out == out2, f"deterministic: {label}")

# Exit codes.
for args, want in [
    (["weights", "--family", "c", "--N", "1", "--zeta", "2"], 4),
    (["energies", "--N", "1.0.0", "--parity", "c", "--zeta", "1"], 2),
    (["energies", "--N", "1", "--parity", "x", "--zeta", "1"], 2),
    (["mathieu-limit", "--kind", "xi", "--lmax", "40"], 2),
    (["mathieu-limit", "--kind", "theta", "--lmax", "3", "--tol", "1e-9"], 3),
    (["bogus"], 2),
    ([], 2),
]:
    rc, _ = run(*args)
    check(rc == want, f"exit {want}: {' '.join(args) or '(no args)'} (got {rc})")

# P_4 against a hand expansion, compared exactly at random rational points.
P4 = ("8*E**4 - 448*E**3 + E**2*(16*z**2*(N-1)*(2*N+1) + 6272) - 192*E*(z**2*(6*N**2-3*N-1) + 96)"
      " + 4*z**2*N*(2*N-1)*(z**2*(N+1)*(2*N-3) + 1152)")
rc, out = run("generate-polys", "--parity", "c", "--nmax", "4")
fam = json.loads(out)
p4 = next(m["poly"] for m in fam["members"] if m["index"] == 4)
names = {"E": "E", "zeta": "z", "N": "N"}


def eval_json(poly, env):
    total = Fraction(0)
    for t in poly["terms"]:
        term = Fraction(int(t["num"]), int(t["den"]))
        for v, e in zip(poly["vars"], t["exps"]):
            term *= env[names[v]] ** e
        total += term
    return total


rng = random.Random(7)
agree = True
for _ in range(25):
    env = {k: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for k in ("E", "z", "N")}
    agree &= eval_json(p4, env) == eval(P4, {}, dict(env))
check(agree, "generate-polys P_4 matches the reference expansion")

# zeta0 * N from the CSV against a five-digit reference table.  The first N = 2 even
# value is printed as 1.68457 but the exact discriminant root gives 1.684868;
# that entry is compared loosely and the rest at 5e-5.
TABLE = {
    ("1", "c"): [2.00000],
    ("3/2", "c"): [1.77556],
    ("3/2", "s"): [9.00000],
    ("2", "c"): [1.68457, 21.0567],
    ("2", "s"): [8.21937],
    ("5/2", "c"): [1.63564, 19.4554],
    ("5/2", "s"): [7.8691, 38.2224],
    ("3", "c"): [1.6047, 18.6864, 60.535],
    ("3", "s"): [7.6688, 35.5683],
}
LOOSE = {("2", "c", 1.68457): 5e-4}
rc, out = run("exceptional-points", "--Nmax", "3")
rows = list(csv.DictReader(io.StringIO(out.decode())))
check(rc == 0 and list(rows[0].keys()) == ["N", "parity", "zeta0", "zeta0_times_N"], "exceptional-points CSV header")
got = {}
for r in rows:
    got.setdefault((r["N"], r["parity"]), []).append(float(r["zeta0_times_N"]))
for key, printed in TABLE.items():
    for x in printed:
        tol = LOOSE.get((*key, x), 5e-5)
        best = min((abs(y - x) for y in got.get(key, [])), default=float("inf"))
        check(best <= tol, f"table N={key[0]} {key[1]} {x} (off by {best:.2e})")

# verify-all last; it is the slow one.
rc, out = run("verify-all", "--json")
doc = json.loads(out)
check(validate(doc, "verify_all"), "schema verify_all")
check(rc == (0 if doc["passed"] == doc["total"] else 1), f"verify-all exit code agrees with its table (got {rc})")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
