"""Smoke test for the Python bindings. Exits nonzero on the first failed check."""

import json
import pathlib
import sys

import galtrace_py as gt

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"


def check(name, cond):
    print(f"[{'ok' if cond else 'FAIL'}] {name}")
    if not cond:
        sys.exit(1)


classes, sizes, rows = gt.character_table("sl2z5")
check("SL2(Z/5) has 9 classes and order 120", len(classes) == 9 and sum(sizes) == 120)
check("sum of squared degrees is 120", sum(int(vals[0]) ** 2 for _, vals in rows) == 120)

results = gt.battery()
check(f"battery: {len(results)} identities hold", all(holds for _, holds in results))

name, degree, irreducible = gt.branch("sym4(theta2)")
check(f"sym4(theta2) = {name}", (name, degree, irreducible) == ("theta5", 5, True))

k, pairs = gt.smoothed_ratios(2, [1e2, 1e4], bound=100_000)
check(f"pole order {k}, ratio at 1e4 = {pairs[-1][1]:.6f}", k == 4 and abs(pairs[-1][1] - 1) < 0.15)

text = (CONFIGS / "theorem3_n3.toml").read_text()
passed, tsv, js = gt.run("trace-identity", text)
check("trace identity scenario passes", passed and json.loads(js)["pass"])
check("reports are deterministic", gt.run("trace-identity", text)[1] == tsv)

try:
    gt.run("trace-identity", (CONFIGS / "bad_tower.toml").read_text())
    check("bad tower rejected", False)
except ValueError as e:
    check(f"bad tower rejected: {e}", True)
