#!/usr/bin/env python3
"""Smoke test for the totpos_py extension module.

Build and stage the module first:

    cargo build --release -p totpos-py
    cp target/release/libtotpos_py.so python/totpos_py.so

then run this script from the repository root (or anywhere).
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import totpos_py as tp


def check(label, ok):
    print(f"{label}: {'pass' if ok else 'FAIL'}")
    if not ok:
        sys.exit(1)


# Trichotomy of the entrywise power map at order p: total positivity above
# p-2, rank collapse at the integers below, negative minors in between.
check("classify_power above threshold", tp.classify_power(4, 2.5) == "tp")
check("classify_power rank collapse", tp.classify_power(4, 1.0) == "tn_rank_2")
check("classify_power bad power", tp.classify_power(4, 0.5) == "not_tn")

xs = [0.1, 0.7, 1.3, 2.1]
probe = tp.power_probe(xs, xs, 2.5)
check("power_probe agreement", probe["agrees"] and probe["predicted"] == "TP")

rows = tp.sample("jks", [-1.0, -0.5, 0.5, 1.0], [-2.0, -1.0, 1.0, 2.0])
check("hinge sample corner", rows[0][0] == 3.0 and rows[0][2] == 0.0)

verdict = tp.classify_sample("gaussian", [0.1, 0.5, 1.2], [0.1, 0.5, 1.2])
check("gaussian sample is totally positive", verdict["status"] == "TP")

sig = tp.predicted_signature(4, 1.0)
check("integer-power signature has zero orders", sig == [1, 1, 0, 0])

h = tp.homotopy([-8.5, 0.1], [1.0, 2.0], epsilon=1.0)
lo, hi = h["violations"]["interval"]
root = math.sqrt(61.0)
check(
    "homotopy failure interval endpoints",
    abs(lo - (8.0 - root) / 19.0) < 1e-9 and abs(hi - (8.0 + root) / 19.0) < 1e-9,
)

r = tp.loewner_test("positivity", [0.1, 0.2, 0.3], 0.5)
check("loewner positivity below threshold", r["verdict"] == "Violated" and r["predicted"] == "Violated")
r = tp.loewner_test("convexity", [0.1, 0.2, 0.3], 3.0)
check("loewner convexity at the threshold", r["verdict"] == "Preserved")

lt = tp.laplace_transform("omega", s_re=1.0)
closed = lt["closed_form"]["value"]
quad = lt["quadrature"]["value"]
check("one-sided bump transform closed form", abs(closed[0] - 0.25) < 1e-12 and abs(closed[1]) < 1e-12)
check("quadrature agrees with closed form", abs(quad[0] - closed[0]) < 1e-8)

v = tp.tn3_power_probe(0.5)
check("power 0.5 breaks order-3 nonnegativity", "Counterexample" in v and v["Counterexample"]["det"] < 0.0)
v = tp.tn3_power_probe(2.0)
check("power 2.0 preserves order-3 nonnegativity", v == "Preserves" or v.get("Preserves") is not None)

report = tp.run_probes(suites=["exact_reproduction", "homotopy", "tn3_power"], seed=7)
summary = report["summary"]
check("probe suites clean", summary["violations"] == 0 and summary["errors"] == 0)
check("report schema version", report["schema_version"] == 1)

print("all smoke tests passed")
