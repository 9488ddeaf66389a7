"""Run the full check suite over a random corpus and print a table.

    python demos/corpus_check.py [N] [SEED]
"""
import sys
import time

from qpskew.action import make_choices
from qpskew.checks import run_suite
from qpskew.construct import Transport
from qpskew.corpus import corpus
from qpskew.instance import parse_instance

n = int(sys.argv[1]) if len(sys.argv) > 1 else 20
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

totals = {}
t0 = time.perf_counter()
for k, data in enumerate(corpus(n, seed=seed)):
    inst = parse_instance(data)
    act, _, W = inst.monomial()
    T = Transport(act, make_choices(act, inst.choices_seed))
    res = run_suite(T, W, T.compute_WG(W))
    flags = " ".join("." if r["passed"] else "F" for r in res.values())
    print(f"{k:3d} G={data['group']!s:7} |Q_G|={len(T.qg.vertices):2d}/{len(T.qg.arrows):2d}  {flags}")
    for name, r in res.items():
        ok, cases, secs = totals.get(name, (True, 0, 0.0))
        totals[name] = (ok and r["passed"], cases + r["count"], secs + r["seconds"])

print()
for name, (ok, cases, secs) in totals.items():
    print(f"{name:11} {'PASS' if ok else 'FAIL'}  {cases:6d} cases  {secs:6.2f} s")
print(f"total {time.perf_counter() - t0:.1f} s")
