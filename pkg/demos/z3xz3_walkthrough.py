"""Z/3 x Z/3 acting on a six-vertex quiver: Q_G, W_G and the dg check.

Run with ``python demos/z3xz3_walkthrough.py``.
"""
from qpskew.action import make_choices
from qpskew.construct import Transport
from qpskew.ginzburg import Phi, perturb, verify_dg_iso
from qpskew.instance import bundled
from qpskew.quiver import format_path

inst = bundled("paper_z3xz3")
act, _, W = inst.monomial()
choices = make_choices(act, inst.choices_seed)
print("representatives:", choices.I_tilde)
print("arrow characters:", {a: str(choices.chi[a]) for a in choices.distinguished})

T = Transport(act, choices)
qg = T.qg
print(f"\nQ_G has {len(qg.vertices)} vertices and {len(qg.arrows)} arrows")
for a, (s, t) in sorted(qg.arrows.items(), key=lambda kv: str(kv[0])):
    print(f"  {a}: {s} -> {t}")

# W is G-invariant, so x1^3, x2^3, x3^3 all appear; each lands on the same
# cycle of Q_G and picks up one term per rotation
WG = T.compute_WG(W)
print("\nW_G:")
for c, x in WG.sorted_terms():
    print(f"  {x} * {format_path(qg, c)}")

rep = verify_dg_iso(Phi(T, W, WG))
print("\nPhi commutes with d on generators:", rep.passed)
for name, info in rep.checks.items():
    print(f"  check ({name}): {info['count']} cases")

# the same check with one coefficient doubled
bad = verify_dg_iso(Phi(T, W, perturb(WG)))
print("perturbed W_G passes:", bad.passed, "- first failure at check", bad.failures[0][0])
