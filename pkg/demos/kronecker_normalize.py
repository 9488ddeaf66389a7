"""Z/2 swapping the two arrows of the Kronecker quiver.

The action is not diagonal, so normalization picks the eigenbasis first.
"""
from qpskew.action import chi_of
from qpskew.construct import Transport
from qpskew.instance import bundled

inst = bundled("kronecker_z2")
act, base_change, _ = inst.monomial()
for new, combo in base_change.items():
    expr = " + ".join(f"({c})*{old}" for old, c in combo.items())
    print(f"{new} = {expr}   character {chi_of(act, new)}")

T = Transport(act)
qg = T.qg
print(f"\nQ_G: {len(qg.vertices)} vertices, {len(qg.arrows)} arrows")
A = T.algebra
for v in qg.vertices:
    for w in qg.vertices:
        n = len(qg.arrows_between(v, w))
        if n:
            print(f"  {v} -> {w}: {n} arrow(s), corner dimension "
                  f"{A.corner_dimension(v.rep, v.rho, w.rep, w.rho)}")
