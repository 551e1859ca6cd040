"""The statement family (A)-(G) on a concrete triple of Laurent series.

A rational form p / ((x1-x2)^a x1^b x2^c) generates a matched triple
(f, g, h); the demo replays the implication chain: the generated pair
satisfies (E)/(F)/(G), the three-term delta combination (A) vanishes on a
window, pole witnesses exist for (B)/(C)/(D), and the numerator is
reconstructed from the cleared products and re-expands to the originals.
Run: python3 demos/03_rational_forms.py
"""
from vertexcalc.rationalforms import (
    IMPLICATIONS,
    RationalForm,
    check_A,
    find_pole_witness,
    instance_from_form,
    reconstruct_form,
    replay_implication,
)

form = RationalForm({(1, 0): 2, (0, 2): -1}, a=2, b=1, c=0)
print("generator: p = 2*x1 - x2^2 over (x1-x2)^2 * x1")
inst = instance_from_form(form, N=6)
print(f"f has {len(inst.f.coeffs)} stored monomials on its window")

ok, _ = check_A(inst, 6)
print("statement (A) on [-6,6]^3:", "holds" if ok else "fails")

for kind, pole in (("m1", form.a), ("m2", form.b), ("m3", form.c)):
    m = find_pole_witness(inst, kind, pole + 2, 6)
    print(f"pole witness {kind}: m = {m} (generator pole {pole})")

rebuilt = reconstruct_form(inst, "m1", find_pole_witness(inst, "m1", 4, 6), 6)
print("reconstructed numerator:", dict(sorted(rebuilt.numerator.items())))

print("\nfull implication replay:")
for which in IMPLICATIONS:
    rec = replay_implication(which, inst, N=6)
    print(f"  ({which}): {rec['verdict']}")

bad = inst.perturb_f((0, 0), 1)
okA, witness = check_A(bad, 6)
print("\nperturb f by +1*x1^0*x2^0: (A)", "holds" if okA else
      f"fails at {witness[0]}")
