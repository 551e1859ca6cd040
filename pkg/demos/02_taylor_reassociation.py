"""Expansion atoms, Taylor shifts, and why tail order never matters.

An atom (head + tails)^n is expanded in nonnegative powers of the tail sum,
so its normal form is (head, tail multiset, exponent).  Shifting a variable
extends tails; opposite tail entries cancel at construction; the head never
cancels.  Run: python3 demos/02_taylor_reassociation.py
"""
from vertexcalc.deltacalc import DeltaExpr, Term, normalize, taylor_shift, window_coeffs

e = DeltaExpr([Term(1, (("x", -3),))], ("x", "y", "z"))
print("start from x^-3")

ab_c = taylor_shift(taylor_shift(e, "x", (1, "y")), "x", (1, "z"))
a_bc = taylor_shift(taylor_shift(e, "x", (1, "z")), "x", (1, "y"))
print("shift by y then z:", ab_c.terms[0])
print("shift by z then y:", a_bc.terms[0])
print("same normal form:", normalize(ab_c).terms == normalize(a_bc).terms)

undone = taylor_shift(taylor_shift(e, "x", (1, "y")), "x", (-1, "y"))
print("shift by y then by -y:", normalize(undone).terms[0],
      "(the pair +y/-y cancelled in the tail)")

w = {"x": (-8, 0), "y": (0, 4), "z": (0, 4)}
diff = window_coeffs(ab_c - a_bc, w)
print(f"window check on {w}: difference has {len(diff)} nonzero coefficients")

# head cancellation is forbidden: (x + y - x)^2 stays inert
from vertexcalc.deltacalc import make_term
t = make_term(1, raw_atoms=[((1, "x"), ((1, "y"), (-1, "x")), 2)])
print("(x + y - x)^2 keeps its head:", t)
