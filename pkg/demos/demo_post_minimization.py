"""Minimizing nested formulas over single-shape bases with the tuple dynamic
program, for both size measures.

Run from the repository root:  python demos/demo_post_minimization.py
"""
import os

from boolmin import SizeMeasure, brute_min_bformula, equivalent, min_post
from boolmin.formats import load_bformula, load_functions, parse_bformula, serialize_bformula
from boolmin.std import fn_and, fn_xor

DATA = os.path.join(os.path.dirname(__file__), "data")

# --- an OR basis -----------------------------------------------------------
# or2(x, or3(x, y, or2(y, x))) just says x or y; two leaves suffice
basis = load_functions(os.path.join(DATA, "or_basis.fns"))
phi = load_bformula(os.path.join(DATA, "nested_or.bf"), basis)
for measure in (SizeMeasure.LITERALS, SizeMeasure.GATES):
    size, witness, stats = min_post(basis, phi, measure)
    print(f"{measure.value:8s}: min = {size}, witness = {serialize_bformula(witness).strip()}")
    print("   stats:", "; ".join(stats.lines()))
    oracle = brute_min_bformula(basis, phi, measure, 7)
    print("   brute force agrees:", oracle[0] == size)
print()

# --- an XOR basis: cancellation ----------------------------------------------
# x xor x is the constant 0; the cheapest equivalent still needs one gate
xor_basis = load_functions(os.path.join(DATA, "xor_basis.fns"))
zero = parse_bformula("(xor2 x x)", xor_basis)
size, witness, _ = min_post(xor_basis, zero, SizeMeasure.GATES)
print("constant-zero over {xor2}: gates =", size, " witness =", serialize_bformula(witness).strip())

# --- an AND basis runs through duality -----------------------------------------
and_basis = (fn_and(2),)
psi = parse_bformula("(and2 x (and2 y (and2 x y)))", and_basis)
size, witness, _ = min_post(and_basis, psi, SizeMeasure.LITERALS)
print("x and y with repeats:      literals =", size, " witness =", serialize_bformula(witness).strip())
print("witness equivalent:", equivalent(witness, psi))

# --- an unreachable target -------------------------------------------------------
# two-variable parity cannot be produced by xor3 alone: every xor3 tree has an
# odd number of relevant variables
xor3 = (fn_xor(3),)
two_parity = parse_bformula("(xor2 x y)", xor_basis)
print("x xor y over {xor3}:", min_post(xor3, two_parity, SizeMeasure.LITERALS))
