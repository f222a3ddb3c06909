"""Walk through the structural classification machinery: closure properties,
irreducibility, the dichotomy verdict for languages, and basis shapes.

Run from the repository root:  python demos/demo_classification.py
"""
import os

from boolmin import (
    ConstraintLanguage,
    Relation,
    classify_basis,
    classify_language,
    closed_under,
    find_positive_horn_witness,
    function_shape,
    is_irreducible,
)
from boolmin.classify import report_lines
from boolmin.formats import load_language
from boolmin.std import fn_and, fn_const, fn_or, fn_xor, rel_or, rel_parity, rel_xor

DATA = os.path.join(os.path.dirname(__file__), "data")

# --- closure properties decide the Schaefer classes -------------------------
# Each class has a characteristic coordinatewise operation; a relation is in
# the class iff applying the operation to its tuples never leaves the relation.
imp = Relation("imp", 2, frozenset({(0, 0), (0, 1), (1, 1)}))
print("implication closed under min2 (Horn)?       ", closed_under(imp, "min2"))
print("implication closed under xor3 (affine)?     ", closed_under(imp, "xor3"))
print("2-element xor relation IHSB+ (orAndMix)?    ", closed_under(rel_xor(), "orAndMix"))
print("3-wide OR bijunctive (maj3)?                ", closed_under(rel_or(3), "maj3"))
print()

# --- irreducibility ----------------------------------------------------------
# A relation is irreducible when it cannot be split into clauses that each
# miss one of its variables.  OR over three variables is; x or (y and z) is
# not, because it equals (x or y) and (x or z).
mix = Relation("mix", 3, frozenset({(1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1), (0, 1, 1)}))
print("OR^3 irreducible?          ", is_irreducible(rel_or(3)))
print("x or (y and z) irreducible?", is_irreducible(mix))
print("parity clause irreducible? ", is_irreducible(rel_parity(3, 1)))
print()

# --- language verdicts --------------------------------------------------------
base = load_language(os.path.join(DATA, "ihsb_base.lang"))
print("ihsb_base.lang report:")
for line in report_lines(classify_language(base)):
    if not line[0].islower() or line.startswith(("verdict", "schaefer", "irreducible")):
        print("  " + line)
print()

# a Horn language that can express x1 and x2 -> y is NP-complete territory;
# the report carries the structural witness
horn3 = Relation("horn", 3, frozenset(t for t in __import__("itertools").product((0, 1), repeat=3) if t != (1, 1, 0)))
horn_lang = ConstraintLanguage((horn3,))
report = classify_language(horn_lang)
print("verdict for {x and y -> z}:", report.verdict)
print("witness:", find_positive_horn_witness(horn_lang))
print()

# --- basis shapes --------------------------------------------------------------
# Minimizing nested formulas is easy exactly when the basis sticks to one of
# the three shapes; constants belong to all of them.
print("{or2, or3}:          ", classify_basis((fn_or(2), fn_or(3))))
print("{const1, and2}:      ", classify_basis((fn_const(1), fn_and(2))))
print("{xor2}:              ", classify_basis((fn_xor(2),)))
print("{and2, xor2}:        ", classify_basis((fn_and(2), fn_xor(2))))
shape = function_shape(fn_or(2))
print("or2 shape flags: or =", shape.or_function, " and =", shape.and_function,
      " xor =", shape.xor_function, " relevant =", sorted(shape.relevant))
