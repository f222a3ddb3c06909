"""The three polynomial-time CNF minimizers, each cross-checked against the
brute-force oracle.

Run from the repository root:  python demos/demo_cnf_minimization.py
"""
import os

from boolmin import brute_min_cnf, equivalent, min_affine, min_bijunctive, min_ihsb_cnf
from boolmin.formats import load_cnf_formula, serialize_cnf_formula

DATA = os.path.join(os.path.dirname(__file__), "data")


def show(title, formula, minimizer):
    out, stats = minimizer(formula)
    print(f"--- {title}")
    print(f"input clauses:  {len(formula.clauses)}")
    print(f"output clauses: {len(out.clauses)}")
    print(serialize_cnf_formula(out).rstrip())
    print("equivalent to input:", equivalent(out, formula))
    oracle = brute_min_cnf(formula.language, formula, max(1, len(formula.clauses)))
    print("matches brute-force minimum:", oracle is not None and oracle[0] == len(out.clauses))
    print()
    return out


# --- the implication/OR fixpoint minimizer ------------------------------------
# (x or y) subsumes (x or y or z); the implications x->z, y->z survive as a
# transitive-reduced component.
redundant = load_cnf_formula(os.path.join(DATA, "redundant.cnf"))
show("OR subsumption plus implication structure", redundant, min_ihsb_cnf)

# chains collapse to their transitive reduction; 2-cycles become equalities
chain = load_cnf_formula(os.path.join(DATA, "chain.cnf"))
show("implication chain with a cycle", chain, min_ihsb_cnf)

# --- linear algebra over GF(2) --------------------------------------------------
# the third equation is the sum of the first two, so the rank-2 subset wins
equations = load_cnf_formula(os.path.join(DATA, "equations.cnf"))
show("dependent parity equations", equations, min_affine)

# --- binary clause graphs --------------------------------------------------------
# build a 2-clause formula inline: (x->y),(y->x),(x->z),(y->z)
from boolmin.formats import parse_cnf_formula

text = """
language two_clause.lang
vars x y z
clause imp x y
clause imp y x
clause imp x z
clause imp y z
"""
bij = parse_cnf_formula(text, DATA)
show("literal-graph minimization", bij, min_bijunctive)
