"""Minimization over irreducible affine languages: clauses become GF(2)
equations and a maximal linearly independent subset of them is minimum."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ClassificationError
from .model import Clause, CnfFormula, Relation
from .oracle import min_unsat_formula


def parity_constant(rel: Relation) -> int | None:
    """The constant c if R is x1 xor ... xor xn = c, else None.

    These are exactly the irreducible affine relations (single-variable
    literals included, as 1-ary parity relations).
    """
    n = rel.arity
    if len(rel.tuples) != 1 << (n - 1):
        return None
    constants = {sum(t) % 2 for t in rel.tuples}
    if len(constants) != 1:
        return None
    return constants.pop()


def clause_to_equation(clause: Clause, rel: Relation) -> tuple[int, int]:
    """GF(2) row (coefficient bitmask keyed by variable id, constant bit).

    Repeated variables in a clause cancel pairwise.
    """
    c = parity_constant(rel)
    if c is None:
        raise ClassificationError(
            f"relation {rel.name} is not an XOR clause; language misclassified as irreducible affine"
        )
    coeffs = 0
    for v in clause.vars:
        coeffs ^= 1 << v
    return coeffs, c


@dataclass(frozen=True)
class MinimizeStats:
    input_clauses: int
    output_clauses: int
    passes: int = 0
    rank: int | None = None

    def lines(self) -> list[str]:
        out = [
            f"input_clauses={self.input_clauses}",
            f"output_clauses={self.output_clauses}",
            f"passes={self.passes}",
        ]
        if self.rank is not None:
            out.append(f"rank={self.rank}")
        return out


def min_affine(formula: CnfFormula) -> tuple[CnfFormula, MinimizeStats]:
    """Keep a maximal independent subset of clause rows, greedily in input
    order; inconsistent systems yield the cached minimum unsatisfiable
    formula for the language."""
    lang = formula.language
    rows = []
    for idx, clause in enumerate(formula.clauses):
        rel = lang.get(clause.relation)
        rows.append((clause_to_equation(clause, rel), idx))

    # incremental elimination; each basis row is (pivot bit, coeffs, const)
    basis: list[tuple[int, int, int]] = []
    kept: list[int] = []
    inconsistent = False
    for (coeffs, const), idx in rows:
        for pivot, bcoeffs, bconst in basis:
            if coeffs & pivot:
                coeffs ^= bcoeffs
                const ^= bconst
        if coeffs == 0:
            if const == 1:
                inconsistent = True
                break
            continue
        pivot = 1 << (coeffs.bit_length() - 1)
        basis.append((pivot, coeffs, const))
        kept.append(idx)

    if inconsistent:
        unsat = min_unsat_formula(lang)
        assert unsat is not None, "inconsistent system but no unsatisfiable formula exists"
        stats = MinimizeStats(len(formula.clauses), len(unsat.clauses), rank=None)
        return unsat, stats

    out = CnfFormula(
        lang,
        formula.var_names,
        tuple(formula.clauses[i] for i in kept),
        formula.language_path,
    )
    stats = MinimizeStats(len(formula.clauses), len(kept), rank=len(kept))
    return out, stats
