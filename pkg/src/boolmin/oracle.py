"""Brute-force ground truth: exhaustive minimum-size searches, definitional
expressibility, and minimum unsatisfiable formulas.

Everything here works on solution bitmasks (one bit per assignment) and is
deliberately independent of the polynomial-time minimizers it validates.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import ResourceLimitError
from .model import (
    BApp,
    BFormula,
    BNode,
    BoolFunction,
    BVar,
    Clause,
    CnfFormula,
    ConstraintLanguage,
    Relation,
    SizeMeasure,
    all_assignments,
    clause_mask,
)

MAX_ORACLE_VARS = 8
MAX_ORACLE_CLAUSES = 8
MAX_ORACLE_BF_SIZE = 8


def _candidate_clauses(
    lang: ConstraintLanguage, n_vars: int, superset_of: int
) -> tuple[list[int], list[Clause]]:
    """Deduplicated clause masks (with a representative clause each) whose
    solution sets contain `superset_of`, in deterministic first-seen order."""
    masks: list[int] = []
    reps: list[Clause] = []
    seen: set[int] = set()
    for rel in lang.relations:
        for ids in product(range(n_vars), repeat=rel.arity):
            mask = clause_mask(rel, ids, n_vars)
            if mask in seen:
                continue
            seen.add(mask)
            if mask & superset_of == superset_of:
                masks.append(mask)
                reps.append(Clause(rel.name, ids))
    return masks, reps


def _min_cover(masks: list[int], universe: int, k_max: int) -> list[int] | None:
    """Smallest selection of masks (as candidate indices) whose non-solution
    sets cover `universe`; None if impossible within k_max.

    Every candidate mask contains the target solution set, so a selection is
    an exact conjunction iff its exclusions cover all non-solutions.
    """
    if universe == 0:
        return []
    elements = [i for i in range(universe.bit_length()) if (universe >> i) & 1]
    coverers: dict[int, list[int]] = {}
    for e in elements:
        cov = [ci for ci, m in enumerate(masks) if not (m >> e) & 1]
        if not cov:
            return None
        coverers[e] = cov

    def dfs(uncovered: int, depth: int, chosen: list[int]) -> list[int] | None:
        if uncovered == 0:
            return list(chosen)
        if depth == 0:
            return None
        # fail-first: branch on the uncovered assignment with fewest options
        best_cov = None
        for e in elements:
            if (uncovered >> e) & 1:
                cov = coverers[e]
                if best_cov is None or len(cov) < len(best_cov):
                    best_cov = cov
                    if len(cov) == 1:
                        break
        for ci in best_cov:
            chosen.append(ci)
            result = dfs(uncovered & masks[ci], depth - 1, chosen)
            chosen.pop()
            if result is not None:
                return result
        return None

    for k in range(1, k_max + 1):
        result = dfs(universe, k, [])
        if result is not None:
            return result
    return None


def brute_min_cnf(
    lang: ConstraintLanguage, formula: CnfFormula, k_max: int
) -> tuple[int, CnfFormula] | None:
    """Smallest clause count (within k_max) of a lang-formula over the same
    variables equivalent to `formula`, with a witness."""
    n = formula.n_vars
    if n > MAX_ORACLE_VARS:
        raise ResourceLimitError(f"brute_min_cnf supports at most {MAX_ORACLE_VARS} variables")
    if k_max > MAX_ORACLE_CLAUSES:
        raise ResourceLimitError(f"brute_min_cnf supports k_max up to {MAX_ORACLE_CLAUSES}")
    target = formula.solution_mask()
    masks, reps = _candidate_clauses(lang, n, target)
    universe = ((1 << (1 << n)) - 1) & ~target
    picked = _min_cover(masks, universe, k_max)
    if picked is None:
        return None
    witness = CnfFormula(
        lang, formula.var_names, tuple(reps[ci] for ci in picked), formula.language_path
    )
    return len(picked), witness


def expressible(rel: Relation, base: ConstraintLanguage, clause_bound: int) -> bool:
    """True iff a conjunction of at most clause_bound base-clauses over
    exactly R's variables (no auxiliaries) expresses R."""
    n = rel.arity
    if n > 4:
        raise ResourceLimitError("expressible supports relations of arity at most 4")
    if clause_bound > MAX_ORACLE_CLAUSES:
        raise ResourceLimitError(f"clause bound capped at {MAX_ORACLE_CLAUSES}")
    target = 0
    for code in rel.codes:
        target |= 1 << code
    masks, _ = _candidate_clauses(base, n, target)
    universe = ((1 << (1 << n)) - 1) & ~target
    return _min_cover(masks, universe, clause_bound) is not None


@lru_cache(maxsize=None)
def min_unsat_formula(lang: ConstraintLanguage, clause_bound: int = 4) -> CnfFormula | None:
    """Minimum-clause unsatisfiable lang-formula, or None if every formula
    within the bound is satisfiable.

    Searched over a single variable first (identifying all variables keeps an
    unsatisfiable formula unsatisfiable without raising the clause count, so
    the one-variable search is already exhaustive), then widened to two
    variables as a safety net.
    """
    if clause_bound > MAX_ORACLE_CLAUSES:
        raise ResourceLimitError(f"clause bound capped at {MAX_ORACLE_CLAUSES}")
    for n in (1, 2):
        var_names = tuple(f"u{i}" for i in range(n))
        masks, reps = _candidate_clauses(lang, n, 0)
        universe = (1 << (1 << n)) - 1
        picked = _min_cover(masks, universe, clause_bound)
        if picked is not None:
            clauses = tuple(reps[ci] for ci in picked)
            return CnfFormula(lang, var_names, clauses)
    return None


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _formula_mask(formula: BFormula, pool: tuple[str, ...]) -> int:
    mask = 0
    for idx, bits in enumerate(all_assignments(len(pool))):
        if formula.eval(dict(zip(pool, bits))):
            mask |= 1 << idx
    return mask


def _apply_masks(f: BoolFunction, child_masks: tuple[int, ...], full: int) -> int:
    """Pointwise application of f to child solution masks via bit algebra."""
    out = 0
    for code in range(1 << f.arity):
        if not f.table[code]:
            continue
        term = full
        for i, m in enumerate(child_masks):
            term &= m if (code >> (f.arity - 1 - i)) & 1 else full & ~m
            if not term:
                break
        out |= term
    return out


def brute_min_bformula(
    basis: tuple[BoolFunction, ...],
    formula: BFormula,
    measure: SizeMeasure,
    bound: int,
) -> tuple[int, BFormula] | None:
    """Exhaustive enumeration of basis-formula trees up to `bound` leaves or
    gates; smallest size of one equivalent to `formula`, with a witness.

    Enumeration is semantic: per size level, trees are deduplicated by their
    truth table over var(formula) plus one fresh variable.  Any tree can be
    renamed into that pool without changing its function or size (variables
    irrelevant to the tree may share one name), so the search is exact.
    """
    if bound > MAX_ORACLE_BF_SIZE:
        raise ResourceLimitError(f"brute_min_bformula bound capped at {MAX_ORACLE_BF_SIZE}")
    fresh = "w"
    while fresh in formula.var_names:
        fresh += "w"
    pool = tuple(sorted(set(formula.var_names) | {fresh}))
    full = (1 << (1 << len(pool))) - 1
    target = _formula_mask(formula, pool)
    var_masks: dict[str, int] = {}
    for i, name in enumerate(pool):
        mask = 0
        for idx in range(1 << len(pool)):
            if (idx >> (len(pool) - 1 - i)) & 1:
                mask |= 1 << idx
        var_masks[name] = mask

    if measure is SizeMeasure.LITERALS:
        levels = _levels_by_literals(basis, var_masks, full, bound)
    elif measure is SizeMeasure.GATES:
        levels = _levels_by_gates(basis, var_masks, full, bound)
    else:
        raise ValueError("B-formula sizes are literal or gate counts")

    for size in sorted(levels):
        if target in levels[size]:
            return size, BFormula(basis, levels[size][target])
    return None


def _levels_by_literals(basis, var_masks, full, bound):
    """levels[s] maps truth-table mask -> some tree with exactly s leaves."""
    levels: dict[int, dict[int, BNode]] = {s: {} for s in range(bound + 1)}
    for name, mask in var_masks.items():
        levels[1][mask] = BVar(name)
    # constant applications add size-0 subtrees and unary/constant feedback
    # within a level, so iterate to a fixpoint
    changed = True
    while changed:
        changed = False
        for size in range(bound + 1):
            for f in basis:
                if f.arity == 0 and size != 0:
                    continue
                for split in _compositions(size, f.arity):
                    for combo in product(*(list(levels[s].items()) for s in split)):
                        out = _apply_masks(f, tuple(m for m, _ in combo), full)
                        if out not in levels[size]:
                            levels[size][out] = BApp(f.name, tuple(t for _, t in combo))
                            changed = True
    return levels


def _levels_by_gates(basis, var_masks, full, bound):
    """levels[g] maps truth-table mask -> some tree with exactly g gates."""
    levels: dict[int, dict[int, BNode]] = {g: {} for g in range(bound + 1)}
    for name, mask in var_masks.items():
        levels[0][mask] = BVar(name)
    for g in range(1, bound + 1):
        for f in basis:
            for split in _compositions(g - 1, f.arity):
                for combo in product(*(list(levels[s].items()) for s in split)):
                    out = _apply_masks(f, tuple(m for m, _ in combo), full)
                    if out not in levels[g]:
                        levels[g][out] = BApp(f.name, tuple(t for _, t in combo))
    return levels
