import random

import pytest

from boolmin.errors import ClassificationError
from boolmin.ihsb import (
    graph_from_cnf,
    language_templates,
    leadsto,
    match_base_template,
    min_ihsb_cnf,
    min_ihsb_minus_cnf,
    unsat_check_ihsb,
)
from boolmin.model import (
    Clause,
    CnfFormula,
    ConstraintLanguage,
    Relation,
    equivalent,
    satisfiable,
)
from boolmin.oracle import brute_min_cnf
from boolmin.std import rel_eq, rel_impl, rel_nand, rel_neg, rel_or, rel_pos

from conftest import random_cnf


def F(lang, names, *specs):
    return CnfFormula(lang, tuple(names), tuple(Clause(r, tuple(v)) for r, v in specs))


def minimize(f):
    out, stats = min_ihsb_cnf(f)
    assert equivalent(out, f)
    return out, stats


def test_template_matching():
    assert match_base_template(rel_pos()) == ("pos",)
    assert match_base_template(rel_neg()) == ("neg",)
    assert match_base_template(rel_impl()) == ("imp", False)
    flipped = Relation("pmi", 2, frozenset({(0, 0), (1, 0), (1, 1)}))
    assert match_base_template(flipped) == ("imp", True)
    assert match_base_template(rel_eq()) == ("eq",)
    assert match_base_template(rel_or(3)) == ("or", 3)
    assert match_base_template(rel_nand(2)) is None


def test_normalize_clause_orientations(t9):
    flipped = Relation("pmi", 2, frozenset({(0, 0), (1, 0), (1, 1)}))
    lang = ConstraintLanguage((rel_impl(), flipped))
    f = F(lang, "ab", ("imp", (0, 1)), ("pmi", (0, 1)))
    g, _ = graph_from_cnf(f)
    assert g.impl == {(0, 1), (1, 0)}


def test_misclassified_language_rejected():
    lang = ConstraintLanguage((rel_nand(2),))
    with pytest.raises(ClassificationError):
        language_templates(lang)


def test_leadsto(t9):
    f = F(t9, "xyz", ("imp", (0, 1)), ("imp", (1, 2)))
    g, _ = graph_from_cnf(f)
    assert leadsto(g, 0, 0)
    assert leadsto(g, 0, 2)
    assert not leadsto(g, 2, 0)
    h = F(t9, "xy", ("eq", (0, 1)),)
    g2, _ = graph_from_cnf(h)
    assert leadsto(g2, 1, 0) and leadsto(g2, 0, 1)


def test_unsat_check(t9):
    f = F(t9, "xy", ("pos", (0,)), ("imp", (0, 1)), ("neg", (1,)))
    g, _ = graph_from_cnf(f)
    assert unsat_check_ihsb(g)
    g2, _ = graph_from_cnf(F(t9, "xy", ("or2", (0, 1))))
    assert not unsat_check_ihsb(g2)
    g3, _ = graph_from_cnf(F(t9, "x", ("pos", (0,)), ("neg", (0,))))
    assert unsat_check_ihsb(g3)


def test_unsat_check_matches_truth_table(t9):
    rng = random.Random(97)
    for _ in range(120):
        f = random_cnf(t9, rng, rng.randint(2, 5), rng.randint(1, 6))
        g, _ = graph_from_cnf(f)
        assert unsat_check_ihsb(g) == (not satisfiable(f))


def test_empty_formula(t9):
    f = CnfFormula(t9, ("x",), ())
    out, stats = min_ihsb_cnf(f)
    assert out.clauses == () and stats.output_clauses == 0


def test_or_subsumption(t9):
    f = F(t9, "xyz", ("or2", (0, 1)), ("or3", (0, 1, 2)))
    out, _ = minimize(f)
    assert len(out.clauses) == 1
    assert out.clauses[0].relation == "or2"


def test_transitive_reduction(t9):
    f = F(t9, "xyz", ("imp", (0, 1)), ("imp", (1, 2)), ("imp", (0, 2)))
    out, _ = minimize(f)
    assert len(out.clauses) == 2


def test_cycle_collapse(t9):
    f = F(t9, "xy", ("imp", (0, 1)), ("imp", (1, 0)))
    out, _ = minimize(f)
    assert len(out.clauses) == 1
    assert out.clauses[0].relation == "eq"


def test_positive_propagation(t9):
    f = F(t9, "xy", ("pos", (0,)), ("imp", (0, 1)))
    out, _ = minimize(f)
    assert len(out.clauses) == 2
    assert {c.relation for c in out.clauses} == {"pos"}


def test_unsat_input_replaced(t9):
    f = F(t9, "xy", ("pos", (0,)), ("imp", (0, 1)), ("neg", (1,)))
    out, _ = min_ihsb_cnf(f)
    assert not satisfiable(out)
    assert len(out.clauses) == 2
    assert equivalent(out, f)


def test_restricted_vocabulary_eq_as_implications():
    lang = ConstraintLanguage((rel_impl(),))
    f = F(lang, "xy", ("imp", (0, 1)), ("imp", (1, 0)))
    out, _ = minimize(f)
    assert len(out.clauses) == 2
    assert {c.relation for c in out.clauses} == {"imp"}


def test_restricted_vocabulary_literal_as_or():
    lang = ConstraintLanguage((rel_or(2),))
    f = F(lang, "xy", ("or2", (0, 0)), ("or2", (0, 1)))
    out, _ = minimize(f)
    # x forces the whole thing; emitted as or2(x, x)
    assert len(out.clauses) == 1
    assert out.clauses[0] == Clause("or2", (0, 0))


def test_restricted_vocabulary_or_padding():
    lang = ConstraintLanguage((rel_or(3), rel_neg()))
    f = F(lang, "xyz", ("or3", (0, 1, 2)), ("neg", (2,)))
    out, _ = minimize(f)
    # z is false, so the or shrinks to {x, y} and pads back to arity 3
    assert Clause("or3", (0, 1, 1)) in out.clauses
    assert len(out.clauses) == 2


def test_ihsb_minus_examples():
    lang = ConstraintLanguage((rel_nand(2), rel_nand(3), rel_impl(), rel_neg()))
    f = F(lang, "xyz", ("nand2", (0, 1)), ("nand3", (0, 1, 2)))
    out, _ = min_ihsb_minus_cnf(f)
    assert len(out.clauses) == 1 and equivalent(out, f)
    g = F(lang, "xy", ("neg", (0,)), ("imp", (1, 0)))
    out, _ = min_ihsb_minus_cnf(g)
    assert len(out.clauses) == 2 and equivalent(out, g)
    assert {c.relation for c in out.clauses} == {"neg"}
    h = F(lang, "xy", ("nand2", (0, 1)))
    out, _ = min_ihsb_minus_cnf(h)
    assert out.clauses == h.clauses


def test_entailed_literal_appears(t9):
    # Fact 1: every entailed literal is present as a literal clause
    rng = random.Random(41)
    checked = 0
    while checked < 40:
        f = random_cnf(t9, rng, rng.randint(2, 5), rng.randint(1, 5))
        if not satisfiable(f):
            continue
        checked += 1
        out, _ = min_ihsb_cnf(f)
        pos_lits = {c.vars[0] for c in out.clauses if c.relation == "pos"}
        neg_lits = {c.vars[0] for c in out.clauses if c.relation == "neg"}
        for v in range(out.n_vars):
            forced_true = not satisfiable(
                CnfFormula(t9, f.var_names, f.clauses + (Clause("neg", (v,)),))
            )
            forced_false = not satisfiable(
                CnfFormula(t9, f.var_names, f.clauses + (Clause("pos", (v,)),))
            )
            if forced_true:
                assert v in pos_lits
            if forced_false:
                assert v in neg_lits


def test_entailed_implications_from_components(t9):
    # Fact 2: implications entailed by the output follow from its
    # implication, literal and equality parts alone
    rng = random.Random(43)
    checked = 0
    while checked < 25:
        f = random_cnf(t9, rng, rng.randint(2, 4), rng.randint(1, 5))
        if not satisfiable(f):
            continue
        checked += 1
        out, _ = min_ihsb_cnf(f)
        skeleton = CnfFormula(
            t9,
            out.var_names,
            tuple(c for c in out.clauses if c.relation in ("imp", "eq", "pos", "neg")),
        )
        for u in range(out.n_vars):
            for v in range(out.n_vars):
                if u == v:
                    continue
                test_clauses = (Clause("pos", (u,)), Clause("neg", (v,)))
                whole = not satisfiable(
                    CnfFormula(t9, out.var_names, out.clauses + test_clauses)
                )
                part = not satisfiable(
                    CnfFormula(t9, out.var_names, skeleton.clauses + test_clauses)
                )
                if whole:
                    assert part


def test_random_optimality_and_idempotence(t9):
    rng = random.Random(47)
    checked = 0
    while checked < 120:
        f = random_cnf(t9, rng, rng.randint(2, 6), rng.randint(1, 6))
        if not satisfiable(f):
            continue
        checked += 1
        out, _ = min_ihsb_cnf(f)
        assert equivalent(out, f)
        oracle = brute_min_cnf(t9, f, max(1, len(f.clauses)))
        assert len(out.clauses) == oracle[0]
        again, _ = min_ihsb_cnf(out)
        assert again.clauses == out.clauses
