import random

import pytest

from boolmin.errors import ClassificationError
from boolmin.formats import parse_bformula
from boolmin.model import (
    BFormula,
    BVar,
    SizeMeasure,
    dualize,
    equivalent,
    formula_size,
)
from boolmin.oracle import brute_min_bformula
from boolmin.post import (
    FuncTuple,
    gate_lower_bound,
    min_post,
    relevant_variables,
    tuple_compose,
    tuple_identify,
)
from boolmin.std import fn_and, fn_const, fn_or, fn_xor

from conftest import random_bformula


def test_tuple_compose_rules():
    # OR class: substituting into a relevant slot merges both tuples
    t = tuple_compose(FuncTuple(0, 2, 2, 1), FuncTuple(0, 2, 2, 1), "relevant", "V")
    assert (t.c, t.l, t.n, t.g) == (0, 3, 3, 2)
    # irrelevant substitution leaves c and l alone
    t = tuple_compose(FuncTuple(0, 1, 2, 1), FuncTuple(0, 1, 1, 0), "irrelevant", "V")
    assert (t.c, t.l, t.n) == (0, 1, 2)
    # XOR class: constants add mod 2
    t = tuple_compose(FuncTuple(1, 2, 2, 1), FuncTuple(1, 2, 2, 1), "relevant", "L")
    assert (t.c, t.l, t.n) == (0, 3, 3)
    # OR class turning constant-1 loses all relevant variables
    t = tuple_compose(FuncTuple(0, 2, 2, 1), FuncTuple(1, 0, 1, 1), "relevant", "V")
    assert (t.c, t.l) == (1, 0)
    with pytest.raises(ValueError):
        tuple_compose(FuncTuple(0, 0, 1, 1), FuncTuple(0, 1, 1, 0), "relevant", "V")
    with pytest.raises(ValueError):
        tuple_compose(FuncTuple(0, 2, 2, 1), FuncTuple(0, 1, 1, 0), "irrelevant", "V")


def test_tuple_identify_rules():
    assert tuple_identify(FuncTuple(0, 2, 2, 1), "V").l == 1
    assert tuple_identify(FuncTuple(0, 2, 2, 1), "L").l == 0
    assert tuple_identify(FuncTuple(1, 3, 3, 1), "L").l == 1
    with pytest.raises(ValueError):
        tuple_identify(FuncTuple(0, 1, 2, 1), "V")


def test_relevant_variables():
    or2 = fn_or(2)
    f = parse_bformula("(or2 x (or2 x y))", (or2,))
    rel, c = relevant_variables(f, "V")
    assert rel == frozenset({"x", "y"}) and c == 0
    xor2 = fn_xor(2)
    g = parse_bformula("(xor2 x x)", (xor2,))
    rel, c = relevant_variables(g, "L")
    assert rel == frozenset() and c == 0
    and2 = fn_and(2)
    h = parse_bformula("(and2 x y)", (and2,))
    rel, c = relevant_variables(h, "E")
    assert rel == frozenset({"x", "y"}) and c == 1
    with pytest.raises(ClassificationError):
        relevant_variables(h, "V")


def test_min_post_examples():
    or2, or3, xor2, and2 = fn_or(2), fn_or(3), fn_xor(2), fn_and(2)
    phi = parse_bformula("(or2 x (or2 x y))", (or2,))
    size, witness, stats = min_post((or2,), phi, SizeMeasure.LITERALS)
    assert size == 2 and equivalent(witness, phi)
    assert stats.lines()[1] == "min_size=2"

    phi = parse_bformula("(or3 x y y)", (or3,))
    size, witness, _ = min_post((or3,), phi, SizeMeasure.LITERALS)
    assert size == 3 and equivalent(witness, phi)

    phi = parse_bformula("(xor2 x x)", (xor2,))
    size, witness, _ = min_post((xor2,), phi, SizeMeasure.GATES)
    assert size == 1 and equivalent(witness, phi)

    phi = parse_bformula("(and2 x (and2 y x))", (and2,))
    size, witness, _ = min_post((and2,), phi, SizeMeasure.LITERALS)
    assert size == 2 and equivalent(witness, phi)


def test_min_post_with_constants():
    or2, c0 = fn_or(2), fn_const(0)
    phi = parse_bformula("(or2 x (or2 x y))", (or2, c0))
    size, witness, _ = min_post((or2, c0), phi, SizeMeasure.LITERALS)
    assert size == 2 and equivalent(witness, phi)
    # a constant-0 leaf lets a bare irrelevant occurrence disappear
    phi2 = parse_bformula("(or2 x (const0))", (or2, c0))
    size2, witness2, _ = min_post((or2, c0), phi2, SizeMeasure.LITERALS)
    assert size2 == 1 and equivalent(witness2, phi2)


def test_min_post_rejects_mixed_basis():
    with pytest.raises(ClassificationError):
        min_post((fn_and(2), fn_xor(2)), BFormula((fn_and(2), fn_xor(2)), BVar("x")), SizeMeasure.LITERALS)


def test_min_post_unreachable_target():
    # x xor y cannot be built from xor3 alone (parity of relevant count is odd)
    xor3, xor2 = fn_xor(3), fn_xor(2)
    phi = parse_bformula("(xor2 x y)", (xor2,))
    assert min_post((xor3,), phi, SizeMeasure.LITERALS) is None


def test_min_post_matches_oracle_small():
    rng = random.Random(61)
    bases = [(fn_or(2),), (fn_or(3),), (fn_xor(2),), (fn_and(2),)]
    for basis in bases:
        for _ in range(15):
            phi = random_bformula(basis, rng, rng.randint(1, 5))
            for measure in (SizeMeasure.LITERALS, SizeMeasure.GATES):
                res = min_post(basis, phi, measure)
                assert res is not None
                size, witness, _ = res
                assert equivalent(witness, phi)
                assert formula_size(witness, measure) == size
                oracle = brute_min_bformula(basis, phi, measure, 6)
                assert oracle is not None and oracle[0] == size


def test_min_post_duality():
    rng = random.Random(67)
    or23 = (fn_or(2), fn_or(3))
    for _ in range(20):
        phi = random_bformula(or23, rng, rng.randint(1, 5))
        dual_basis = tuple(dualize(f) for f in or23)
        dual_phi = dualize(phi)
        for measure in (SizeMeasure.LITERALS, SizeMeasure.GATES):
            a = min_post(or23, phi, measure)
            b = min_post(dual_basis, dual_phi, measure)
            assert a is not None and b is not None
            assert a[0] == b[0]


def test_gate_lower_bound():
    assert gate_lower_bound(1, 2) == 0
    assert gate_lower_bound(4, 2) == 3
    assert gate_lower_bound(7, 3) == 3
    assert gate_lower_bound(6, 3) == 3
    rng = random.Random(71)
    basis = (fn_or(2), fn_or(3))
    for _ in range(20):
        phi = random_bformula(basis, rng, rng.randint(2, 6))
        res = min_post(basis, phi, SizeMeasure.GATES)
        rel, _ = relevant_variables(phi, "V")
        if res is not None and len(rel) >= 2:
            assert res[0] >= gate_lower_bound(len(rel), 3)
