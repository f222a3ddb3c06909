"""Builders for the standard relations and functions used across the package."""
from __future__ import annotations

from .model import BoolFunction, ConstraintLanguage, Relation, all_assignments


def rel_pos(name: str = "pos") -> Relation:
    return Relation(name, 1, frozenset({(1,)}))


def rel_neg(name: str = "neg") -> Relation:
    return Relation(name, 1, frozenset({(0,)}))


def rel_or(arity: int, name: str | None = None) -> Relation:
    tuples = frozenset(t for t in all_assignments(arity) if any(t))
    return Relation(name or f"or{arity}", arity, tuples)


def rel_nand(arity: int, name: str | None = None) -> Relation:
    tuples = frozenset(t for t in all_assignments(arity) if not all(t))
    return Relation(name or f"nand{arity}", arity, tuples)


def rel_impl(name: str = "imp") -> Relation:
    return Relation(name, 2, frozenset({(0, 0), (0, 1), (1, 1)}))


def rel_eq(name: str = "eq") -> Relation:
    return Relation(name, 2, frozenset({(0, 0), (1, 1)}))


def rel_xor(name: str = "xor") -> Relation:
    return Relation(name, 2, frozenset({(0, 1), (1, 0)}))


def rel_parity(arity: int, constant: int, name: str | None = None) -> Relation:
    """x1 xor ... xor xn = constant."""
    tuples = frozenset(t for t in all_assignments(arity) if sum(t) % 2 == constant)
    return Relation(name or f"parity{arity}_{constant}", arity, tuples)


def rel_horn_impl(k: int, name: str | None = None) -> Relation:
    """x1 and ... and xk -> y as a (k+1)-ary relation."""
    arity = k + 1
    missing = tuple([1] * k + [0])
    tuples = frozenset(t for t in all_assignments(arity) if t != missing)
    return Relation(name or f"horn{k}", arity, tuples)


def theorem9_language(max_or_arity: int = 3) -> ConstraintLanguage:
    """The base vocabulary {x, not-x, ->, =, OR^2..OR^m}."""
    rels = [rel_pos(), rel_neg(), rel_impl(), rel_eq()]
    rels += [rel_or(m) for m in range(2, max_or_arity + 1)]
    return ConstraintLanguage(tuple(rels))


def fn_or(arity: int, name: str | None = None) -> BoolFunction:
    table = tuple(1 if any(t) else 0 for t in all_assignments(arity))
    return BoolFunction(name or f"or{arity}", arity, table)


def fn_and(arity: int, name: str | None = None) -> BoolFunction:
    table = tuple(1 if all(t) else 0 for t in all_assignments(arity))
    return BoolFunction(name or f"and{arity}", arity, table)


def fn_xor(arity: int, constant: int = 0, name: str | None = None) -> BoolFunction:
    table = tuple((sum(t) + constant) % 2 for t in all_assignments(arity))
    default = f"xor{arity}" if constant == 0 else f"xnor{arity}"
    return BoolFunction(name or default, arity, table)


def fn_const(bit: int, name: str | None = None) -> BoolFunction:
    return BoolFunction(name or f"const{bit}", 0, (bit,))


def fn_not(name: str = "not") -> BoolFunction:
    return BoolFunction(name, 1, (1, 0))
