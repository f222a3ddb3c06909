"""Fixpoint minimization for formulas over irreducible IHSB+ languages, with
the IHSB- case handled by duality.

The algorithm rewrites a formula in the base vocabulary {x, not-x, ->, =,
OR^m} until no rule fires, then canonicalizes the implication and equality
components.  Rules only ever remove or shrink clauses, grow the literal sets,
or merge equality classes, so the loop terminates.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .affine import MinimizeStats
from .errors import ClassificationError, VocabularyError
from .model import Clause, CnfFormula, ConstraintLanguage, Relation
from .oracle import min_unsat_formula

IMP_TUPLES = frozenset({(0, 0), (0, 1), (1, 1)})
IMP_FLIPPED_TUPLES = frozenset({(0, 0), (1, 0), (1, 1)})
EQ_TUPLES = frozenset({(0, 0), (1, 1)})


def match_base_template(rel: Relation):
    """Classify a relation as one of the base shapes, or None.

    Returns ("pos",) / ("neg",) / ("imp", flipped) / ("eq",) / ("or", m).
    """
    if rel.arity == 1:
        if rel.tuples == frozenset({(1,)}):
            return ("pos",)
        if rel.tuples == frozenset({(0,)}):
            return ("neg",)
        return None
    if rel.arity == 2:
        if rel.tuples == IMP_TUPLES:
            return ("imp", False)
        if rel.tuples == IMP_FLIPPED_TUPLES:
            return ("imp", True)
        if rel.tuples == EQ_TUPLES:
            return ("eq",)
    if len(rel.tuples) == (1 << rel.arity) - 1 and all(any(t) for t in rel.tuples):
        return ("or", rel.arity)
    return None


@dataclass
class BaseTemplates:
    """Which base shapes the language offers, and through which relation."""

    pos: str | None = None
    neg: str | None = None
    imp: tuple[str, bool] | None = None
    eq: str | None = None
    or_arities: dict[int, str] = field(default_factory=dict)


def language_templates(lang: ConstraintLanguage) -> BaseTemplates:
    """Match every relation of the language against the base shapes.

    A mismatch means the language is not irreducible IHSB+ and was
    misclassified by the caller.
    """
    t = BaseTemplates()
    for rel in lang.relations:
        kind = match_base_template(rel)
        if kind is None:
            raise ClassificationError(
                f"relation {rel.name} is not an IHSB+ base shape; "
                "language misclassified as irreducible IHSB+"
            )
        if kind[0] == "pos" and t.pos is None:
            t.pos = rel.name
        elif kind[0] == "neg" and t.neg is None:
            t.neg = rel.name
        elif kind[0] == "imp" and t.imp is None:
            t.imp = (rel.name, kind[1])
        elif kind[0] == "eq" and t.eq is None:
            t.eq = rel.name
        elif kind[0] == "or" and kind[1] not in t.or_arities:
            t.or_arities[kind[1]] = rel.name
    return t


class ImplGraph:
    """Working state: literals, implications and OR-clauses over equality
    classes.  All non-equality structure refers to class representatives
    (the minimal variable of each class)."""

    def __init__(self, n: int):
        self.n = n
        self.parent = list(range(n))
        self.pos: set[int] = set()
        self.neg: set[int] = set()
        self.impl: set[tuple[int, int]] = set()
        self.ors: set[frozenset[int]] = set()

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return
        if ru > rv:
            ru, rv = rv, ru
        self.parent[rv] = ru

    def normalize(self) -> None:
        """Rewrite literals, implications and OR-clauses onto class
        representatives; collapsed OR-clauses become literals."""
        self.pos = {self.find(v) for v in self.pos}
        self.neg = {self.find(v) for v in self.neg}
        self.impl = {
            (self.find(u), self.find(v))
            for u, v in self.impl
            if self.find(u) != self.find(v)
        }
        new_ors: set[frozenset[int]] = set()
        for c in self.ors:
            reps = frozenset(self.find(x) for x in c)
            if len(reps) == 1:
                self.pos.add(next(iter(reps)))
            else:
                new_ors.add(reps)
        self.ors = new_ors

    def reach(self) -> dict[int, set[int]]:
        """Reachability over implication edges, including u leads to u."""
        adj: dict[int, set[int]] = {}
        for u, v in self.impl:
            adj.setdefault(u, set()).add(v)
        out: dict[int, set[int]] = {}

        def dfs(start: int) -> set[int]:
            if start in out:
                return out[start]
            seen = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for v in adj.get(u, ()):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            out[start] = seen
            return seen

        for node in range(self.n):
            dfs(node)
        return out

    def clause_count(self) -> int:
        classes: dict[int, int] = {}
        for v in range(self.n):
            r = self.find(v)
            classes[r] = classes.get(r, 0) + 1
        eq_clauses = sum(size - 1 for size in classes.values())
        return len(self.pos) + len(self.neg) + len(self.impl) + len(self.ors) + eq_clauses


def leadsto(g: ImplGraph, u: int, v: int) -> bool:
    """u leads to v through implications and equalities (u leads to u)."""
    ru, rv = g.find(u), g.find(v)
    if ru == rv:
        return True
    return rv in g.reach()[ru]


def graph_from_cnf(formula: CnfFormula) -> tuple[ImplGraph, BaseTemplates]:
    """normalize_to_base: rewrite every clause as a base clause."""
    templates = language_templates(formula.language)
    g = ImplGraph(formula.n_vars)
    for clause in formula.clauses:
        rel = formula.language.get(clause.relation)
        kind = match_base_template(rel)
        if kind[0] == "pos":
            g.pos.add(clause.vars[0])
        elif kind[0] == "neg":
            g.neg.add(clause.vars[0])
        elif kind[0] == "imp":
            a, b = clause.vars
            if kind[1]:
                a, b = b, a
            if a != b:
                g.impl.add((a, b))
        elif kind[0] == "eq":
            a, b = clause.vars
            if a != b:
                g.union(a, b)
        else:
            members = frozenset(clause.vars)
            if len(members) == 1:
                g.pos.add(clause.vars[0])
            else:
                g.ors.add(members)
    g.normalize()
    return g, templates


def unsat_check_ihsb(g: ImplGraph) -> bool:
    """True iff some OR-clause (literals count as 1-ary OR-clauses) has every
    disjunct leading to a variable occurring as a negative literal."""
    reach = g.reach()
    falsy = {u for u in range(g.n) if reach[u] & g.neg or u in g.neg}
    clauses = [frozenset({p}) for p in sorted(g.pos)] + sorted(g.ors, key=sorted)
    return any(all(x in falsy for x in c) for c in clauses)


def _sorted_ors(g: ImplGraph) -> list[frozenset[int]]:
    return sorted(g.ors, key=lambda c: tuple(sorted(c)))


def _clause_leads(reach, src, dst) -> bool:
    return all(any(y in reach[x] for y in dst) for x in src)


def _rule_or_subsumption(g: ImplGraph, reach) -> bool:
    ors = _sorted_ors(g)
    for i, a in enumerate(ors):
        for b in ors[i + 1 :]:
            ab = _clause_leads(reach, a, b)
            ba = _clause_leads(reach, b, a)
            if ab and ba:
                g.ors.discard(a)
                return True
            if ab:
                g.ors.discard(b)
                return True
            if ba:
                g.ors.discard(a)
                return True
    for p in sorted(g.pos):
        for c in ors:
            if c in g.ors and any(y in reach[p] for y in c):
                g.ors.discard(c)
                return True
    return False


def _rule_literal_intro(g: ImplGraph, reach) -> bool:
    for c in _sorted_ors(g):
        common = set.intersection(*(reach[x] for x in c))
        for v in sorted(common):
            if v not in g.pos:
                g.pos.add(v)
                g.impl = {(a, b) for a, b in g.impl if b != v}
                return True
    return False


def _rule_positive_propagation(g: ImplGraph, reach) -> bool:
    entailed = set()
    for p in g.pos:
        entailed |= reach[p]
    for u, w in sorted(g.impl):
        if u in entailed:
            g.impl.discard((u, w))
            g.pos.add(w)
            return True
    return False


def _rule_negative_propagation(g: ImplGraph, reach) -> bool:
    falsy = {u for u in range(g.n) if reach[u] & g.neg}
    for u, w in sorted(g.impl):
        if w in falsy:
            g.impl.discard((u, w))
            g.neg.add(u)
            return True
    return False


def _rule_drop_falsified_from_ors(g: ImplGraph, reach) -> bool:
    falsy = {u for u in range(g.n) if reach[u] & g.neg}
    for c in _sorted_ors(g):
        dead = {x for x in c if x in falsy}
        if dead:
            rest = c - dead
            assert rest, "empty OR-clause: input was unsatisfiable"
            g.ors.discard(c)
            if len(rest) == 1:
                g.pos.add(next(iter(rest)))
            else:
                g.ors.add(frozenset(rest))
            return True
    return False


def _rule_intra_clause_subsumption(g: ImplGraph, reach) -> bool:
    for c in _sorted_ors(g):
        for xi in sorted(c):
            for xj in sorted(c):
                if xi == xj or xj not in reach[xi]:
                    continue
                drop = max(xi, xj) if xi in reach[xj] else xi
                rest = c - {drop}
                g.ors.discard(c)
                if len(rest) == 1:
                    g.pos.add(next(iter(rest)))
                else:
                    g.ors.add(frozenset(rest))
                return True
    return False


def _rule_cycle_collapse(g: ImplGraph, reach) -> bool:
    nodes = {u for edge in g.impl for u in edge}
    for u in sorted(nodes):
        cycle = {v for v in nodes if v in reach[u] and u in reach[v]}
        if len(cycle) >= 2:
            for v in cycle:
                g.union(u, v)
            g.impl = {e for e in g.impl if not (e[0] in cycle and e[1] in cycle)}
            g.normalize()
            return True
    return False


def _rule_tautology_removal(g: ImplGraph, reach) -> bool:
    for u, w in sorted(g.impl):
        if w in g.pos or u in g.neg:
            g.impl.discard((u, w))
            return True
    return False


_RULES = (
    _rule_or_subsumption,
    _rule_literal_intro,
    _rule_positive_propagation,
    _rule_negative_propagation,
    _rule_drop_falsified_from_ors,
    _rule_intra_clause_subsumption,
    _rule_cycle_collapse,
    _rule_tautology_removal,
)


def _transitive_reduction_dag(nodes: list[int], reach) -> set[tuple[int, int]]:
    """Unique transitive reduction of the reachability DAG over nodes."""
    strict = {u: (reach[u] - {u}) & set(nodes) for u in nodes}
    out = set()
    for u in nodes:
        for v in strict[u]:
            if not any(v in strict[w] for w in strict[u] if w != v):
                out.add((u, v))
    return out


def _canonical_implications(g: ImplGraph, eq_available: bool) -> set[tuple[int, int]]:
    """Minimum implication set with the original reachability: the unique
    DAG reduction, plus one cycle per strongly connected component when the
    language cannot express equality."""
    reach = g.reach()
    nodes = sorted({u for e in g.impl for u in e})
    if eq_available:
        # cycles were collapsed into equality classes already
        return _transitive_reduction_dag(nodes, reach)
    comp_of: dict[int, int] = {}
    for u in nodes:
        group = sorted(v for v in nodes if v in reach[u] and u in reach[v])
        comp_of[u] = group[0]
    comps = sorted(set(comp_of.values()))
    comp_members = {c: sorted(u for u in nodes if comp_of[u] == c) for c in comps}
    comp_reach = {
        c: {comp_of[v] for v in reach[c] if v in comp_of} - {c} for c in comps
    }
    edges: set[tuple[int, int]] = set()
    for c in comps:
        members = comp_members[c]
        if len(members) >= 2:
            for a, b in zip(members, members[1:]):
                edges.add((a, b))
            edges.add((members[-1], members[0]))
    for c in comps:
        for d in comp_reach[c]:
            if not any(d in comp_reach[w] for w in comp_reach[c] if w != d):
                edges.add((c, d))
    return edges


@dataclass(frozen=True)
class PartitionedFormula:
    """Canonical minimized formula in the base vocabulary."""

    n: int
    pos_literals: tuple[int, ...]
    neg_literals: tuple[int, ...]
    impl_clauses: tuple[tuple[int, int], ...]
    eq_clauses: tuple[tuple[int, int], ...]
    or_clauses: tuple[tuple[int, ...], ...]

    def clause_count(self) -> int:
        return (
            len(self.pos_literals)
            + len(self.neg_literals)
            + len(self.impl_clauses)
            + len(self.eq_clauses)
            + len(self.or_clauses)
        )


def min_ihsb(g: ImplGraph, eq_available: bool = True) -> tuple[PartitionedFormula, int]:
    """Run the fixpoint rules to completion and canonicalize.

    The input must be satisfiable; callers handle unsatisfiable formulas by
    substituting the precomputed minimum unsatisfiable formula.
    """
    cap = (g.clause_count() + g.n) ** 2 + 16
    passes = 0
    changed = True
    while changed:
        passes += 1
        if passes > cap:
            raise RuntimeError("ihsb fixpoint did not stabilize; this is a bug")
        changed = False
        reach = g.reach()
        for rule in _RULES:
            if rule is _rule_cycle_collapse and not eq_available:
                continue
            if rule(g, reach):
                changed = True
                break

    impl = _canonical_implications(g, eq_available)

    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(g.find(v), []).append(v)
    pos_out: set[int] = set()
    neg_out: set[int] = set()
    eq_out: list[tuple[int, int]] = []
    for rep in sorted(classes):
        members = sorted(classes[rep])
        if rep in g.pos:
            pos_out.update(members)
        elif rep in g.neg:
            neg_out.update(members)
        elif len(members) >= 2:
            eq_out.extend(zip(members, members[1:]))

    result = PartitionedFormula(
        g.n,
        tuple(sorted(pos_out)),
        tuple(sorted(neg_out)),
        tuple(sorted(impl)),
        tuple(sorted(eq_out)),
        tuple(sorted(tuple(sorted(c)) for c in g.ors)),
    )
    return result, passes


def restrict_vocabulary(
    base: PartitionedFormula,
    templates: BaseTemplates,
    lang: ConstraintLanguage,
    var_names: tuple[str, ...],
    language_path: str | None = None,
) -> CnfFormula:
    """Emit one language clause per base clause (equalities may need an
    implication pair when the equality relation is unavailable)."""
    or_arities = sorted(templates.or_arities)
    clauses: list[Clause] = []

    def emit_pos(v: int) -> None:
        if templates.pos is not None:
            clauses.append(Clause(templates.pos, (v,)))
            return
        if or_arities:
            m = or_arities[0]
            clauses.append(Clause(templates.or_arities[m], (v,) * m))
            return
        raise VocabularyError("language cannot express a positive literal")

    def emit_imp(u: int, v: int) -> None:
        if templates.imp is None:
            raise VocabularyError("language cannot express an implication")
        name, flipped = templates.imp
        clauses.append(Clause(name, (v, u) if flipped else (u, v)))

    for v in base.pos_literals:
        emit_pos(v)
    for v in base.neg_literals:
        if templates.neg is None:
            raise VocabularyError("language cannot express a negative literal")
        clauses.append(Clause(templates.neg, (v,)))
    for u, v in base.impl_clauses:
        emit_imp(u, v)
    for u, v in base.eq_clauses:
        if templates.eq is not None:
            clauses.append(Clause(templates.eq, (u, v)))
        else:
            emit_imp(u, v)
            emit_imp(v, u)
    for c in base.or_clauses:
        fitting = [m for m in or_arities if m >= len(c)]
        if not fitting:
            raise VocabularyError(f"no OR relation of arity >= {len(c)} available")
        m = fitting[0]
        padded = c + (c[-1],) * (m - len(c))
        clauses.append(Clause(templates.or_arities[m], padded))

    return CnfFormula(lang, var_names, tuple(clauses), language_path)


def min_ihsb_cnf(formula: CnfFormula) -> tuple[CnfFormula, MinimizeStats]:
    """Full pipeline for irreducible IHSB+ languages: normalize, check
    satisfiability, minimize, re-emit in the language's own vocabulary."""
    g, templates = graph_from_cnf(formula)
    if unsat_check_ihsb(g):
        unsat = min_unsat_formula(formula.language)
        assert unsat is not None
        return unsat, MinimizeStats(len(formula.clauses), len(unsat.clauses))
    base, passes = min_ihsb(g, eq_available=templates.eq is not None)
    out = restrict_vocabulary(
        base, templates, formula.language, formula.var_names, formula.language_path
    )
    return out, MinimizeStats(len(formula.clauses), len(out.clauses), passes)


def min_ihsb_minus_cnf(formula: CnfFormula) -> tuple[CnfFormula, MinimizeStats]:
    """IHSB- languages minimize through duality: dualize, minimize, dualize back."""
    dual_out, stats = min_ihsb_cnf(formula.dual())
    return dual_out.dual(), stats
