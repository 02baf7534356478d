"""Parser and evaluator for the independency logic.

Concrete syntax (whitespace-insensitive)::

    formula := disj ( "->" formula )?
    disj    := conj ( "|" conj )*
    conj    := neg ( "&" neg )*
    neg     := "!" neg | "I" "(" term "," term "," term ")" | "(" formula ")"
    term    := iterm ( "+" iterm )*
    iterm   := cterm ( "*" cterm )*
    cterm   := "~" cterm | "empty" | IDENT | "(" term ")"
    IDENT   := letter (letter | digit)*

``->`` is right-associative sugar: ``A -> B`` parses to ``!A | B`` and the
printer emits that shape back in arrow form. ``~`` is complement relative to
the model's universe, ``+`` union, ``*`` intersection, ``empty`` the empty
set. A formula holds in a model when every valid valuation satisfies it; a
valuation is valid when each atom's three term values are pairwise disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Literal, Mapping

from .core import IndependencyModel, Triple, Universe
from .dag import enumerate_dags
from .ugraph import enumerate_undirected_graphs

DEFAULT_VALUATION_BUDGET = 1 << 24

ENTAILMENT_FAMILY_GATES = {"causal": 4, "graph-isomorph": 5}

ModelFamily = Literal["causal", "graph-isomorph", "all-models"]


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; carries the failing 1-based offset."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (at offset {index + 1})")
        self.position = index + 1


class ValuationBudgetError(RuntimeError):
    """Raised when exhaustive valuation enumeration would exceed the budget."""


# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Complement:
    operand: "Term"


@dataclass(frozen=True)
class Union_:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Intersection:
    left: "Term"
    right: "Term"


Term = Var | Empty | Complement | Union_ | Intersection

EMPTY = Empty()


# Formulas


@dataclass(frozen=True)
class Atom:
    t1: Term
    t2: Term
    t3: Term


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Atom | Not | And | Or


def implies(antecedent: Formula, consequent: Formula) -> Formula:
    """The arrow connective: stored as ``!antecedent | consequent``."""
    return Or(Not(antecedent), consequent)


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals, split into its negated and plain atoms.

    Read as a rule: if all ``negatives`` hold then some positive holds.
    """

    negatives: tuple[Atom, ...]
    positives: tuple[Atom, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "negatives", tuple(self.negatives))
        object.__setattr__(self, "positives", tuple(self.positives))
        if not self.negatives and not self.positives:
            raise ValueError("a clause needs at least one literal")


def is_horn(clause: Clause) -> bool:
    """True iff the clause has at most one positive literal."""
    return len(clause.positives) <= 1


# Tokenizer / parser

_SINGLE_CHARS = set("()|&!+*~,")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(("->", "->", i))
            i += 2
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        if ch in _SINGLE_CHARS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> None:
        tok = self.peek()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.advance()

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek()[0] == "->":
            self.advance()
            return implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek()[0] == "|":
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.neg()
        while self.peek()[0] == "&":
            self.advance()
            left = And(left, self.neg())
        return left

    def neg(self) -> Formula:
        kind, text, pos = self.peek()
        if kind == "!":
            self.advance()
            return Not(self.neg())
        if kind == "ident" and text == "I":
            self.advance()
            self.expect("(")
            t1 = self.term()
            self.expect(",")
            t2 = self.term()
            self.expect(",")
            t3 = self.term()
            self.expect(")")
            return Atom(t1, t2, t3)
        if kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        raise FormulaSyntaxError(
            f"expected a formula, found {text or 'end of input'!r}", pos
        )

    def term(self) -> Term:
        left = self.iterm()
        while self.peek()[0] == "+":
            self.advance()
            left = Union_(left, self.iterm())
        return left

    def iterm(self) -> Term:
        left = self.cterm()
        while self.peek()[0] == "*":
            self.advance()
            left = Intersection(left, self.cterm())
        return left

    def cterm(self) -> Term:
        kind, text, pos = self.peek()
        if kind == "~":
            self.advance()
            return Complement(self.cterm())
        if kind == "ident":
            self.advance()
            return EMPTY if text == "empty" else Var(text)
        if kind == "(":
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        raise FormulaSyntaxError(f"expected a term, found {text or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    result = parser.formula()
    kind, found, pos = parser.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected trailing input {found!r}", pos)
    return result


def parse_clause(text: str) -> Clause:
    """Parse formula text that has clause shape; reject anything else."""
    formula = parse_formula(text)
    clause = clause_of_formula(formula)
    if clause is None:
        raise ValueError(f"formula is not a clause: {text!r}")
    return clause


# Printing. Binding strength, loosest first: -> | & ! and atoms; for terms
# + then * then ~. A child is parenthesized when it binds looser than its
# context requires, so printed text reparses to the identical tree.

_P_IMPLIES, _P_OR, _P_AND, _P_NOT, _P_LEAF = 1, 2, 3, 4, 5
_T_UNION, _T_INTER, _T_COMPL, _T_LEAF = 1, 2, 3, 4


def format_term(term: Term) -> str:
    return _fmt_term(term, 0)


def _fmt_term(term: Term, min_prec: int) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Empty):
        return "empty"
    if isinstance(term, Complement):
        return _wrap("~" + _fmt_term(term.operand, _T_COMPL), _T_COMPL, min_prec)
    if isinstance(term, Union_):
        body = f"{_fmt_term(term.left, _T_UNION)} + {_fmt_term(term.right, _T_UNION + 1)}"
        return _wrap(body, _T_UNION, min_prec)
    body = f"{_fmt_term(term.left, _T_INTER)} * {_fmt_term(term.right, _T_INTER + 1)}"
    return _wrap(body, _T_INTER, min_prec)


def format_formula(formula: Formula) -> str:
    """Render a formula; parsing the result reproduces the identical tree."""
    return _fmt_formula(formula, 0)


def _fmt_formula(formula: Formula, min_prec: int) -> str:
    if isinstance(formula, Atom):
        parts = ", ".join(format_term(t) for t in (formula.t1, formula.t2, formula.t3))
        return f"I({parts})"
    if isinstance(formula, Or) and isinstance(formula.left, Not):
        body = (
            f"{_fmt_formula(formula.left.operand, _P_IMPLIES + 1)}"
            f" -> {_fmt_formula(formula.right, _P_IMPLIES)}"
        )
        return _wrap(body, _P_IMPLIES, min_prec)
    if isinstance(formula, Or):
        body = f"{_fmt_formula(formula.left, _P_OR)} | {_fmt_formula(formula.right, _P_OR + 1)}"
        return _wrap(body, _P_OR, min_prec)
    if isinstance(formula, And):
        body = f"{_fmt_formula(formula.left, _P_AND)} & {_fmt_formula(formula.right, _P_AND + 1)}"
        return _wrap(body, _P_AND, min_prec)
    return _wrap("!" + _fmt_formula(formula.operand, _P_NOT), _P_NOT, min_prec)


def _wrap(body: str, prec: int, min_prec: int) -> str:
    return f"({body})" if prec < min_prec else body


# Structure queries


def atoms_of(formula: Formula) -> tuple[Atom, ...]:
    """Distinct atoms in first-occurrence order."""
    seen: dict[Atom, None] = {}

    def walk(f: Formula) -> None:
        if isinstance(f, Atom):
            seen.setdefault(f, None)
        elif isinstance(f, Not):
            walk(f.operand)
        else:
            walk(f.left)
            walk(f.right)

    walk(formula)
    return tuple(seen)


def term_variables(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Empty):
        return set()
    if isinstance(term, Complement):
        return term_variables(term.operand)
    return term_variables(term.left) | term_variables(term.right)


def formula_variables(formula: Formula) -> tuple[str, ...]:
    """Sorted names of the variables occurring in the formula."""
    names: set[str] = set()
    for atom in atoms_of(formula):
        for t in (atom.t1, atom.t2, atom.t3):
            names |= term_variables(t)
    return tuple(sorted(names))


# Valuations and satisfaction


@dataclass(frozen=True)
class Valuation:
    """An assignment of variable sets to term variables over a universe."""

    universe: Universe
    assignment: Mapping[str, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", dict(self.assignment))
        for name, mask in self.assignment.items():
            self.universe.check_mask(mask)


def eval_term(term: Term, valuation: Valuation) -> int:
    """Value of a term under a valuation; complement is relative to the universe."""
    if isinstance(term, Var):
        try:
            return valuation.assignment[term.name]
        except KeyError:
            raise ValueError(f"unbound variable {term.name!r}") from None
    if isinstance(term, Empty):
        return 0
    if isinstance(term, Complement):
        return valuation.universe.full_mask & ~eval_term(term.operand, valuation)
    if isinstance(term, Union_):
        return eval_term(term.left, valuation) | eval_term(term.right, valuation)
    return eval_term(term.left, valuation) & eval_term(term.right, valuation)


def _atom_sets(atom: Atom, valuation: Valuation) -> tuple[int, int, int]:
    return (
        eval_term(atom.t1, valuation),
        eval_term(atom.t2, valuation),
        eval_term(atom.t3, valuation),
    )


def _disjoint(s1: int, s2: int, s3: int) -> bool:
    return not (s1 & s2 or s1 & s3 or s2 & s3)


def is_valid_valuation(
    valuation: Valuation, formula: Formula, model: IndependencyModel
) -> bool:
    """True iff every atom's three term values are pairwise disjoint."""
    if valuation.universe.names != model.universe.names:
        raise ValueError("valuation universe does not match the model universe")
    return all(_disjoint(*_atom_sets(atom, valuation)) for atom in atoms_of(formula))


def _truth(formula: Formula, atom_truth: Mapping[Atom, bool]) -> bool:
    if isinstance(formula, Atom):
        return atom_truth[formula]
    if isinstance(formula, Not):
        return not _truth(formula.operand, atom_truth)
    if isinstance(formula, And):
        return _truth(formula.left, atom_truth) and _truth(formula.right, atom_truth)
    return _truth(formula.left, atom_truth) or _truth(formula.right, atom_truth)


def satisfies(valuation: Valuation, formula: Formula, model: IndependencyModel) -> bool:
    """Truth of the formula under one valid valuation.

    An atom holds when its evaluated triple is in the model; connectives are
    classical. Calling this with an invalid valuation is an error.
    """
    if not is_valid_valuation(valuation, formula, model):
        raise ValueError("valuation is not valid for the formula")
    atom_truth = {
        atom: Triple(*_atom_sets(atom, valuation)) in model.triples
        for atom in atoms_of(formula)
    }
    return _truth(formula, atom_truth)


def _check_budget(universe: Universe, var_count: int, atom_count: int, budget: int) -> None:
    cost = (1 << universe.n) ** var_count * max(1, atom_count)
    if cost > budget:
        raise ValuationBudgetError(
            f"{cost} valuation-atom checks exceed the budget of {budget}"
        )


def _assignments(universe: Universe, names: tuple[str, ...]) -> Iterator[dict[str, int]]:
    size = 1 << universe.n
    for masks in product(range(size), repeat=len(names)):
        yield dict(zip(names, masks))


def model_satisfies(
    model: IndependencyModel,
    formula: Formula,
    *,
    budget: int = DEFAULT_VALUATION_BUDGET,
) -> bool:
    """True iff every valid valuation of the formula satisfies it.

    Quantifies over the variables that occur in the formula (others cannot
    affect satisfaction). Vacuously true when no valid valuation exists.
    Raises ``ValuationBudgetError`` instead of silently truncating when the
    enumeration would be too large.
    """
    names = formula_variables(formula)
    atoms = atoms_of(formula)
    _check_budget(model.universe, len(names), len(atoms), budget)
    triples = model.triples
    for assignment in _assignments(model.universe, names):
        valuation = Valuation(model.universe, assignment)
        atom_truth: dict[Atom, bool] = {}
        valid = True
        for atom in atoms:
            sets = _atom_sets(atom, valuation)
            if not _disjoint(*sets):
                valid = False
                break
            atom_truth[atom] = Triple(*sets) in triples
        if valid and not _truth(formula, atom_truth):
            return False
    return True


def check_clause(
    model: IndependencyModel,
    clause: Clause,
    *,
    budget: int = DEFAULT_VALUATION_BUDGET,
) -> bool:
    """Rule reading of a clause: whenever all negated atoms' triples are in
    the model under a valid valuation, some positive atom's triple is too.
    """
    atoms = tuple(dict.fromkeys(clause.negatives + clause.positives))
    names: set[str] = set()
    for atom in atoms:
        for t in (atom.t1, atom.t2, atom.t3):
            names |= term_variables(t)
    sorted_names = tuple(sorted(names))
    _check_budget(model.universe, len(sorted_names), len(atoms), budget)
    triples = model.triples
    for assignment in _assignments(model.universe, sorted_names):
        valuation = Valuation(model.universe, assignment)
        truth: dict[Atom, bool] = {}
        valid = True
        for atom in atoms:
            sets = _atom_sets(atom, valuation)
            if not _disjoint(*sets):
                valid = False
                break
            truth[atom] = Triple(*sets) in triples
        if not valid:
            continue
        if all(truth[a] for a in clause.negatives) and not any(
            truth[a] for a in clause.positives
        ):
            return False
    return True


# Clause <-> formula translation


def _or_leaves(formula: Formula) -> list[Formula]:
    if isinstance(formula, Or):
        return _or_leaves(formula.left) + _or_leaves(formula.right)
    return [formula]


def _and_leaves(formula: Formula) -> list[Formula]:
    if isinstance(formula, And):
        return _and_leaves(formula.left) + _and_leaves(formula.right)
    return [formula]


def clause_of_formula(formula: Formula) -> Clause | None:
    """Read a formula as a clause, or ``None`` when it has no clause shape.

    Accepted leaves of the disjunction spine: an atom, a negated atom, and a
    negated conjunction of atoms (the desugared rule antecedent).
    """
    negatives: list[Atom] = []
    positives: list[Atom] = []
    for leaf in _or_leaves(formula):
        if isinstance(leaf, Atom):
            positives.append(leaf)
        elif isinstance(leaf, Not):
            inner = _and_leaves(leaf.operand)
            if not all(isinstance(x, Atom) for x in inner):
                return None
            negatives.extend(inner)  # type: ignore[arg-type]
        else:
            return None
    return Clause(tuple(negatives), tuple(positives))


def _fold_and(formulas: list[Formula]) -> Formula:
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def _fold_or(formulas: list[Formula]) -> Formula:
    out = formulas[0]
    for f in formulas[1:]:
        out = Or(out, f)
    return out


def formula_of_clause(clause: Clause) -> Formula:
    """The rule form of a clause; pure clauses fall back to literal disjunctions."""
    if clause.negatives and clause.positives:
        return implies(
            _fold_and(list(clause.negatives)), _fold_or(list(clause.positives))
        )
    if clause.positives:
        return _fold_or(list(clause.positives))
    return _fold_or([Not(a) for a in clause.negatives])


# Entailment over enumerated model families


def entails(
    family: ModelFamily,
    given: list[Triple] | tuple[Triple, ...],
    query: Triple,
    universe: Universe,
) -> bool:
    """True iff every family member over ``universe`` containing all of
    ``given`` also contains ``query``.

    ``causal`` and ``graph-isomorph`` enumerate their witnesses exhaustively
    (gated by universe size). ``all-models`` needs no enumeration: the given
    triples already form the smallest such model, so entailment holds exactly
    when the query is among them.
    """
    for t in (*given, query):
        universe.check_mask(t.span)
    if family == "all-models":
        return query in set(given)
    gate = ENTAILMENT_FAMILY_GATES.get(family)
    if gate is None:
        raise ValueError(f"unknown model family {family!r}")
    if universe.n > gate:
        raise ValueError(f"family {family!r} entailment is gated at {gate} variables")
    if family == "causal":
        for dag in enumerate_dags(universe):
            if all(dag.d_separates(t.a, t.c, t.b) for t in given) and not dag.d_separates(
                query.a, query.c, query.b
            ):
                return False
        return True
    for graph in enumerate_undirected_graphs(universe):
        if all(graph.separates(t.a, t.c, t.b) for t in given) and not graph.separates(
            query.a, query.c, query.b
        ):
            return False
    return True
