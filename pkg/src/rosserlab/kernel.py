"""Proof checking, theories, bounded provability, and Sigma1 evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union

from . import coding, syntax
from .proofs import (
    Assumption, DefinitionalAxiom, Generalization, LogicalAxiom, ModusPonens,
    ProofLine, ProofObject,
)
from .syntax import (
    And, BoundedExists, BoundedForAll, Eq, Exists, ForAll, Formula, Iff, Imp,
    Le, Not, Or, Plus, Subnum, Succ, Term, Times, Var, Zero,
    classify, free_variables, numeral, substitute, substitute_term, term_is_closed,
)

TRUE = "True"
FALSE = "False"
UNKNOWN = "Unknown"


class NotSigma1(ValueError):
    pass


class NotDelta0(ValueError):
    pass


# ---------------------------------------------------------------------------
# Standard model evaluation


def term_value(t: Term, env: dict[str, int] | None = None) -> int:
    env = env or {}
    if isinstance(t, Var):
        if t.name not in env:
            raise ValueError(f"open term: variable {t.name}")
        return env[t.name]
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        return term_value(t.base, env) + t.count
    if isinstance(t, Plus):
        return term_value(t.left, env) + term_value(t.right, env)
    if isinstance(t, Times):
        return term_value(t.left, env) * term_value(t.right, env)
    if isinstance(t, Subnum):
        return coding.subnum_total(term_value(t.code, env), term_value(t.arg, env))
    raise TypeError(f"not a term: {t!r}")


def _eval3_not(v: str) -> str:
    if v == TRUE:
        return FALSE
    if v == FALSE:
        return TRUE
    return UNKNOWN


def eval3(f: Formula, env: dict[str, int], budget: int) -> str:
    """Three-valued bounded evaluation in the standard model.

    True and False answers are sound; Unknown means the search budget ran out
    before the unbounded quantifiers could be decided.
    """
    if isinstance(f, Eq):
        return TRUE if term_value(f.left, env) == term_value(f.right, env) else FALSE
    if isinstance(f, Le):
        return TRUE if term_value(f.left, env) <= term_value(f.right, env) else FALSE
    if isinstance(f, Not):
        return _eval3_not(eval3(f.body, env, budget))
    if isinstance(f, And):
        a = eval3(f.left, env, budget)
        if a == FALSE:
            return FALSE
        b = eval3(f.right, env, budget)
        if b == FALSE:
            return FALSE
        return TRUE if a == TRUE and b == TRUE else UNKNOWN
    if isinstance(f, Or):
        a = eval3(f.left, env, budget)
        if a == TRUE:
            return TRUE
        b = eval3(f.right, env, budget)
        if b == TRUE:
            return TRUE
        return FALSE if a == FALSE and b == FALSE else UNKNOWN
    if isinstance(f, Imp):
        return eval3(Or(Not(f.left), f.right), env, budget)
    if isinstance(f, Iff):
        a = eval3(f.left, env, budget)
        b = eval3(f.right, env, budget)
        if UNKNOWN in (a, b):
            return UNKNOWN
        return TRUE if a == b else FALSE
    if isinstance(f, (BoundedForAll, BoundedExists)):
        limit = term_value(f.bound, env)
        hit, miss = (FALSE, TRUE) if isinstance(f, BoundedForAll) else (TRUE, FALSE)
        unknown = False
        for n in range(limit + 1):
            v = eval3(f.body, {**env, f.var: n}, budget)
            if v == hit:
                return hit
            if v == UNKNOWN:
                unknown = True
        return UNKNOWN if unknown else miss
    if isinstance(f, Exists):
        for n in range(budget + 1):
            if eval3(f.body, {**env, f.var: n}, budget) == TRUE:
                return TRUE
        return UNKNOWN
    if isinstance(f, ForAll):
        for n in range(budget + 1):
            if eval3(f.body, {**env, f.var: n}, budget) == FALSE:
                return FALSE
        return UNKNOWN
    raise TypeError(f"not a formula: {f!r}")


def sigma1_eval(sentence: Formula, budget: int) -> str:
    """Soundly evaluate a Delta0 or Sigma1 sentence with a search budget."""
    cls = classify(sentence)
    if cls not in (syntax.DELTA0, syntax.SIGMA1):
        raise NotSigma1(f"classify gave {cls}")
    if free_variables(sentence):
        raise NotSigma1("not a sentence")
    return eval3(sentence, {}, budget)


# ---------------------------------------------------------------------------
# Witness comparison


def _sigma1_parts(f: Formula) -> tuple[str, Formula]:
    if not isinstance(f, Exists) or classify(f.body) != syntax.DELTA0:
        raise NotSigma1("expected a prenex Sigma1 formula: exists v (Delta0)")
    return f.var, f.body


def witness_compare(a: Formula, b: Formula, strict: bool) -> Formula:
    """The witness comparison of two prenex Sigma1 formulas.

    strict (a before b):     exists x (A(x) & forall y <= x ~B(y))
    non-strict (a no later): exists x (A(x) & forall y <= x (y = x | ~B(y)))
    """
    xa, body_a = _sigma1_parts(a)
    yb, body_b = _sigma1_parts(b)
    taken = free_variables(body_a) | free_variables(body_b) | {xa, yb}
    x = xa
    y = yb if yb != x and yb not in free_variables(body_a) else _fresh(yb, taken)
    if y != yb:
        body_b = substitute(body_b, yb, Var(y))
    if x in free_variables(body_b):
        new_x = _fresh(x, taken | {y})
        body_a = substitute(body_a, x, Var(new_x))
        x = new_x
    if strict:
        guard: Formula = Not(body_b)
    else:
        guard = Or(Eq(Var(y), Var(x)), Not(body_b))
    return Exists(x, And(body_a, BoundedForAll(y, Var(x), guard)))


def _fresh(base: str, taken: set[str]) -> str:
    i = 0
    while True:
        cand = f"{base}_{i}"
        if cand not in taken:
            return cand
        i += 1


# ---------------------------------------------------------------------------
# Axiom predicates and theories


@dataclass(frozen=True)
class AxiomPredicate:
    """A decidable axiom set: a total predicate on sentences."""

    descriptor: str
    accepts: Callable[[Formula], bool]

    def extended(self, extra: Iterable[Formula]) -> "AxiomPredicate":
        extra_set = frozenset(extra)
        if not extra_set:
            return self
        base = self.accepts
        return AxiomPredicate(
            descriptor=f"{self.descriptor}+{len(extra_set)}",
            accepts=lambda f, _base=base, _extra=extra_set: f in _extra or _base(f),
        )


DEFINITIONAL_ONLY = AxiomPredicate("definitional-only", lambda f: False)


@dataclass(frozen=True, slots=True)
class ScheduleEvent:
    """stage is the simulated proof code; theory None means the base theory."""

    stage: int
    theory: Optional[int]
    proves: int


class Schedule:
    """A deterministic finite enumeration of (stage, theory, theorem) events."""

    def __init__(self, events: Iterable[ScheduleEvent]):
        evs = sorted(events, key=lambda e: e.stage)
        for prev, cur in zip(evs, evs[1:]):
            if prev.stage == cur.stage:
                raise ValueError(f"two events at stage {cur.stage}")
        self.events: tuple[ScheduleEvent, ...] = tuple(evs)
        self.by_stage: dict[int, ScheduleEvent] = {e.stage: e for e in evs}

    def event_at(self, stage: int) -> Optional[ScheduleEvent]:
        return self.by_stage.get(stage)

    def proof_at(self, stage: int, theory: Optional[int]) -> Optional[int]:
        """The sentence id proved at `stage` by the given theory, if any.

        A base-theory proof counts as a proof for every extension.
        """
        e = self.by_stage.get(stage)
        if e is None:
            return None
        if e.theory is None or e.theory == theory:
            return e.proves
        return None

    def earliest_proof(self, theory: Optional[int], proves: int, budget: int) -> Optional[int]:
        for e in self.events:
            if e.stage > budget:
                return None
            if e.proves == proves and (e.theory is None or e.theory == theory):
                return e.stage
        return None

    def max_stage(self) -> int:
        return self.events[-1].stage if self.events else 0


@dataclass(frozen=True)
class KernelMode:
    pass


@dataclass(frozen=True)
class SimulatedMode:
    schedule: Schedule
    sentence_ids: dict[int, Formula] = field(default_factory=dict)

    def id_of(self, f: Formula) -> Optional[int]:
        for sid, g in self.sentence_ids.items():
            if f == g:
                return sid
        return None


@dataclass(frozen=True)
class TheorySpec:
    base: AxiomPredicate
    extension: tuple[Formula, ...] = ()
    mode: Union[KernelMode, SimulatedMode] = KernelMode()
    extension_ids: tuple[int, ...] = ()

    def axiom_predicate(self) -> AxiomPredicate:
        return self.base.extended(self.extension)


@dataclass(frozen=True)
class Yes:
    stage: int


@dataclass(frozen=True)
class No:
    budget: int


def provable(t: TheorySpec, psi: Union[Formula, int], budget: int) -> Union[Yes, No]:
    """Earliest-stage bounded provability.

    Simulated mode reads the injected schedule; kernel mode enumerates proof
    objects by code and checks them.
    """
    if isinstance(t.mode, SimulatedMode):
        target = psi if isinstance(psi, int) else t.mode.id_of(psi)
        if target is None:
            return No(budget)
        theory = t.extension_ids[0] if t.extension_ids else None
        stage = t.mode.schedule.earliest_proof(theory, target, budget)
        return Yes(stage) if stage is not None else No(budget)
    if isinstance(psi, int):
        raise TypeError("kernel mode needs a formula, not a sentence id")
    alpha = t.axiom_predicate()
    for code in range(1, budget + 1):
        try:
            obj = coding.decode(code)
        except coding.NotACode:
            continue
        if not isinstance(obj, ProofObject):
            continue
        if obj.lines and obj.conclusion() == psi:
            if isinstance(check_proof(obj, psi, alpha), Accept):
                return Yes(code)
    return No(budget)


# ---------------------------------------------------------------------------
# Proof checking


@dataclass(frozen=True)
class Accept:
    pass


@dataclass(frozen=True)
class Reject:
    line: int
    reason: str


CheckResult = Union[Accept, Reject]


def assumptions(p: ProofObject) -> set[Formula]:
    """Exactly the Assumption-justified formulas of p."""
    return p.assumption_formulas()


def check_proof(p: ProofObject, conclusion: Formula, alpha: AxiomPredicate) -> CheckResult:
    """Accept iff every line is justified, every assumption satisfies alpha,
    and the last line is the stated conclusion."""
    if not p.lines:
        return Reject(0, "empty proof")
    assumption_frees: set[str] = set()
    for line in p.lines:
        if isinstance(line.justification, Assumption):
            assumption_frees |= free_variables(line.formula)
    for i, line in enumerate(p.lines):
        j = line.justification
        f = line.formula
        if isinstance(j, LogicalAxiom):
            err = _check_scheme(j.scheme, f)
            if err is not None:
                return Reject(i, err)
        elif isinstance(j, Assumption):
            if not alpha.accepts(f):
                return Reject(i, f"assumption not admitted by {alpha.descriptor}")
        elif isinstance(j, ModusPonens):
            if not (0 <= j.imp < i and 0 <= j.arg < i):
                return Reject(i, "modus ponens references a later line")
            imp = p.lines[j.imp].formula
            if not isinstance(imp, Imp):
                return Reject(i, "major premise is not an implication")
            if imp.left != p.lines[j.arg].formula:
                return Reject(i, "minor premise does not match the antecedent")
            if imp.right != f:
                return Reject(i, "conclusion does not match the consequent")
        elif isinstance(j, Generalization):
            if not (0 <= j.source < i):
                return Reject(i, "generalization references a later line")
            if f != ForAll(j.var, p.lines[j.source].formula):
                return Reject(i, "not the universal closure of the source line")
            if j.var in assumption_frees:
                return Reject(i, f"generalized variable {j.var} is free in an assumption")
        elif isinstance(j, DefinitionalAxiom):
            err = _check_definitional(f)
            if err is not None:
                return Reject(i, err)
        else:
            return Reject(i, f"unknown justification {j!r}")
    if p.conclusion() != conclusion:
        return Reject(len(p.lines) - 1, "final line is not the stated conclusion")
    return Accept()


def _check_definitional(f: Formula) -> str | None:
    """Ground defining equations of the numeral-substitution function."""
    if not isinstance(f, Eq) or not isinstance(f.left, Subnum):
        return "definitional axioms are ground sub(...) equations"
    if not (term_is_closed(f.left) and term_is_closed(f.right)):
        return "definitional axiom must be closed"
    try:
        lhs = term_value(f.left)
        rhs = term_value(f.right)
    except ValueError as exc:
        return str(exc)
    if lhs != rhs:
        return "defining equation is false"
    return None


# --- logical axiom schemes -------------------------------------------------


def _check_scheme(scheme: str, f: Formula) -> str | None:
    checker = _SCHEMES.get(scheme)
    if checker is None:
        return f"unknown scheme {scheme!r}"
    return None if checker(f) else f"not an instance of {scheme}"


def _p1(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Imp) and f.left == f.right.right


def _p2(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.left.right, Imp)):
        return False
    a, b, c = f.left.left, f.left.right.left, f.left.right.right
    rest = f.right
    return rest == Imp(Imp(a, b), Imp(a, c))


def _p3(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Imp)):
        return False
    na, nb = f.left.left, f.left.right
    if not (isinstance(na, Not) and isinstance(nb, Not)):
        return False
    return f.right == Imp(nb.body, na.body)


def _p3m(f: Formula) -> bool:
    """(~B -> ~A) -> ((~B -> A) -> B)."""
    if not (isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.right, Imp)):
        return False
    nb, na = f.left.left, f.left.right
    if not (isinstance(nb, Not) and isinstance(na, Not)):
        return False
    return f.right == Imp(Imp(nb, na.body), nb.body)


def _and_elim_l(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.left, And) and f.left.left == f.right


def _and_elim_r(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.left, And) and f.left.right == f.right


def _and_intro(f: Formula) -> bool:
    return (
        isinstance(f, Imp)
        and isinstance(f.right, Imp)
        and f.right.right == And(f.left, f.right.left)
    )


def _or_intro_l(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Or) and f.right.left == f.left


def _or_intro_r(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Or) and f.right.right == f.left


def _or_elim(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.right, Imp)):
        return False
    a, c = f.left.left, f.left.right
    mid = f.right
    if not (isinstance(mid.left, Imp) and isinstance(mid.right, Imp)):
        return False
    b = mid.left.left
    return mid == Imp(Imp(b, c), Imp(Or(a, b), c))


def _iff_elim_l(f: Formula) -> bool:
    return (
        isinstance(f, Imp)
        and isinstance(f.left, Iff)
        and f.right == Imp(f.left.left, f.left.right)
    )


def _iff_elim_r(f: Formula) -> bool:
    return (
        isinstance(f, Imp)
        and isinstance(f.left, Iff)
        and f.right == Imp(f.left.right, f.left.left)
    )


def _iff_intro(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.right, Imp)):
        return False
    a, b = f.left.left, f.left.right
    return f.right == Imp(Imp(b, a), Iff(a, b))


def _match_substitution(body: Formula, var: str, target: Formula) -> bool:
    """Is target == body[var := t] for some term t?"""
    candidates: set[Term] = set()
    if not _collect_candidates(body, target, var, candidates, bound=frozenset()):
        return False
    if not candidates:
        return body == target
    return any(substitute(body, var, t) == target for t in candidates)


def _collect_candidates(
    f: Formula | Term, g: Formula | Term, var: str, acc: set[Term], bound: frozenset[str]
) -> bool:
    if isinstance(f, Term):
        if isinstance(f, Var) and f.name == var and var not in bound:
            if isinstance(g, Term):
                acc.add(g)
                return True
            return False
        if type(f) is not type(g):
            return False
        if isinstance(f, Var):
            return f == g
        if isinstance(f, Zero):
            return True
        if isinstance(f, Succ):
            return f.count == g.count and _collect_candidates(f.base, g.base, var, acc, bound)
        if isinstance(f, (Plus, Times)):
            return _collect_candidates(f.left, g.left, var, acc, bound) and _collect_candidates(
                f.right, g.right, var, acc, bound
            )
        if isinstance(f, Subnum):
            return _collect_candidates(f.code, g.code, var, acc, bound) and _collect_candidates(
                f.arg, g.arg, var, acc, bound
            )
        return False
    if type(f) is not type(g):
        return False
    if isinstance(f, (Eq, Le)):
        return _collect_candidates(f.left, g.left, var, acc, bound) and _collect_candidates(
            f.right, g.right, var, acc, bound
        )
    if isinstance(f, Not):
        return _collect_candidates(f.body, g.body, var, acc, bound)
    if isinstance(f, (And, Or, Imp, Iff)):
        return _collect_candidates(f.left, g.left, var, acc, bound) and _collect_candidates(
            f.right, g.right, var, acc, bound
        )
    if isinstance(f, (ForAll, Exists)):
        if f.var != g.var:
            return False
        return _collect_candidates(f.body, g.body, var, acc, bound | {f.var})
    if isinstance(f, (BoundedForAll, BoundedExists)):
        if f.var != g.var:
            return False
        return _collect_candidates(f.bound, g.bound, var, acc, bound) and _collect_candidates(
            f.body, g.body, var, acc, bound | {f.var}
        )
    return False


def _forall_elim(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, ForAll)):
        return False
    return _match_substitution(f.left.body, f.left.var, f.right)


def _exists_intro(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.right, Exists)):
        return False
    return _match_substitution(f.right.body, f.right.var, f.left)


def _forall_imp(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, ForAll) and isinstance(f.left.body, Imp)):
        return False
    v, a, b = f.left.var, f.left.body.left, f.left.body.right
    return f.right == Imp(a, ForAll(v, b)) and v not in free_variables(a)


def _exists_imp(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, ForAll) and isinstance(f.left.body, Imp)):
        return False
    v, a, b = f.left.var, f.left.body.left, f.left.body.right
    return f.right == Imp(Exists(v, a), b) and v not in free_variables(b)


def _term_names(t: Term) -> set[str]:
    names: set[str] = set()
    syntax.term_vars(t, names)
    return names


def _bounded_forall_def(f: Formula) -> bool:
    if not (isinstance(f, Iff) and isinstance(f.left, BoundedForAll)):
        return False
    v, t, body = f.left.var, f.left.bound, f.left.body
    return f.right == ForAll(v, Imp(Le(Var(v), t), body)) and v not in _term_names(t)


def _bounded_exists_def(f: Formula) -> bool:
    if not (isinstance(f, Iff) and isinstance(f.left, BoundedExists)):
        return False
    v, t, body = f.left.var, f.left.bound, f.left.body
    return f.right == Exists(v, And(Le(Var(v), t), body)) and v not in _term_names(t)


def _eq_refl(f: Formula) -> bool:
    return isinstance(f, Eq) and f.left == f.right


def _eq_sym(f: Formula) -> bool:
    return (
        isinstance(f, Imp)
        and isinstance(f.left, Eq)
        and f.right == Eq(f.left.right, f.left.left)
    )


def _eq_trans(f: Formula) -> bool:
    if not (isinstance(f, Imp) and isinstance(f.left, Eq) and isinstance(f.right, Imp)):
        return False
    s, t = f.left.left, f.left.right
    mid, out = f.right.left, f.right.right
    return isinstance(mid, Eq) and mid.left == t and out == Eq(s, mid.right)


def _names_of(obj: Formula | Term) -> set[str]:
    names: set[str] = set()
    if isinstance(obj, Term):
        syntax.term_vars(obj, names)
        return names
    for sub in syntax.subformulas(obj):
        if isinstance(sub, (Eq, Le)):
            syntax.term_vars(sub.left, names)
            syntax.term_vars(sub.right, names)
        elif isinstance(sub, (ForAll, Exists)):
            names.add(sub.var)
        elif isinstance(sub, (BoundedForAll, BoundedExists)):
            names.add(sub.var)
            syntax.term_vars(sub.bound, names)
    return names


def _anti_unify_term(l: Term, r: Term, s: Term, t: Term, hole: str) -> Term | None:
    if l == r:
        return l
    if l == s and r == t:
        return Var(hole)
    if type(l) is not type(r):
        return None
    if isinstance(l, Succ):
        if l.count != r.count:
            return None
        base = _anti_unify_term(l.base, r.base, s, t, hole)
        if base is None or isinstance(base, Succ):
            return None
        return Succ(base, l.count)
    if isinstance(l, (Plus, Times)):
        a = _anti_unify_term(l.left, r.left, s, t, hole)
        b = _anti_unify_term(l.right, r.right, s, t, hole)
        return None if a is None or b is None else type(l)(a, b)
    if isinstance(l, Subnum):
        a = _anti_unify_term(l.code, r.code, s, t, hole)
        b = _anti_unify_term(l.arg, r.arg, s, t, hole)
        return None if a is None or b is None else Subnum(a, b)
    return None


def _anti_unify_formula(l: Formula, r: Formula, s: Term, t: Term, hole: str) -> Formula | None:
    if l == r:
        return l
    if type(l) is not type(r):
        return None
    if isinstance(l, (Eq, Le)):
        a = _anti_unify_term(l.left, r.left, s, t, hole)
        b = _anti_unify_term(l.right, r.right, s, t, hole)
        return None if a is None or b is None else type(l)(a, b)
    if isinstance(l, Not):
        body = _anti_unify_formula(l.body, r.body, s, t, hole)
        return None if body is None else Not(body)
    if isinstance(l, (And, Or, Imp, Iff)):
        a = _anti_unify_formula(l.left, r.left, s, t, hole)
        b = _anti_unify_formula(l.right, r.right, s, t, hole)
        return None if a is None or b is None else type(l)(a, b)
    if isinstance(l, (ForAll, Exists)):
        if l.var != r.var:
            return None
        body = _anti_unify_formula(l.body, r.body, s, t, hole)
        return None if body is None else type(l)(l.var, body)
    if isinstance(l, (BoundedForAll, BoundedExists)):
        if l.var != r.var:
            return None
        bound = _anti_unify_term(l.bound, r.bound, s, t, hole)
        body = _anti_unify_formula(l.body, r.body, s, t, hole)
        return None if bound is None or body is None else type(l)(l.var, bound, body)
    return None


def _eq_subst(f: Formula) -> bool:
    """Leibniz: (s = t) -> (F[v:=s] <-> F[v:=t])."""
    if not (isinstance(f, Imp) and isinstance(f.left, Eq) and isinstance(f.right, Iff)):
        return False
    s, t = f.left.left, f.left.right
    l, r = f.right.left, f.right.right
    taken = _names_of(l) | _names_of(r) | _names_of(s) | _names_of(t)
    hole = _fresh("w", taken)
    template = _anti_unify_formula(l, r, s, t, hole)
    if template is None:
        return False
    return substitute(template, hole, s) == l and substitute(template, hole, t) == r


def _eq_congr(f: Formula) -> bool:
    """(s = t) -> (u[v:=s] = u[v:=t]) for a term context u."""
    if not (isinstance(f, Imp) and isinstance(f.left, Eq) and isinstance(f.right, Eq)):
        return False
    s, t = f.left.left, f.left.right
    u1, u2 = f.right.left, f.right.right
    taken = _names_of(u1) | _names_of(u2) | _names_of(s) | _names_of(t)
    hole = _fresh("w", taken)
    template = _anti_unify_term(u1, u2, s, t, hole)
    if template is None:
        return False
    return substitute_term(template, hole, s) == u1 and substitute_term(template, hole, t) == u2


_SCHEMES: dict[str, Callable[[Formula], bool]] = {
    "p1": _p1,
    "p2": _p2,
    "p3": _p3,
    "p3m": _p3m,
    "and_elim_l": _and_elim_l,
    "and_elim_r": _and_elim_r,
    "and_intro": _and_intro,
    "or_intro_l": _or_intro_l,
    "or_intro_r": _or_intro_r,
    "or_elim": _or_elim,
    "iff_elim_l": _iff_elim_l,
    "iff_elim_r": _iff_elim_r,
    "iff_intro": _iff_intro,
    "forall_elim": _forall_elim,
    "exists_intro": _exists_intro,
    "forall_imp": _forall_imp,
    "exists_imp": _exists_imp,
    "bounded_forall_def": _bounded_forall_def,
    "bounded_exists_def": _bounded_exists_def,
    "eq_refl": _eq_refl,
    "eq_sym": _eq_sym,
    "eq_trans": _eq_trans,
    "eq_subst": _eq_subst,
    "eq_congr": _eq_congr,
}

SCHEME_IDS = tuple(sorted(_SCHEMES))


# ---------------------------------------------------------------------------
# A small decidable base theory


def _ea_toy_axioms() -> tuple[Formula, ...]:
    return (
        syntax.parse("forall x (~ (S(x) = 0))"),
        syntax.parse("forall x forall y ((S(x) = S(y)) -> (x = y))"),
        syntax.parse("forall x ((x + 0) = x)"),
        syntax.parse("forall x forall y ((x + S(y)) = S((x + y)))"),
        syntax.parse("forall x ((x * 0) = 0)"),
        syntax.parse("forall x forall y ((x * S(y)) = ((x * y) + x))"),
        syntax.parse("forall x forall y ((x <= y) <-> (exists z ((z + x) = y)))"),
    )


EA_TOY_AXIOMS = _ea_toy_axioms()

EA_TOY = AxiomPredicate("EA-toy", lambda f: f in EA_TOY_AXIOMS)

BASE_PREDICATES: dict[str, AxiomPredicate] = {
    "EA-toy": EA_TOY,
    "definitional-only": DEFINITIONAL_ONLY,
}
