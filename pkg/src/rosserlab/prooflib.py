"""Programmatic construction of Hilbert proofs.

Provides a proof builder with line dedup, the deduction theorem as a proof
transformer, a stock of derived propositional lemmas, and a truth-table
driven completeness construction that turns any propositional entailment
(atoms = maximal non-propositional subformulas) into a checkable proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .proofs import (
    Assumption, DefinitionalAxiom, Generalization, LogicalAxiom, ModusPonens,
    ProofLine, ProofObject,
)
from .syntax import And, Eq, Formula, ForAll, Iff, Imp, Le, Not, Or, free_variables


class ProofBuildError(ValueError):
    pass


class Builder:
    """Accumulates proof lines, reusing any formula already derived."""

    def __init__(self) -> None:
        self.lines: list[ProofLine] = []
        self.index: dict[Formula, int] = {}

    def add(self, formula: Formula, justification) -> int:
        existing = self.index.get(formula)
        if existing is not None:
            return existing
        self.lines.append(ProofLine(formula, justification))
        self.index[formula] = len(self.lines) - 1
        return len(self.lines) - 1

    def assume(self, formula: Formula) -> int:
        return self.add(formula, Assumption())

    def axiom(self, scheme: str, formula: Formula) -> int:
        return self.add(formula, LogicalAxiom(scheme))

    def definitional(self, formula: Formula) -> int:
        return self.add(formula, DefinitionalAxiom())

    def mp(self, imp_ref: int, arg_ref: int) -> int:
        imp = self.lines[imp_ref].formula
        if not isinstance(imp, Imp):
            raise ProofBuildError(f"line {imp_ref} is not an implication")
        if self.lines[arg_ref].formula != imp.left:
            raise ProofBuildError("modus ponens mismatch")
        return self.add(imp.right, ModusPonens(imp_ref, arg_ref))

    def generalize(self, source_ref: int, var: str) -> int:
        body = self.lines[source_ref].formula
        return self.add(ForAll(var, body), Generalization(source_ref, var))

    def include(self, proof: ProofObject) -> int:
        """Splice another proof's lines; returns the ref of its conclusion."""
        mapping: dict[int, int] = {}
        for i, line in enumerate(proof.lines):
            j = line.justification
            if isinstance(j, ModusPonens):
                ref = self.add(line.formula, ModusPonens(mapping[j.imp], mapping[j.arg]))
            elif isinstance(j, Generalization):
                ref = self.add(line.formula, Generalization(mapping[j.source], j.var))
            else:
                ref = self.add(line.formula, j)
            mapping[i] = ref
        return mapping[len(proof.lines) - 1]

    def restate(self, ref: int) -> int:
        """Append a copy of an earlier line so it becomes the conclusion."""
        if ref == len(self.lines) - 1:
            return ref
        line = self.lines[ref]
        self.lines.append(line)
        return len(self.lines) - 1

    def export(self, conclusion: int | None = None) -> ProofObject:
        if conclusion is not None:
            self.restate(conclusion)
        return ProofObject(tuple(self.lines))


def prove_identity(a: Formula) -> ProofObject:
    b = Builder()
    step1 = b.axiom("p1", Imp(a, Imp(Imp(a, a), a)))
    step2 = b.axiom("p2", Imp(Imp(a, Imp(Imp(a, a), a)), Imp(Imp(a, Imp(a, a)), Imp(a, a))))
    step3 = b.mp(step2, step1)
    step4 = b.axiom("p1", Imp(a, Imp(a, a)))
    b.mp(step3, step4)
    return b.export()


def deduction(proof: ProofObject, hypothesis: Formula) -> ProofObject:
    """Discharge one assumption: from a proof of C using hypothesis h, build
    a proof of h -> C that no longer assumes h.

    Lines that do not depend on the hypothesis are copied verbatim and only
    weakened to h -> F where a dependent step actually needs them.
    """
    b = Builder()
    h = hypothesis
    depends: list[bool] = []
    copied: dict[int, int] = {}    # old line -> ref of F itself
    implied: dict[int, int] = {}   # old line -> ref of (h -> F)

    def implied_ref(i: int) -> int:
        ref = implied.get(i)
        if ref is not None:
            return ref
        f = proof.lines[i].formula
        weaken = b.axiom("p1", Imp(f, Imp(h, f)))
        ref = b.mp(weaken, copied[i])
        implied[i] = ref
        return ref

    for i, line in enumerate(proof.lines):
        f = line.formula
        j = line.justification
        if isinstance(j, Assumption) and f == h:
            implied[i] = b.include(prove_identity(h))
            depends.append(True)
            continue
        if isinstance(j, ModusPonens):
            if depends[j.imp] or depends[j.arg]:
                premise = proof.lines[j.imp].formula
                if not isinstance(premise, Imp):
                    raise ProofBuildError("malformed source proof")
                x = premise.left
                p2 = b.axiom("p2", Imp(Imp(h, Imp(x, f)), Imp(Imp(h, x), Imp(h, f))))
                step = b.mp(p2, implied_ref(j.imp))
                implied[i] = b.mp(step, implied_ref(j.arg))
                depends.append(True)
            else:
                copied[i] = b.add(f, ModusPonens(copied[j.imp], copied[j.arg]))
                depends.append(False)
            continue
        if isinstance(j, Generalization):
            v = j.var
            if depends[j.source]:
                if v in free_variables(h):
                    raise ProofBuildError(f"cannot discharge: {v} is free in the hypothesis")
                source = proof.lines[j.source].formula
                gen = b.add(ForAll(v, Imp(h, source)), Generalization(implied_ref(j.source), v))
                dist = b.axiom(
                    "forall_imp", Imp(ForAll(v, Imp(h, source)), Imp(h, ForAll(v, source)))
                )
                implied[i] = b.mp(dist, gen)
                depends.append(True)
            else:
                copied[i] = b.add(f, Generalization(copied[j.source], v))
                depends.append(False)
            continue
        # axiom, definitional axiom, or a different assumption
        copied[i] = b.add(f, j)
        depends.append(False)
    last = len(proof.lines) - 1
    return b.export(implied_ref(last))


def discharge_all(proof: ProofObject, hypotheses: list[Formula]) -> ProofObject:
    """Discharge hypotheses right to left, yielding h1 -> (h2 -> ... -> C)."""
    out = proof
    for h in reversed(hypotheses):
        out = deduction(out, h)
    return out


# ---------------------------------------------------------------------------
# Derived propositional lemmas (all assumption-free)


@lru_cache(maxsize=4096)
def lemma_efq(a: Formula, c: Formula) -> ProofObject:
    """~A -> (A -> C)."""
    b = Builder()
    na = b.assume(Not(a))
    pa = b.assume(a)
    w1 = b.axiom("p1", Imp(a, Imp(Not(c), a)))
    nca = b.mp(w1, pa)
    w2 = b.axiom("p1", Imp(Not(a), Imp(Not(c), Not(a))))
    ncna = b.mp(w2, na)
    m = b.axiom("p3m", Imp(Imp(Not(c), Not(a)), Imp(Imp(Not(c), a), c)))
    step = b.mp(m, ncna)
    final = b.mp(step, nca)
    return discharge_all(b.export(final), [Not(a), a])


@lru_cache(maxsize=4096)
def lemma_dn_elim(a: Formula) -> ProofObject:
    """~~A -> A."""
    b = Builder()
    nna = b.assume(Not(Not(a)))
    w = b.axiom("p1", Imp(Not(Not(a)), Imp(Not(a), Not(Not(a)))))
    nanna = b.mp(w, nna)
    m = b.axiom("p3m", Imp(Imp(Not(a), Not(Not(a))), Imp(Imp(Not(a), Not(a)), a)))
    step = b.mp(m, nanna)
    ident = b.include(prove_identity(Not(a)))
    final = b.mp(step, ident)
    return deduction(b.export(final), Not(Not(a)))


@lru_cache(maxsize=4096)
def lemma_dn_intro(a: Formula) -> ProofObject:
    """A -> ~~A."""
    b = Builder()
    pa = b.assume(a)
    dn = b.include(lemma_dn_elim(Not(a)))  # ~~~A -> ~A
    w = b.axiom("p1", Imp(a, Imp(Not(Not(Not(a))), a)))
    nnna_a = b.mp(w, pa)
    m = b.axiom(
        "p3m",
        Imp(Imp(Not(Not(Not(a))), Not(a)), Imp(Imp(Not(Not(Not(a))), a), Not(Not(a)))),
    )
    step = b.mp(m, dn)
    final = b.mp(step, nnna_a)
    return deduction(b.export(final), a)


@lru_cache(maxsize=4096)
def lemma_contrapose_intro(a: Formula, c: Formula) -> ProofObject:
    """(A -> C) -> (~C -> ~A)."""
    b = Builder()
    ac = b.assume(Imp(a, c))
    nc = b.assume(Not(c))
    nna = b.assume(Not(Not(a)))
    dn = b.include(lemma_dn_elim(a))
    pa = b.mp(dn, nna)
    pc = b.mp(ac, pa)
    inner = deduction(b.export(pc), Not(Not(a)))  # ~~A -> C, from [A->C, ~C]
    b2 = Builder()
    b2.assume(Imp(a, c))
    nc2 = b2.assume(Not(c))
    nnac = b2.include(inner)
    w = b2.axiom("p1", Imp(Not(c), Imp(Not(Not(a)), Not(c))))
    nnanc = b2.mp(w, nc2)
    m = b2.axiom(
        "p3m", Imp(Imp(Not(Not(a)), Not(c)), Imp(Imp(Not(Not(a)), c), Not(a)))
    )
    step = b2.mp(m, nnanc)
    final = b2.mp(step, nnac)
    return discharge_all(b2.export(final), [Imp(a, c), Not(c)])


@lru_cache(maxsize=4096)
def lemma_neg_imp(a: Formula, c: Formula) -> ProofObject:
    """A -> (~C -> ~(A -> C))."""
    ac = Imp(a, c)
    b = Builder()
    pa = b.assume(a)
    nc = b.assume(Not(c))
    nnac = b.assume(Not(Not(ac)))
    dn = b.include(lemma_dn_elim(ac))
    imp = b.mp(dn, nnac)
    got_c = b.mp(imp, pa)
    inner = deduction(b.export(got_c), Not(Not(ac)))  # ~~(A->C) -> C
    b2 = Builder()
    b2.assume(a)
    nc2 = b2.assume(Not(c))
    pos = b2.include(inner)
    w = b2.axiom("p1", Imp(Not(c), Imp(Not(Not(ac)), Not(c))))
    neg = b2.mp(w, nc2)
    m = b2.axiom("p3m", Imp(Imp(Not(Not(ac)), Not(c)), Imp(Imp(Not(Not(ac)), c), Not(ac))))
    step = b2.mp(m, neg)
    final = b2.mp(step, pos)
    return discharge_all(b2.export(final), [a, Not(c)])


@lru_cache(maxsize=4096)
def lemma_case_elim(a: Formula, c: Formula) -> ProofObject:
    """(A -> C) -> ((~A -> C) -> C)."""
    b = Builder()
    ac = b.assume(Imp(a, c))
    nac = b.assume(Imp(Not(a), c))
    cp1 = b.include(lemma_contrapose_intro(a, c))
    ncna = b.mp(cp1, ac)  # ~C -> ~A
    cp2 = b.include(lemma_contrapose_intro(Not(a), c))
    ncnna = b.mp(cp2, nac)  # ~C -> ~~A
    nc = b.assume(Not(c))
    nna = b.mp(ncnna, nc)
    dn = b.include(lemma_dn_elim(a))
    pa = b.mp(dn, nna)
    inner = deduction(b.export(pa), Not(c))  # ~C -> A
    b2 = Builder()
    ac2 = b2.assume(Imp(a, c))
    nac2 = b2.assume(Imp(Not(a), c))
    cp = b2.include(lemma_contrapose_intro(a, c))
    ncna2 = b2.mp(cp, ac2)
    nca = b2.include(inner)
    m = b2.axiom("p3m", Imp(Imp(Not(c), Not(a)), Imp(Imp(Not(c), a), c)))
    step = b2.mp(m, ncna2)
    final = b2.mp(step, nca)
    return discharge_all(b2.export(final), [Imp(a, c), Imp(Not(a), c)])


@lru_cache(maxsize=4096)
def lemma_or_false(a: Formula, c: Formula) -> ProofObject:
    """~A -> (~C -> ~(A | C))."""
    b = Builder()
    na = b.assume(Not(a))
    nc = b.assume(Not(c))
    efq = b.include(lemma_efq(a, c))
    a_to_c = b.mp(efq, na)
    ident = b.include(prove_identity(c))
    elim = b.axiom("or_elim", Imp(Imp(a, c), Imp(Imp(c, c), Imp(Or(a, c), c))))
    s1 = b.mp(elim, a_to_c)
    or_to_c = b.mp(s1, ident)
    cp = b.include(lemma_contrapose_intro(Or(a, c), c))
    s2 = b.mp(cp, or_to_c)
    final = b.mp(s2, nc)
    return discharge_all(b.export(final), [Not(a), Not(c)])


# ---------------------------------------------------------------------------
# Propositional semantics over formula atoms


PROPOSITIONAL = (Not, And, Or, Imp, Iff)


def prop_atoms(f: Formula) -> list[Formula]:
    """Maximal subformulas whose head is not a propositional connective."""
    out: list[Formula] = []
    seen: set[Formula] = set()

    def walk(g: Formula) -> None:
        if isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Imp, Iff)):
            walk(g.left)
            walk(g.right)
        else:
            if g not in seen:
                seen.add(g)
                out.append(g)

    walk(f)
    return out


def prop_value(f: Formula, val: dict[Formula, bool]) -> bool:
    if isinstance(f, Not):
        return not prop_value(f.body, val)
    if isinstance(f, And):
        return prop_value(f.left, val) and prop_value(f.right, val)
    if isinstance(f, Or):
        return prop_value(f.left, val) or prop_value(f.right, val)
    if isinstance(f, Imp):
        return (not prop_value(f.left, val)) or prop_value(f.right, val)
    if isinstance(f, Iff):
        return prop_value(f.left, val) == prop_value(f.right, val)
    return val[f]


MAX_PROP_ATOMS = 16


def prop_entails(assumptions: tuple[Formula, ...], goal: Formula) -> bool:
    """Exact propositional consequence by truth tables."""
    atoms: list[Formula] = []
    for f in (*assumptions, goal):
        for a in prop_atoms(f):
            if a not in atoms:
                atoms.append(a)
    if len(atoms) > MAX_PROP_ATOMS:
        raise ProofBuildError(f"too many atoms ({len(atoms)}) for exact decision")
    for mask in range(1 << len(atoms)):
        val = {a: bool(mask >> i & 1) for i, a in enumerate(atoms)}
        if all(prop_value(g, val) for g in assumptions) and not prop_value(goal, val):
            return False
    return True


def prop_tautology(f: Formula) -> bool:
    return prop_entails((), f)


# ---------------------------------------------------------------------------
# Completeness construction (truth-table recursion down the formula tree)


def _derive_signed(b: Builder, f: Formula, val: dict[Formula, bool], refs: dict[Formula, int]) -> int:
    """Within a builder whose assumptions decide every atom, derive f or ~f
    according to val; returns the line ref.  refs caches derived lines."""
    tv = prop_value(f, val)
    goal = f if tv else Not(f)
    cached = b.index.get(goal)
    if cached is not None:
        return cached
    if not isinstance(f, PROPOSITIONAL):
        return refs[goal]
    if isinstance(f, Not):
        inner = _derive_signed(b, f.body, val, refs)
        if prop_value(f.body, val):
            intro = b.include(lemma_dn_intro(f.body))
            return b.mp(intro, inner)
        return inner
    if isinstance(f, And):
        lv, rv = prop_value(f.left, val), prop_value(f.right, val)
        if lv and rv:
            l = _derive_signed(b, f.left, val, refs)
            r = _derive_signed(b, f.right, val, refs)
            ax = b.axiom("and_intro", Imp(f.left, Imp(f.right, f)))
            return b.mp(b.mp(ax, l), r)
        if not lv:
            l = _derive_signed(b, f.left, val, refs)
            elim = b.axiom("and_elim_l", Imp(f, f.left))
            cp = b.include(lemma_contrapose_intro(f, f.left))
            return b.mp(b.mp(cp, elim), l)
        r = _derive_signed(b, f.right, val, refs)
        elim = b.axiom("and_elim_r", Imp(f, f.right))
        cp = b.include(lemma_contrapose_intro(f, f.right))
        return b.mp(b.mp(cp, elim), r)
    if isinstance(f, Or):
        lv, rv = prop_value(f.left, val), prop_value(f.right, val)
        if lv:
            l = _derive_signed(b, f.left, val, refs)
            ax = b.axiom("or_intro_l", Imp(f.left, f))
            return b.mp(ax, l)
        if rv:
            r = _derive_signed(b, f.right, val, refs)
            ax = b.axiom("or_intro_r", Imp(f.right, f))
            return b.mp(ax, r)
        l = _derive_signed(b, f.left, val, refs)
        r = _derive_signed(b, f.right, val, refs)
        kit = b.include(lemma_or_false(f.left, f.right))
        return b.mp(b.mp(kit, l), r)
    if isinstance(f, Imp):
        lv, rv = prop_value(f.left, val), prop_value(f.right, val)
        if rv:
            r = _derive_signed(b, f.right, val, refs)
            ax = b.axiom("p1", Imp(f.right, f))
            return b.mp(ax, r)
        if not lv:
            l = _derive_signed(b, f.left, val, refs)
            kit = b.include(lemma_efq(f.left, f.right))
            return b.mp(kit, l)
        l = _derive_signed(b, f.left, val, refs)
        r = _derive_signed(b, f.right, val, refs)
        kit = b.include(lemma_neg_imp(f.left, f.right))
        return b.mp(b.mp(kit, l), r)
    if isinstance(f, Iff):
        lv, rv = prop_value(f.left, val), prop_value(f.right, val)
        l = _derive_signed(b, f.left, val, refs)
        r = _derive_signed(b, f.right, val, refs)
        if lv == rv:
            if lv:
                w1 = b.axiom("p1", Imp(f.right, Imp(f.left, f.right)))
                ltr = b.mp(w1, r)
                w2 = b.axiom("p1", Imp(f.left, Imp(f.right, f.left)))
                rtl = b.mp(w2, l)
            else:
                k1 = b.include(lemma_efq(f.left, f.right))
                ltr = b.mp(k1, l)
                k2 = b.include(lemma_efq(f.right, f.left))
                rtl = b.mp(k2, r)
            intro = b.axiom(
                "iff_intro", Imp(Imp(f.left, f.right), Imp(Imp(f.right, f.left), f))
            )
            return b.mp(b.mp(intro, ltr), rtl)
        # truth values differ: refute via the failing direction
        if lv:
            elim = b.axiom("iff_elim_l", Imp(f, Imp(f.left, f.right)))
            bad = Imp(f.left, f.right)
            kit = b.include(lemma_neg_imp(f.left, f.right))
            nbad = b.mp(b.mp(kit, l), r)
        else:
            elim = b.axiom("iff_elim_r", Imp(f, Imp(f.right, f.left)))
            bad = Imp(f.right, f.left)
            kit = b.include(lemma_neg_imp(f.right, f.left))
            nbad = b.mp(b.mp(kit, r), l)
        cp = b.include(lemma_contrapose_intro(f, bad))
        return b.mp(b.mp(cp, elim), nbad)
    raise ProofBuildError(f"unhandled connective {f!r}")


MAX_TAUTOLOGY_ATOMS = 12


def prove_tautology(f: Formula) -> ProofObject:
    """A checkable assumption-free proof of a propositional tautology."""
    if not prop_tautology(f):
        raise ProofBuildError(f"not a tautology: {f}")
    atoms = prop_atoms(f)
    if len(atoms) > MAX_TAUTOLOGY_ATOMS:
        raise ProofBuildError(f"too many atoms ({len(atoms)})")

    def cases(fixed: dict[Formula, bool], remaining: list[Formula]) -> ProofObject:
        if not remaining:
            b = Builder()
            refs: dict[Formula, int] = {}
            for atom, tv in fixed.items():
                lit = atom if tv else Not(atom)
                refs[lit] = b.assume(lit)
            ref = _derive_signed(b, f, dict(fixed), refs)
            return b.export(ref)
        atom, rest = remaining[0], remaining[1:]
        pos = deduction(cases({**fixed, atom: True}, rest), atom)
        neg = deduction(cases({**fixed, atom: False}, rest), Not(atom))
        b = Builder()
        for prev, tv in fixed.items():
            b.assume(prev if tv else Not(prev))
        pref = b.include(pos)
        nref = b.include(neg)
        kit = b.include(lemma_case_elim(atom, f))
        ref = b.mp(b.mp(kit, pref), nref)
        return b.export(ref)

    return cases({}, atoms)


def prove_entailment(assumptions: tuple[Formula, ...], goal: Formula) -> ProofObject:
    """A proof of goal whose assumption lines are among `assumptions`."""
    if not prop_entails(assumptions, goal):
        raise ProofBuildError("assumptions do not propositionally entail the goal")
    relevant = _minimize(assumptions, goal)
    chain = goal
    for a in reversed(relevant):
        chain = Imp(a, chain)
    taut = prove_tautology(chain)
    b = Builder()
    ref = b.include(taut)
    for a in relevant:
        ref = b.mp(ref, b.assume(a))
    return b.export(ref)


def _minimize(assumptions: tuple[Formula, ...], goal: Formula) -> list[Formula]:
    chosen = list(assumptions)
    for a in list(chosen):
        trial = [g for g in chosen if g != a]
        if prop_entails(tuple(trial), goal):
            chosen = trial
    return chosen
