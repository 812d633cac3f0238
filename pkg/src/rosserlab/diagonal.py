"""Fixed points by strong diagonalization, with kernel-checkable certificates.

The constructions use the substitution-literal diagonal: the fixed point
contains closed sub(...) terms whose values are its own code (and, for the
Rosser formula, the code of its negation via a simultaneous double
diagonal), so every certificate unfolds by ground defining equations of the
substitution function plus equality reasoning alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import coding, kernel, prooflib
from .proofs import ProofObject
from .syntax import (
    Eq, Exists, Formula, Iff, Imp, Le, Not, Plus, Subnum, Succ, Term, Times,
    Var, classify, free_variables, numeral, substitute,
)


class ArityError(ValueError):
    pass


FALSUM = Eq(numeral(0), numeral(1))


@dataclass(frozen=True)
class FixedPointCertificate:
    """A fixed point phi for a context, with a proof of the defining
    equivalence from definitional axioms only."""

    context: Formula
    variable: str
    fixedpoint: Formula
    equivalence: Formula
    proof: ProofObject

    def check(self) -> kernel.CheckResult:
        result = kernel.check_proof(self.proof, self.equivalence, kernel.DEFINITIONAL_ONLY)
        if isinstance(result, kernel.Accept) and kernel.assumptions(self.proof):
            return kernel.Reject(0, "certificate uses assumptions")
        return result


def _definitional_equation(b: prooflib.Builder, code_term: Subnum) -> tuple[int, int]:
    """Add the ground defining equation code_term = numeral(value); returns
    (line ref, value)."""
    value = kernel.term_value(code_term)
    ref = b.definitional(Eq(code_term, numeral(value)))
    return ref, value


def diagonalize(theta: Formula, variable: str | None = None) -> FixedPointCertificate:
    """Fixed point of a context with exactly one free variable.

    phi is theta[w := sub(m, m)] where m codes theta[w := sub(w, w)]; the
    certificate proves phi <-> theta[w := numeral(code(phi))].
    """
    fv = free_variables(theta)
    if variable is None:
        if len(fv) != 1:
            raise ArityError(f"context must have exactly one free variable, got {sorted(fv)}")
        variable = next(iter(fv))
    elif fv != {variable}:
        raise ArityError(f"context free variables {sorted(fv)} != {{{variable}}}")
    w = variable
    diag = substitute(theta, w, Subnum(Var(w), Var(w)))
    m = coding.encode(diag)
    self_term = Subnum(numeral(m), numeral(m))
    phi = substitute(diag, w, numeral(m))

    b = prooflib.Builder()
    eq_ref, n = _definitional_equation(b, self_term)
    unfolded = substitute(theta, w, numeral(n))
    equivalence = Iff(phi, unfolded)
    subst = b.axiom("eq_subst", Imp(Eq(self_term, numeral(n)), equivalence))
    conclusion = b.mp(subst, eq_ref)
    proof = b.export(conclusion)
    return FixedPointCertificate(theta, w, phi, equivalence, proof)


# ---------------------------------------------------------------------------
# The Rosser formula: a double diagonal through sub


def _require_sigma1_template(prf: Formula, target_var: str) -> None:
    if target_var not in free_variables(prf):
        raise kernel.NotSigma1(f"template does not mention {target_var}")
    if not isinstance(prf, Exists) or classify(prf.body) != "Delta0":
        raise kernel.NotSigma1("template must be prenex Sigma1: exists y (Delta0)")


def _replace_term_in(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, Succ):
        base = _replace_term_in(t.base, old, new)
        if isinstance(base, Succ):
            return Succ(base.base, base.count + t.count)
        return Succ(base, t.count)
    if isinstance(t, (Plus, Times)):
        return type(t)(_replace_term_in(t.left, old, new), _replace_term_in(t.right, old, new))
    if isinstance(t, Subnum):
        return Subnum(_replace_term_in(t.code, old, new), _replace_term_in(t.arg, old, new))
    return t


def _replace_term(f: Formula, old: Term, new: Term) -> Formula:
    from .syntax import And, BoundedExists, BoundedForAll, ForAll, Or

    if isinstance(f, (Eq, Le)):
        return type(f)(_replace_term_in(f.left, old, new), _replace_term_in(f.right, old, new))
    if isinstance(f, Not):
        return Not(_replace_term(f.body, old, new))
    if isinstance(f, (And, Or, Imp, Iff)):
        return type(f)(_replace_term(f.left, old, new), _replace_term(f.right, old, new))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.var, _replace_term(f.body, old, new))
    if isinstance(f, (BoundedForAll, BoundedExists)):
        return type(f)(f.var, _replace_term_in(f.bound, old, new), _replace_term(f.body, old, new))
    raise TypeError(f"not a formula: {f!r}")


def rosser_rho(prf: Formula, theory_var: str = "x", target_var: str = "z") -> tuple[Formula, FixedPointCertificate]:
    """The Rosser formula for a provability template.

    prf is a prenex Sigma1 template with the theory code free in theory_var
    and the proved formula's code free in target_var.  The result rho has
    theory_var as its only free variable, classifies Pi1, and its body is
    literally the negated strict witness comparison of the two
    self-referential instances.  The certificate proves

        rho <-> ~(prf[target := sub(c_rho, x)] < prf[target := sub(c_negrho, x)])

    with literal numerals c_rho, c_negrho for the codes of rho and ~rho.
    """
    _require_sigma1_template(prf, target_var)
    taken = free_variables(prf)
    u, v = "u", "v"
    if u in taken or v in taken or not (u < v < theory_var):
        raise ArityError("template may not use the reserved placeholders u, v")

    def body_of(slot1: Term, slot2: Term) -> Formula:
        left = substitute(prf, target_var, Subnum(slot1, Var(theory_var)))
        right = substitute(prf, target_var, Subnum(slot2, Var(theory_var)))
        return Not(kernel.witness_compare(left, right, strict=True))

    u_slot = Subnum(Subnum(Var(u), Var(u)), Var(v))
    v_slot = Subnum(Subnum(Var(v), Var(u)), Var(v))
    template_pos = body_of(u_slot, v_slot)
    a = coding.encode(template_pos)
    b_code = coding.encode(Not(template_pos))
    t1 = Subnum(Subnum(numeral(a), numeral(a)), numeral(b_code))
    t2 = Subnum(Subnum(numeral(b_code), numeral(a)), numeral(b_code))
    rho = body_of(t1, t2)

    builder = prooflib.Builder()
    eq1, k1 = _definitional_equation(builder, Subnum(numeral(a), numeral(a)))
    congr1 = builder.axiom(
        "eq_congr",
        Imp(Eq(Subnum(numeral(a), numeral(a)), numeral(k1)), Eq(t1, Subnum(numeral(k1), numeral(b_code)))),
    )
    chain1 = builder.mp(congr1, eq1)
    eq2, c_rho = _definitional_equation(builder, Subnum(numeral(k1), numeral(b_code)))
    trans1 = builder.axiom(
        "eq_trans",
        Imp(
            Eq(t1, Subnum(numeral(k1), numeral(b_code))),
            Imp(Eq(Subnum(numeral(k1), numeral(b_code)), numeral(c_rho)), Eq(t1, numeral(c_rho))),
        ),
    )
    t1_eq = builder.mp(builder.mp(trans1, chain1), eq2)

    eq3, k2 = _definitional_equation(builder, Subnum(numeral(b_code), numeral(a)))
    congr2 = builder.axiom(
        "eq_congr",
        Imp(Eq(Subnum(numeral(b_code), numeral(a)), numeral(k2)), Eq(t2, Subnum(numeral(k2), numeral(b_code)))),
    )
    chain2 = builder.mp(congr2, eq3)
    eq4, c_neg = _definitional_equation(builder, Subnum(numeral(k2), numeral(b_code)))
    trans2 = builder.axiom(
        "eq_trans",
        Imp(
            Eq(t2, Subnum(numeral(k2), numeral(b_code))),
            Imp(Eq(Subnum(numeral(k2), numeral(b_code)), numeral(c_neg)), Eq(t2, numeral(c_neg))),
        ),
    )
    t2_eq = builder.mp(builder.mp(trans2, chain2), eq4)

    if c_rho != coding.encode(rho) or c_neg != coding.encode(Not(rho)):
        raise AssertionError("diagonal slots do not evaluate to the fixed point's codes")

    step1, rho1 = _rewrite_with(builder, rho, t1, numeral(c_rho), t1_eq)
    step2, rho2 = _rewrite_with(builder, rho1, t2, numeral(c_neg), t2_eq)
    taut = prooflib.prove_tautology(
        Imp(Iff(rho, rho1), Imp(Iff(rho1, rho2), Iff(rho, rho2)))
    )
    kit = builder.include(taut)
    conclusion = builder.mp(builder.mp(kit, step1), step2)
    equivalence = Iff(rho, rho2)
    proof = builder.export(conclusion)
    cert = FixedPointCertificate(prf, theory_var, rho, equivalence, proof)
    return rho, cert


def _rewrite_with(b: prooflib.Builder, formula: Formula, old: Term, new: Term, eq_ref: int) -> tuple[int, Formula]:
    rewritten = _replace_term(formula, old, new)
    ax = b.axiom("eq_subst", Imp(Eq(old, new), Iff(formula, rewritten)))
    return b.mp(ax, eq_ref), rewritten


# ---------------------------------------------------------------------------
# Canonical schematic provability templates
#
# Genuine arithmetization of the proof checker inside the object language is
# out of scope; certificates only need Sigma1 templates of the right shape.


def schematic_bounded_provability(phi: Formula, psi: Formula) -> Formula:
    """Sigma1 sentence standing for: some x bounds axioms proving psi in the
    phi-extension.  Schematic stand-in with a recognizable footprint."""
    a, b = coding.encode(phi), coding.encode(psi)
    return Exists("x", Le(Plus(numeral(a), numeral(b)), Var("x")))


def schematic_provability_template(phi: Formula, target_var: str = "z") -> Formula:
    """Sigma1 template in target_var for provability in the phi-extension."""
    a = coding.encode(phi)
    return Exists("y", Le(Plus(numeral(a), Var(target_var)), Var("y")))


def fgh_nu(phi: Formula, psi: Formula) -> tuple[Formula, FixedPointCertificate]:
    """The absorption fixed point: nu <-> (bounded-provability-of-psi
    strictly before provability-of-nu), Sigma1 by construction."""
    emission = schematic_bounded_provability(phi, psi)
    prov = schematic_provability_template(phi)
    w = "w"

    def body(slot: Term) -> Formula:
        right = substitute(prov, "z", slot)
        return kernel.witness_compare(emission, right, strict=True)

    diag_body = body(Subnum(Var(w), Var(w)))
    m = coding.encode(diag_body)
    self_term = Subnum(numeral(m), numeral(m))
    nu = body(self_term)

    b = prooflib.Builder()
    eq_ref, n = _definitional_equation(b, self_term)
    if n != coding.encode(nu):
        raise AssertionError("diagonal slot does not evaluate to the fixed point's code")
    conclusion_ref, unfolded = _rewrite_with(b, nu, self_term, numeral(n), eq_ref)
    equivalence = Iff(nu, unfolded)
    proof = b.export(conclusion_ref)
    return nu, FixedPointCertificate(prov, w, nu, equivalence, proof)


def slow_star_fixed_point(phi: Formula, psi: Formula) -> tuple[Formula, FixedPointCertificate]:
    """The self-bounded variant: star(psi) <-> (bounded-provability-of-psi
    strictly before provability-of-star(falsum)); the self reference runs
    through the falsum instance of the same template."""
    prov = schematic_provability_template(phi)
    bot_code = coding.encode(FALSUM)
    w, z = "w", "z"
    emission_tpl = Exists("x", Le(Plus(numeral(coding.encode(phi)), Var(z)), Var("x")))

    def body(slot: Term) -> Formula:
        right = substitute(prov, "z", slot)
        return kernel.witness_compare(emission_tpl, right, strict=True)

    diag_body = body(Subnum(Subnum(Var(w), Var(w)), numeral(bot_code)))
    m = coding.encode(diag_body)  # free vars: w < z
    chi = substitute(diag_body, w, numeral(m))  # free var: z
    star_psi = substitute(chi, z, numeral(coding.encode(psi)))

    inner = Subnum(numeral(m), numeral(m))
    outer = Subnum(inner, numeral(bot_code))
    b = prooflib.Builder()
    eq1, chi_code = _definitional_equation(b, inner)
    if chi_code != coding.encode(chi):
        raise AssertionError("inner diagonal slot is not the template's code")
    congr = b.axiom(
        "eq_congr",
        Imp(Eq(inner, numeral(chi_code)), Eq(outer, Subnum(numeral(chi_code), numeral(bot_code)))),
    )
    chain = b.mp(congr, eq1)
    eq2, star_bot_code = _definitional_equation(b, Subnum(numeral(chi_code), numeral(bot_code)))
    if star_bot_code != coding.encode(substitute(chi, z, numeral(bot_code))):
        raise AssertionError("outer diagonal slot is not the falsum instance's code")
    trans = b.axiom(
        "eq_trans",
        Imp(
            Eq(outer, Subnum(numeral(chi_code), numeral(bot_code))),
            Imp(
                Eq(Subnum(numeral(chi_code), numeral(bot_code)), numeral(star_bot_code)),
                Eq(outer, numeral(star_bot_code)),
            ),
        ),
    )
    full_eq = b.mp(b.mp(trans, chain), eq2)
    conclusion_ref, unfolded = _rewrite_with(b, star_psi, outer, numeral(star_bot_code), full_eq)
    equivalence = Iff(star_psi, unfolded)
    proof = b.export(conclusion_ref)
    return star_psi, FixedPointCertificate(prov, w, star_psi, equivalence, proof)


# ---------------------------------------------------------------------------
# The no-extensional-Rosser demonstration


@dataclass(frozen=True)
class DemoStep:
    formula: Formula
    rule: str
    premises: tuple[int, ...]
    proof: ProofObject | None


@dataclass(frozen=True)
class ContradictionReport:
    rho_hat: Formula
    phi0: FixedPointCertificate
    phi1: FixedPointCertificate
    steps: tuple[DemoStep, ...]
    failing_rule: str | None
    evidence: str | None

    def kernel_checked(self) -> bool:
        for step in self.steps:
            if step.proof is None:
                continue
            res = kernel.check_proof(step.proof, step.formula, _DEMO_ALPHA)
            if not isinstance(res, kernel.Accept):
                return False
        return True


_DEMO_ALPHA = kernel.AxiomPredicate("demo-steps", lambda f: True)


def impossibility_demo(rho_hat: Formula) -> ContradictionReport:
    """Derive the clash between Independence and Extensionality for a
    candidate formula with one free variable.

    Independence and Extensionality enter as tagged admitted rules; the
    propositional steps between them carry kernel proofs from the previously
    derived lines.
    """
    fv = free_variables(rho_hat)
    if len(fv) != 1:
        raise ArityError("candidate must have exactly one free variable")
    var = next(iter(fv))

    cert0 = diagonalize(rho_hat, var)
    cert1 = diagonalize(Not(rho_hat), var)
    phi0, phi1 = cert0.fixedpoint, cert1.fixedpoint
    rho0 = cert0.equivalence.right       # rho_hat(code phi0)
    neg_rho1 = cert1.equivalence.right   # ~rho_hat(code phi1)
    rho1 = neg_rho1.body

    steps: list[DemoStep] = []

    def add(formula: Formula, rule: str, premises: tuple[int, ...], prove_from: tuple[Formula, ...] | None) -> int:
        proof = None
        if prove_from is not None:
            proof = prooflib.prove_entailment(prove_from, formula)
        steps.append(DemoStep(formula, rule, premises, proof))
        return len(steps) - 1

    s_fp0 = add(cert0.equivalence, "fixed-point", (), None)
    s_fp1 = add(cert1.equivalence, "fixed-point", (), None)
    s_ind0 = add(Not(phi0), "independence", (s_fp0,), None)
    s_ind1 = add(Not(phi1), "independence", (s_fp1,), None)
    s_equiv = add(
        Iff(phi0, phi1), "propositional", (s_ind0, s_ind1), (Not(phi0), Not(phi1))
    )
    s_ext = add(Iff(rho0, rho1), "extensionality", (s_equiv,), None)
    s_flip = add(
        Iff(phi0, Not(phi1)),
        "propositional",
        (s_fp0, s_fp1, s_ext),
        (cert0.equivalence, cert1.equivalence, Iff(rho0, rho1)),
    )
    add(
        FALSUM,
        "propositional",
        (s_equiv, s_flip, s_ind0, s_ind1),
        (Iff(phi0, phi1), Iff(phi0, Not(phi1)), Not(phi0), Not(phi1)),
    )

    failing, evidence = _diagnose(rho_hat, var, phi0, rho0)
    return ContradictionReport(rho_hat, cert0, cert1, tuple(steps), failing, evidence)


def _diagnose(rho_hat: Formula, var: str, phi0: Formula, rho0: Formula) -> tuple[str | None, str | None]:
    """If the candidate's instances are decidably one-sided, Independence is
    the admitted rule doing the impossible work."""
    try:
        verdict = kernel.eval3(rho0, {}, 64)
    except Exception:
        return None, None
    if verdict == kernel.TRUE:
        return (
            "independence",
            f"instance {rho0} evaluates true, so the negation side of Independence fails",
        )
    if verdict == kernel.FALSE:
        return (
            "independence",
            f"instance {rho0} evaluates false, so the positive side of Independence fails",
        )
    return None, None
