"""Bounded, uniform, and slow provability over injected proof enumerations.

A slow universe is a finite sentence table (real formulas; ids double as
codes), a base axiom set, and a schedule enumerating theorems; stages play
the role of proof codes.  The canonical generator places each theory's
theorems at pairing-function stages, which yields the constructive bound F
relating uniform provability back to plain bounded provability.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from . import kernel, prooflib, syntax
from .kernel import Schedule, ScheduleEvent
from .proofs import ProofObject
from .syntax import And, Formula, Iff, Imp, Not


class CodeBoundExceeded(ValueError):
    pass


SMALL = "Small"
NOT_SMALL = "NotSmall"
UNKNOWN = "Unknown"

_STAGE_BASE = 9


def event_stage(theory: Optional[int], proves: int) -> int:
    """Canonical stage for a theorem-enumeration event.

    Base-theory proofs and extension proofs live on disjoint residues of an
    injective pairing, so stages stay collision free and every stage
    dominates the ids it mentions.
    """
    a = 0 if theory is None else theory
    b = proves
    pair = (a + b) * (a + b + 1) // 2 + b
    return 3 * pair + _STAGE_BASE + (0 if theory is None else 1)


def uniform_bound_F(x: int) -> int:
    """Cost bound for splicing a propositional reduction into a bounded
    proof: any canonically placed event for ids <= x sits below F(x)."""
    if x < 0:
        raise ValueError("bound must be a natural number")
    return event_stage(x, x) + 2


@dataclass
class SlowUniverse:
    name: str
    sentences: dict[int, Formula]
    axioms: tuple[int, ...]
    extensions: tuple[int, ...]
    schedule: Schedule

    def formula(self, sid: int) -> Formula:
        return self.sentences[sid]

    def ids(self) -> list[int]:
        return sorted(self.sentences)

    def base_theorems_upto(self, n: int) -> tuple[Formula, ...]:
        out = []
        for e in self.schedule.events:
            if e.stage > n:
                break
            if e.theory is None:
                out.append(self.sentences[e.proves])
        return tuple(out)

    def axiom_formulas(self) -> tuple[Formula, ...]:
        return tuple(self.sentences[a] for a in self.axioms)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "sentences": [
                {"id": sid, "text": syntax.print_formula(self.sentences[sid])}
                for sid in self.ids()
            ],
            "axioms": list(self.axioms),
            "extensions": list(self.extensions),
            "schedule": [
                {"stage": e.stage, "theory": e.theory, "proves": e.proves}
                for e in self.schedule.events
            ],
        }


def load_universe(data: dict, name: str = "") -> SlowUniverse:
    sentences: dict[int, Formula] = {}
    for entry in data["sentences"]:
        sid = entry["id"]
        f = syntax.parse(entry["text"])
        if syntax.free_variables(f):
            raise ValueError(f"sentence {sid} has free variables")
        if sid in sentences:
            raise ValueError(f"duplicate sentence id {sid}")
        sentences[sid] = f
    axioms = tuple(data["axioms"])
    extensions = tuple(data.get("extensions", ()))
    events = [
        ScheduleEvent(e["stage"], e.get("theory"), e["proves"])
        for e in data.get("schedule", [])
    ]
    for e in events:
        mentioned = [e.proves] + ([e.theory] if e.theory is not None else [])
        if max(mentioned) >= e.stage:
            raise ValueError(f"stage {e.stage} mentions an id it does not dominate")
    return SlowUniverse(data.get("name", name or "universe"), sentences, axioms,
                        extensions, Schedule(events))


# ---------------------------------------------------------------------------
# The provability layers


@dataclass(frozen=True)
class PreceqInstance:
    left: int
    right: int
    bound: int
    verdict: bool
    support: tuple[int, ...]


def _prop_tables(u: SlowUniverse) -> dict:
    """Per-universe truth tables: each sentence as a bitmask over the joint
    atom assignments, making propositional consequence a couple of ands."""
    cached = getattr(u, "_prop_tables", None)
    if cached is not None:
        return cached
    atoms: list[Formula] = []
    for sid in u.ids():
        for a in prooflib.prop_atoms(u.formula(sid)):
            if a not in atoms:
                atoms.append(a)
    n = len(atoms)
    if n > 20:
        raise prooflib.ProofBuildError(f"universe too rich for exact tables ({n} atoms)")
    rows = 1 << n
    full = (1 << rows) - 1
    column = {}
    for i, a in enumerate(atoms):
        m = 0
        for v in range(rows):
            if (v >> i) & 1:
                m |= 1 << v
        column[a] = m

    def mask(f: Formula) -> int:
        if isinstance(f, Not):
            return full & ~mask(f.body)
        if isinstance(f, And):
            return mask(f.left) & mask(f.right)
        if isinstance(f, syntax.Or):
            return mask(f.left) | mask(f.right)
        if isinstance(f, Imp):
            return (full & ~mask(f.left)) | mask(f.right)
        if isinstance(f, Iff):
            a = mask(f.left)
            b = mask(f.right)
            return full & ~(a ^ b)
        return column[f]

    tables = {
        "full": full,
        "mask": {sid: mask(u.formula(sid)) for sid in u.ids()},
    }
    setattr(u, "_prop_tables", tables)
    return tables


def entails_ids(u: SlowUniverse, premises: tuple[int, ...], goal: int) -> bool:
    """Exact propositional consequence between declared sentences."""
    t = _prop_tables(u)
    m = t["full"]
    for sid in premises:
        m &= t["mask"][sid]
    return m & ~t["mask"][goal] & t["full"] == 0


def preceq(u: SlowUniverse, phi: int, psi: int, n: int) -> bool:
    """psi follows propositionally from phi plus the base theorems whose
    proof stages are at most n."""
    if phi > n or psi > n:
        raise CodeBoundExceeded(f"sentences {phi},{psi} not both <= {n}")
    t = _prop_tables(u)
    m = t["mask"][phi]
    for e in u.schedule.events:
        if e.stage > n:
            break
        if e.theory is None:
            m &= t["mask"][e.proves]
    return m & ~t["mask"][psi] & t["full"] == 0


def preceq_instance(u: SlowUniverse, phi: int, psi: int, n: int) -> PreceqInstance:
    verdict = preceq(u, phi, psi, n)
    support: list[int] = []
    if verdict:
        used = [e.proves for e in u.schedule.events if e.stage <= n and e.theory is None]
        for sid in list(used):
            trial = [t for t in used if t != sid]
            side = tuple(u.formula(t) for t in trial)
            if prooflib.prop_entails((u.formula(phi), *side), u.formula(psi)):
                used = trial
        support = used
    return PreceqInstance(phi, psi, n, verdict, tuple(support))


def box_bounded(u: SlowUniverse, phi: Optional[int], psi: int, x: int) -> bool:
    """Earliest-stage bounded provability in the phi-extension."""
    for e in u.schedule.events:
        if e.stage > x:
            return False
        if e.proves == psi and (e.theory is None or e.theory == phi):
            return True
    return False


def box_stage(u: SlowUniverse, phi: Optional[int], psi: int) -> Optional[int]:
    for e in u.schedule.events:
        if e.proves == psi and (e.theory is None or e.theory == phi):
            return e.stage
    return None


def graybox(u: SlowUniverse, phi: int, psi: int, x: int) -> bool:
    """Uniform bounded provability: through some sentence chi <= x that the
    phi-side reaches propositionally and whose extension proves psi."""
    if phi > x:
        return False
    for chi in u.ids():
        if chi > x:
            break
        if preceq(u, phi, chi, x) and box_bounded(u, chi, psi, x):
            return True
    return False


def graybox_unbounded(u: SlowUniverse, phi: int, psi: int) -> bool:
    top = max((e.stage for e in u.schedule.events), default=0)
    x = max(top, max(u.ids(), default=0))
    return graybox(u, phi, psi, x)


# ---------------------------------------------------------------------------
# Smallness


@dataclass(frozen=True)
class SmallnessQuery:
    phi: int
    bound: int
    budget: int
    verdict: str
    counterexample: Optional[int] = None

    def to_json(self) -> dict:
        return {"phi": self.phi, "bound": self.bound, "budget": self.budget,
                "verdict": self.verdict, "counterexample": self.counterexample}


def smallness(u: SlowUniverse, phi: int, x: int, budget: int) -> SmallnessQuery:
    """Small iff every Sigma1 sentence with code <= x that is uniformly
    provable at x evaluates true; three valued under the search budget."""
    unknown = False
    for sid in u.ids():
        if sid > x:
            break
        f = u.formula(sid)
        if syntax.classify(f) not in (syntax.DELTA0, syntax.SIGMA1):
            continue
        if not graybox(u, phi, sid, x):
            continue
        value = kernel.sigma1_eval(f, budget)
        if value == kernel.FALSE:
            return SmallnessQuery(phi, x, budget, NOT_SMALL, counterexample=sid)
        if value == kernel.UNKNOWN:
            unknown = True
    return SmallnessQuery(phi, x, budget, UNKNOWN if unknown else SMALL)


# ---------------------------------------------------------------------------
# Transfer checkers


@dataclass
class Verdict:
    passed: bool
    violations: list[str] = field(default_factory=list)
    checked: int = 0
    unknowns: int = 0


def _interesting_bounds(u: SlowUniverse, extra: tuple[int, ...] = ()) -> list[int]:
    stages = [e.stage for e in u.schedule.events]
    bounds = sorted(set(u.ids()) | set(stages) | set(extra))
    if stages:
        bounds.append(max(stages) + 1)
    return bounds


def transfer_uniformity(u: SlowUniverse, proof: ProofObject, phi: int, psi: int) -> Verdict:
    """With a checked base proof of phi -> psi enumerated at stage s, the
    uniform layer transfers: for all x >= s and chi <= x, reaching chi from
    psi also reaches it from phi."""
    target = Imp(u.formula(phi), u.formula(psi))
    alpha = kernel.AxiomPredicate("universe-axioms", lambda f: f in u.axiom_formulas())
    res = kernel.check_proof(proof, target, alpha)
    if not isinstance(res, kernel.Accept):
        return Verdict(False, [f"side proof rejected: {res}"])
    imp_id = None
    for sid, f in u.sentences.items():
        if f == target:
            imp_id = sid
            break
    s = box_stage(u, None, imp_id) if imp_id is not None else None
    if s is None:
        return Verdict(False, ["implication is not enumerated by the base theory"])
    bad: list[str] = []
    checked = 0
    for x in _interesting_bounds(u, (s, s + 1)):
        if x < s:
            continue
        for chi in u.ids():
            if chi > x:
                break
            checked += 1
            if graybox(u, psi, chi, x) and not graybox(u, phi, chi, x):
                bad.append(f"x={x} chi={chi}: uniform provability fails to transfer")
    return Verdict(not bad, bad, checked)


def smallness_transfer(u: SlowUniverse, proof: ProofObject, phi: int, psi: int,
                       budget: int = 64) -> Verdict:
    """Smallness transfers from phi to psi: via the uniform layer above the
    implication's stage, and via soundness below it (both extensions of a
    sound base keep honest bounds small there)."""
    target = Imp(u.formula(phi), u.formula(psi))
    alpha = kernel.AxiomPredicate("universe-axioms", lambda f: f in u.axiom_formulas())
    res = kernel.check_proof(proof, target, alpha)
    if not isinstance(res, kernel.Accept):
        return Verdict(False, [f"side proof rejected: {res}"])
    imp_id = next((sid for sid, f in u.sentences.items() if f == target), None)
    s = box_stage(u, None, imp_id) if imp_id is not None else None
    if s is None:
        return Verdict(False, ["implication is not enumerated by the base theory"])
    bad: list[str] = []
    checked = unknowns = 0
    sound_sides = _sigma1_sound(u, phi, budget) and _sigma1_sound(u, psi, budget)
    for x in _interesting_bounds(u, (s - 1, s, s + 1)):
        if x < 0:
            continue
        a = smallness(u, phi, x, budget)
        b = smallness(u, psi, x, budget)
        checked += 1
        if UNKNOWN in (a.verdict, b.verdict):
            unknowns += 1
            continue
        if x >= s and a.verdict == SMALL and b.verdict == NOT_SMALL:
            bad.append(f"x={x}: smallness fails to transfer above the proof stage")
        if x < s and sound_sides and a.verdict == SMALL and b.verdict == NOT_SMALL:
            bad.append(f"x={x}: smallness fails to transfer below the proof stage")
    return Verdict(not bad, bad, checked, unknowns)


def _sigma1_sound(u: SlowUniverse, phi: int, budget: int) -> bool:
    for e in u.schedule.events:
        if e.theory is None or e.theory == phi:
            f = u.formula(e.proves)
            if syntax.classify(f) in (syntax.DELTA0, syntax.SIGMA1):
                if kernel.sigma1_eval(f, budget) == kernel.FALSE:
                    return False
    return True


# ---------------------------------------------------------------------------
# Slow provability


@dataclass(frozen=True)
class SlowProof:
    conclusion: int
    bound: int
    proof: ProofObject
    smallness: SmallnessQuery
    axioms_used: tuple[int, ...]


@dataclass(frozen=True)
class SlowBoxResult:
    verdict: str                       # "Yes" | "No" | "Unknown"
    witness: Optional[SlowProof] = None


def slow_box(u: SlowUniverse, phi: int, psi: int, budget: int = 64) -> SlowBoxResult:
    """Provability of psi from small axioms of the phi-extension.

    Yes carries a kernel proof whose assumptions all pass the axiom gate
    (base axiom or the extension sentence itself, with a small bound);
    No only after the unrestricted axiom set still fails propositionally.
    """
    cache = getattr(u, "_slow_cache", None)
    if cache is None:
        cache = {}
        setattr(u, "_slow_cache", cache)
    key = (phi, psi, budget)
    if key in cache:
        return cache[key]
    result = _slow_box_uncached(u, phi, psi, budget)
    cache[key] = result
    return result


def _slow_box_uncached(u: SlowUniverse, phi: int, psi: int, budget: int) -> SlowBoxResult:
    pool = sorted(set(u.axioms) | {phi})
    if not entails_ids(u, tuple(pool), psi):
        return SlowBoxResult("No")
    unknown = False
    for x in sorted(set(pool)):
        admitted = tuple(a for a in pool if a <= x)
        if not entails_ids(u, admitted, psi):
            continue
        q = smallness(u, phi, x, budget)
        if q.verdict == SMALL:
            minimal = list(admitted)
            for a in list(minimal):
                trial = tuple(b for b in minimal if b != a)
                if entails_ids(u, trial, psi):
                    minimal = list(trial)
            formulas = tuple(u.formula(a) for a in minimal)
            proof = prooflib.prove_entailment(formulas, u.formula(psi))
            used = tuple(a for a in minimal if u.formula(a) in proof.assumption_formulas())
            return SlowBoxResult("Yes", SlowProof(psi, x, proof, q, used))
        if q.verdict == UNKNOWN:
            unknown = True
    return SlowBoxResult("Unknown" if unknown else "No")


def recheck_slow_proof(u: SlowUniverse, phi: int, witness: SlowProof) -> bool:
    """Replay the proof through the kernel and re-verify the axiom gate."""
    beta = kernel.AxiomPredicate(
        "small-axioms",
        lambda f: f in tuple(u.formula(a) for a in witness.axioms_used),
    )
    res = kernel.check_proof(witness.proof, u.formula(witness.conclusion), beta)
    if not isinstance(res, kernel.Accept):
        return False
    if witness.smallness.verdict != SMALL:
        return False
    for a in witness.axioms_used:
        if a > witness.bound:
            return False
        if a != phi and a not in u.axioms:
            return False
    return True


# ---------------------------------------------------------------------------
# Universe-level theorem checks


def check_slow_distribution(u: SlowUniverse, budget: int = 64) -> Verdict:
    bad: list[str] = []
    checked = unknowns = 0
    imp_table = {
        (l, r): sid
        for sid, f in u.sentences.items()
        if isinstance(f, Imp)
        for l in u.ids() if u.sentences[l] == f.left
        for r in u.ids() if u.sentences[r] == f.right
    }
    for phi in u.extensions:
        for (l, r), imp_id in imp_table.items():
            a = slow_box(u, phi, l, budget)
            b = slow_box(u, phi, imp_id, budget)
            c = slow_box(u, phi, r, budget)
            checked += 1
            if "Unknown" in (a.verdict, b.verdict, c.verdict):
                unknowns += 1
                continue
            if a.verdict == "Yes" and b.verdict == "Yes" and c.verdict != "Yes":
                bad.append(f"distribution fails for phi={phi}: {l} -> {r}")
    return Verdict(not bad, bad, checked, unknowns)


def check_slow_extensionality(u: SlowUniverse, budget: int = 64) -> Verdict:
    """A base-enumerated biconditional makes the two slow boxes agree."""
    bad: list[str] = []
    checked = unknowns = 0
    for sid, f in u.sentences.items():
        if not isinstance(f, Iff):
            continue
        if box_stage(u, None, sid) is None:
            continue
        left_id = next((i for i, g in u.sentences.items() if g == f.left), None)
        right_id = next((i for i, g in u.sentences.items() if g == f.right), None)
        if left_id is None or right_id is None:
            continue
        if left_id not in u.extensions or right_id not in u.extensions:
            continue
        for chi in u.ids():
            a = slow_box(u, left_id, chi, budget)
            b = slow_box(u, right_id, chi, budget)
            checked += 1
            if "Unknown" in (a.verdict, b.verdict):
                unknowns += 1
                continue
            if a.verdict != b.verdict:
                bad.append(f"slow boxes disagree on chi={chi} across {left_id}<->{right_id}")
    return Verdict(not bad, bad, checked, unknowns)


def check_emission_absorption(u: SlowUniverse, budget: int = 64) -> Verdict:
    """Finite analog: when the schedule proves psi in a consistent,
    Sigma1-sound extension whose bounds stay small, slow provability agrees
    with plain provability."""
    bad: list[str] = []
    checked = unknowns = 0
    for phi in u.extensions:
        if not _sigma1_sound(u, phi, budget):
            continue
        for e in u.schedule.events:
            if e.theory is not None and e.theory != phi:
                continue
            psi = e.proves
            checked += 1
            r = slow_box(u, phi, psi, budget)
            if r.verdict == "Unknown":
                unknowns += 1
            elif r.verdict == "No":
                bad.append(f"provable {psi} in sound extension {phi} but slow box refutes")
    return Verdict(not bad, bad, checked, unknowns)


def check_conjunction_export(u: SlowUniverse, budget: int = 64) -> Verdict:
    """Slow provability under a conjunction exports to a conditional under
    the left conjunct."""
    bad: list[str] = []
    checked = unknowns = 0
    for conj_id, f in u.sentences.items():
        if not isinstance(f, And) or conj_id not in u.extensions:
            continue
        left_id = next((i for i, g in u.sentences.items() if g == f.left), None)
        if left_id is None:
            continue
        for imp_id, g in u.sentences.items():
            if not isinstance(g, Imp) or g.left != f.right:
                continue
            chi_id = next((i for i, h in u.sentences.items() if h == g.right), None)
            if chi_id is None:
                continue
            a = slow_box(u, conj_id, chi_id, budget)
            b = slow_box(u, left_id, imp_id, budget)
            checked += 1
            if "Unknown" in (a.verdict, b.verdict):
                unknowns += 1
            elif a.verdict == "Yes" and b.verdict != "Yes":
                bad.append(f"export fails: {conj_id} slow-proves {chi_id} but "
                           f"{left_id} does not slow-prove {imp_id}")
    return Verdict(not bad, bad, checked, unknowns)


def monotonicity_counterexample() -> dict:
    """The named instance on which slow provability under a conjunction is
    not implied by the conditional form, with its derivation script id."""
    return {
        "instance": {"phi": "top", "psi": "slow(top, bot)", "chi": "bot"},
        "statement": "slow(top, (slow(top,bot) -> bot)) does not follow from slow(slow(top,bot), bot)",
        "script": "slow-conjunction-export",
        "note": "the conditional direction holds and is checked; the converse "
                "fails on this instance because the slow box for the enlarged "
                "theory absorbs its own inconsistency statement",
    }
