"""Trace-level checkers for the staged Rosser machine.

Scenario consistency is judged on the deductive closure of the schedule:
base-theory biconditionals pool theories together, each extension proves its
own defining sentence, and a strictly-first signed output of f forces the
opposite signed sentence (the truth of the witness-comparison fact plus
Sigma1-completeness, replayed at the simulation level).  Under that reading
a bell is provably confined to inconsistent extensions, which is what the
randomized suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .gsmachine import CASE_C, Trace, signed_proof_at
from .scenario import Scenario


@dataclass
class Verdict:
    passed: bool
    violations: list[str] = field(default_factory=list)

    @staticmethod
    def collect(violations: list[str]) -> "Verdict":
        return Verdict(not violations, violations)


class TheoryView:
    """Closure-level theorem sets for the base theory and each extension."""

    def __init__(self, trace: Trace):
        s = trace.scenario
        self.scenario = s
        self.trace = trace
        ids = s.sentence_ids()
        self.base_proved: set[int] = {
            e.proves for e in s.schedule.events if e.theory is None
        }
        self._direct: dict[int, set[int]] = {
            phi: {e.proves for e in s.schedule.events if e.theory == phi} for phi in ids
        }
        # pool extensions linked by base-proved biconditionals
        parent = {i: i for i in ids}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e in s.schedule.events:
            if e.theory is None:
                comps = s.iff_components(e.proves)
                if comps is not None:
                    ra, rb = find(comps[0]), find(comps[1])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        self._pool_root = {i: find(i) for i in ids}
        # signed outputs of f force the opposite signed sentence
        self._forced: dict[int, set[int]] = {phi: set() for phi in ids}
        for gamma in ids:
            verdict = trace.status[gamma]["verdict"]
            if verdict == "neither":
                continue
            first_sign = 0 if verdict == "rho_first" else 1
            token = s.rho_token(gamma, 1 - first_sign)
            if token is not None:
                self._forced[gamma].add(token)

    def pooled(self, phi: int) -> list[int]:
        root = self._pool_root[phi]
        return [i for i in self.scenario.sentence_ids() if self._pool_root[i] == root]

    def theorems(self, phi: Optional[int]) -> set[int]:
        if phi is None:
            return set(self.base_proved)
        out = set(self.base_proved)
        for gamma in self.pooled(phi):
            out.add(gamma)
            out |= self._direct[gamma]
            out |= self._forced[gamma]
        return out

    def inconsistent(self, phi: Optional[int]) -> bool:
        thms = self.theorems(phi)
        if thms & self.scenario.bot_ids():
            return True
        for a, b in self.scenario.negation_pairs():
            if a in thms and b in thms:
                return True
        if phi is not None:
            return self.inconsistent(None)
        return False

    def consistent(self, phi: Optional[int]) -> bool:
        return not self.inconsistent(phi)


def check_sim_monotone(trace: Trace) -> Verdict:
    """Later relations must extend earlier ones on their shared domain."""
    bad: list[str] = []
    ids = trace.scenario.sentence_ids()
    for k in range(trace.horizon):
        for a in ids:
            for b in ids:
                if a < b and trace.sim_related(k, a, b) and not trace.sim_related(k + 1, a, b):
                    bad.append(f"relation lost pair ({a},{b}) at stage {k + 1}")
    return Verdict.collect(bad)


def check_claim_bell(trace: Trace, view: TheoryView | None = None) -> Verdict:
    """Every bell must exhibit its witnesses and land in an extension whose
    closure is inconsistent."""
    s = trace.scenario
    view = view or TheoryView(trace)
    bad: list[str] = []
    for phi, bell_k in trace.bells.items():
        ev = trace.events[phi][bell_k]
        if ev.witness is None:
            bad.append(f"bell for {phi} at {bell_k} has no witness")
            continue
        p, gamma = ev.witness
        i = 0 if ev.case == "B0" else 1
        if signed_proof_at(s, bell_k, phi) != i:
            bad.append(f"bell stage {bell_k} is not a signed proof for {phi}")
        if signed_proof_at(s, p, gamma) != 1 - i:
            bad.append(f"witness stage {p} is not the opposite signed proof for {gamma}")
        target = s.rho_token(gamma, 1 - i)
        gev = trace.events[gamma][p]
        if not (gev.case == CASE_C and gev.output == target):
            bad.append(f"f({gamma},{p}) should pass the signed sentence through, got {gev}")
        for q in range(p):
            out = trace.events[gamma][q].output
            if out in (s.rho_token(gamma, 0), s.rho_token(gamma, 1)):
                bad.append(f"signed output for {gamma} already at stage {q} < {p}")
        if not view.inconsistent(phi):
            bad.append(f"bell for {phi} but its closure stays consistent")
    return Verdict.collect(bad)


def check_claim_equiv(trace: Trace, view: TheoryView | None = None) -> Verdict:
    """f's outputs must match schedule provability: exactly on bell-free
    sentences, and a bell must coincide with closure-inconsistency (after
    which the machine's output-everything regime matches the inconsistent
    theory proving everything)."""
    s = trace.scenario
    view = view or TheoryView(trace)
    bad: list[str] = []
    for phi in s.sentence_ids():
        bell = trace.bells.get(phi)
        upto = trace.horizon if bell is None else bell - 1
        for k in range(upto + 1):
            e = s.schedule.event_at(k)
            proved = None
            if e is not None and (e.theory is None or e.theory == phi):
                proved = e.proves
            out = trace.events[phi][k].output
            got = out if out != 0 else None
            if proved != got:
                bad.append(f"f({phi},{k}) = {got} but the schedule proves {proved}")
        if bell is not None and not view.inconsistent(phi):
            bad.append(f"bell for {phi} without closure inconsistency")
    return Verdict.collect(bad)


def check_claim_bound(trace: Trace) -> Verdict:
    """If some stage relates phi to gamma and p is a signed proof for gamma,
    the relation must already hold strictly before p."""
    s = trace.scenario
    ids = s.sentence_ids()
    bad: list[str] = []
    signed_stages = {
        gamma: [e.stage for e in s.schedule.events if signed_proof_at(s, e.stage, gamma) is not None]
        for gamma in ids
    }
    for gamma in ids:
        for p in signed_stages[gamma]:
            for phi in ids:
                j0 = trace.first_join(phi, gamma)
                if j0 is not None and j0 >= p:
                    bad.append(
                        f"{phi} ~ {gamma} first holds at {j0}, not before signed proof {p}"
                    )
    return Verdict.collect(bad)


@dataclass
class CaseReport:
    phi: int
    psi: int
    mode: str                      # "consistent" | "inconsistent" | "not-applicable"
    status_equal: Optional[bool] = None
    case: Optional[str] = None
    prediction_holds: Optional[bool] = None
    n: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None

    def passed(self) -> bool:
        if self.mode == "consistent":
            return bool(self.status_equal)
        if self.mode == "inconsistent":
            return self.prediction_holds is not False
        return True

    def to_json(self) -> dict:
        return {
            "phi": self.phi, "psi": self.psi, "mode": self.mode,
            "status_equal": self.status_equal, "case": self.case,
            "prediction_holds": self.prediction_holds,
            "n": self.n, "k": self.k, "l": self.l,
        }


def first_signed_stage(s: Scenario, phi: int) -> Optional[int]:
    for e in s.schedule.events:
        if signed_proof_at(s, e.stage, phi) is not None:
            return e.stage
    return None


def check_consistent_extensionality(trace: Trace, phi: int, psi: int,
                                    view: TheoryView | None = None) -> CaseReport:
    """Equivalent sentences get the same final rho verdict when the
    extension is closure-consistent; otherwise the trace is tagged with the
    case split it realizes and the predicted pass-through output checked."""
    s = trace.scenario
    view = view or TheoryView(trace)
    n = None
    for e in s.schedule.events:
        if e.theory is None:
            comps = s.iff_components(e.proves)
            if comps is not None and set(comps) == {phi, psi}:
                n = e.stage
                break
    if n is None:
        return CaseReport(phi, psi, "not-applicable")
    if view.consistent(phi):
        equal = trace.status[phi]["rho_true"] == trace.status[psi]["rho_true"]
        return CaseReport(phi, psi, "consistent", status_equal=equal, n=n)
    k = first_signed_stage(s, phi)
    l = first_signed_stage(s, psi)
    report = CaseReport(phi, psi, "inconsistent", n=n, k=k, l=l)
    if k is None or l is None:
        return report
    if trace.first_join(phi, psi) is None:
        # the relation never linked the pair (a signed proof beat the
        # biconditional to the punch), so the case analysis has no grip;
        # with a standard equivalence proof the join always precedes every
        # signed stage
        return report
    if trace.status[phi]["verdict"] != "rho_first":
        # the premise (rho output strictly first for phi) fails
        return report
    k_sign = signed_proof_at(s, k, phi)
    l_sign = signed_proof_at(s, l, psi)
    if k_sign == 1:
        report.case = "1.1" if l_sign == 0 else "1.2"
    elif l_sign == 0:
        report.case = "2.1"
    else:
        report.case = "2.2.1" if l < k else "2.2.2"
    report.prediction_holds = trace.events[psi][l].output == s.rho_token(psi, 0)
    return report


def run_all_checks(trace: Trace) -> dict[str, Verdict]:
    view = TheoryView(trace)
    results = {
        "sim_monotone": check_sim_monotone(trace),
        "bell_inconsistency": check_claim_bell(trace, view),
        "provability_match": check_claim_equiv(trace, view),
        "join_stage_bound": check_claim_bound(trace),
    }
    ext_bad: list[str] = []
    s = trace.scenario
    for sid in s.sentence_ids():
        comps = s.iff_components(sid)
        if comps is None:
            continue
        a, b = comps
        report = check_consistent_extensionality(trace, a, b, view)
        if not report.passed():
            ext_bad.append(f"pair ({a},{b}): {report.to_json()}")
    results["equivalent_status"] = Verdict.collect(ext_bad)
    return results
