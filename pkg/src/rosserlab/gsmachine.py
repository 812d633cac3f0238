"""The staged Rosser machine over a scenario.

Runs the equivalence-relation sequence (cases X/Y) and the per-sentence
output function f (cases A/B0/B1/C, the bell, and the output-everything
procedure after the bell), producing a deterministic, replayable trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .scenario import Scenario

TRACE_SCHEMA = "gs-trace/1"

CASE_A = "A"
CASE_B0 = "B0"
CASE_B1 = "B1"
CASE_C = "C"
CASE_PROC2 = "Proc2"


@dataclass(frozen=True, slots=True)
class StageEvent:
    phi: int
    stage: int
    case: str
    output: int            # sentence id, or 0 for no output
    bell: bool
    witness: Optional[tuple[int, int]]  # (p, gamma) for B-cases

    def to_json(self) -> dict:
        rec = {
            "phi": self.phi,
            "stage": self.stage,
            "case": self.case,
            "output": self.output,
            "bell": self.bell,
        }
        if self.witness is not None:
            rec["witness"] = {"p": self.witness[0], "gamma": self.witness[1]}
        return rec


class SimRel:
    """Snapshots of the growing equivalence relations.

    Snapshot k is an equivalence relation on the declared sentence ids below
    k; roots are canonicalized to the least member of each class.
    """

    def __init__(self, ids: list[int]):
        self.ids = sorted(ids)
        self.snapshots: list[dict[int, int]] = [{}]

    def _domain_at(self, k: int) -> list[int]:
        return [i for i in self.ids if i < k]

    def extend(self, join: Optional[tuple[int, int]]) -> None:
        """Append snapshot k+1 from snapshot k, optionally joining a pair."""
        k = len(self.snapshots) - 1
        prev = self.snapshots[-1]
        nxt = dict(prev)
        for i in self.ids:
            if i < k + 1 and i not in nxt:
                nxt[i] = i
        if join is not None:
            a, b = join
            ra, rb = nxt.get(a), nxt.get(b)
            if ra is not None and rb is not None and ra != rb:
                lo, hi = min(ra, rb), max(ra, rb)
                for i, r in nxt.items():
                    if r == hi:
                        nxt[i] = lo
        self.snapshots.append(nxt)

    def related(self, k: int, a: int, b: int) -> bool:
        snap = self.snapshots[k]
        ra = snap.get(a)
        return ra is not None and ra == snap.get(b)

    def class_of(self, k: int, a: int) -> list[int]:
        snap = self.snapshots[k]
        ra = snap.get(a)
        if ra is None:
            return []
        return sorted(i for i, r in snap.items() if r == ra)

    def partition(self, k: int) -> list[list[int]]:
        snap = self.snapshots[k]
        classes: dict[int, list[int]] = {}
        for i in sorted(snap):
            classes.setdefault(snap[i], []).append(i)
        return [classes[r] for r in sorted(classes)]


@dataclass
class Trace:
    scenario: Scenario
    horizon: int
    partitions: list[list[list[int]]]
    events: dict[int, list[StageEvent]]
    bells: dict[int, int]                  # phi -> bell stage
    status: dict[int, dict]

    def sim_related(self, k: int, a: int, b: int) -> bool:
        for cls in self.partitions[k]:
            if a in cls:
                return b in cls
        return False

    def first_join(self, a: int, b: int) -> Optional[int]:
        for k in range(self.horizon + 1):
            if self.sim_related(k, a, b):
                return k
        return None

    def f_output(self, phi: int, stage: int) -> int:
        """f's output at any stage (post-horizon follows the machine laws)."""
        if stage <= self.horizon:
            return self.events[phi][stage].output
        bell = self.bells.get(phi)
        if bell is not None and stage > bell:
            ids = self.scenario.sentence_ids()
            return ids[(stage - bell - 1) % len(ids)]
        return 0

    def to_jsonl(self) -> str:
        lines = [json.dumps({"schema": TRACE_SCHEMA, "scenario": self.scenario.name,
                             "horizon": self.horizon}, sort_keys=True)]
        for phi in sorted(self.events):
            for ev in self.events[phi]:
                lines.append(json.dumps(ev.to_json(), sort_keys=True))
        summary = {
            "partitions": self.partitions,
            "bells": {str(k): v for k, v in sorted(self.bells.items())},
            "status": {str(k): self.status[k] for k in sorted(self.status)},
            "summary": True,
        }
        lines.append(json.dumps(summary, sort_keys=True))
        return "\n".join(lines) + "\n"


def _signed_rho_events(s: Scenario) -> list[tuple[int, int, int, Optional[int]]]:
    """All (stage, subject, sign, theory) events proving a signed rho token."""
    out = []
    for e in s.schedule.events:
        subject_sign = s.rho_subject_sign(e.proves)
        if subject_sign is not None:
            out.append((e.stage, subject_sign[0], subject_sign[1], e.theory))
    return out


def signed_proof_at(s: Scenario, stage: int, gamma: int) -> Optional[int]:
    """The sign i if `stage` is a (base+gamma)-proof of rho(gamma)^i."""
    e = s.schedule.event_at(stage)
    if e is None or (e.theory is not None and e.theory != gamma):
        return None
    ss = s.rho_subject_sign(e.proves)
    if ss is not None and ss[0] == gamma:
        return ss[1]
    return None


def step_equiv(s: Scenario, sim: SimRel, next_stage: int,
               rho_events: list[tuple[int, int, int, Optional[int]]]) -> Optional[tuple[int, int]]:
    """Advance the relation to next_stage; returns the joined pair if the
    biconditional case fired, else None."""
    k = next_stage - 1
    e = s.schedule.event_at(next_stage)
    join = None
    if e is not None and e.theory is None:
        comps = s.iff_components(e.proves)
        if comps is not None:
            i, j = comps
            guard_ok = True
            for (q, subject, _sign, theory) in rho_events:
                if q > k:
                    continue
                if theory is not None and theory != subject:
                    continue
                if sim.related(k, i, subject) or sim.related(k, j, subject):
                    guard_ok = False
                    break
            if guard_ok:
                join = (i, j)
    sim.extend(join)
    return join


def _b_case_witness(s: Scenario, sim: SimRel, phi: int, k: int, i: int,
                    rho_events: list[tuple[int, int, int, Optional[int]]]) -> Optional[tuple[int, int]]:
    """Search for the least (p, gamma) licensing case B_i at stage phi-k."""
    best: Optional[tuple[int, int]] = None
    for (p, gamma, sign, theory) in rho_events:
        if p >= k or sign != 1 - i:
            continue
        if theory is not None and theory != gamma:
            continue
        if not sim.related(p, phi, gamma):
            continue
        # no earlier signed proof for anything currently tied to phi
        clear = True
        for (q, lam, _s2, th2) in rho_events:
            if q >= p:
                continue
            if th2 is not None and th2 != lam:
                continue
            if sim.related(p, phi, lam):
                clear = False
                break
        if not clear:
            continue
        if best is None or (p, gamma) < best:
            best = (p, gamma)
    return best


def f_stage(s: Scenario, sim: SimRel, phi: int, k: int, bell_stage: Optional[int],
            rho_events: list[tuple[int, int, int, Optional[int]]]) -> StageEvent:
    """One stage of the output function for one sentence.

    Requires the relation snapshots up to k and the bell state from earlier
    stages; the result depends on nothing later, which the shadow
    recomputation test exploits.
    """
    if bell_stage is not None and k > bell_stage:
        ids = s.sentence_ids()
        out = ids[(k - bell_stage - 1) % len(ids)]
        return StageEvent(phi, k, CASE_PROC2, out, False, None)
    e = s.schedule.event_at(k)
    proved = None
    if e is not None and (e.theory is None or e.theory == phi):
        proved = e.proves
    if proved is None:
        return StageEvent(phi, k, CASE_A, 0, False, None)
    ss = s.rho_subject_sign(proved)
    if ss is not None and ss[0] == phi:
        i = ss[1]
        witness = _b_case_witness(s, sim, phi, k, i, rho_events)
        if witness is not None:
            out = s.rho_token(phi, 1 - i)
            case = CASE_B0 if i == 0 else CASE_B1
            return StageEvent(phi, k, case, out, True, witness)
    return StageEvent(phi, k, CASE_C, proved, False, None)


def run_scenario(s: Scenario) -> Trace:
    ids = s.sentence_ids()
    sim = SimRel(ids)
    rho_events = _signed_rho_events(s)
    horizon = s.horizon
    for stage in range(1, horizon + 1):
        step_equiv(s, sim, stage, rho_events)

    events: dict[int, list[StageEvent]] = {}
    bells: dict[int, int] = {}
    status: dict[int, dict] = {}
    for phi in ids:
        row: list[StageEvent] = []
        bell: Optional[int] = None
        for k in range(horizon + 1):
            ev = f_stage(s, sim, phi, k, bell, rho_events)
            if ev.bell and bell is None:
                bell = k
            row.append(ev)
        events[phi] = row
        if bell is not None:
            bells[phi] = bell
        first_rho = None
        first_neg = None
        rho_id = s.rho_token(phi, 0)
        neg_id = s.rho_token(phi, 1)
        for ev in row:
            if first_rho is None and rho_id is not None and ev.output == rho_id:
                first_rho = ev.stage
            if first_neg is None and neg_id is not None and ev.output == neg_id:
                first_neg = ev.stage
        if first_rho is not None and (first_neg is None or first_rho < first_neg):
            verdict = "rho_first"
        elif first_neg is not None:
            verdict = "neg_first"
        else:
            verdict = "neither"
        status[phi] = {
            "first_rho": first_rho,
            "first_neg": first_neg,
            "verdict": verdict,
            "rho_true": verdict != "rho_first",
        }

    partitions = [sim.partition(k) for k in range(horizon + 1)]
    return Trace(s, horizon, partitions, events, bells, status)


def pr_f(trace: Trace, phi: int, target: int, budget: int):
    """Earliest stage at which f emits the target sentence, within budget."""
    from .kernel import No, Yes

    horizon = trace.horizon
    for k in range(min(budget, horizon) + 1):
        if trace.events[phi][k].output == target:
            return Yes(k)
    bell = trace.bells.get(phi)
    if bell is not None and target in trace.scenario.sentences:
        ids = trace.scenario.sentence_ids()
        idx = ids.index(target)
        n = len(ids)
        # first post-horizon stage of the cyclic regime emitting the target
        start = horizon + 1
        offset = (idx - (start - bell - 1)) % n
        k = start + offset
        if k <= budget:
            return Yes(k)
    return No(budget)
