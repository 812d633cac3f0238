"""Randomized and exhaustive scenario suites for the staged Rosser machine."""

from __future__ import annotations

import itertools
import json
import random
from typing import Iterator, Optional

from . import gschecks, gsmachine
from .kernel import Schedule, ScheduleEvent as ScheduleEventFast
from .scenario import Scenario, load_scenario

CHECK_NAMES = (
    "sim_monotone",
    "bell_inconsistency",
    "provability_match",
    "join_stage_bound",
    "equivalent_status",
)


# ---------------------------------------------------------------------------
# Canonical universes


def universe_pair() -> list[dict]:
    """Two base sentences, their biconditional, and both signed-rho pairs."""
    return [
        {"id": 1, "token": "a"},
        {"id": 2, "token": "b"},
        {"id": 3, "token": "iff(1,2)"},
        {"id": 4, "token": "rho(1)"},
        {"id": 5, "token": "neg_rho(1)"},
        {"id": 6, "token": "rho(2)"},
        {"id": 7, "token": "neg_rho(2)"},
    ]


def universe_triple() -> list[dict]:
    """Three base sentences chained by two biconditionals, all rho pairs."""
    return [
        {"id": 1, "token": "a"},
        {"id": 2, "token": "b"},
        {"id": 3, "token": "c"},
        {"id": 4, "token": "iff(1,2)"},
        {"id": 5, "token": "iff(1,3)"},
        {"id": 6, "token": "rho(3)"},
        {"id": 7, "token": "neg_rho(3)"},
        {"id": 8, "token": "rho(1)"},
        {"id": 9, "token": "neg_rho(1)"},
        {"id": 10, "token": "rho(2)"},
        {"id": 11, "token": "neg_rho(2)"},
    ]


CASE_SCENARIOS: dict[str, dict] = {
    "1.1": {
        "name": "case-1.1",
        "sentences": universe_pair(),
        "schedule": [
            {"stage": 8, "theory": None, "proves": 3},
            {"stage": 9, "theory": 2, "proves": 6},
            {"stage": 10, "theory": 1, "proves": 5},
        ],
        "horizon": 12,
    },
    "1.2": {
        "name": "case-1.2",
        "sentences": universe_triple(),
        "schedule": [
            {"stage": 12, "theory": None, "proves": 4},
            {"stage": 13, "theory": None, "proves": 5},
            {"stage": 14, "theory": 3, "proves": 6},
            {"stage": 15, "theory": 2, "proves": 11},
            {"stage": 16, "theory": 1, "proves": 9},
        ],
        "horizon": 18,
    },
    "2.1": {
        "name": "case-2.1",
        "sentences": universe_pair(),
        "schedule": [
            {"stage": 8, "theory": None, "proves": 3},
            {"stage": 9, "theory": 1, "proves": 4},
            {"stage": 10, "theory": 2, "proves": 6},
        ],
        "horizon": 12,
    },
    "2.2.1": {
        "name": "case-2.2.1",
        "sentences": universe_triple(),
        "schedule": [
            {"stage": 12, "theory": None, "proves": 4},
            {"stage": 13, "theory": None, "proves": 5},
            {"stage": 14, "theory": 3, "proves": 6},
            {"stage": 15, "theory": 2, "proves": 11},
            {"stage": 16, "theory": 1, "proves": 8},
        ],
        "horizon": 18,
    },
    "2.2.2": {
        "name": "case-2.2.2",
        "sentences": universe_pair(),
        "schedule": [
            {"stage": 8, "theory": None, "proves": 3},
            {"stage": 9, "theory": 1, "proves": 4},
            {"stage": 10, "theory": 2, "proves": 7},
        ],
        "horizon": 12,
    },
}

# Note: in case 2.2.1 the pooled third sentence carries the earlier
# positive-signed proof, so the would-be B0 witness at the phi-stage is
# blocked by an even earlier signed proof, exactly as the least-number
# argument requires; in case 1.2 the same third sentence supplies the
# opposite-signed proof that rings the bell.


def case_scenario(tag: str) -> Scenario:
    return load_scenario(CASE_SCENARIOS[tag], name=f"case-{tag}")


# ---------------------------------------------------------------------------
# Random generation


_LAYOUTS = ("pair", "pair_b", "pair_extra", "triple", "no_rho")


def random_scenario(rng: random.Random, index: int = 0, max_stage: int = 40) -> Scenario:
    layout = rng.choice(_LAYOUTS)
    if layout == "pair":
        sentences = [
            {"id": 1, "token": "a"}, {"id": 2, "token": "b"},
            {"id": 3, "token": "iff(1,2)"},
            {"id": 4, "token": "rho(1)"}, {"id": 5, "token": "neg_rho(1)"},
        ]
    elif layout == "pair_b":
        sentences = [
            {"id": 1, "token": "a"}, {"id": 2, "token": "b"},
            {"id": 3, "token": "iff(1,2)"},
            {"id": 4, "token": "rho(2)"}, {"id": 5, "token": "neg_rho(2)"},
        ]
    elif layout == "pair_extra":
        sentences = [
            {"id": 1, "token": "a"}, {"id": 2, "token": "b"},
            {"id": 3, "token": "iff(1,2)"},
            {"id": 4, "token": "rho(1)"}, {"id": 5, "token": "neg_rho(1)"},
            {"id": 6, "token": "c"},
        ]
    elif layout == "triple":
        sentences = [
            {"id": 1, "token": "a"}, {"id": 2, "token": "b"},
            {"id": 3, "token": "iff(1,2)"}, {"id": 4, "token": "c"},
            {"id": 5, "token": "iff(2,4)"}, {"id": 6, "token": "not(1)"},
        ]
    else:
        sentences = [
            {"id": 1, "token": "a"}, {"id": 2, "token": "b"},
            {"id": 3, "token": "iff(1,2)"}, {"id": 4, "token": "not(2)"},
        ]
    ids = [s["id"] for s in sentences]
    first_stage = max(ids) + 1
    n_events = rng.randint(0, 8)
    stages = sorted(rng.sample(range(first_stage, max_stage + 1),
                               min(n_events, max_stage + 1 - first_stage)))
    schedule = []
    for stage in stages:
        theory = None if rng.random() < 0.45 else rng.choice(ids)
        proves = rng.choice(ids)
        schedule.append({"stage": stage, "theory": theory, "proves": proves})
    return load_scenario(
        {"sentences": sentences, "schedule": schedule, "horizon": max_stage},
        name=f"random-{index}",
    )


def run_random_suite(seed: int, count: int, max_stage: int = 40) -> dict:
    """Run `count` seeded scenarios through every checker; deterministic."""
    rng = random.Random(seed)
    results = {name: {"pass": 0, "fail": 0} for name in CHECK_NAMES}
    violations: list[str] = []
    bells = 0
    inconsistent = 0
    for i in range(count):
        sc = random_scenario(rng, i, max_stage)
        trace = gsmachine.run_scenario(sc)
        bells += len(trace.bells)
        view = gschecks.TheoryView(trace)
        if any(view.inconsistent(phi) for phi in sc.sentence_ids()):
            inconsistent += 1
        checks = gschecks.run_all_checks(trace)
        for name, verdict in checks.items():
            if verdict.passed:
                results[name]["pass"] += 1
            else:
                results[name]["fail"] += 1
                for v in verdict.violations[:3]:
                    if len(violations) < 50:
                        violations.append(f"{sc.name} [{name}]: {v}")
    return {
        "suite": "gs-random",
        "seed": seed,
        "count": count,
        "max_stage": max_stage,
        "bell_count": bells,
        "inconsistent_scenarios": inconsistent,
        "checks": results,
        "violations": violations,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Exhaustive small-schedule enumeration


def enumerate_scenarios(
    sentences: list[dict],
    slots: int,
    max_events: int,
    theories: list[Optional[int]],
    proves: list[int],
    require: Optional[list[set[int]]] = None,
) -> Iterator[Scenario]:
    """All schedules placing up to max_events events on `slots` consecutive
    stages, events drawn from theories x proves.  `require` lists id groups
    each of which must be proved somewhere (cheap prefilter applied before
    the scenario is materialized)."""
    template = load_scenario({"sentences": sentences, "schedule": [],
                              "horizon": 1}, name="exhaustive")
    first_stage = max(template.sentences) + 1
    horizon = first_stage + slots + 1
    options = [(t, p) for t in theories for p in proves]
    count = 0
    min_events = len(require) if require else 1
    for n in range(min_events, max_events + 1):
        for positions in itertools.combinations(range(slots), n):
            for assignment in itertools.product(options, repeat=n):
                if require is not None:
                    proved = {p for _, p in assignment}
                    if not all(proved & grp for grp in require):
                        continue
                events = [
                    ScheduleEventFast(first_stage + pos, t, p)
                    for pos, (t, p) in zip(positions, assignment)
                ]
                count += 1
                yield Scenario(
                    name=f"exhaustive-{count}",
                    base=template.base,
                    sentences=template.sentences,
                    schedule=Schedule(events),
                    horizon=horizon,
                    rho_tokens=template.rho_tokens,
                )


def exhaustive_case_audit(sentences: list[dict], pairs: list[tuple[int, int]],
                          slots: int, max_events: int,
                          theories: list[Optional[int]], proves: list[int],
                          require: Optional[list[set[int]]] = None) -> dict:
    """Check the equivalent-status case analysis over every enumerated
    schedule; returns per-case counts and any prediction failures."""
    seen: dict[str, int] = {}
    failures: list[str] = []
    total = 0
    for sc in enumerate_scenarios(sentences, slots, max_events, theories, proves, require):
        total += 1
        trace = gsmachine.run_scenario(sc)
        view = gschecks.TheoryView(trace)
        for a, b in pairs:
            report = gschecks.check_consistent_extensionality(trace, a, b, view)
            if report.case is not None:
                seen[report.case] = seen.get(report.case, 0) + 1
                if not report.prediction_holds:
                    failures.append(f"{sc.to_json()['schedule']}: {report.to_json()}")
            elif report.mode == "consistent" and not report.passed():
                failures.append(f"{sc.to_json()['schedule']}: {report.to_json()}")
    return {"total": total, "cases": seen, "failures": failures}


def exhaustive_bell_audit(sentences: list[dict], slots: int, max_events: int,
                          theories: list[Optional[int]], proves: list[int]) -> dict:
    """Over every enumerated schedule: a closure-consistent scenario never
    rings a bell, and every bell passes the bell checker."""
    consistent_bells: list[str] = []
    bad_bells: list[str] = []
    total = bells = 0
    for sc in enumerate_scenarios(sentences, slots, max_events, theories, proves):
        total += 1
        trace = gsmachine.run_scenario(sc)
        view = gschecks.TheoryView(trace)
        if trace.bells:
            bells += 1
            for phi in trace.bells:
                if view.consistent(phi):
                    consistent_bells.append(json.dumps(sc.to_json()["schedule"]))
            verdict = gschecks.check_claim_bell(trace, view)
            if not verdict.passed:
                bad_bells.append(json.dumps(sc.to_json()["schedule"]))
    return {
        "total": total,
        "bell_scenarios": bells,
        "consistent_bells": consistent_bells,
        "bad_bells": bad_bells,
    }


# ---------------------------------------------------------------------------
# Relabeling


def relabel_scenario(sc: Scenario, mapping: dict[int, int]) -> Scenario:
    """Apply an order-preserving sentence-id relabeling."""
    items = sorted(mapping.items())
    values = [v for _, v in items]
    if values != sorted(values) or len(set(values)) != len(values):
        raise ValueError("relabeling must be strictly order preserving")
    sentences = []
    for sid in sc.sentence_ids():
        s = sc.sentences[sid]
        if s.kind == "text":
            sentences.append({"id": mapping[sid], "text": s.describe()})
        elif s.kind in ("atom", "bot"):
            sentences.append({"id": mapping[sid], "token": s.describe()})
        else:
            args = ",".join(str(mapping[a]) for a in s.args)
            sentences.append({"id": mapping[sid], "token": f"{s.kind}({args})"})
    schedule = [
        {"stage": e.stage, "theory": None if e.theory is None else mapping[e.theory],
         "proves": mapping[e.proves]}
        for e in sc.schedule.events
    ]
    return load_scenario(
        {"sentences": sentences, "schedule": schedule, "horizon": sc.horizon},
        name=f"{sc.name}-relabeled",
    )
