"""Randomized universes and the theorem suite for the slow-provability layer."""

from __future__ import annotations

import json
import random
from typing import Optional

from . import kernel, prooflib, slowprov, syntax
from .kernel import Schedule, ScheduleEvent
from .slowprov import (
    SMALL, NOT_SMALL, UNKNOWN, SlowUniverse, Verdict, box_bounded, event_stage,
    graybox, preceq, slow_box, smallness, recheck_slow_proof, uniform_bound_F,
)
from .syntax import And, Formula, Iff, Imp, numeral, parse


def _pi1_atom(k: int) -> Formula:
    return syntax.ForAll("w", syntax.Le(syntax.Var("w"),
                                        syntax.Plus(syntax.Var("w"), numeral(k))))


def _sigma1_true(k: int) -> Formula:
    return syntax.Exists("w", syntax.Eq(syntax.Var("w"), numeral(k)))


def _delta0_false(k: int) -> Formula:
    return syntax.Eq(numeral(0), numeral(k))


def build_random_universe(rng: random.Random, index: int = 0) -> SlowUniverse:
    """A coherent universe: the schedule enumerates exactly the propositional
    consequences of the declared axioms, at canonical pairing stages."""
    atoms = [_pi1_atom(k) for k in (2, 3, 5)]
    p1, p2, p3 = atoms
    sigma_true = _sigma1_true(rng.randint(1, 4))
    unsound = rng.random() < 0.35
    sigma_false = _delta0_false(rng.randint(1, 3))

    tautology = Imp(p1, p1)
    phi = p3 if rng.random() < 0.5 else And(p2, p3)
    if unsound:
        phi = And(phi, sigma_false)
    psi = And(phi, tautology)
    equivalence = Iff(phi, psi)

    axioms_pool: list[Formula] = [p1, Imp(p1, p2)]
    if rng.random() < 0.5:
        axioms_pool.append(Imp(p2, sigma_true))
    if rng.random() < 0.4:
        axioms_pool.append(sigma_true)

    chi = p2
    conj = And(phi, p1)
    export_imp = Imp(p1, chi)

    pool: list[Formula] = []
    for f in (*atoms, sigma_true, sigma_false, tautology, *axioms_pool,
              phi, psi, equivalence, chi, conj, export_imp, Imp(phi, psi)):
        if f not in pool:
            pool.append(f)
    sentences = {i + 1: f for i, f in enumerate(pool)}
    rev = {f: i for i, f in sentences.items()}
    axiom_ids = tuple(sorted(rev[f] for f in axioms_pool))
    extension_ids = tuple(sorted({rev[phi], rev[psi], rev[conj]}))

    base_formulas = tuple(rev_f for rev_f in axioms_pool)
    events: list[ScheduleEvent] = []
    for sid, f in sentences.items():
        if prooflib.prop_entails(base_formulas, f):
            events.append(ScheduleEvent(event_stage(None, sid), None, sid))
    for theory in extension_ids:
        theory_axioms = (*base_formulas, sentences[theory])
        for sid, f in sentences.items():
            if prooflib.prop_entails(base_formulas, f):
                continue
            if prooflib.prop_entails(theory_axioms, f):
                events.append(ScheduleEvent(event_stage(theory, sid), theory, sid))
    return SlowUniverse(f"slow-{index}", sentences, axiom_ids, extension_ids,
                        Schedule(events))


def _count(verdict: Verdict, bucket: dict) -> None:
    bucket["pass" if verdict.passed else "fail"] += 1
    bucket["unknown"] += verdict.unknowns


def run_slow_suite(seed: int, universes: int = 40, budget: int = 64,
                   preceq_samples: int = 500) -> dict:
    """Deterministic randomized suite over generated universes."""
    rng = random.Random(seed)
    report = {
        "suite": "slow-provability",
        "seed": seed,
        "universes": universes,
        "budget": budget,
        "preceq": {"instances": 0, "violations": []},
        "sandwich": {"decided": 0, "violations": []},
        "smallness_closure": {"bounds_checked": 0, "violations": []},
        "transfer": {"pass": 0, "fail": 0, "unknown": 0},
        "smallness_transfer": {"pass": 0, "fail": 0, "unknown": 0},
        "slow_box_recheck": {"yes": 0, "failures": []},
        "distribution": {"pass": 0, "fail": 0, "unknown": 0},
        "extensionality": {"pass": 0, "fail": 0, "unknown": 0},
        "emission_absorption": {"pass": 0, "fail": 0, "unknown": 0},
        "conjunction_export": {"pass": 0, "fail": 0, "unknown": 0},
    }
    per_universe_samples = max(1, preceq_samples // max(universes, 1))
    for i in range(universes):
        u = build_random_universe(rng, i)
        _preceq_properties(u, rng, per_universe_samples, report["preceq"])
        _sandwich_check(u, report["sandwich"])
        _closure_check(u, budget, report["smallness_closure"])
        _transfer_checks(u, budget, report)
        _slow_box_rechecks(u, budget, report["slow_box_recheck"])
        _count(slowprov.check_slow_distribution(u, budget), report["distribution"])
        _count(slowprov.check_slow_extensionality(u, budget), report["extensionality"])
        _count(slowprov.check_emission_absorption(u, budget), report["emission_absorption"])
        _count(slowprov.check_conjunction_export(u, budget), report["conjunction_export"])
    return report


def _preceq_properties(u: SlowUniverse, rng: random.Random, samples: int, bucket: dict) -> None:
    ids = u.ids()
    top = max(ids)
    stages = [e.stage for e in u.schedule.events] or [top + 1]
    for _ in range(samples):
        n = rng.choice([top, top + 1, rng.choice(stages), max(stages)])
        a, b, c = (rng.choice(ids) for _ in range(3))
        if max(a, b, c) > n:
            continue
        bucket["instances"] += 1
        if not preceq(u, a, a, n):
            bucket["violations"].append(f"{u.name}: not reflexive at {a},{n}")
        if preceq(u, a, b, n) and preceq(u, b, c, n) and not preceq(u, a, c, n):
            bucket["violations"].append(f"{u.name}: not transitive at {a},{b},{c},{n}")
        bigger = n + rng.randint(1, 50)
        if preceq(u, a, b, n) and not preceq(u, a, b, bigger):
            bucket["violations"].append(f"{u.name}: not monotone at {a},{b},{n}->{bigger}")


def _sandwich_check(u: SlowUniverse, bucket: dict) -> None:
    ids = u.ids()
    bounds = sorted({*ids, *(e.stage for e in u.schedule.events)})
    for phi in u.extensions:
        for psi in ids:
            for x in bounds:
                plain = box_bounded(u, phi, psi, x)
                uniform = graybox(u, phi, psi, x) if phi <= x else False
                bucket["decided"] += 1
                if plain and phi <= x and not uniform:
                    bucket["violations"].append(
                        f"{u.name}: bounded without uniform at phi={phi} psi={psi} x={x}")
                if uniform and not box_bounded(u, phi, psi, uniform_bound_F(x)):
                    bucket["violations"].append(
                        f"{u.name}: uniform without F-bounded at phi={phi} psi={psi} x={x}")


def _closure_check(u: SlowUniverse, budget: int, bucket: dict) -> None:
    for phi in u.extensions:
        last = None
        for x in range(0, 51):
            q = smallness(u, phi, x, budget)
            bucket["bounds_checked"] += 1
            if last == NOT_SMALL and q.verdict == SMALL:
                bucket["violations"].append(
                    f"{u.name}: smallness not downward closed at phi={phi} x={x}")
            if q.verdict in (SMALL, NOT_SMALL):
                last = q.verdict


def _transfer_checks(u: SlowUniverse, budget: int, report: dict) -> None:
    phi = min(u.extensions)
    psi_formula = None
    for sid, f in u.sentences.items():
        if isinstance(f, Imp) and f.left == u.formula(phi):
            target = next((i for i, g in u.sentences.items() if g == f.right), None)
            if target is not None and target in u.extensions:
                psi_formula = (sid, target)
                break
    if psi_formula is None:
        return
    _, psi = psi_formula
    proof = prooflib.prove_tautology(Imp(u.formula(phi), u.formula(psi)))
    v = slowprov.transfer_uniformity(u, proof, phi, psi)
    report["transfer"]["pass" if v.passed else "fail"] += 1
    report["transfer"]["unknown"] += v.unknowns
    w = slowprov.smallness_transfer(u, proof, phi, psi, budget)
    report["smallness_transfer"]["pass" if w.passed else "fail"] += 1
    report["smallness_transfer"]["unknown"] += w.unknowns


def _slow_box_rechecks(u: SlowUniverse, budget: int, bucket: dict) -> None:
    for phi in u.extensions:
        for psi in u.ids():
            r = slow_box(u, phi, psi, budget)
            if r.verdict == "Yes":
                bucket["yes"] += 1
                if not recheck_slow_proof(u, phi, r.witness):
                    bucket["failures"].append(f"{u.name}: recheck failed phi={phi} psi={psi}")


def suite_passed(report: dict) -> bool:
    return (
        not report["preceq"]["violations"]
        and not report["sandwich"]["violations"]
        and not report["smallness_closure"]["violations"]
        and report["transfer"]["fail"] == 0
        and report["smallness_transfer"]["fail"] == 0
        and not report["slow_box_recheck"]["failures"]
        and report["distribution"]["fail"] == 0
        and report["extensionality"]["fail"] == 0
        and report["emission_absorption"]["fail"] == 0
        and report["conjunction_export"]["fail"] == 0
    )


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
