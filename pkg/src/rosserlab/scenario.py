"""Scenario files: finite sentence universes with injected proof schedules.

A scenario declares sentences (concrete formulas or opaque tokens, including
the special shapes iff(i,j), rho(i), neg_rho(i), not(i), bot) and a schedule
of (stage, theory, proves) events.  Stages double as proof codes, so every
sentence mentioned by an event must have an id below the event's stage, and
a token's arguments sit below the token's own id, mirroring monotone coding.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from . import syntax
from .kernel import Schedule, ScheduleEvent
from .syntax import Formula, Not


class ScenarioError(ValueError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))
        self.location = location


_TOKEN_RE = re.compile(r"^([a-z_][a-z0-9_]*)(?:\((\d+(?:,\s*\d+)?)\))?$")

STRUCTURED_KINDS = ("iff", "rho", "neg_rho", "not")


@dataclass(frozen=True)
class Sentence:
    sid: int
    kind: str                      # "text" | "atom" | "bot" | structured kinds
    formula: Optional[Formula] = None
    label: Optional[str] = None
    args: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.kind == "text":
            return syntax.print_formula(self.formula)
        if self.kind == "atom":
            return self.label
        if self.kind == "bot":
            return "bot"
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


@dataclass
class Scenario:
    name: str
    base: str
    sentences: dict[int, Sentence]
    schedule: Schedule
    horizon: int
    rho_tokens: dict[tuple[int, int], int] = field(default_factory=dict)  # (subject, sign) -> sid

    def sentence_ids(self) -> list[int]:
        return sorted(self.sentences)

    def iff_components(self, sid: int) -> Optional[tuple[int, int]]:
        s = self.sentences[sid]
        if s.kind == "iff":
            return (s.args[0], s.args[1])
        if s.kind == "text" and isinstance(s.formula, syntax.Iff):
            left = self._find_text(s.formula.left)
            right = self._find_text(s.formula.right)
            if left is not None and right is not None:
                return (left, right)
        return None

    def _find_text(self, f: Formula) -> Optional[int]:
        for sid, s in self.sentences.items():
            if s.kind == "text" and s.formula == f:
                return sid
        return None

    def rho_token(self, subject: int, sign: int) -> Optional[int]:
        return self.rho_tokens.get((subject, sign))

    def rho_subject_sign(self, sid: int) -> Optional[tuple[int, int]]:
        s = self.sentences[sid]
        if s.kind == "rho":
            return (s.args[0], 0)
        if s.kind == "neg_rho":
            return (s.args[0], 1)
        return None

    def negation_pairs(self) -> set[tuple[int, int]]:
        """Unordered contradiction pairs (smaller id first)."""
        pairs: set[tuple[int, int]] = set()
        for sid, s in self.sentences.items():
            if s.kind == "neg_rho":
                other = self.rho_tokens.get((s.args[0], 0))
                if other is not None:
                    pairs.add((min(sid, other), max(sid, other)))
            elif s.kind == "not":
                pairs.add((min(sid, s.args[0]), max(sid, s.args[0])))
            elif s.kind == "text" and isinstance(s.formula, Not):
                inner = self._find_text(s.formula.body)
                if inner is not None:
                    pairs.add((min(sid, inner), max(sid, inner)))
        return pairs

    def bot_ids(self) -> set[int]:
        return {sid for sid, s in self.sentences.items() if s.kind == "bot"}

    def to_json(self) -> dict:
        sentences = []
        for sid in self.sentence_ids():
            s = self.sentences[sid]
            if s.kind == "text":
                sentences.append({"id": sid, "text": syntax.print_formula(s.formula)})
            else:
                sentences.append({"id": sid, "token": s.describe()})
        return {
            "name": self.name,
            "base": self.base,
            "sentences": sentences,
            "schedule": [
                {"stage": e.stage, "theory": e.theory, "proves": e.proves}
                for e in self.schedule.events
            ],
            "horizon": self.horizon,
        }


def _parse_sentence(entry: dict, loc: str) -> Sentence:
    if "id" not in entry:
        raise ScenarioError("sentence without id", loc)
    sid = entry["id"]
    if not isinstance(sid, int) or sid < 1:
        raise ScenarioError(f"bad sentence id {sid!r} (0 is the reserved non-output)", loc)
    if "text" in entry:
        try:
            f = syntax.parse(entry["text"])
        except syntax.ParseError as exc:
            raise ScenarioError(f"unparsable sentence: {exc}", loc)
        if syntax.free_variables(f):
            raise ScenarioError("sentence text has free variables", loc)
        return Sentence(sid, "text", formula=f)
    if "token" in entry:
        m = _TOKEN_RE.match(entry["token"].strip())
        if not m:
            raise ScenarioError(f"bad token {entry['token']!r}", loc)
        name, argtext = m.group(1), m.group(2)
        if name in STRUCTURED_KINDS:
            if argtext is None:
                raise ScenarioError(f"token {name} needs arguments", loc)
            args = tuple(int(a) for a in argtext.replace(" ", "").split(","))
            want = 2 if name == "iff" else 1
            if len(args) != want:
                raise ScenarioError(f"token {name} takes {want} argument(s)", loc)
            return Sentence(sid, name, args=args)
        if name == "bot":
            return Sentence(sid, "bot")
        if argtext is not None:
            raise ScenarioError(f"unknown structured token {name!r}", loc)
        return Sentence(sid, "atom", label=name)
    raise ScenarioError("sentence needs 'text' or 'token'", loc)


def load_scenario(data: dict, name: str = "") -> Scenario:
    name = data.get("name", name or "scenario")
    base = data.get("base", "EA-toy")
    raw_sentences = data.get("sentences", [])
    sentences: dict[int, Sentence] = {}
    for i, entry in enumerate(raw_sentences):
        s = _parse_sentence(entry, f"sentences[{i}]")
        if s.sid in sentences:
            raise ScenarioError(f"duplicate sentence id {s.sid}", f"sentences[{i}]")
        sentences[s.sid] = s
    for sid, s in sentences.items():
        for a in s.args:
            if a not in sentences:
                raise ScenarioError(f"token {s.describe()} references undeclared id {a}")
            if a >= sid:
                raise ScenarioError(
                    f"token {s.describe()} (id {sid}) must have arguments below its own id"
                )
    rho_tokens: dict[tuple[int, int], int] = {}
    for sid, s in sentences.items():
        pair = None
        if s.kind == "rho":
            pair = (s.args[0], 0)
        elif s.kind == "neg_rho":
            pair = (s.args[0], 1)
        if pair is not None:
            if pair in rho_tokens:
                raise ScenarioError(f"duplicate {s.describe()} token")
            rho_tokens[pair] = sid
    for (subject, sign), sid in list(rho_tokens.items()):
        if (subject, 1 - sign) not in rho_tokens:
            raise ScenarioError(
                f"rho token for sentence {subject} needs its signed partner declared"
            )

    events = []
    for i, entry in enumerate(data.get("schedule", [])):
        loc = f"schedule[{i}]"
        stage = entry.get("stage")
        if not isinstance(stage, int) or stage < 1:
            raise ScenarioError(f"bad stage {stage!r}", loc)
        theory = entry.get("theory")
        if theory is not None and theory not in sentences:
            raise ScenarioError(f"undeclared theory id {theory!r}", loc)
        proves = entry.get("proves")
        if isinstance(proves, str):
            f = syntax.parse(proves)
            match = None
            for sid, s in sentences.items():
                if s.kind == "text" and s.formula == f:
                    match = sid
                    break
            if match is None:
                raise ScenarioError(f"proved text {proves!r} is not a declared sentence", loc)
            proves = match
        if proves not in sentences:
            raise ScenarioError(f"undeclared proved id {proves!r}", loc)
        mentioned = [proves, *sentences[proves].args]
        if theory is not None:
            mentioned.append(theory)
        worst = max(mentioned)
        if worst >= stage:
            raise ScenarioError(
                f"stage {stage} mentions id {worst}; ids must lie below the stage", loc
            )
        events.append(ScheduleEvent(stage, theory, proves))
    try:
        schedule = Schedule(events)
    except ValueError as exc:
        raise ScenarioError(str(exc))
    horizon = data.get("horizon", schedule.max_stage())
    if horizon < schedule.max_stage():
        raise ScenarioError("horizon below the last scheduled stage")
    return Scenario(name, base, sentences, schedule, horizon, rho_tokens)


def load_scenario_file(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return load_scenario(data, name=str(path))
