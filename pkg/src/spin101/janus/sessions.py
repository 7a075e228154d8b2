"""Twinned spin-1 sessions answered in a fixed frame order.

A session has experimenter A measuring an ordered orthogonal triple and
experimenter B measuring a single direction. The filler walks the two
measurement events in the order given by the session's frame, drawing each
outcome from a choice source unless it is already forced: a 0 in the triple
forces the remaining directions to 1, two 1s force the third to 0, and equal
directions across the two sites force equal outcomes. Directions are exact
projective rays, so "equal direction" includes opposite vectors.

Values live per ray, shared by both sites, so forcing chains that mix the
twin rule with the triple rules (B has pinned one triple member, A has
measured another) resolve correctly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..exactgeom import Quad2, Ray, canonicalize, dot

A_FIRST = "A-first"
B_FIRST = "B-first"

RULE_TWIN = "twin"
RULE_ZERO = "zero-in-triple"
RULE_TWO_ONES = "two-ones-in-triple"


class ScriptExhausted(RuntimeError):
    """A scripted choice source ran out of bits."""


class ModelInconsistency(AssertionError):
    """Two forcing rules demanded different values; unreachable by construction."""


@dataclass
class ChoiceSource:
    """Deterministic supplier of free bits: seeded PCG64 stream or a fixed script."""

    kind: str  # "seeded-random" | "scripted"
    seed: int | None = None
    script: tuple[int, ...] = ()
    _rng: np.random.Generator | None = field(default=None, repr=False)
    _pos: int = field(default=0, repr=False)

    @classmethod
    def seeded(cls, seed: int) -> ChoiceSource:
        return cls(kind="seeded-random", seed=seed)

    @classmethod
    def scripted(cls, bits) -> ChoiceSource:
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("script must consist of bits")
        return cls(kind="scripted", script=bits)

    def next_bit(self) -> int:
        if self.kind == "seeded-random":
            if self._rng is None:
                if self.seed is None:
                    raise ValueError("seeded source needs a seed")
                self._rng = np.random.default_rng(self.seed)
            return int(self._rng.integers(0, 2))
        if self._pos >= len(self.script):
            raise ScriptExhausted(f"script of {len(self.script)} bits exhausted")
        bit = self.script[self._pos]
        self._pos = self._pos + 1
        return bit


@dataclass(frozen=True)
class SessionPlan:
    """A's ordered orthogonal triple, B's single direction, and the frame order."""

    triple: tuple[Ray, Ray, Ray]
    b_direction: Ray
    frame_order: str = A_FIRST

    def __post_init__(self) -> None:
        if self.frame_order not in (A_FIRST, B_FIRST):
            raise ValueError(f"frame_order must be {A_FIRST!r} or {B_FIRST!r}")
        if len(set(self.triple)) != 3:
            raise ValueError("triple directions must be distinct")
        for i in range(3):
            for j in range(i + 1, 3):
                if not dot(self.triple[i], self.triple[j]).is_zero():
                    raise ValueError(
                        f"triple is not exactly orthogonal: {self.triple[i]}, {self.triple[j]}"
                    )

    def to_json_obj(self) -> dict:
        return {
            "triple": [[[c.a, c.b] for c in r.coords] for r in self.triple],
            "b_direction": [[c.a, c.b] for c in self.b_direction.coords],
            "frame_order": self.frame_order,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> SessionPlan:
        def ray(entry) -> Ray:
            coords = tuple(Quad2(a, b) for a, b in entry)
            canon = canonicalize(*coords)
            if canon.coords != coords:
                raise ValueError(f"ray {entry} is not in canonical form")
            return canon

        return cls(
            triple=tuple(ray(r) for r in obj["triple"]),
            b_direction=ray(obj["b_direction"]),
            frame_order=obj.get("frame_order", A_FIRST),
        )


@dataclass(frozen=True)
class TranscriptEvent:
    site: str  # "A" | "B"
    direction: Ray
    outcome: int
    flag: str  # "free" | "forced"
    rule: str | None = None

    def to_json_obj(self) -> dict:
        return {
            "site": self.site,
            "direction": [[c.a, c.b] for c in self.direction.coords],
            "outcome": self.outcome,
            "flag": self.flag,
            "rule": self.rule,
        }


@dataclass(frozen=True)
class Transcript:
    plan: SessionPlan
    events: tuple[TranscriptEvent, ...]

    def a_outcomes(self) -> tuple[int, int, int]:
        by_dir = {e.direction: e.outcome for e in self.events if e.site == "A"}
        return tuple(by_dir[d] for d in self.plan.triple)

    def b_outcome(self) -> int:
        return next(e.outcome for e in self.events if e.site == "B")

    def outcome_tuple(self) -> tuple[int, int, int, int]:
        return (*self.a_outcomes(), self.b_outcome())

    def free_bits(self) -> tuple[int, ...]:
        return tuple(e.outcome for e in self.events if e.flag == "free")

    def to_json_lines(self) -> str:
        import json

        return "\n".join(json.dumps(e.to_json_obj()) for e in self.events) + "\n"


def plan_batch_to_json(plans: list[SessionPlan]) -> str:
    """Serialize plans for a reproducible sweep file."""
    return json.dumps([p.to_json_obj() for p in plans], indent=2) + "\n"


def plan_batch_from_json(text: str) -> list[SessionPlan]:
    """Load a JSON batch of session plans (rays in canonical wire form)."""
    obj = json.loads(text)
    if not isinstance(obj, list) or not obj:
        raise ValueError("plan batch must be a non-empty JSON array")
    return [SessionPlan.from_json_obj(entry) for entry in obj]


def run_session(plan: SessionPlan, src: ChoiceSource) -> Transcript:
    """Play one session: outcomes from src unless forced, in frame order."""
    values: dict[Ray, int] = {}
    events: list[TranscriptEvent] = []

    def measure(site: str, direction: Ray) -> None:
        forced: list[tuple[int, str]] = []
        if direction in values:
            forced.append((values[direction], RULE_TWIN))
        if site == "A":
            others = [values[d] for d in plan.triple if d != direction and d in values]
            if 0 in others:
                forced.append((1, RULE_ZERO))
            if others.count(1) == 2:
                forced.append((0, RULE_TWO_ONES))
        if forced:
            vals = {v for v, _ in forced}
            if len(vals) != 1:
                raise ModelInconsistency(f"rules disagree at {direction}: {forced}")
            outcome, rule = forced[0]
            events.append(TranscriptEvent(site, direction, outcome, "forced", rule))
        else:
            outcome = src.next_bit()
            if outcome not in (0, 1):
                raise ValueError(f"choice source produced non-bit {outcome!r}")
            events.append(TranscriptEvent(site, direction, outcome, "free"))
        values[direction] = outcome

    def a_turn() -> None:
        for d in plan.triple:
            measure("A", d)

    def b_turn() -> None:
        measure("B", plan.b_direction)

    if plan.frame_order == A_FIRST:
        a_turn()
        b_turn()
    else:
        b_turn()
        a_turn()
    return Transcript(plan=plan, events=tuple(events))


def validate_transcript(t: Transcript) -> list[str]:
    """Independent axiom check; returns human-readable violations, if any."""
    problems = []
    if sum(t.a_outcomes()) != 2:
        problems.append(f"triple outcomes {t.a_outcomes()} do not sum to 2")
    if t.plan.b_direction in t.plan.triple:
        idx = t.plan.triple.index(t.plan.b_direction)
        if t.b_outcome() != t.a_outcomes()[idx]:
            problems.append(
                f"twin disagreement on {t.plan.b_direction}: "
                f"A={t.a_outcomes()[idx]}, B={t.b_outcome()}"
            )
    return problems


def enumerate_weighted(plan: SessionPlan) -> list[tuple[Transcript, Fraction]]:
    """All transcripts of a plan with their probabilities under uniform free bits.

    Free bits are enumerated depth-first, extending the script one bit at a
    time exactly when the session demands another choice, so each transcript
    is produced once with weight 2^-(number of free bits).
    """
    out: list[tuple[Transcript, Fraction]] = []

    def rec(prefix: tuple[int, ...]) -> None:
        try:
            t = run_session(plan, ChoiceSource.scripted(prefix))
        except ScriptExhausted:
            rec(prefix + (0,))
            rec(prefix + (1,))
            return
        assert len(t.free_bits()) == len(prefix)
        out.append((t, Fraction(1, 2 ** len(prefix))))

    rec(())
    assert sum(w for _, w in out) == 1
    return out


def possible_outcomes(plan: SessionPlan) -> set[tuple[int, int, int, int]]:
    """The set of (j, k, l, m) outcome tuples reachable over all free bits."""
    return {t.outcome_tuple() for t, _ in enumerate_weighted(plan)}


@dataclass(frozen=True)
class NoSignallingReport:
    """B's exact outcome distributions per plan and their worst disagreement."""

    marginals: tuple[dict[int, Fraction], ...]
    max_tv_distance: Fraction

    @property
    def passes(self) -> bool:
        return self.max_tv_distance == 0

    def to_json_obj(self) -> dict:
        return {
            "marginals": [
                {str(k): str(v) for k, v in m.items()} for m in self.marginals
            ],
            "max_tv_distance": str(self.max_tv_distance),
            "passes": self.passes,
        }


def no_signalling_check(plans: list[SessionPlan]) -> NoSignallingReport:
    """Exact comparison of B's marginal across plans sharing B's direction.

    All plans must share b_direction and frame_order; distributions are
    computed by exact enumeration with uniform free bits, and the report
    passes only when the total-variation distance is exactly zero.
    """
    if not plans:
        raise ValueError("need at least one plan")
    b_dir = plans[0].b_direction
    order = plans[0].frame_order
    for p in plans[1:]:
        if p.b_direction != b_dir or p.frame_order != order:
            raise ValueError("plans must share b_direction and frame_order")

    marginals = []
    for p in plans:
        dist = {0: Fraction(0), 1: Fraction(0)}
        for t, w in enumerate_weighted(p):
            dist[t.b_outcome()] += w
        marginals.append(dist)

    worst = Fraction(0)
    base = marginals[0]
    for m in marginals[1:]:
        tv = (abs(m[0] - base[0]) + abs(m[1] - base[1])) / 2
        worst = max(worst, tv)
    return NoSignallingReport(marginals=tuple(marginals), max_tv_distance=worst)
