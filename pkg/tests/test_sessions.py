from fractions import Fraction

import numpy as np
import pytest

from spin101.exactgeom import ray_from_ints
from spin101.janus import (
    ChoiceSource,
    ScriptExhausted,
    SessionPlan,
    no_signalling_check,
    possible_outcomes,
    run_session,
    validate_transcript,
)

X = ray_from_ints((1, 0), (0, 0), (0, 0))
Y = ray_from_ints((0, 0), (1, 0), (0, 0))
Z = ray_from_ints((0, 0), (0, 0), (1, 0))
D1 = ray_from_ints((1, 0), (1, 0), (0, 0))  # not orthogonal to X


def test_choice_sources():
    s = ChoiceSource.scripted([1, 0, 1])
    assert [s.next_bit(), s.next_bit(), s.next_bit()] == [1, 0, 1]
    with pytest.raises(ScriptExhausted):
        s.next_bit()
    r1 = ChoiceSource.seeded(9)
    r2 = ChoiceSource.seeded(9)
    assert [r1.next_bit() for _ in range(32)] == [r2.next_bit() for _ in range(32)]
    with pytest.raises(ValueError):
        ChoiceSource.scripted([2])


def test_plan_validation():
    with pytest.raises(ValueError, match="orthogonal"):
        SessionPlan(triple=(X, Y, D1), b_direction=X)
    with pytest.raises(ValueError, match="distinct"):
        SessionPlan(triple=(X, X, Y), b_direction=X)
    with pytest.raises(ValueError, match="frame_order"):
        SessionPlan(triple=(X, Y, Z), b_direction=X, frame_order="sideways")


def test_a_first_twin_forcing():
    plan = SessionPlan(triple=(X, Y, Z), b_direction=X, frame_order="A-first")
    t = run_session(plan, ChoiceSource.scripted([1, 0]))
    assert t.outcome_tuple() == (1, 0, 1, 1)
    b_event = t.events[-1]
    assert b_event.site == "B" and b_event.flag == "forced" and b_event.rule == "twin"
    z_event = t.events[2]
    assert z_event.flag == "forced" and z_event.rule == "zero-in-triple"


def test_b_first_zero_propagates_into_triple():
    plan = SessionPlan(triple=(X, Y, Z), b_direction=X, frame_order="B-first")
    t = run_session(plan, ChoiceSource.scripted([0]))
    assert t.outcome_tuple() == (0, 1, 1, 0)
    flags = [(e.site, e.flag, e.rule) for e in t.events]
    assert flags[0] == ("B", "free", None)
    assert flags[1] == ("A", "forced", "twin")
    assert flags[2] == ("A", "forced", "zero-in-triple")
    assert flags[3] == ("A", "forced", "zero-in-triple")


def test_all_ones_script_forces_third_to_zero():
    w = ray_from_ints((1, 0), (1, 0), (1, 0))  # shared with no triple member
    plan = SessionPlan(triple=(X, Y, Z), b_direction=w, frame_order="A-first")
    t = run_session(plan, ChoiceSource.scripted([1, 1, 1]))
    assert t.a_outcomes() == (1, 1, 0)
    assert t.events[2].rule == "two-ones-in-triple"
    assert t.b_outcome() == 1 and t.events[-1].flag == "free"


def test_every_session_satisfies_the_axioms():
    rng = np.random.default_rng(77)
    dirs = [X, Y, Z, D1, ray_from_ints((1, 0), (-1, 0), (0, 0))]
    plans = [
        SessionPlan(triple=(X, Y, Z), b_direction=d, frame_order=order)
        for d in dirs
        for order in ("A-first", "B-first")
    ]
    src = ChoiceSource.seeded(123)
    for _ in range(2000):
        plan = plans[int(rng.integers(0, len(plans)))]
        t = run_session(plan, src)
        assert validate_transcript(t) == []


def test_transcript_replays_bit_for_bit():
    src = ChoiceSource.seeded(5)
    plan = SessionPlan(triple=(Y, Z, X), b_direction=Z, frame_order="B-first")
    for _ in range(50):
        t = run_session(plan, src)
        replayed = run_session(plan, ChoiceSource.scripted(t.free_bits()))
        assert replayed == t


def test_possible_outcomes_w_in_triple():
    plan = SessionPlan(triple=(X, Y, Z), b_direction=X, frame_order="A-first")
    assert possible_outcomes(plan) == {(0, 1, 1, 0), (1, 0, 1, 1), (1, 1, 0, 1)}


def test_possible_outcomes_w_free():
    w = ray_from_ints((1, 0), (1, 0), (1, 0))
    plan = SessionPlan(triple=(X, Y, Z), b_direction=w, frame_order="A-first")
    expected = {
        (j, k, l, m)
        for (j, k, l) in ((0, 1, 1), (1, 0, 1), (1, 1, 0))
        for m in (0, 1)
    }
    assert possible_outcomes(plan) == expected


def test_possible_outcomes_frame_invariant_for_spot_plans():
    for b_dir in (X, Y, Z, D1):
        a = possible_outcomes(SessionPlan((X, Y, Z), b_dir, "A-first"))
        b = possible_outcomes(SessionPlan((X, Y, Z), b_dir, "B-first"))
        assert a == b


def test_no_signalling_requires_shared_settings():
    p1 = SessionPlan((X, Y, Z), X, "A-first")
    p2 = SessionPlan((X, Y, Z), Y, "A-first")
    with pytest.raises(ValueError):
        no_signalling_check([p1, p2])
    with pytest.raises(ValueError):
        no_signalling_check([])


def test_no_signalling_single_plan_distance_zero():
    rep = no_signalling_check([SessionPlan((X, Y, Z), X, "A-first")])
    assert rep.max_tv_distance == 0 and rep.passes


def test_no_signalling_b_first_all_positions(extended):
    ext, triples40 = extended
    rays = ext.rays
    plans = [
        SessionPlan(tuple(rays[i] for i in tri), X, "B-first") for tri in triples40
    ]
    rep = no_signalling_check(plans)
    assert rep.max_tv_distance == 0
    assert rep.marginals[0] == {0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_no_signalling_a_first_leading_or_absent(extended):
    ext, triples40 = extended
    rays = ext.rays
    plans = []
    for tri in triples40:
        members = [rays[i] for i in tri]
        if X in members:
            members.remove(X)
            plans.append(SessionPlan((X, *members), X, "A-first"))
        else:
            plans.append(SessionPlan(tuple(members), X, "A-first"))
    rep = no_signalling_check(plans)
    assert rep.max_tv_distance == 0 and rep.passes


def test_b_marginal_depends_on_position_when_shared_late():
    # the frame-order contract covers matching measurement positions only:
    # with B's direction measured second at A, its marginal shifts to 1/4
    lead = no_signalling_check([SessionPlan((X, Y, Z), X, "A-first")])
    late = no_signalling_check([SessionPlan((Y, X, Z), X, "A-first")])
    assert lead.marginals[0][0] == Fraction(1, 2)
    assert late.marginals[0][0] == Fraction(1, 4)
    both = no_signalling_check(
        [SessionPlan((X, Y, Z), X, "A-first"), SessionPlan((Y, X, Z), X, "A-first")]
    )
    assert both.max_tv_distance == Fraction(1, 4)


def test_transcript_json_lines():
    plan = SessionPlan((X, Y, Z), X, "A-first")
    t = run_session(plan, ChoiceSource.scripted([1, 0]))
    lines = t.to_json_lines().strip().splitlines()
    assert len(lines) == 4
    import json

    event = json.loads(lines[0])
    assert event["site"] == "A" and event["flag"] == "free"


def test_plan_batch_round_trip(tmp_path):
    from spin101.janus import plan_batch_from_json, plan_batch_to_json

    plans = [
        SessionPlan((X, Y, Z), X, "A-first"),
        SessionPlan((Z, X, Y), D1, "B-first"),
    ]
    text = plan_batch_to_json(plans)
    again = plan_batch_from_json(text)
    assert again == plans
    with pytest.raises(ValueError):
        plan_batch_from_json("[]")
    import json

    bad = [plans[0].to_json_obj()]
    bad[0]["b_direction"] = [[-1, 0], [0, 0], [0, 0]]
    with pytest.raises(ValueError, match="canonical"):
        plan_batch_from_json(json.dumps(bad))
