"""Executable consistency models for the spin axioms.

Two fillers are provided: the twinned-session model, which answers both
experimenters' spin measurements in a chosen frame order with free bits
unless a value is already forced, and the hexagonal toy universe, whose
single physical law is an even-parity constraint on upward-adjacent cells.
Both enforce their axioms by construction; the simulators exist to check
that, and to check the frame-invariance and no-signalling properties of the
resulting outcome sets.
"""

from .sessions import (
    ChoiceSource,
    ModelInconsistency,
    NoSignallingReport,
    ScriptExhausted,
    SessionPlan,
    Transcript,
    TranscriptEvent,
    enumerate_weighted,
    no_signalling_check,
    plan_batch_from_json,
    plan_batch_to_json,
    possible_outcomes,
    run_session,
    validate_transcript,
)
from .hexworld import (
    AlreadyMeasured,
    FaceTestReport,
    HexWorld,
    InvalidMove,
    SpinNotReadable,
    abut_above,
    hex_measure,
    hex_step,
    left_right_face_test,
)

__all__ = [
    "AlreadyMeasured",
    "ChoiceSource",
    "abut_above",
    "FaceTestReport",
    "HexWorld",
    "InvalidMove",
    "ModelInconsistency",
    "NoSignallingReport",
    "ScriptExhausted",
    "SessionPlan",
    "SpinNotReadable",
    "Transcript",
    "TranscriptEvent",
    "enumerate_weighted",
    "hex_measure",
    "hex_step",
    "left_right_face_test",
    "no_signalling_check",
    "plan_batch_from_json",
    "plan_batch_to_json",
    "possible_outcomes",
    "run_session",
    "validate_transcript",
]
