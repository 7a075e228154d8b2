"""A hexagonal toy universe filled day by day under an even-parity law.

Space-time is a hexagonal tessellation with time increasing row by row; an
experimenter in a hexagon on day t can move only to one of the two hexagons
abutting it from above on day t+1. Every hexagon carries a spin bit, readable
only upon reaching it, and the single physical law says that a hexagon and
the two hexagons abutting it from above have even spin sum.

Grid encoding (frozen): offset rows. The two hexagons abutting (row, col)
from above are (row+1, col-1) and (row+1, col) when row is even, and
(row+1, col) and (row+1, col+1) when row is odd. "Upper-left" is the first
of the pair, "upper-right" the second.

Rows materialize lazily over the light-cone span reachable from the starting
hexagon: on day t that is the column window [start - ceil(t/2),
start + floor(t/2)]. The first measurement of a day draws a free bit at the
measuring experimenter's hexagon and the parity law then fills the rest of
the row uniquely; days nobody measured are backfilled (seeded at the left
edge of their span) only when a later fill needs them. Free bits are
consumed from the world's choice source in event order, so worlds replay
deterministically from a seed or script.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sessions import ChoiceSource

LEFT = "left"
RIGHT = "right"


class SpinNotReadable(RuntimeError):
    """Raised for reads of spins on days that have not yet arrived."""


class AlreadyMeasured(RuntimeError):
    """Raised when an experimenter measures twice on the same day."""


class InvalidMove(ValueError):
    """Raised for a move that is not one of the two hexagons abutting above."""


def abut_above(row: int, col: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The (upper-left, upper-right) hexagons abutting (row, col) from above."""
    if row % 2 == 0:
        return (row + 1, col - 1), (row + 1, col)
    return (row + 1, col), (row + 1, col + 1)


class HexWorld:
    """Mutable world state: spin rows, experimenter positions, day counter."""

    def __init__(self, src: ChoiceSource, experimenters=("A", "B"), start_col: int = 0):
        self.src = src
        self.start_col = start_col
        self.day = 0
        self.positions: dict[str, tuple[int, int]] = {
            name: (0, start_col) for name in experimenters
        }
        self.rows: dict[int, np.ndarray] = {}
        self.measured_today: set[str] = set()
        self.free_bits_used = 0
        self._backfilled_through = -1

    # -- geometry ----------------------------------------------------------

    def span(self, row: int) -> tuple[int, int]:
        """Inclusive column window reachable on a given day."""
        return (self.start_col - (row + 1) // 2, self.start_col + row // 2)

    def _index(self, row: int, col: int) -> int:
        return col - self.span(row)[0]

    # -- spin rows ---------------------------------------------------------

    def _free_bit(self) -> int:
        self.free_bits_used += 1
        return self.src.next_bit()

    def _fill_row(self, row: int, seed_col: int, seed_bit: int) -> None:
        """Fill one day-row from a seed cell using the parity law.

        Adjacent cells (k, k+1) of this row sit above a common cell of the
        previous row (col k+1 for even previous rows, col k for odd), and the
        even-sum law forces row[k+1] = row[k] xor below. A cumulative xor
        therefore extends the seed across the whole span in one pass.
        """
        lo, hi = self.span(row)
        size = hi - lo + 1
        cells = np.zeros(size, dtype=np.uint8)
        i0 = seed_col - lo
        cells[i0] = seed_bit
        if row > 0:
            below_offset = 1 if (row - 1) % 2 == 0 else 0
            prev_lo = self.span(row - 1)[0]
            prev = self.rows[row - 1]
            # below[k] pairs row cells (lo+k, lo+k+1); aligned slice of prev row
            start = lo + below_offset - prev_lo
            below = prev[start : start + size - 1]
            if i0 < size - 1:
                cells[i0 + 1 :] = cells[i0] ^ np.bitwise_xor.accumulate(below[i0:])
            if i0 > 0:
                rev = below[:i0][::-1]
                cells[:i0] = (cells[i0] ^ np.bitwise_xor.accumulate(rev))[::-1]
        self.rows[row] = cells

    def _ensure_filled_through(self, row: int) -> None:
        """Backfill unmeasured past days; their seeds sit at the span's left edge."""
        for r in range(self._backfilled_through + 1, row + 1):
            if r not in self.rows:
                if r == row:
                    break  # caller seeds the current row itself
                self._fill_row(r, self.span(r)[0], self._free_bit())
        self._backfilled_through = max(self._backfilled_through, row - 1)

    def read_spin(self, row: int, col: int) -> int | None:
        """Spin of a filled past-or-present cell; None where nothing is defined yet."""
        if row > self.day:
            raise SpinNotReadable(
                f"spins for day {row} cannot be read on day {self.day}"
            )
        if row not in self.rows:
            return None
        lo, hi = self.span(row)
        if not lo <= col <= hi:
            return None
        return int(self.rows[row][col - lo])

    def parity_violations(self) -> int:
        """Count odd-sum shapes over every fully defined (cell, above-pair) triple."""
        bad = 0
        for row in sorted(self.rows):
            if row + 1 not in self.rows:
                continue
            lo, hi = self.span(row + 1)
            upper = self.rows[row + 1]
            below_offset = 1 if row % 2 == 0 else 0
            start = lo + below_offset - self.span(row)[0]
            below = self.rows[row][start : start + (hi - lo)]
            bad += int((upper[:-1] ^ upper[1:] ^ below).sum())
        return bad


def hex_step(world: HexWorld, moves: dict[str, str] | None = None,
             src: ChoiceSource | None = None) -> HexWorld:
    """Advance one day, moving every experimenter upper-left or upper-right.

    moves maps experimenter name to "left" or "right"; with moves=None each
    choice is drawn from src (or the world's own source): bit 0 means left,
    1 means right. No spins are revealed by moving.
    """
    chooser = src or world.src
    chosen: dict[str, str] = {}
    for name in world.positions:
        if moves is None:
            chosen[name] = LEFT if chooser.next_bit() == 0 else RIGHT
        else:
            if name not in moves:
                raise InvalidMove(f"no move supplied for experimenter {name!r}")
            chosen[name] = moves[name]

    new_positions = {}
    for name, (row, col) in world.positions.items():
        move = chosen[name]
        if move not in (LEFT, RIGHT):
            raise InvalidMove(f"move must be {LEFT!r} or {RIGHT!r}, got {move!r}")
        ul, ur = abut_above(row, col)
        new_positions[name] = ul if move == LEFT else ur
    world.positions = new_positions
    world.day += 1
    world.measured_today.clear()
    return world


def hex_measure(world: HexWorld, site: str) -> tuple[int, HexWorld]:
    """Measure the spin at an experimenter's current hexagon.

    The first measurement of the day draws a free bit and fixes the entire
    day-row through the parity law; later measurements the same day read the
    filled row. An experimenter may measure at most once per day.
    """
    if site not in world.positions:
        raise KeyError(f"unknown experimenter {site!r}")
    if site in world.measured_today:
        raise AlreadyMeasured(f"{site} already measured on day {world.day}")
    row, col = world.positions[site]
    assert row == world.day
    world._ensure_filled_through(row)
    if row not in world.rows:
        world._fill_row(row, col, world._free_bit())
    world.measured_today.add(site)
    return int(world.rows[row][world._index(row, col)]), world


@dataclass(frozen=True)
class FaceTestReport:
    """Outcome statistics of matched runs under the two filler orientations."""

    n_days: int
    seed: int
    faces: dict[str, dict]

    @property
    def total_parity_violations(self) -> int:
        return sum(f["parity_violations"] for f in self.faces.values())

    def to_json_obj(self) -> dict:
        return {"n_days": self.n_days, "seed": self.seed, "faces": self.faces}


def left_right_face_test(n: int, seed: int) -> FaceTestReport:
    """Run n days twice: once deciding A's outcome freely, once B's.

    A always moves upper-left and B upper-right from a shared start, both
    measuring daily; the "left" run seeds each day-row at A's hexagon and
    computes B's value by parity, the "right" run does the reverse. Both
    runs must show zero parity violations; the per-experimenter outcome
    streams are reported for distributional comparison.
    """
    faces: dict[str, dict] = {}
    for face in (LEFT, RIGHT):
        world = HexWorld(src=ChoiceSource.seeded(seed), experimenters=("A", "B"))
        a_stream = np.zeros(n, dtype=np.uint8)
        b_stream = np.zeros(n, dtype=np.uint8)
        order = ("A", "B") if face == LEFT else ("B", "A")
        for day in range(n):
            first, second = order
            v1, _ = hex_measure(world, first)
            v2, _ = hex_measure(world, second)
            outs = {first: v1, second: v2}
            a_stream[day] = outs["A"]
            b_stream[day] = outs["B"]
            hex_step(world, moves={"A": LEFT, "B": RIGHT})
        faces[face] = {
            "parity_violations": world.parity_violations(),
            "a_ones": int(a_stream.sum()),
            "b_ones": int(b_stream.sum()),
            "free_bits_used": world.free_bits_used,
            "a_stream_head": [int(v) for v in a_stream[:32]],
            "b_stream_head": [int(v) for v in b_stream[:32]],
        }
    return FaceTestReport(n_days=n, seed=seed, faces=faces)
