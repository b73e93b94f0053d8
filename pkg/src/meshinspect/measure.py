"""Markers, rulers, selection state and the append-only measurement log.

Markers live in model-local coordinates, so they ride along with the model
under manipulation and ruler lengths are real-world meters regardless of the
current display scale. Every measurement change appends to a CSV log, newest
last; the HUD legend shows only the latest three created/updated entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Optional

import numpy as np

from meshinspect.gestures import HandFrame, LEFT, RIGHT
from meshinspect.pose import ModelPose, local_to_world, world_to_local
from meshinspect.snapgrid import SnapGrid, snap_query

HALO_NONE = "none"
HALO_HOVER_LEFT = "hover_left"
HALO_HOVER_RIGHT = "hover_right"
HALO_SELECTED = "selected"

EVENT_CREATED = "CREATED"
EVENT_UPDATED = "UPDATED"
EVENT_REMOVED = "REMOVED"
EVENT_SESSION_RESET = "SESSION_RESET"

MAX_MARKER_DEGREE = 3
RELEASE_TIMEOUT_MS = 2000

CSV_HEADER = "seq,t_ms,event,ruler_id,marker_a,marker_b,length_m"

# connect_markers outcomes
CONNECTED = "connected"
SELECTED = "selected"
CANCELLED = "cancelled"
DUPLICATE_RULER = "duplicate_ruler"
DEGREE_EXCEEDED = "degree_exceeded"
GRAB_CONFLICT = "grab_conflict"
IGNORED = "ignored"


@dataclass
class Marker:
    """A user-placed point (model-local meters) usable as a ruler endpoint."""

    id: int
    position: np.ndarray
    halo: str = HALO_NONE
    grabbed_by: Optional[str] = None  # "left" | "right" | None
    release_deadline: Optional[int] = None  # ms, while grabbed

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=np.float64).reshape(3).copy()


@dataclass
class Ruler:
    """A measurement between two markers; length is recomputed on endpoint moves."""

    id: int
    a: int
    b: int
    length_m: float


@dataclass(frozen=True)
class LogRecord:
    seq: int
    t_ms: int
    event: str
    ruler_id: Optional[int] = None
    marker_a: Optional[int] = None
    marker_b: Optional[int] = None
    length_m: Optional[float] = None

    def csv_row(self) -> str:
        if self.event == EVENT_SESSION_RESET:
            return f"{self.seq},{self.t_ms},{self.event},,,,"
        return (
            f"{self.seq},{self.t_ms},{self.event},{self.ruler_id},"
            f"{self.marker_a},{self.marker_b},{self.length_m:.3f}"
        )


class MeasureLog:
    """Append-only record log, optionally mirrored to a CSV file (flushed per row)."""

    def __init__(self, path: Optional[str] = None):
        self.records: list[LogRecord] = []
        self._file: Optional[IO[str]] = None
        if path is not None:
            self._file = open(path, "w", encoding="utf-8", newline="\n")
            self._file.write(CSV_HEADER + "\n")
            self._file.flush()

    def append(self, t_ms: int, event: str, ruler: Optional[Ruler] = None) -> LogRecord:
        rec = LogRecord(
            seq=len(self.records) + 1,
            t_ms=t_ms,
            event=event,
            ruler_id=ruler.id if ruler else None,
            marker_a=ruler.a if ruler else None,
            marker_b=ruler.b if ruler else None,
            length_m=ruler.length_m if ruler else None,
        )
        self.records.append(rec)
        if self._file is not None:
            self._file.write(rec.csv_row() + "\n")
            self._file.flush()
        return rec

    @property
    def last_seq(self) -> int:
        return self.records[-1].seq if self.records else 0

    def close(self) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None

    def __del__(self):
        try:
            self.close()
        except Exception:
            pass


@dataclass(frozen=True)
class HudEntry:
    event: str
    ruler_id: int
    length_m: float

    @property
    def text(self) -> str:
        return f"{self.length_m:.3f} m"


@dataclass(frozen=True)
class HudView:
    """Display model: current scale plus the last three created/updated lengths."""

    scale: float
    entries: tuple[HudEntry, ...]

    @property
    def scale_text(self) -> str:
        return f"{self.scale:.3f}"

    def to_json(self) -> dict:
        return {
            "scale": self.scale_text,
            "entries": [
                {"event": e.event, "ruler_id": e.ruler_id, "length": f"{e.length_m:.3f}"}
                for e in self.entries
            ],
        }


def hud_legend(log: MeasureLog, current_scale: float) -> HudView:
    """Latest <= 3 CREATED/UPDATED records, most recent last. Removals never show."""
    changes = [r for r in log.records if r.event in (EVENT_CREATED, EVENT_UPDATED)]
    return HudView(
        scale=current_scale,
        entries=tuple(HudEntry(r.event, r.ruler_id, r.length_m) for r in changes[-3:]),
    )


class MeasureState:
    """Markers, rulers, pending selection and grabs. Ids are never reused."""

    def __init__(self, log: Optional[MeasureLog] = None):
        self.markers: dict[int, Marker] = {}
        self.rulers: dict[int, Ruler] = {}
        self.log = log if log is not None else MeasureLog()
        self.selected: Optional[int] = None
        self._next_marker_id = 1
        self._next_ruler_id = 1

    # -- queries ---------------------------------------------------------

    def degree(self, marker_id: int) -> int:
        return sum(1 for r in self.rulers.values() if marker_id in (r.a, r.b))

    def incident_rulers(self, marker_id: int) -> list[Ruler]:
        return [r for r in sorted(self.rulers.values(), key=lambda r: r.id) if marker_id in (r.a, r.b)]

    def has_pair(self, a: int, b: int) -> bool:
        return any({r.a, r.b} == {a, b} for r in self.rulers.values())

    def grabbed_markers(self) -> list[Marker]:
        return [m for m in sorted(self.markers.values(), key=lambda m: m.id) if m.grabbed_by]

    def ruler_length(self, ruler: Ruler) -> float:
        a = self.markers[ruler.a].position
        b = self.markers[ruler.b].position
        return float(np.linalg.norm(a - b))

    # -- marker placement --------------------------------------------------

    def add_marker(self, position_local: np.ndarray) -> Marker:
        marker = Marker(self._next_marker_id, position_local)
        self._next_marker_id += 1
        self.markers[marker.id] = marker
        return marker

    def move_marker(self, marker_id: int, position_local: np.ndarray) -> None:
        """Move an endpoint; incident ruler lengths follow immediately."""
        marker = self.markers[marker_id]
        marker.position = np.asarray(position_local, dtype=np.float64).reshape(3).copy()
        for ruler in self.incident_rulers(marker_id):
            ruler.length_m = self.ruler_length(ruler)

    # -- selection / connection -------------------------------------------

    def select_or_connect(self, marker_id: int, t_ms: int) -> str:
        """Gaze+pinch on a marker in measure mode.

        First hit selects it (green halo); hitting the selected marker again
        cancels; hitting a different marker creates the ruler unless the pair
        already exists or an endpoint already carries three rulers.
        """
        if marker_id not in self.markers:
            return IGNORED
        if self.selected is None:
            self.selected = marker_id
            return SELECTED
        if self.selected == marker_id:
            self.selected = None
            return CANCELLED
        first, second = self.selected, marker_id
        if self.has_pair(first, second):
            return DUPLICATE_RULER
        if self.degree(first) >= MAX_MARKER_DEGREE or self.degree(second) >= MAX_MARKER_DEGREE:
            return DEGREE_EXCEEDED
        ruler = Ruler(self._next_ruler_id, first, second, 0.0)
        self._next_ruler_id += 1
        ruler.length_m = self.ruler_length(ruler)
        self.rulers[ruler.id] = ruler
        self.log.append(t_ms, EVENT_CREATED, ruler)
        self.selected = None
        return CONNECTED

    # -- removal -----------------------------------------------------------

    def remove_marker(self, marker_id: int, t_ms: int) -> None:
        """Drop a marker and its rulers; one REMOVED record per ruler, last length."""
        if marker_id not in self.markers:
            return
        for ruler in self.incident_rulers(marker_id):
            self.log.append(t_ms, EVENT_REMOVED, ruler)
            del self.rulers[ruler.id]
        if self.selected == marker_id:
            self.selected = None
        del self.markers[marker_id]

    # -- grab / drag / release ----------------------------------------------

    def begin_grab(self, marker_id: int, side: str, t_ms: int) -> str:
        marker = self.markers[marker_id]
        if marker.grabbed_by is not None and marker.grabbed_by != side:
            return GRAB_CONFLICT
        marker.grabbed_by = side
        marker.release_deadline = t_ms + RELEASE_TIMEOUT_MS
        return SELECTED

    def release_marker(self, marker_id: int, t_ms: int) -> None:
        """Finalize a grab: recompute incident rulers and log one UPDATED each."""
        marker = self.markers[marker_id]
        marker.grabbed_by = None
        marker.release_deadline = None
        for ruler in self.incident_rulers(marker_id):
            ruler.length_m = self.ruler_length(ruler)
            self.log.append(t_ms, EVENT_UPDATED, ruler)

    def release_all(self, t_ms: int) -> None:
        for marker in self.grabbed_markers():
            self.release_marker(marker.id, t_ms)

    def clear(self, t_ms: int) -> None:
        """Reset action: wipe markers and rulers, keep the log (file and records)."""
        self.markers.clear()
        self.rulers.clear()
        self.selected = None
        self.log.append(t_ms, EVENT_SESSION_RESET)


def snapped_local(
    world_point: np.ndarray,
    pose: ModelPose,
    grid: Optional[SnapGrid],
    snapping_enabled: bool = True,
) -> np.ndarray:
    """World point -> model-local, snapped to the grid when one is in range."""
    local = world_to_local(pose, world_point)
    if snapping_enabled and grid is not None:
        hit = snap_query(grid, local)
        if hit is not None:
            return hit[1]
    return local


def create_marker(
    state: MeasureState,
    left: HandFrame,
    right: HandFrame,
    pose: ModelPose,
    grid: Optional[SnapGrid],
    snapping_enabled: bool = True,
) -> Marker:
    """Place a marker between the hands on a double pinch.

    The world position is the midpoint of the two pinch midpoints; storage is
    model-local, snapped to the grid when a point is within the snap radius.
    Markers may land anywhere, on or off the model.
    """
    world = (left.pinch_midpoint() + right.pinch_midpoint()) / 2.0
    return state.add_marker(snapped_local(world, pose, grid, snapping_enabled))


def drag_marker_step(
    state: MeasureState,
    marker_id: int,
    hand: Optional[HandFrame],
    pinching: bool,
    thumbs_up: bool,
    t_ms: int,
    pose: ModelPose,
    grid: Optional[SnapGrid],
    snapping_enabled: bool = True,
) -> bool:
    """Advance one grabbed marker by one frame; returns True if it was released.

    The marker tracks the grabbing hand's pinch midpoint (continuously
    snapped). A detected pinch refreshes the auto-release deadline; release
    happens on the grabbing hand's thumbs-up or once the deadline passes
    (two seconds after the pinch was last seen).
    """
    marker = state.markers[marker_id]
    if hand is not None:
        state.move_marker(
            marker_id, snapped_local(hand.pinch_midpoint(), pose, grid, snapping_enabled)
        )
        if pinching:
            marker.release_deadline = t_ms + RELEASE_TIMEOUT_MS
    if (hand is not None and thumbs_up) or (
        marker.release_deadline is not None and t_ms >= marker.release_deadline
    ):
        state.release_marker(marker_id, t_ms)
        return True
    return False


def marker_world_positions(state: MeasureState, pose: ModelPose) -> dict[int, np.ndarray]:
    return {m.id: local_to_world(pose, m.position) for m in state.markers.values()}


def update_halos(
    state: MeasureState,
    pose: ModelPose,
    left: Optional[HandFrame],
    right: Optional[HandFrame],
    hover_reach: float = 0.15,
) -> None:
    """Recolor halos: pending selection wins, then the grab side, then the
    nearest hand within reach (blue = left, red = right on the client side)."""
    hands = [(LEFT, left), (RIGHT, right)]
    for marker in state.markers.values():
        if state.selected == marker.id:
            marker.halo = HALO_SELECTED
            continue
        if marker.grabbed_by is not None:
            marker.halo = HALO_HOVER_LEFT if marker.grabbed_by == LEFT else HALO_HOVER_RIGHT
            continue
        world = local_to_world(pose, marker.position)
        best_side, best_dist = None, hover_reach
        for side, hand in hands:
            if hand is None:
                continue
            d = float(np.linalg.norm(hand.pinch_midpoint() - world))
            if d <= best_dist:
                best_side, best_dist = side, d
        if best_side is None:
            marker.halo = HALO_NONE
        else:
            marker.halo = HALO_HOVER_LEFT if best_side == LEFT else HALO_HOVER_RIGHT
