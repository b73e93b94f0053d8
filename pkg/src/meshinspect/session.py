"""Event-sourced inspection engine: frames in, snapshots out.

The engine is a deterministic fold over a timestamped input-frame stream.
Each frame runs the same pipeline: gesture classification, palm-menu update,
mode-dispatched action, halo/HUD refresh, snapshot emission. All output
timestamps come from frame time, never the wall clock, so replaying a stream
reproduces the measurement log and metrics byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterator, Optional

import numpy as np

from meshinspect.config import SessionConfig, derived_grid_parameters
from meshinspect.gestures import (
    LEFT,
    RIGHT,
    GazeRay,
    GestureSet,
    HandFrame,
    Mode,
    classify_gestures,
    gaze_pick,
    step_menu,
)
from meshinspect.measure import (
    HudView,
    MeasureLog,
    MeasureState,
    create_marker,
    drag_marker_step,
    hud_legend,
    update_halos,
)
from meshinspect.mesh import TriangleMesh, load_obj, mesh_aabb
from meshinspect.pose import (
    ManipMetrics,
    ModelPose,
    apply_one_hand_drag,
    apply_two_hand_transform,
    local_to_world,
    reset_pose,
    update_metrics,
    write_metrics,
)
from meshinspect.snapgrid import SnapGrid, generate_snap_grid


class FrameOrderError(ValueError):
    """A frame arrived with a timestamp earlier than its predecessor."""


class ReplayError(ValueError):
    """A frame record in a stream file could not be parsed. ``line`` is 1-based."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class InputFrame:
    """One tick of input: head pose plus optional hand frames."""

    t_ms: int
    head_position: np.ndarray
    head_forward: np.ndarray
    left: Optional[HandFrame] = None
    right: Optional[HandFrame] = None


def _vec3(obj) -> np.ndarray:
    v = np.asarray(obj, dtype=np.float64)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got {obj!r}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite vector {obj!r}")
    return v


def hand_from_json(obj: dict, side: str) -> HandFrame:
    hand = HandFrame(
        handedness=side,
        palm_center=_vec3(obj["palm_center"]),
        palm_normal=_vec3(obj["palm_normal"]),
        thumb_tip=_vec3(obj["thumb_tip"]),
        index_tip=_vec3(obj["index_tip"]),
        thumb_dir=_vec3(obj["thumb_dir"]),
        index_curl=float(obj["index_curl"]),
    )
    hand.validate()
    return hand


def hand_to_json(hand: HandFrame) -> dict:
    return {
        "palm_center": [float(x) for x in hand.palm_center],
        "palm_normal": [float(x) for x in hand.palm_normal],
        "thumb_tip": [float(x) for x in hand.thumb_tip],
        "index_tip": [float(x) for x in hand.index_tip],
        "thumb_dir": [float(x) for x in hand.thumb_dir],
        "index_curl": float(hand.index_curl),
    }


def frame_from_json(obj: dict) -> InputFrame:
    if not isinstance(obj, dict):
        raise ValueError("frame record must be a JSON object")
    t_ms = obj["t_ms"]
    if isinstance(t_ms, bool) or not isinstance(t_ms, int):
        raise ValueError("t_ms must be an integer")
    head = obj["head"]
    forward = _vec3(head["forward"])
    if abs(float(np.linalg.norm(forward)) - 1.0) > 1e-6:
        raise ValueError("head.forward must be a unit vector")
    left = obj.get("left")
    right = obj.get("right")
    return InputFrame(
        t_ms=t_ms,
        head_position=_vec3(head["position"]),
        head_forward=forward,
        left=hand_from_json(left, LEFT) if left is not None else None,
        right=hand_from_json(right, RIGHT) if right is not None else None,
    )


def frame_to_json(frame: InputFrame) -> dict:
    return {
        "t_ms": frame.t_ms,
        "head": {
            "position": [float(x) for x in frame.head_position],
            "forward": [float(x) for x in frame.head_forward],
        },
        "left": hand_to_json(frame.left) if frame.left else None,
        "right": hand_to_json(frame.right) if frame.right else None,
    }


def iter_frames(path: str) -> Iterator[tuple[int, InputFrame]]:
    """Yield (line_number, frame) from a JSON-lines stream file."""
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                frame = frame_from_json(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ReplayError(str(exc), lineno) from None
            yield lineno, frame


@dataclass(frozen=True)
class SnapshotMarker:
    id: int
    world_position: np.ndarray
    halo: str


@dataclass(frozen=True)
class SnapshotRuler:
    id: int
    a: int
    b: int
    length_m: float


@dataclass(frozen=True)
class Snapshot:
    """Immutable client view emitted after every applied frame."""

    t_ms: int
    mode: str
    help_visible: bool
    pose: ModelPose
    markers: tuple[SnapshotMarker, ...]
    rulers: tuple[SnapshotRuler, ...]
    hud: HudView
    snap_points_world: np.ndarray
    gestures: GestureSet
    log_seq: int

    def to_json(self) -> dict:
        return {
            "type": "snapshot",
            "t_ms": self.t_ms,
            "mode": self.mode,
            "help_visible": self.help_visible,
            "pose": {
                "position": [float(x) for x in self.pose.position],
                "yaw": float(self.pose.yaw),
                "scale": float(self.pose.scale),
            },
            "markers": [
                {
                    "id": m.id,
                    "position": [float(x) for x in m.world_position],
                    "halo": m.halo,
                }
                for m in self.markers
            ],
            "rulers": [
                {"id": r.id, "a": r.a, "b": r.b, "length_m": float(r.length_m)}
                for r in self.rulers
            ],
            "hud": self.hud.to_json(),
            "snap_points": [[float(x) for x in p] for p in self.snap_points_world],
            "gestures": asdict(self.gestures),
            "log_seq": self.log_seq,
        }


class Session:
    """Single-writer engine state; every mutation happens on the frame path."""

    def __init__(self, config: SessionConfig, mesh: Optional[TriangleMesh] = None):
        config.validate()
        self.config = config
        self.mesh = mesh if mesh is not None else load_obj(
            config.mesh_path, config.meters_per_model_unit
        )
        self.grid: Optional[SnapGrid] = None
        if config.snapping_enabled:
            aabb = mesh_aabb(self.mesh)
            step, point_radius, snap_radius = derived_grid_parameters(
                config, float(aabb.extents().max())
            )
            self.grid = generate_snap_grid(self.mesh, step, point_radius, snap_radius)

        self.pose = reset_pose(config.default_position, config.default_yaw, config.default_scale)
        self.metrics = ManipMetrics.initial(self.pose)
        self.mode = Mode.MEASURE
        self.help_visible = False
        self.state = MeasureState(MeasureLog(config.log_path))

        self._menu_inside: frozenset = frozenset()
        self._prev_gestures = GestureSet()
        self._prev_mid: dict[str, Optional[np.ndarray]] = {LEFT: None, RIGHT: None}
        self._last_t: Optional[int] = None
        self._last_snapshot = self._build_snapshot(0, GestureSet())

    # -- frame pipeline ------------------------------------------------------

    def apply_input_frame(self, frame: InputFrame) -> Snapshot:
        if self._last_t is not None and frame.t_ms < self._last_t:
            raise FrameOrderError(
                f"frame t_ms {frame.t_ms} is earlier than previous {self._last_t}"
            )
        t = frame.t_ms
        left, right = frame.left, frame.right
        gestures = classify_gestures(left, right, self.config.gestures)

        step = step_menu(
            self.mode,
            self.help_visible,
            gestures,
            right.index_tip if right else None,
            left.palm_center if left else None,
            left.palm_normal if left else None,
            self.config.gestures,
            self._menu_inside,
        )
        self._menu_inside = step.inside
        if step.reset:
            self._do_reset(t)
        if step.mode is not self.mode:
            # leaving a mode finalizes its transient state
            self.state.release_all(t)
            self.state.selected = None
            self.mode = step.mode
        self.help_visible = step.help_visible

        if self.mode is Mode.MANIPULATE:
            self._step_manipulate(gestures, left, right)
        elif self.mode is Mode.ADD_MARKER:
            self._step_add_marker(frame, gestures, left, right)
        elif self.mode is Mode.REMOVE_MARKER:
            self._step_remove_marker(frame, gestures)
        else:
            self._step_measure(frame, gestures, left, right)

        update_halos(self.state, self.pose, left, right, self.config.hover_reach)

        self._prev_gestures = gestures
        for side, hand in ((LEFT, left), (RIGHT, right)):
            self._prev_mid[side] = hand.pinch_midpoint() if hand else None
        self._last_t = t

        self._last_snapshot = self._build_snapshot(t, gestures)
        return self._last_snapshot

    def _do_reset(self, t_ms: int) -> None:
        self.pose = reset_pose(
            self.config.default_position, self.config.default_yaw, self.config.default_scale
        )
        self.state.clear(t_ms)

    def _step_manipulate(
        self, g: GestureSet, left: Optional[HandFrame], right: Optional[HandFrame]
    ) -> None:
        prev = self._prev_gestures
        mid = {
            LEFT: left.pinch_midpoint() if left else None,
            RIGHT: right.pinch_midpoint() if right else None,
        }
        both_now = g.pinch_left and g.pinch_right
        both_prev = prev.pinch_left and prev.pinch_right
        if (
            both_now
            and both_prev
            and self._prev_mid[LEFT] is not None
            and self._prev_mid[RIGHT] is not None
        ):
            before = self.pose
            self.pose = apply_two_hand_transform(
                self.pose,
                self._prev_mid[LEFT],
                self._prev_mid[RIGHT],
                mid[LEFT],
                mid[RIGHT],
                self.config.scale_min,
                self.config.scale_max,
            )
            self.metrics = update_metrics(self.metrics, before, self.pose)
            return
        for side in (LEFT, RIGHT):
            if g.pinch(side) and prev.pinch(side) and self._prev_mid[side] is not None:
                before = self.pose
                self.pose = apply_one_hand_drag(
                    self.pose, self._prev_mid[side], mid[side], self.config.drag_gain
                )
                self.metrics = update_metrics(self.metrics, before, self.pose)

    def _step_add_marker(
        self,
        frame: InputFrame,
        g: GestureSet,
        left: Optional[HandFrame],
        right: Optional[HandFrame],
    ) -> None:
        prev = self._prev_gestures
        if g.double_pinch and not prev.double_pinch and left and right:
            create_marker(
                self.state, left, right, self.pose, self.grid, self.config.snapping_enabled
            )
        else:
            for side, hand in ((LEFT, left), (RIGHT, right)):
                if hand is None or not g.pinch(side) or prev.pinch(side):
                    continue
                if any(m.grabbed_by == side for m in self.state.markers.values()):
                    continue
                target = self._pick_marker(frame)
                if target is not None:
                    self.state.begin_grab(target, side, frame.t_ms)
        for marker in self.state.grabbed_markers():
            side = marker.grabbed_by
            hand = left if side == LEFT else right
            drag_marker_step(
                self.state,
                marker.id,
                hand,
                g.pinch(side),
                g.thumbs_up(side),
                frame.t_ms,
                self.pose,
                self.grid,
                self.config.snapping_enabled,
            )

    def _step_remove_marker(self, frame: InputFrame, g: GestureSet) -> None:
        if g.double_pinch and not self._prev_gestures.double_pinch:
            target = self._pick_marker(frame)
            if target is not None:
                self.state.remove_marker(target, frame.t_ms)

    def _step_measure(
        self,
        frame: InputFrame,
        g: GestureSet,
        left: Optional[HandFrame],
        right: Optional[HandFrame],
    ) -> None:
        prev = self._prev_gestures
        for side, hand in ((LEFT, left), (RIGHT, right)):
            if hand is None or not g.pinch(side) or prev.pinch(side):
                continue
            target = self._pick_marker(frame)
            if target is not None:
                self.state.select_or_connect(target, frame.t_ms)

    def _pick_marker(self, frame: InputFrame) -> Optional[int]:
        ray = GazeRay(frame.head_position, frame.head_forward)
        targets = [
            (m.id, local_to_world(self.pose, m.position), self.config.marker_radius)
            for m in sorted(self.state.markers.values(), key=lambda m: m.id)
        ]
        return gaze_pick(ray, targets, self.config.gestures.pick_slop)

    # -- views ----------------------------------------------------------------

    def _build_snapshot(self, t_ms: int, gestures: GestureSet) -> Snapshot:
        if self.grid is not None and self.config.snapping_enabled:
            snap_world = local_to_world(self.pose, self.grid.points)
        else:
            snap_world = np.zeros((0, 3))
        return Snapshot(
            t_ms=t_ms,
            mode=self.mode.value,
            help_visible=self.help_visible,
            pose=self.pose,
            markers=tuple(
                SnapshotMarker(m.id, local_to_world(self.pose, m.position), m.halo)
                for m in sorted(self.state.markers.values(), key=lambda m: m.id)
            ),
            rulers=tuple(
                SnapshotRuler(r.id, r.a, r.b, r.length_m)
                for r in sorted(self.state.rulers.values(), key=lambda r: r.id)
            ),
            hud=hud_legend(self.state.log, self.pose.scale),
            snap_points_world=snap_world,
            gestures=gestures,
            log_seq=self.state.log.last_seq,
        )

    @property
    def last_snapshot(self) -> Snapshot:
        return self._last_snapshot

    def hello_json(self) -> dict:
        """Connection preamble: mesh, grid dump and a config echo."""
        cfg = asdict(self.config)
        cfg["gestures"] = asdict(self.config.gestures)
        grid = {
            "enabled": bool(self.config.snapping_enabled and self.grid is not None),
            "points": [],
            "step": None,
            "point_radius": None,
            "snap_radius": None,
        }
        if self.grid is not None:
            grid.update(
                points=[[float(x) for x in p] for p in self.grid.points],
                step=self.grid.step,
                point_radius=self.grid.point_radius,
                snap_radius=self.grid.snap_radius,
            )
        return {
            "type": "hello",
            "mesh": {
                "vertices": [[float(x) for x in v] for v in self.mesh.vertices],
                "triangles": [[int(i) for i in t] for t in self.mesh.triangles],
            },
            "grid": grid,
            "config": cfg,
        }

    def finish(self) -> None:
        """Flush terminal outputs: metrics JSON and the log file handle."""
        write_metrics(self.metrics, self.config.metrics_path)
        self.state.log.close()


def replay(config: SessionConfig, frames_path: str) -> tuple[str, str]:
    """Run a stream file through a fresh session; returns (log_path, metrics_path).

    Output depends only on (config, frames): replaying twice produces
    byte-identical files.
    """
    session = Session(config)
    try:
        for _, frame in iter_frames(frames_path):
            session.apply_input_frame(frame)
    finally:
        session.finish()
    return config.log_path, config.metrics_path
