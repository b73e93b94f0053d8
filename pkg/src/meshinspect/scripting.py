"""Synthetic input-frame builders for fixtures, demos and benchmarks.

Frames are plain JSON-ready dicts matching the stream-file schema, so a
scripted session can be dumped to JSON-lines, replayed offline, or sent to a
live service unchanged.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

import numpy as np

from meshinspect.gestures import GestureConfig, menu_button_centers
from meshinspect.pose import ModelPose, local_to_world

_FAR = 10_000.0  # parked fingertip, safely outside every interaction volume


def _v(p) -> list[float]:
    return [float(x) for x in np.asarray(p, dtype=np.float64).reshape(3)]


def _unit(p) -> list[float]:
    v = np.asarray(p, dtype=np.float64).reshape(3)
    return [float(x) for x in v / np.linalg.norm(v)]


def hand_json(
    *,
    palm_center,
    palm_normal=(0.0, -1.0, 0.0),
    thumb_tip=None,
    index_tip=None,
    thumb_dir=(1.0, 0.0, 0.0),
    index_curl: float = 0.5,
) -> dict:
    palm = np.asarray(palm_center, dtype=np.float64)
    if thumb_tip is None:
        thumb_tip = palm + np.array([0.00, 0.0, -0.08])
    if index_tip is None:
        index_tip = palm + np.array([0.06, 0.0, -0.08])
    return {
        "palm_center": _v(palm),
        "palm_normal": _unit(palm_normal),
        "thumb_tip": _v(thumb_tip),
        "index_tip": _v(index_tip),
        "thumb_dir": _unit(thumb_dir),
        "index_curl": float(index_curl),
    }


def pinch_hand(point, **overrides) -> dict:
    """Hand pinching with both fingertips at ``point`` (pinch midpoint = point)."""
    kwargs = dict(palm_center=point, thumb_tip=point, index_tip=point, index_curl=0.9)
    kwargs.update(overrides)
    return hand_json(**kwargs)


def open_hand(center, **overrides) -> dict:
    return hand_json(palm_center=center, **overrides)


def thumbs_up_hand(center) -> dict:
    """Thumb straight up, index fully curled: the release gesture."""
    return hand_json(
        palm_center=center, thumb_dir=(0.0, 1.0, 0.0), index_curl=1.0
    )


def palm_up_hand(center) -> dict:
    return hand_json(palm_center=center, palm_normal=(0.0, 1.0, 0.0))


def pointer_hand(index_tip) -> dict:
    """Extended index for menu pressing; fingertips apart so it never pinches."""
    tip = np.asarray(index_tip, dtype=np.float64)
    return hand_json(
        palm_center=tip + np.array([0.0, -0.05, 0.1]),
        thumb_tip=tip + np.array([-0.06, -0.03, 0.05]),
        index_tip=tip,
        index_curl=0.0,
    )


def aim(head_position, target) -> list[float]:
    return _unit(np.asarray(target, dtype=np.float64) - np.asarray(head_position, dtype=np.float64))


def frame(
    t_ms: int,
    head_position=(0.0, 1.6, 2.0),
    head_forward=(0.0, 0.0, -1.0),
    left: Optional[dict] = None,
    right: Optional[dict] = None,
) -> dict:
    return {
        "t_ms": int(t_ms),
        "head": {"position": _v(head_position), "forward": _unit(head_forward)},
        "left": left,
        "right": right,
    }


def write_frames(path: str, frames: Sequence[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for fr in frames:
            f.write(json.dumps(fr) + "\n")


class StreamBuilder:
    """Accumulates frames with a monotonically increasing clock."""

    def __init__(self, start_ms: int = 0, dt_ms: int = 50, head_position=(0.0, 1.6, 2.0)):
        self.frames: list[dict] = []
        self._t = int(start_ms)
        self.dt = int(dt_ms)
        self.head_position = _v(head_position)

    @property
    def t(self) -> int:
        return self._t

    def push(
        self, left=None, right=None, head_position=None, head_forward=(0.0, 0.0, -1.0)
    ) -> dict:
        fr = frame(
            self._t,
            head_position if head_position is not None else self.head_position,
            head_forward,
            left,
            right,
        )
        self.frames.append(fr)
        self._t += self.dt
        return fr

    def idle(self, count: int = 1) -> None:
        for _ in range(count):
            self.push()

    def press_menu_button(
        self, label: str, palm_center=( -0.3, 1.2, 0.5), cfg: GestureConfig = GestureConfig()
    ) -> None:
        """Palm-up menu press: pointer parked outside, then into the button cube."""
        palm = _v(palm_center)
        centers = menu_button_centers(np.asarray(palm), np.array([0.0, 1.0, 0.0]), cfg)
        outside = np.asarray(palm) + np.array([0.0, 0.5, 0.0])
        self.push(left=palm_up_hand(palm), right=pointer_hand(outside))
        self.push(left=palm_up_hand(palm), right=pointer_hand(centers[label]))
        self.idle()

    def double_pinch_at(self, world_point) -> None:
        """Rising-edge double pinch with both pinch midpoints at ``world_point``."""
        p = _v(world_point)
        self.push(left=pinch_hand(p), right=pinch_hand(p))
        self.idle()

    def gaze_pinch(self, world_target, head_position=None) -> None:
        """Gaze at a world point and make a right-hand pinch rising edge."""
        head = _v(head_position) if head_position is not None else self.head_position
        fwd = aim(head, world_target)
        pinch_at = np.asarray(head) + np.array([0.1, -0.2, -0.3])
        self.push(right=pinch_hand(pinch_at), head_position=head, head_forward=fwd)
        self.push(head_position=head, head_forward=fwd)


def corner_measurement_stream(
    pose: ModelPose,
    marker_points_local: Sequence,
    connections: Sequence[tuple[int, int]],
    head_position=(0.5, 1.0, 3.0),
    cfg: GestureConfig = GestureConfig(),
    start_ms: int = 0,
    dt_ms: int = 50,
) -> list[dict]:
    """Scripted session: add markers at model-local points, then connect pairs.

    Switches to add mode via the palm menu, double-pinches at each point's
    world position, toggles back to measure mode, then gaze+pinch selects the
    endpoints of every requested connection (pairs index into
    ``marker_points_local``, 0-based).
    """
    sb = StreamBuilder(start_ms=start_ms, dt_ms=dt_ms, head_position=head_position)
    world_points = [local_to_world(pose, np.asarray(p, dtype=np.float64)) for p in marker_points_local]

    sb.press_menu_button("add", cfg=cfg)
    for wp in world_points:
        sb.double_pinch_at(wp)
    sb.press_menu_button("add", cfg=cfg)  # active-mode toggle drops back to measure
    for ia, ib in connections:
        sb.gaze_pinch(world_points[ia])
        sb.gaze_pinch(world_points[ib])
    return sb.frames
