"""Gesture classification, gaze picking and the palm-menu state machine.

Hand frames are sensor-agnostic: palm pose, thumb/index tips, thumb
direction and an index-curl scalar. Four gesture families are recognized
(pinch, double pinch, palm-up, thumbs-up) plus a pointing pose; all are pure
functions of the current frame and the configured thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

LEFT = "left"
RIGHT = "right"

UP = np.array([0.0, 1.0, 0.0])


class Mode(Enum):
    """Engine interaction state. Measure is the default: no menu button active."""

    MEASURE = "measure"
    MANIPULATE = "manipulate"
    ADD_MARKER = "add_marker"
    REMOVE_MARKER = "remove_marker"


@dataclass(frozen=True)
class HandFrame:
    """One tracked hand. Points are world meters; direction vectors are unit."""

    handedness: str  # "left" | "right"
    palm_center: np.ndarray
    palm_normal: np.ndarray
    thumb_tip: np.ndarray
    index_tip: np.ndarray
    thumb_dir: np.ndarray
    index_curl: float  # 0 = extended, 1 = fully curled

    def validate(self) -> None:
        for name in ("palm_center", "palm_normal", "thumb_tip", "index_tip", "thumb_dir"):
            v = getattr(self, name)
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} is not finite")
        for name in ("palm_normal", "thumb_dir"):
            n = float(np.linalg.norm(getattr(self, name)))
            if abs(n - 1.0) > 1e-6:
                raise ValueError(f"{name} is not normalized (|v| = {n})")
        if self.handedness not in (LEFT, RIGHT):
            raise ValueError(f"bad handedness {self.handedness!r}")

    def pinch_midpoint(self) -> np.ndarray:
        return (self.thumb_tip + self.index_tip) / 2.0


@dataclass(frozen=True)
class GestureConfig:
    """Detection thresholds. Defaults sized to adult hands; all are config keys."""

    pinch_threshold: float = 0.025  # m, thumb-to-index separation
    cluster_radius: float = 0.08  # m, pinch-midpoint separation for a double pinch
    palm_up_angle_deg: float = 30.0
    thumbs_up_angle_deg: float = 25.0
    curl_min: float = 0.7
    point_curl_max: float = 0.3
    pick_slop: float = 1.5  # gaze pick: allowed perpendicular miss in target radii
    button_size: float = 0.04  # m, menu button cube edge


@dataclass(frozen=True)
class GestureSet:
    """Per-frame classifier output. double_pinch implies both pinches."""

    pinch_left: bool = False
    pinch_right: bool = False
    double_pinch: bool = False
    palm_up_left: bool = False
    thumbs_up_left: bool = False
    thumbs_up_right: bool = False
    point_left: bool = False
    point_right: bool = False

    def pinch(self, side: str) -> bool:
        return self.pinch_left if side == LEFT else self.pinch_right

    def thumbs_up(self, side: str) -> bool:
        return self.thumbs_up_left if side == LEFT else self.thumbs_up_right


@dataclass(frozen=True)
class GazeRay:
    """Head-locked view ray: origin at the head, direction = forward axis."""

    origin: np.ndarray
    direction: np.ndarray


def _pinch(hand: HandFrame, cfg: GestureConfig) -> bool:
    return float(np.linalg.norm(hand.thumb_tip - hand.index_tip)) < cfg.pinch_threshold


def _thumbs_up(hand: HandFrame, cfg: GestureConfig) -> bool:
    return (
        float(hand.thumb_dir @ UP) >= math.cos(math.radians(cfg.thumbs_up_angle_deg))
        and hand.index_curl >= cfg.curl_min
    )


def classify_gestures(
    left: Optional[HandFrame], right: Optional[HandFrame], cfg: GestureConfig
) -> GestureSet:
    """Classify both hands for one frame. Absent hands yield all-false."""
    pinch_l = _pinch(left, cfg) if left else False
    pinch_r = _pinch(right, cfg) if right else False
    double = False
    if pinch_l and pinch_r:
        gap = np.linalg.norm(left.pinch_midpoint() - right.pinch_midpoint())
        double = float(gap) < cfg.cluster_radius
    return GestureSet(
        pinch_left=pinch_l,
        pinch_right=pinch_r,
        double_pinch=double,
        palm_up_left=bool(
            left and float(left.palm_normal @ UP) >= math.cos(math.radians(cfg.palm_up_angle_deg))
        ),
        thumbs_up_left=_thumbs_up(left, cfg) if left else False,
        thumbs_up_right=_thumbs_up(right, cfg) if right else False,
        point_left=bool(left and left.index_curl <= cfg.point_curl_max and not pinch_l),
        point_right=bool(right and right.index_curl <= cfg.point_curl_max and not pinch_r),
    )


def gaze_pick(
    ray: GazeRay,
    targets: Iterable[tuple[int, np.ndarray, float]],
    pick_slop: float = 1.5,
) -> Optional[int]:
    """Pick the first target along the ray whose perpendicular miss is small enough.

    Targets are (id, center, radius); a hit needs perpendicular distance
    <= pick_slop * radius and a positive along-ray parameter. The nearest
    along-ray hit wins.
    """
    best_id = None
    best_along = math.inf
    for target_id, center, radius in targets:
        rel = np.asarray(center, dtype=np.float64) - ray.origin
        along = float(rel @ ray.direction)
        if along <= 0.0:
            continue
        perp = float(np.linalg.norm(rel - along * ray.direction))
        if perp <= pick_slop * radius and along < best_along:
            best_along = along
            best_id = target_id
    return best_id


# Palm menu: five buttons in a 2-column x 3-row grid over the upturned left
# palm. Pressing the active mode button drops back to Measure.
MENU_BUTTONS = ("reset", "help", "remove", "add", "manipulate")

_BUTTON_MODE = {
    "remove": Mode.REMOVE_MARKER,
    "add": Mode.ADD_MARKER,
    "manipulate": Mode.MANIPULATE,
}

MENU_HOVER_OFFSET = 0.10  # m above the palm


def menu_button_centers(
    palm_center: np.ndarray, palm_normal: np.ndarray, cfg: GestureConfig
) -> dict[str, np.ndarray]:
    """Button cube centers anchored to the palm, deterministic for a given pose."""
    n = np.asarray(palm_normal, dtype=np.float64)
    u = np.cross(UP, n)
    nu = float(np.linalg.norm(u))
    u = np.array([1.0, 0.0, 0.0]) if nu < 1e-6 else u / nu
    v = np.cross(n, u)
    pitch = 1.5 * cfg.button_size
    centers = {}
    for k, label in enumerate(MENU_BUTTONS):
        row, col = divmod(k, 2)
        centers[label] = (
            np.asarray(palm_center, dtype=np.float64)
            + MENU_HOVER_OFFSET * n
            + (col - 0.5) * pitch * u
            + (1 - row) * pitch * v
        )
    return centers


@dataclass(frozen=True)
class MenuStep:
    """Result of one menu update."""

    mode: Mode
    help_visible: bool
    reset: bool
    inside: frozenset  # buttons currently containing the pointer tip


def step_menu(
    mode: Mode,
    help_visible: bool,
    gestures: GestureSet,
    pointer_tip: Optional[np.ndarray],
    palm_center: Optional[np.ndarray],
    palm_normal: Optional[np.ndarray],
    cfg: GestureConfig,
    prev_inside: frozenset = frozenset(),
) -> MenuStep:
    """Advance the palm-menu machine by one frame.

    The menu is visible iff the left palm faces up; presses fire on the
    rising edge of the pointer tip entering a button cube, so a dwelling
    finger cannot repeat-fire. A hidden menu accepts no presses.
    """
    if not gestures.palm_up_left or palm_center is None or palm_normal is None:
        return MenuStep(mode, help_visible, False, frozenset())
    if pointer_tip is None:
        return MenuStep(mode, help_visible, False, frozenset())

    half = cfg.button_size / 2.0
    tip = np.asarray(pointer_tip, dtype=np.float64)
    centers = menu_button_centers(palm_center, palm_normal, cfg)
    inside = frozenset(
        label for label, c in centers.items() if float(np.max(np.abs(tip - c))) <= half
    )

    reset = False
    for label in MENU_BUTTONS:  # fixed order keeps multi-press frames deterministic
        if label not in inside or label in prev_inside:
            continue
        if label == "reset":
            reset = True
        elif label == "help":
            help_visible = not help_visible
        else:
            target = _BUTTON_MODE[label]
            mode = Mode.MEASURE if mode is target else target
    return MenuStep(mode, help_visible, reset, inside)
