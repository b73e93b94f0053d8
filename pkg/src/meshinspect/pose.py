"""Model pose (translation, yaw, uniform scale) and hand-driven manipulation.

Rotation is constrained to the horizontal plane, so the pose is a yaw angle
about world +Y plus a position and a single scale factor. Two-hand input
solves rotate/scale/translate simultaneously; measurements never read the
pose, so manipulating the model cannot change logged lengths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

_EPS = 1e-9

SCALE_MIN_DEFAULT = 0.001
SCALE_MAX_DEFAULT = 2.0
NOMINAL_SCALE = 0.05


@dataclass(frozen=True)
class ModelPose:
    """World placement: world = R_yaw(yaw) @ (scale * local) + position."""

    position: np.ndarray
    yaw: float = 0.0
    scale: float = NOMINAL_SCALE

    def __post_init__(self):
        object.__setattr__(
            self, "position", np.asarray(self.position, dtype=np.float64).reshape(3).copy()
        )
        self.position.flags.writeable = False


def reset_pose(
    position=(0.0, 0.0, 0.0), yaw: float = 0.0, scale: float = NOMINAL_SCALE
) -> ModelPose:
    """The configured default pose (used at startup and on the reset action)."""
    return ModelPose(np.asarray(position, dtype=np.float64), yaw, scale)


def rotation_about_y(yaw: float) -> np.ndarray:
    c, s = math.cos(yaw), math.sin(yaw)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def local_to_world(pose: ModelPose, p: np.ndarray) -> np.ndarray:
    """Map model-local points (3,) or (n, 3) into world space."""
    p = np.asarray(p, dtype=np.float64)
    r = rotation_about_y(pose.yaw)
    return (pose.scale * p) @ r.T + pose.position


def world_to_local(pose: ModelPose, w: np.ndarray) -> np.ndarray:
    """Exact inverse of :func:`local_to_world`."""
    w = np.asarray(w, dtype=np.float64)
    r = rotation_about_y(pose.yaw)
    return ((w - pose.position) @ r) / pose.scale


def apply_one_hand_drag(
    pose: ModelPose, hand_prev: np.ndarray, hand_curr: np.ndarray, drag_gain: float = 1.0
) -> ModelPose:
    """Push the model along the hand's motion; yaw and scale stay put."""
    delta = (np.asarray(hand_curr, dtype=np.float64) - np.asarray(hand_prev, dtype=np.float64))
    return replace(pose, position=pose.position + delta * drag_gain)


def apply_two_hand_transform(
    pose: ModelPose,
    l0: np.ndarray,
    r0: np.ndarray,
    l1: np.ndarray,
    r1: np.ndarray,
    scale_min: float = SCALE_MIN_DEFAULT,
    scale_max: float = SCALE_MAX_DEFAULT,
) -> ModelPose:
    """Simultaneous rotate/scale/translate from two pinch-point pairs.

    Yaw delta comes from the horizontal (X-Z) projections of the
    right-minus-left vectors; the scale ratio uses the full 3D inter-hand
    distance; the pivot is the hand midpoint, a point on the line connecting
    the pinch points, so the model-local point under the old midpoint lands
    on the new midpoint. Degenerate configurations (hands vertically stacked
    or coincident) fall back to no rotation / unit scale.
    """
    l0 = np.asarray(l0, dtype=np.float64)
    r0 = np.asarray(r0, dtype=np.float64)
    l1 = np.asarray(l1, dtype=np.float64)
    r1 = np.asarray(r1, dtype=np.float64)

    m0 = (l0 + r0) / 2.0
    m1 = (l1 + r1) / 2.0
    d0 = r0 - l0
    d1 = r1 - l1

    x0, z0 = d0[0], d0[2]
    x1, z1 = d1[0], d1[2]
    if math.hypot(x0, z0) < _EPS or math.hypot(x1, z1) < _EPS:
        dyaw = 0.0
    else:
        dyaw = math.atan2(z0 * x1 - x0 * z1, x0 * x1 + z0 * z1)

    sep0 = float(np.linalg.norm(d0))
    rho = 1.0 if sep0 < _EPS else float(np.linalg.norm(d1)) / sep0

    anchor = world_to_local(pose, m0)
    yaw = pose.yaw + dyaw
    scale = min(max(pose.scale * rho, scale_min), scale_max)
    position = m1 - (scale * anchor) @ rotation_about_y(yaw).T
    return ModelPose(position, yaw, scale)


@dataclass(frozen=True)
class ManipMetrics:
    """Session-level manipulation aggregates: how far, how much turned, scale range."""

    total_displacement: float = 0.0
    max_rotation_deg: float = 0.0
    scale_min_seen: float = NOMINAL_SCALE
    scale_max_seen: float = NOMINAL_SCALE
    yaw_initial: float = 0.0

    @classmethod
    def initial(cls, pose: ModelPose) -> "ManipMetrics":
        return cls(0.0, 0.0, pose.scale, pose.scale, pose.yaw)


def update_metrics(
    metrics: ManipMetrics, pose_before: ModelPose, pose_after: ModelPose
) -> ManipMetrics:
    """Fold one applied manipulation step into the aggregates."""
    return ManipMetrics(
        total_displacement=metrics.total_displacement
        + float(np.linalg.norm(pose_after.position - pose_before.position)),
        max_rotation_deg=max(
            metrics.max_rotation_deg, abs(math.degrees(pose_after.yaw - metrics.yaw_initial))
        ),
        scale_min_seen=min(metrics.scale_min_seen, pose_after.scale),
        scale_max_seen=max(metrics.scale_max_seen, pose_after.scale),
        yaw_initial=metrics.yaw_initial,
    )


def metrics_to_json(metrics: ManipMetrics) -> dict:
    return {
        "total_displacement_nominal": metrics.total_displacement,
        "max_rotation_deg": metrics.max_rotation_deg,
        "scale_min": metrics.scale_min_seen,
        "scale_max": metrics.scale_max_seen,
    }


def write_metrics(metrics: ManipMetrics, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(metrics_to_json(metrics), indent=2, sort_keys=True))
        f.write("\n")
