"""Deterministic inspection engine for georeferenced triangle meshes.

Replayable input-frame streams drive gesture classification, model
manipulation, snap-assisted marker placement and Euclidean dimension
measurement. The engine is headless; a browser client can attach over a
WebSocket snapshot feed.
"""

from meshinspect.mesh import (
    Aabb,
    EmptyMesh,
    ParseError,
    TriangleMesh,
    mesh_aabb,
    mesh_to_obj,
    parse_obj,
    point_triangle_distance,
)
from meshinspect.snapgrid import NonPositiveParameter, SnapGrid, generate_snap_grid, snap_query
from meshinspect.gestures import GazeRay, GestureConfig, GestureSet, HandFrame, Mode
from meshinspect.pose import ManipMetrics, ModelPose, local_to_world, world_to_local
from meshinspect.config import ConfigError, SessionConfig
from meshinspect.session import FrameOrderError, InputFrame, ReplayError, Session, Snapshot, replay

__version__ = "0.1.0"
