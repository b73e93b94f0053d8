"""Session configuration: defaults, validation and the key=value config file."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Optional


from meshinspect.gestures import GestureConfig
from meshinspect.pose import NOMINAL_SCALE, SCALE_MAX_DEFAULT, SCALE_MIN_DEFAULT


class ConfigError(ValueError):
    """Bad configuration value or unknown key."""


@dataclass
class SessionConfig:
    """Everything a session needs besides the frame stream.

    Grid parameters left as None are derived from the mesh at startup:
    step = max AABB extent / 50, point_radius = step / 2,
    snap_radius = 1.5 * step.
    """

    mesh_path: str
    meters_per_model_unit: float = 1.0
    default_position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    default_yaw: float = 0.0
    default_scale: float = NOMINAL_SCALE
    grid_step: Optional[float] = None
    point_radius: Optional[float] = None
    snap_radius: Optional[float] = None
    snapping_enabled: bool = True
    gestures: GestureConfig = field(default_factory=GestureConfig)
    drag_gain: float = 1.0
    scale_min: float = SCALE_MIN_DEFAULT
    scale_max: float = SCALE_MAX_DEFAULT
    hover_reach: float = 0.15
    marker_radius: float = 0.05
    log_path: str = "measurements.csv"
    metrics_path: str = "metrics.json"

    def validate(self) -> None:
        if not self.mesh_path:
            raise ConfigError("mesh_path must be set")
        if not self.log_path or not self.metrics_path:
            raise ConfigError("log_path and metrics_path must be non-empty")
        positives = {
            "meters_per_model_unit": self.meters_per_model_unit,
            "default_scale": self.default_scale,
            "drag_gain": self.drag_gain,
            "scale_min": self.scale_min,
            "scale_max": self.scale_max,
            "hover_reach": self.hover_reach,
            "marker_radius": self.marker_radius,
        }
        for name in ("grid_step", "point_radius", "snap_radius"):
            value = getattr(self, name)
            if value is not None:
                positives[name] = value
        for name, value in positives.items():
            if not value > 0.0:
                raise ConfigError(f"{name} must be > 0 (got {value})")
        if self.scale_min > self.scale_max:
            raise ConfigError("scale_min must not exceed scale_max")
        if not self.scale_min <= self.default_scale <= self.scale_max:
            raise ConfigError("default_scale must lie within [scale_min, scale_max]")


_GESTURE_KEYS = {f.name for f in fields(GestureConfig)}

_FLOAT_KEYS = {
    "meters_per_model_unit",
    "default_yaw",
    "default_scale",
    "grid_step",
    "point_radius",
    "snap_radius",
    "drag_gain",
    "scale_min",
    "scale_max",
    "hover_reach",
    "marker_radius",
}

_BOOL_KEYS = {"snapping_enabled"}
_PATH_KEYS = {"log_path", "metrics_path", "mesh_path"}


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in _FLOAT_KEYS or key in _GESTURE_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} needs a number") from None
        elif key in _BOOL_KEYS:
            if value.lower() not in ("true", "false"):
                raise ConfigError(f"line {lineno}: {key} needs true or false")
            values[key] = value.lower() == "true"
        elif key == "default_position":
            parts = value.split()
            if len(parts) != 3:
                raise ConfigError(f"line {lineno}: default_position needs three numbers")
            try:
                values[key] = tuple(float(p) for p in parts)
            except ValueError:
                raise ConfigError(f"line {lineno}: default_position needs numbers") from None
        elif key in _PATH_KEYS:
            values[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return values


def load_config(
    mesh_path: str,
    config_path: Optional[str] = None,
    log_path: Optional[str] = None,
    metrics_path: Optional[str] = None,
) -> SessionConfig:
    """Build a validated SessionConfig from an optional config file plus overrides."""
    values: dict = {}
    if config_path is not None:
        with open(config_path, "r", encoding="utf-8") as f:
            values = parse_config_text(f.read())

    gesture_overrides = {k: values.pop(k) for k in list(values) if k in _GESTURE_KEYS}
    values.pop("mesh_path", None)  # the CLI flag wins
    cfg = SessionConfig(mesh_path=mesh_path, **values)
    if gesture_overrides:
        cfg = replace(cfg, gestures=replace(cfg.gestures, **gesture_overrides))
    if log_path is not None:
        cfg = replace(cfg, log_path=log_path)
    if metrics_path is not None:
        cfg = replace(cfg, metrics_path=metrics_path)
    cfg.validate()
    return cfg


def derived_grid_parameters(cfg: SessionConfig, max_extent: float) -> tuple[float, float, float]:
    """Resolve (step, point_radius, snap_radius), deriving unset ones from the mesh."""
    step = cfg.grid_step if cfg.grid_step is not None else max_extent / 50.0
    point_radius = cfg.point_radius if cfg.point_radius is not None else step / 2.0
    snap_radius = cfg.snap_radius if cfg.snap_radius is not None else 1.5 * step
    return step, point_radius, snap_radius
