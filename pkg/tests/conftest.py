import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from meshinspect.config import SessionConfig
from meshinspect.mesh import mesh_to_obj
from meshinspect.pose import reset_pose
from meshinspect.scripting import corner_measurement_stream
from meshinspect.shapes import box_mesh

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

BOX_CORNERS = [(0.0, 0.0, 0.0), (0.0, 7.128, 0.0), (10.443, 0.0, 0.0)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def make_config(tmp_path):
    """Config factory over a synthetic box mesh written into the test dir."""

    def make(width=10.443, height=7.128, depth=2.0, name="box", **overrides):
        mesh_path = tmp_path / f"{name}.obj"
        mesh_path.write_text(mesh_to_obj(box_mesh(width, height, depth)))
        settings = dict(
            mesh_path=str(mesh_path),
            grid_step=0.5,
            point_radius=0.25,
            snap_radius=0.75,
            log_path=str(tmp_path / f"{name}_log.csv"),
            metrics_path=str(tmp_path / f"{name}_metrics.json"),
        )
        settings.update(overrides)
        return SessionConfig(**settings)

    return make


def box_stream(connections=((0, 1), (0, 2))):
    """Scripted corner-measurement session against the default box fixture."""
    pose = reset_pose(scale=0.05)
    return corner_measurement_stream(pose, BOX_CORNERS, list(connections))
