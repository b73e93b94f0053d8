#!/usr/bin/env python3
"""Write the box measurement fixture: mesh, config and scripted frame stream.

The box is 10.443 m wide and 7.128 m high; the scripted session snaps markers
onto three corners and connects a height ruler and a width ruler. Replaying
the stream must log exactly 7.128 and 10.443.

Usage: python scripts/make_box_fixture.py [out_dir] [--replay]
"""

import argparse
import os
import sys

from meshinspect.cli import main as cli_main
from meshinspect.mesh import mesh_to_obj
from meshinspect.pose import reset_pose
from meshinspect.scripting import corner_measurement_stream, write_frames
from meshinspect.shapes import box_mesh

WIDTH, HEIGHT, DEPTH = 10.443, 7.128, 2.0
CORNERS = [(0.0, 0.0, 0.0), (0.0, HEIGHT, 0.0), (WIDTH, 0.0, 0.0)]

CONFIG_TEXT = """\
# box fixture: coarse grid, corners land on lattice points by construction
grid_step = 0.5
point_radius = 0.25
snap_radius = 0.75
"""


def make_fixture(out_dir: str) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "mesh": os.path.join(out_dir, "box.obj"),
        "config": os.path.join(out_dir, "engine.cfg"),
        "frames": os.path.join(out_dir, "stream.jsonl"),
        "log": os.path.join(out_dir, "measurements.csv"),
        "metrics": os.path.join(out_dir, "metrics.json"),
    }
    with open(paths["mesh"], "w", encoding="utf-8") as f:
        f.write(mesh_to_obj(box_mesh(WIDTH, HEIGHT, DEPTH)))
    with open(paths["config"], "w", encoding="utf-8") as f:
        f.write(CONFIG_TEXT)
    frames = corner_measurement_stream(reset_pose(scale=0.05), CORNERS, [(0, 1), (0, 2)])
    write_frames(paths["frames"], frames)
    return paths


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", nargs="?", default="fixtures/box")
    parser.add_argument("--replay", action="store_true", help="run the replay afterwards")
    args = parser.parse_args()

    paths = make_fixture(args.out_dir)
    print(f"fixture written to {args.out_dir}")
    if args.replay:
        code = cli_main(
            [
                "replay",
                "--mesh", paths["mesh"],
                "--frames", paths["frames"],
                "--config", paths["config"],
                "--log", paths["log"],
                "--metrics", paths["metrics"],
            ]
        )
        if code != 0:
            return code
        print(open(paths["log"]).read())
    return 0


if __name__ == "__main__":
    sys.exit(main())
