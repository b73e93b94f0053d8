#!/usr/bin/env python3
"""End-to-end demo: build the box fixture, replay it, show log, metrics and HUD.

Usage: python scripts/demo_session.py
"""

import json
import tempfile

from make_box_fixture import make_fixture

from meshinspect.config import load_config
from meshinspect.session import Session, iter_frames


def main() -> None:
    out_dir = tempfile.mkdtemp(prefix="inspect_demo_")
    paths = make_fixture(out_dir)
    config = load_config(
        paths["mesh"], paths["config"], log_path=paths["log"], metrics_path=paths["metrics"]
    )
    session = Session(config)
    print(f"mesh: {session.mesh.triangle_count} triangles, "
          f"grid: {len(session.grid)} snap points")

    snapshot = session.last_snapshot
    for _, frame in iter_frames(paths["frames"]):
        snapshot = session.apply_input_frame(frame)
    session.finish()

    print(f"\nfinal mode: {snapshot.mode}, scale {snapshot.hud.scale_text}")
    print("HUD legend:")
    for entry in snapshot.hud.entries:
        print(f"  ruler {entry.ruler_id}: {entry.text} ({entry.event})")

    print("\nmeasurement log:")
    print(open(paths["log"]).read())
    print("metrics:")
    print(json.dumps(json.load(open(paths["metrics"])), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
