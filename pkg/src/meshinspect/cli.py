"""Command-line entry points: replay, serve, grid.

Exit codes: 0 success, 1 input error (bad arguments, unreadable files,
malformed streams or config), 2 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from meshinspect.config import ConfigError, derived_grid_parameters, load_config
from meshinspect.mesh import EmptyMesh, ParseError, load_obj, mesh_aabb
from meshinspect.session import FrameOrderError, ReplayError, Session, replay
from meshinspect.snapgrid import NonPositiveParameter, generate_snap_grid, write_grid_dump

_INPUT_ERRORS = (
    FileNotFoundError,
    IsADirectoryError,
    PermissionError,
    ParseError,
    EmptyMesh,
    ConfigError,
    ReplayError,
    FrameOrderError,
    NonPositiveParameter,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inspect",
        description="Deterministic mesh inspection engine: replay streams, "
        "serve a live session, or dump the snapping grid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_replay = sub.add_parser("replay", help="replay a frame stream to log and metrics files")
    p_replay.add_argument("--mesh", required=True)
    p_replay.add_argument("--frames", required=True)
    p_replay.add_argument("--config", default=None)
    p_replay.add_argument("--log", required=True)
    p_replay.add_argument("--metrics", required=True)

    p_serve = sub.add_parser("serve", help="serve a live session over WebSocket")
    p_serve.add_argument("--mesh", required=True)
    p_serve.add_argument("--config", default=None)
    p_serve.add_argument("--bind", default="127.0.0.1:8765", metavar="HOST:PORT")

    p_grid = sub.add_parser("grid", help="write the snapping-grid dump for a mesh")
    p_grid.add_argument("--mesh", required=True)
    p_grid.add_argument("--config", default=None)
    p_grid.add_argument("--out", required=True)

    return parser


def _cmd_replay(args) -> int:
    config = load_config(args.mesh, args.config, log_path=args.log, metrics_path=args.metrics)
    log_path, metrics_path = replay(config, args.frames)
    print(f"log: {log_path}")
    print(f"metrics: {metrics_path}")
    return 0


def _cmd_serve(args) -> int:
    from meshinspect.service import serve_session

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ConfigError(f"--bind expects HOST:PORT, got {args.bind!r}")
    config = load_config(args.mesh, args.config)
    service = serve_session(Session(config), host, int(port_text))
    bound_host, bound_port = service.address
    print(f"listening on {bound_host}:{bound_port}", flush=True)
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        service.shutdown()
    return 0


def _cmd_grid(args) -> int:
    config = load_config(args.mesh, args.config)
    mesh = load_obj(args.mesh, config.meters_per_model_unit)
    step, point_radius, snap_radius = derived_grid_parameters(
        config, float(mesh_aabb(mesh).extents().max())
    )
    grid = generate_snap_grid(mesh, step, point_radius, snap_radius)
    write_grid_dump(grid, args.out)
    print(f"{len(grid)} snap points -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "serve":
            return _cmd_serve(args)
        return _cmd_grid(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
