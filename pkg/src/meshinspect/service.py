"""WebSocket service: input frames in, snapshot broadcasts out.

Each connection first receives a hello message (mesh, grid dump, config
echo). Every client message must be one InputFrame record; the engine applies
frames under a single lock, so exactly one frame is in flight, and the
resulting snapshot is broadcast to every connection in a fixed order. Live
runs therefore produce the same measurement log as an offline replay of the
same stream.
"""

from __future__ import annotations

import json
import logging
import threading

from websockets.sync.server import Server, ServerConnection, serve

from meshinspect.pose import write_metrics
from meshinspect.session import FrameOrderError, Session, frame_from_json

logger = logging.getLogger(__name__)


class EngineService:
    """Wraps one session behind a broadcast WebSocket endpoint."""

    def __init__(self, session: Session, host: str = "127.0.0.1", port: int = 0):
        self._session = session
        self._lock = threading.Lock()
        self._clients: dict[ServerConnection, None] = {}  # insertion-ordered set
        self._server: Server = serve(self._handle, host, port)

    @property
    def address(self) -> tuple[str, int]:
        host, port = self._server.socket.getsockname()[:2]
        return host, port

    def serve_forever(self) -> None:
        self._server.serve_forever()

    def shutdown(self) -> None:
        with self._lock:
            self._session.finish()
        self._server.shutdown()

    # -- connection handling -------------------------------------------------

    def _handle(self, conn: ServerConnection) -> None:
        with self._lock:
            conn.send(json.dumps(self._session.hello_json()))
            self._clients[conn] = None
        try:
            for message in conn:
                if not self._apply_message(conn, message):
                    break
        except Exception:
            logger.debug("connection dropped", exc_info=True)
        finally:
            with self._lock:
                self._clients.pop(conn, None)

    def _apply_message(self, conn: ServerConnection, message) -> bool:
        """Apply one frame; returns False when the connection must close."""
        with self._lock:
            try:
                frame = frame_from_json(json.loads(message))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                self._send_error(conn, f"malformed frame: {exc}")
                return False
            try:
                snapshot = self._session.apply_input_frame(frame)
            except FrameOrderError as exc:
                self._send_error(conn, str(exc))
                return False
            # keep the on-disk metrics current so a live run and an offline
            # replay of the same stream end with identical files
            write_metrics(self._session.metrics, self._session.config.metrics_path)
            payload = json.dumps(snapshot.to_json())
            for client in list(self._clients):
                try:
                    client.send(payload)
                except Exception:
                    self._clients.pop(client, None)
        return True

    @staticmethod
    def _send_error(conn: ServerConnection, message: str) -> None:
        try:
            conn.send(json.dumps({"type": "error", "message": message}))
            conn.close()
        except Exception:
            pass


def serve_session(
    session: Session, host: str = "127.0.0.1", port: int = 0
) -> EngineService:
    """Bind the service; call ``serve_forever`` (typically in a thread) to run it."""
    return EngineService(session, host, port)
