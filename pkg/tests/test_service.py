import json
import threading

import pytest
from websockets.sync.client import connect

from meshinspect.service import serve_session
from meshinspect.session import Session, replay
from tests.conftest import box_stream

RECV_TIMEOUT = 10


@pytest.fixture
def live(make_config):
    config = make_config(name="live")
    service = serve_session(Session(config), "127.0.0.1", 0)
    thread = threading.Thread(target=service.serve_forever, daemon=True)
    thread.start()
    host, port = service.address
    yield f"ws://{host}:{port}", config
    service.shutdown()
    thread.join(timeout=5)


def recv_json(conn):
    return json.loads(conn.recv(timeout=RECV_TIMEOUT))


class TestService:
    def test_hello_carries_mesh_grid_and_config(self, live):
        uri, _ = live
        with connect(uri) as conn:
            hello = recv_json(conn)
        assert hello["type"] == "hello"
        assert len(hello["mesh"]["vertices"]) == 8
        assert len(hello["mesh"]["triangles"]) == 12
        assert hello["grid"]["enabled"] and len(hello["grid"]["points"]) > 0
        assert hello["config"]["default_scale"] == 0.05

    def test_snapshot_per_frame_and_final_ruler(self, live):
        uri, _ = live
        frames = box_stream(connections=[(0, 1)])
        with connect(uri) as conn:
            recv_json(conn)  # hello
            snapshots = []
            for frame in frames:
                conn.send(json.dumps(frame))
                snapshots.append(recv_json(conn))
        assert len(snapshots) == len(frames)
        last = snapshots[-1]
        assert [r["length_m"] for r in last["rulers"]] == [7.128]
        assert last["hud"]["entries"][-1]["length"] == "7.128"

    def test_observers_see_identical_sequences(self, live):
        uri, _ = live
        frames = box_stream(connections=[(0, 1)])
        with connect(uri) as obs1, connect(uri) as obs2, connect(uri) as driver:
            for conn in (obs1, obs2, driver):
                recv_json(conn)  # hello each
            for frame in frames:
                driver.send(json.dumps(frame))
                driver.recv(timeout=RECV_TIMEOUT)
            seq1 = [obs1.recv(timeout=RECV_TIMEOUT) for _ in frames]
            seq2 = [obs2.recv(timeout=RECV_TIMEOUT) for _ in frames]
        assert seq1 == seq2
        assert json.loads(seq1[-1])["log_seq"] == 1

    def test_malformed_message_closes_but_preserves_state(self, live):
        uri, config = live
        frames = box_stream(connections=[(0, 1)])
        with connect(uri) as bad:
            recv_json(bad)
            bad.send("{this is not json")
            error = recv_json(bad)
            assert error["type"] == "error"
        log_before = open(config.log_path).read()
        with connect(uri) as good:
            recv_json(good)
            for frame in frames:
                good.send(json.dumps(frame))
                recv_json(good)
        log_after = open(config.log_path).read()
        assert log_before.count("CREATED") == 0
        assert log_after.count("CREATED") == 1

    def test_out_of_order_frame_rejected_without_state_change(self, live):
        uri, config = live
        frames = box_stream(connections=[(0, 1)])
        with connect(uri) as conn:
            recv_json(conn)
            conn.send(json.dumps(frames[5]))  # t_ms = 250
            recv_json(conn)
            early = dict(frames[0])  # t_ms = 0 now violates ordering
            conn.send(json.dumps(early))
            error = recv_json(conn)
            assert error["type"] == "error"

    def test_live_run_matches_offline_replay(self, live, make_config, tmp_path):
        uri, live_config = live
        frames = box_stream()
        with connect(uri) as conn:
            recv_json(conn)
            for frame in frames:
                conn.send(json.dumps(frame))
                recv_json(conn)
        live_log = open(live_config.log_path, "rb").read()
        live_metrics = open(live_config.metrics_path, "rb").read()

        offline = make_config(name="offline")
        frames_path = tmp_path / "stream.jsonl"
        frames_path.write_text("".join(json.dumps(f) + "\n" for f in frames))
        replay(offline, str(frames_path))
        assert open(offline.log_path, "rb").read() == live_log
        assert open(offline.metrics_path, "rb").read() == live_metrics
