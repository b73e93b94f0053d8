import assert from "node:assert/strict";
import test from "node:test";

import { haloColor, hudLines, parseServerMessage, type SnapshotJson } from "../src/protocol.js";

export function snapshotFixture(overrides: Partial<SnapshotJson> = {}): SnapshotJson {
  return {
    type: "snapshot",
    t_ms: 100,
    mode: "measure",
    help_visible: false,
    pose: { position: [0, 0, 0], yaw: 0, scale: 0.05 },
    markers: [],
    rulers: [],
    hud: { scale: "0.050", entries: [] },
    snap_points: [],
    gestures: {},
    log_seq: 0,
    ...overrides,
  };
}

test("parses snapshot and hello, rejects unknown types", () => {
  const snap = parseServerMessage(JSON.stringify(snapshotFixture()));
  assert.equal(snap.type, "snapshot");
  assert.throws(() => parseServerMessage(JSON.stringify({ type: "mystery" })));
});

test("hud shows only scale when there are no measurements", () => {
  const lines = hudLines(snapshotFixture());
  assert.deepEqual(lines, ["scale 0.050"]);
});

test("hud lists the measurement entries after the scale", () => {
  const snap = snapshotFixture({
    hud: {
      scale: "0.011",
      entries: [
        { event: "CREATED", ruler_id: 1, length: "7.128" },
        { event: "UPDATED", ruler_id: 1, length: "7.228" },
      ],
    },
  });
  const lines = hudLines(snap);
  assert.equal(lines[0], "scale 0.011");
  assert.equal(lines[1], "#1 7.128 m (created)");
  assert.equal(lines[2], "#1 7.228 m (updated)");
});

test("halo colors follow the left-blue right-red selected-green convention", () => {
  assert.equal(haloColor("hover_left"), "#3b6fe0");
  assert.equal(haloColor("hover_right"), "#e03b3b");
  assert.equal(haloColor("selected"), "#27c24c");
  assert.equal(haloColor("none"), null);
});
