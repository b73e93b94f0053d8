import assert from "node:assert/strict";
import test from "node:test";

import { OrbitCamera } from "../src/camera.js";
import { buildScene, meshEdges } from "../src/render.js";
import type { HelloJson } from "../src/protocol.js";
import { snapshotFixture } from "./protocol.test.js";

function helloFixture(snapPoints: [number, number, number][] = []): HelloJson {
  return {
    type: "hello",
    mesh: {
      vertices: [
        [0, 0, 0],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
      ],
      triangles: [
        [0, 1, 2],
        [0, 1, 3],
      ],
    },
    grid: {
      enabled: snapPoints.length > 0,
      points: snapPoints,
      step: 0.5,
      point_radius: 0.25,
      snap_radius: 0.75,
    },
    config: {},
  };
}

function scene(snapshot = snapshotFixture(), hello = helloFixture()) {
  const camera = new OrbitCamera();
  camera.distance = 4;
  return buildScene(snapshot, hello, meshEdges(hello.mesh), camera, 1280, 800);
}

test("mesh edges are deduplicated", () => {
  const hello = helloFixture();
  assert.equal(meshEdges(hello.mesh).length, 5); // two triangles sharing an edge
});

test("hud line appears for a ruler measurement", () => {
  const snap = snapshotFixture({
    markers: [
      { id: 1, position: [0, 0, 0], halo: "none" },
      { id: 2, position: [0, 0.3564, 0], halo: "none" },
    ],
    rulers: [{ id: 1, a: 1, b: 2, length_m: 7.128 }],
    hud: { scale: "0.050", entries: [{ event: "CREATED", ruler_id: 1, length: "7.128" }] },
  });
  const built = scene(snap);
  assert.ok(built.hud.includes("#1 7.128 m (created)"));
  const label = built.labels.find((l) => l.text === "7.128 m");
  assert.ok(label, "ruler length label drawn at the midpoint");
});

test("hud shows only the scale without rulers", () => {
  const built = scene(snapshotFixture({ hud: { scale: "0.050", entries: [] } }));
  assert.deepEqual(built.hud, ["scale 0.050"]);
});

test("snap points render as grey dots only when present in the snapshot", () => {
  const grey = (s: ReturnType<typeof scene>) => s.dots.filter((d) => d.color === "#9a9a9a");
  const without = scene(snapshotFixture({ snap_points: [] }));
  assert.equal(grey(without).length, 0);
  const withPoints = scene(
    snapshotFixture({ snap_points: [[0, 0, 0], [0.5, 0, 0]] }),
    helloFixture([[0, 0, 0], [0.5, 0, 0]]),
  );
  assert.equal(grey(withPoints).length, 2);
});

test("marker halos become colored rings", () => {
  const snap = snapshotFixture({
    markers: [
      { id: 1, position: [0, 0, 0], halo: "selected" },
      { id: 2, position: [0.2, 0, 0], halo: "hover_left" },
      { id: 3, position: [0.4, 0, 0], halo: "none" },
    ],
  });
  const built = scene(snap);
  const rings = built.dots.filter((d) => d.ring).map((d) => d.ring);
  assert.deepEqual(rings, ["#27c24c", "#3b6fe0"]);
});

test("crosshair sits at the canvas center", () => {
  const built = scene();
  assert.equal(built.crosshair.x, 640);
  assert.equal(built.crosshair.y, 400);
});

test("wireframe follows the snapshot pose", () => {
  const hello = helloFixture();
  const edges = meshEdges(hello.mesh);
  const camera = new OrbitCamera();
  camera.distance = 4;
  const near = buildScene(snapshotFixture(), hello, edges, camera, 1280, 800);
  const moved = buildScene(
    snapshotFixture({ pose: { position: [0.5, 0, 0], yaw: 0, scale: 0.05 } }),
    hello,
    edges,
    camera,
    1280,
    800,
  );
  assert.notDeepEqual(near.lines, moved.lines);
});
