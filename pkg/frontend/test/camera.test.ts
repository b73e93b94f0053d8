import assert from "node:assert/strict";
import test from "node:test";

import { OrbitCamera, norm, sub } from "../src/camera.js";
import type { Vec3 } from "../src/protocol.js";

test("project and unproject are inverse at the same depth", () => {
  const camera = new OrbitCamera();
  camera.target = [0.2, -0.1, 0.4];
  camera.yaw = 0.7;
  camera.pitch = -0.2;
  camera.distance = 3.1;
  const points: Vec3[] = [
    [0, 0, 0],
    [0.5, 0.25, -0.75],
    [-1, 2, 0.5],
  ];
  for (const p of points) {
    const proj = camera.project(p, 1280, 800);
    assert.ok(proj, "point should be in front of the camera");
    const back = camera.unproject(proj.x, proj.y, proj.depth, 1280, 800);
    assert.ok(norm(sub(back, p)) < 1e-9);
  }
});

test("points behind the camera do not project", () => {
  const camera = new OrbitCamera();
  camera.target = [0, 0, 0];
  camera.distance = 2;
  const behind: Vec3 = [
    camera.position[0] * 2,
    camera.position[1] * 2,
    camera.position[2] * 2,
  ];
  assert.equal(camera.project(behind, 640, 480), null);
});

test("lookAt keeps the camera position and aims the forward axis", () => {
  const camera = new OrbitCamera();
  const before = camera.position;
  const target: Vec3 = [1, 0.5, -2];
  camera.lookAt(target);
  assert.ok(norm(sub(camera.position, before)) < 1e-12);
  const toTarget = sub(target, camera.position);
  const aligned =
    toTarget[0] * camera.forward[0] +
    toTarget[1] * camera.forward[1] +
    toTarget[2] * camera.forward[2];
  assert.ok(Math.abs(aligned - norm(toTarget)) < 1e-9);
});

test("forward is always unit length", () => {
  const camera = new OrbitCamera();
  for (const [yaw, pitch] of [
    [0, 0],
    [1.2, 0.8],
    [-2.5, -1.1],
  ]) {
    camera.yaw = yaw;
    camera.pitch = pitch;
    assert.ok(Math.abs(norm(camera.forward) - 1) < 1e-12);
  }
});
