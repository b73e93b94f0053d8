/** Orbit camera around a target point plus the pixel <-> ray math. */

import type { Vec3 } from "./protocol.js";

export function add(a: Vec3, b: Vec3): Vec3 {
  return [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
}

export function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

export function scale(a: Vec3, s: number): Vec3 {
  return [a[0] * s, a[1] * s, a[2] * s];
}

export function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export function norm(a: Vec3): number {
  return Math.hypot(a[0], a[1], a[2]);
}

export function normalize(a: Vec3): Vec3 {
  const n = norm(a);
  if (n === 0) throw new Error("cannot normalize a zero vector");
  return scale(a, 1 / n);
}

export class OrbitCamera {
  target: Vec3 = [0, 0, 0];
  yaw = 0.3; // radians around world +Y
  pitch = 0.25; // radians above the horizon
  distance = 2.0;
  fovY = Math.PI / 3;

  get position(): Vec3 {
    const cp = Math.cos(this.pitch);
    return add(this.target, [
      this.distance * cp * Math.sin(this.yaw),
      this.distance * Math.sin(this.pitch),
      this.distance * cp * Math.cos(this.yaw),
    ]);
  }

  get forward(): Vec3 {
    return normalize(sub(this.target, this.position));
  }

  basis(): { right: Vec3; up: Vec3; forward: Vec3 } {
    const forward = this.forward;
    const right = normalize(cross(forward, [0, 1, 0]));
    const up = cross(right, forward);
    return { right, up, forward };
  }

  lookAt(point: Vec3): void {
    const rel = sub(this.position, point);
    this.target = point;
    this.distance = norm(rel);
    this.pitch = Math.asin(rel[1] / this.distance);
    this.yaw = Math.atan2(rel[0], rel[2]);
  }

  orbit(dYaw: number, dPitch: number): void {
    this.yaw += dYaw;
    this.pitch = Math.min(1.5, Math.max(-1.5, this.pitch + dPitch));
  }

  zoom(factor: number): void {
    this.distance = Math.min(100, Math.max(0.05, this.distance * factor));
  }

  /** World point -> canvas pixel, or null when behind the camera. */
  project(p: Vec3, width: number, height: number): { x: number; y: number; depth: number } | null {
    const { right, up, forward } = this.basis();
    const rel = sub(p, this.position);
    const z = rel[0] * forward[0] + rel[1] * forward[1] + rel[2] * forward[2];
    if (z <= 1e-6) return null;
    const x = rel[0] * right[0] + rel[1] * right[1] + rel[2] * right[2];
    const y = rel[0] * up[0] + rel[1] * up[1] + rel[2] * up[2];
    const t = Math.tan(this.fovY / 2);
    const aspect = width / height;
    return {
      x: (x / (z * t * aspect) + 1) * 0.5 * width,
      y: (1 - y / (z * t)) * 0.5 * height,
      depth: z,
    };
  }

  /** Canvas pixel -> world point at `depth` along the pixel ray (inverse of project). */
  unproject(px: number, py: number, depth: number, width: number, height: number): Vec3 {
    const { right, up, forward } = this.basis();
    const t = Math.tan(this.fovY / 2);
    const aspect = width / height;
    const ndcX = (px / width) * 2 - 1;
    const ndcY = 1 - (py / height) * 2;
    const dir = add(
      forward,
      add(scale(right, ndcX * t * aspect), scale(up, ndcY * t)),
    );
    return add(this.position, scale(dir, depth));
  }
}
