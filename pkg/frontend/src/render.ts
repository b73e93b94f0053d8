/**
 * Snapshot rendering. Scene building is pure (testable without a DOM):
 * it turns the latest snapshot plus the hello geometry into 2D primitives;
 * `paint` then draws them on a canvas. Everything shown comes from the
 * snapshot - the client never simulates engine rules.
 */

import { OrbitCamera } from "./camera.js";
import { haloColor, hudLines, type HelloJson, type SnapshotJson, type Vec3 } from "./protocol.js";

export interface SceneLine {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  width: number;
}

export interface SceneDot {
  x: number;
  y: number;
  radius: number;
  color: string;
  ring?: string;
}

export interface SceneLabel {
  x: number;
  y: number;
  text: string;
  color: string;
}

export interface Scene {
  lines: SceneLine[];
  dots: SceneDot[];
  labels: SceneLabel[];
  hud: string[];
  crosshair: { x: number; y: number; color: string };
  mode: string;
  helpVisible: boolean;
}

const MESH_COLOR = "#7a7f88";
const SNAP_COLOR = "#9a9a9a";
const MARKER_COLOR = "#27c24c";
const RULER_COLOR = "#f2c94c";
const CROSSHAIR_COLOR = "#ff8c1a";

function transformLocal(p: Vec3, pose: SnapshotJson["pose"]): Vec3 {
  const c = Math.cos(pose.yaw);
  const s = Math.sin(pose.yaw);
  const x = p[0] * pose.scale;
  const y = p[1] * pose.scale;
  const z = p[2] * pose.scale;
  return [
    c * x + s * z + pose.position[0],
    y + pose.position[1],
    -s * x + c * z + pose.position[2],
  ];
}

/** Unique undirected mesh edges, computed once per hello. */
export function meshEdges(mesh: HelloJson["mesh"]): [number, number][] {
  const seen = new Set<string>();
  const edges: [number, number][] = [];
  for (const [a, b, c] of mesh.triangles) {
    for (const [i, j] of [
      [a, b],
      [b, c],
      [c, a],
    ] as [number, number][]) {
      const key = i < j ? `${i}:${j}` : `${j}:${i}`;
      if (!seen.has(key)) {
        seen.add(key);
        edges.push(i < j ? [i, j] : [j, i]);
      }
    }
  }
  return edges;
}

export function buildScene(
  snapshot: SnapshotJson,
  hello: HelloJson,
  edges: [number, number][],
  camera: OrbitCamera,
  width: number,
  height: number,
): Scene {
  const scene: Scene = {
    lines: [],
    dots: [],
    labels: [],
    hud: hudLines(snapshot),
    crosshair: { x: width / 2, y: height / 2, color: CROSSHAIR_COLOR },
    mode: snapshot.mode,
    helpVisible: snapshot.help_visible,
  };

  const project = (p: Vec3) => camera.project(p, width, height);

  // model wireframe rides the pose reported by the snapshot
  const world = hello.mesh.vertices.map((v) => transformLocal(v, snapshot.pose));
  const projected = world.map(project);
  for (const [i, j] of edges) {
    const a = projected[i];
    const b = projected[j];
    if (a && b) {
      scene.lines.push({ x1: a.x, y1: a.y, x2: b.x, y2: b.y, color: MESH_COLOR, width: 1 });
    }
  }

  // snap points are already world-space in the snapshot; grey and small
  for (const p of snapshot.snap_points) {
    const q = project(p);
    if (q) scene.dots.push({ x: q.x, y: q.y, radius: Math.max(1, 5 / q.depth), color: SNAP_COLOR });
  }

  const markerScreen = new Map<number, { x: number; y: number; depth: number }>();
  for (const marker of snapshot.markers) {
    const q = project(marker.position);
    if (!q) continue;
    markerScreen.set(marker.id, q);
    scene.dots.push({
      x: q.x,
      y: q.y,
      radius: Math.max(3, 14 / q.depth),
      color: MARKER_COLOR,
      ring: haloColor(marker.halo) ?? undefined,
    });
  }

  for (const ruler of snapshot.rulers) {
    const a = markerScreen.get(ruler.a);
    const b = markerScreen.get(ruler.b);
    if (!a || !b) continue;
    scene.lines.push({ x1: a.x, y1: a.y, x2: b.x, y2: b.y, color: RULER_COLOR, width: 2 });
    scene.labels.push({
      x: (a.x + b.x) / 2,
      y: (a.y + b.y) / 2 - 6,
      text: `${ruler.length_m.toFixed(3)} m`,
      color: RULER_COLOR,
    });
  }

  return scene;
}

export function paint(ctx: CanvasRenderingContext2D, scene: Scene, width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#14161a";
  ctx.fillRect(0, 0, width, height);

  for (const line of scene.lines) {
    ctx.strokeStyle = line.color;
    ctx.lineWidth = line.width;
    ctx.beginPath();
    ctx.moveTo(line.x1, line.y1);
    ctx.lineTo(line.x2, line.y2);
    ctx.stroke();
  }
  for (const dot of scene.dots) {
    ctx.fillStyle = dot.color;
    ctx.beginPath();
    ctx.arc(dot.x, dot.y, dot.radius, 0, Math.PI * 2);
    ctx.fill();
    if (dot.ring) {
      ctx.strokeStyle = dot.ring;
      ctx.lineWidth = 2.5;
      ctx.beginPath();
      ctx.arc(dot.x, dot.y, dot.radius + 3, 0, Math.PI * 2);
      ctx.stroke();
    }
  }
  ctx.font = "12px system-ui, sans-serif";
  for (const label of scene.labels) {
    ctx.fillStyle = label.color;
    ctx.fillText(label.text, label.x, label.y);
  }

  const { x, y, color } = scene.crosshair;
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(x - 8, y);
  ctx.lineTo(x + 8, y);
  ctx.moveTo(x, y - 8);
  ctx.lineTo(x, y + 8);
  ctx.stroke();
}
