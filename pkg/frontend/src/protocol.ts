/**
 * Wire types shared with the engine: hello, snapshots, input frames.
 * The client only reads snapshot state; it never recomputes lengths, snaps
 * or mode transitions on its own.
 */

export type Vec3 = [number, number, number];

export interface HandJson {
  palm_center: Vec3;
  palm_normal: Vec3;
  thumb_tip: Vec3;
  index_tip: Vec3;
  thumb_dir: Vec3;
  index_curl: number;
}

export interface InputFrameJson {
  t_ms: number;
  head: { position: Vec3; forward: Vec3 };
  left: HandJson | null;
  right: HandJson | null;
}

export interface HudEntryJson {
  event: string;
  ruler_id: number;
  length: string;
}

export interface SnapshotJson {
  type: "snapshot";
  t_ms: number;
  mode: string;
  help_visible: boolean;
  pose: { position: Vec3; yaw: number; scale: number };
  markers: { id: number; position: Vec3; halo: string }[];
  rulers: { id: number; a: number; b: number; length_m: number }[];
  hud: { scale: string; entries: HudEntryJson[] };
  snap_points: Vec3[];
  gestures: Record<string, boolean>;
  log_seq: number;
}

export interface HelloJson {
  type: "hello";
  mesh: { vertices: Vec3[]; triangles: [number, number, number][] };
  grid: {
    enabled: boolean;
    points: Vec3[];
    step: number | null;
    point_radius: number | null;
    snap_radius: number | null;
  };
  config: Record<string, unknown>;
}

export interface ErrorJson {
  type: "error";
  message: string;
}

export type ServerMessage = HelloJson | SnapshotJson | ErrorJson;

export function parseServerMessage(raw: string): ServerMessage {
  const msg = JSON.parse(raw) as ServerMessage;
  if (msg.type !== "hello" && msg.type !== "snapshot" && msg.type !== "error") {
    throw new Error(`unknown server message type: ${(msg as { type: string }).type}`);
  }
  return msg;
}

/** HUD text block: model scale first, then up to three latest measurements. */
export function hudLines(snapshot: SnapshotJson): string[] {
  const lines = [`scale ${snapshot.hud.scale}`];
  for (const entry of snapshot.hud.entries) {
    lines.push(`#${entry.ruler_id} ${entry.length} m (${entry.event.toLowerCase()})`);
  }
  return lines;
}

/** Halo color conventions: left hand blue, right hand red, selection green. */
export function haloColor(halo: string): string | null {
  switch (halo) {
    case "hover_left":
      return "#3b6fe0";
    case "hover_right":
      return "#e03b3b";
    case "selected":
      return "#27c24c";
    default:
      return null;
  }
}
