/**
 * Maps desk input (mouse position, chord keys, camera pose) to engine input
 * frames. The cursor lives on a camera-facing plane at an adjustable depth;
 * held keys articulate the virtual hands:
 *
 *   P pinch (active hand) - D double pinch (both hands at the cursor)
 *   U thumbs-up           - M palm-up menu
 *
 * Menu buttons are pressed by synthesizing two frames that move the virtual
 * right index finger into the button volume; the engine decides what the
 * press does and reports it back in the next snapshot.
 */

import { add, cross, normalize, OrbitCamera, scale } from "./camera.js";
import type { HandJson, InputFrameJson, Vec3 } from "./protocol.js";

export interface KeyChord {
  pinch: boolean;
  doublePinch: boolean;
  thumbsUp: boolean;
  palmMenu: boolean;
}

export const IDLE_CHORD: KeyChord = {
  pinch: false,
  doublePinch: false,
  thumbsUp: false,
  palmMenu: false,
};

export type HandSide = "left" | "right";

export const MENU_BUTTONS = ["reset", "help", "remove", "add", "manipulate"] as const;
export type MenuLabel = (typeof MENU_BUTTONS)[number];

const MENU_HOVER_OFFSET = 0.1;
const BUTTON_SIZE = 0.04;

/** Same deterministic 2x3 layout as the engine: menu anchored over the palm. */
export function menuButtonCenters(
  palmCenter: Vec3,
  palmNormal: Vec3,
): Record<MenuLabel, Vec3> {
  const n = normalize(palmNormal);
  let u = cross([0, 1, 0], n);
  const nu = Math.hypot(u[0], u[1], u[2]);
  u = nu < 1e-6 ? [1, 0, 0] : scale(u, 1 / nu);
  const v = cross(n, u);
  const pitch = 1.5 * BUTTON_SIZE;
  const centers = {} as Record<MenuLabel, Vec3>;
  MENU_BUTTONS.forEach((label, k) => {
    const row = Math.floor(k / 2);
    const col = k % 2;
    centers[label] = add(
      palmCenter,
      add(scale(n, MENU_HOVER_OFFSET), add(scale(u, (col - 0.5) * pitch), scale(v, (1 - row) * pitch))),
    );
  });
  return centers;
}

function vec(v: Vec3): Vec3 {
  return [v[0], v[1], v[2]];
}

export function pinchHand(point: Vec3): HandJson {
  return {
    palm_center: vec(point),
    palm_normal: [0, -1, 0],
    thumb_tip: vec(point),
    index_tip: vec(point),
    thumb_dir: [1, 0, 0],
    index_curl: 0.9,
  };
}

export function openHand(point: Vec3): HandJson {
  return {
    palm_center: vec(point),
    palm_normal: [0, -1, 0],
    thumb_tip: add(point, [0, 0, -0.08]),
    index_tip: add(point, [0.06, 0, -0.08]),
    thumb_dir: [1, 0, 0],
    index_curl: 0.5,
  };
}

export function thumbsUpHand(point: Vec3): HandJson {
  return { ...openHand(point), thumb_dir: [0, 1, 0], index_curl: 1.0 };
}

export function palmUpHand(center: Vec3): HandJson {
  return { ...openHand(center), palm_normal: [0, 1, 0] };
}

export function pointerHand(indexTip: Vec3): HandJson {
  return {
    palm_center: add(indexTip, [0, -0.05, 0.1]),
    palm_normal: [0, -1, 0],
    thumb_tip: add(indexTip, [-0.06, -0.03, 0.05]),
    index_tip: vec(indexTip),
    thumb_dir: [1, 0, 0],
    index_curl: 0.0,
  };
}

/** Left palm anchor sits slightly below-left of the camera, facing up. */
export function menuPalmCenter(camera: OrbitCamera): Vec3 {
  const { right, up } = camera.basis();
  return add(camera.position, add(scale(right, -0.25), scale(up, -0.2)));
}

export class InputMapper {
  activeHand: HandSide = "right";
  cursorDepth = 2.0;

  mapFrame(
    tMs: number,
    camera: OrbitCamera,
    width: number,
    height: number,
    pointer: { x: number; y: number },
    keys: KeyChord,
  ): InputFrameJson {
    const cursor = camera.unproject(pointer.x, pointer.y, this.cursorDepth, width, height);
    let left: HandJson | null = null;
    let right: HandJson | null = null;

    if (keys.doublePinch) {
      left = pinchHand(cursor);
      right = pinchHand(cursor);
    } else if (keys.pinch) {
      const hand = pinchHand(cursor);
      if (this.activeHand === "left") left = hand;
      else right = hand;
    } else if (keys.thumbsUp) {
      const hand = thumbsUpHand(cursor);
      if (this.activeHand === "left") left = hand;
      else right = hand;
    } else {
      const hand = openHand(cursor);
      if (this.activeHand === "left") left = hand;
      else right = hand;
    }

    if (keys.palmMenu) {
      left = palmUpHand(menuPalmCenter(camera));
    }

    return {
      t_ms: Math.round(tMs),
      head: {
        position: vec(camera.position),
        forward: camera.forward,
      },
      left,
      right,
    };
  }

  /** Two frames that press one menu button: approach outside, then inside. */
  menuPressFrames(
    tMs: number,
    dtMs: number,
    label: MenuLabel,
    camera: OrbitCamera,
  ): InputFrameJson[] {
    const palm = menuPalmCenter(camera);
    const centers = menuButtonCenters(palm, [0, 1, 0]);
    const outside = add(palm, [0, 0.5, 0]);
    const head = { position: vec(camera.position), forward: camera.forward };
    return [
      {
        t_ms: Math.round(tMs),
        head,
        left: palmUpHand(palm),
        right: pointerHand(outside),
      },
      {
        t_ms: Math.round(tMs + dtMs),
        head,
        left: palmUpHand(palm),
        right: pointerHand(centers[label]),
      },
    ];
  }
}
