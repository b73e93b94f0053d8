/**
 * Browser entry point: connects to the engine service, streams input frames,
 * renders incoming snapshots. The engine address comes from the `ws` query
 * parameter (default ws://127.0.0.1:8765).
 */

import { OrbitCamera } from "./camera.js";
import { IDLE_CHORD, InputMapper, MENU_BUTTONS, type KeyChord, type MenuLabel } from "./input.js";
import { parseServerMessage, type HelloJson, type SnapshotJson } from "./protocol.js";
import { buildScene, meshEdges, paint } from "./render.js";

const FRAME_INTERVAL_MS = 50;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function wsUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("ws") ?? "ws://127.0.0.1:8765";
}

class InspectorApp {
  private readonly canvas = el<HTMLCanvasElement>("scene");
  private readonly ctx = this.canvas.getContext("2d")!;
  private readonly hudBox = el<HTMLPreElement>("hud");
  private readonly banner = el<HTMLDivElement>("banner");
  private readonly menuBox = el<HTMLDivElement>("menu");
  private readonly modeBox = el<HTMLDivElement>("mode");

  private readonly camera = new OrbitCamera();
  private readonly mapper = new InputMapper();
  private readonly keys: KeyChord = { ...IDLE_CHORD };
  private pointer = { x: 0, y: 0 };
  private orbiting = false;
  private lastMouse = { x: 0, y: 0 };

  private socket: WebSocket | null = null;
  private hello: HelloJson | null = null;
  private edges: [number, number][] = [];
  private snapshot: SnapshotJson | null = null;
  private pending: object[] = [];
  private clock = 0;

  start(): void {
    this.buildMenu();
    this.bindInput();
    this.connect();
    window.setInterval(() => this.tick(), FRAME_INTERVAL_MS);
    const draw = () => {
      this.render();
      requestAnimationFrame(draw);
    };
    requestAnimationFrame(draw);
  }

  private connect(): void {
    const socket = new WebSocket(wsUrl());
    this.socket = socket;
    socket.onmessage = (event) => {
      const msg = parseServerMessage(String(event.data));
      if (msg.type === "hello") {
        this.hello = msg;
        this.edges = meshEdges(msg.mesh);
        this.banner.textContent = "";
      } else if (msg.type === "snapshot") {
        this.snapshot = msg;
      } else {
        this.banner.textContent = `engine error: ${msg.message}`;
      }
    };
    socket.onclose = () => {
      this.banner.textContent = "disconnected - reload to retry";
    };
    socket.onerror = () => {
      this.banner.textContent = `cannot reach engine at ${wsUrl()}`;
    };
  }

  private buildMenu(): void {
    for (const label of MENU_BUTTONS) {
      const button = document.createElement("button");
      button.textContent = label;
      button.onclick = () => this.pressMenu(label);
      this.menuBox.appendChild(button);
    }
    this.menuBox.style.display = "none";
  }

  private bindInput(): void {
    this.canvas.addEventListener("mousemove", (e) => {
      const rect = this.canvas.getBoundingClientRect();
      this.pointer = { x: e.clientX - rect.left, y: e.clientY - rect.top };
      if (this.orbiting) {
        this.camera.orbit(
          (e.clientX - this.lastMouse.x) * -0.008,
          (e.clientY - this.lastMouse.y) * 0.008,
        );
      }
      this.lastMouse = { x: e.clientX, y: e.clientY };
    });
    this.canvas.addEventListener("mousedown", (e) => {
      if (e.button === 2) this.orbiting = true;
    });
    window.addEventListener("mouseup", () => (this.orbiting = false));
    this.canvas.addEventListener("contextmenu", (e) => e.preventDefault());
    this.canvas.addEventListener("wheel", (e) => {
      this.camera.zoom(e.deltaY > 0 ? 1.1 : 1 / 1.1);
      e.preventDefault();
    });

    const setKey = (code: string, down: boolean) => {
      if (code === "KeyP") this.keys.pinch = down;
      else if (code === "KeyD") this.keys.doublePinch = down;
      else if (code === "KeyU") this.keys.thumbsUp = down;
      else if (code === "KeyM") {
        this.keys.palmMenu = down;
        this.menuBox.style.display = down ? "flex" : "none";
      } else if (code === "Tab" && down) {
        this.mapper.activeHand = this.mapper.activeHand === "left" ? "right" : "left";
      } else if (code === "BracketLeft" && down) this.mapper.cursorDepth *= 0.9;
      else if (code === "BracketRight" && down) this.mapper.cursorDepth *= 1.1;
    };
    window.addEventListener("keydown", (e) => {
      setKey(e.code, true);
      if (e.code === "Tab") e.preventDefault();
    });
    window.addEventListener("keyup", (e) => setKey(e.code, false));
  }

  private pressMenu(label: MenuLabel): void {
    const frames = this.mapper.menuPressFrames(this.clock, FRAME_INTERVAL_MS, label, this.camera);
    this.clock += 2 * FRAME_INTERVAL_MS;
    this.pending.push(...frames);
  }

  private tick(): void {
    if (!this.socket || this.socket.readyState !== WebSocket.OPEN) return;
    while (this.pending.length > 0) {
      this.socket.send(JSON.stringify(this.pending.shift()));
    }
    const frame = this.mapper.mapFrame(
      this.clock,
      this.camera,
      this.canvas.width,
      this.canvas.height,
      this.pointer,
      this.keys,
    );
    this.clock += FRAME_INTERVAL_MS;
    this.socket.send(JSON.stringify(frame));
  }

  private render(): void {
    if (!this.snapshot || !this.hello) return;
    const scene = buildScene(
      this.snapshot,
      this.hello,
      this.edges,
      this.camera,
      this.canvas.width,
      this.canvas.height,
    );
    paint(this.ctx, scene, this.canvas.width, this.canvas.height);
    this.hudBox.textContent = scene.hud.join("\n");
    this.modeBox.textContent =
      `${scene.mode}${scene.helpVisible ? " | help" : ""} | hand: ${this.mapper.activeHand}` +
      ` | P pinch  D double  U release  M menu  Tab hand  [ ] depth`;
  }
}

new InspectorApp().start();
