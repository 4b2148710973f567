import { SceneDocument, TrajectoryRecord, checkScene } from './types.js';
import { CanvasSize, ViewState, worldToCanvas } from './view.js';

// Structural subset of CanvasRenderingContext2D, so tests can record calls.
export interface DrawContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
}

const BACKGROUND = '#0b2231';
const SEABED = '#c6b38e';
const AGENT = '#ffd600';
const TRAIL = '#ffe97a';
const SELECTED_RING = '#ffffff';

const KIND_COLORS: Record<string, string> = {
  oyster: '#ecf0f1',
  rock: '#6c6e70',
  coral: '#e7687a',
  grass: '#58a052',
  shipwreck: '#705038',
  bluerov_static: '#3476c7',
};

// Glyph radii in meters; mirrors the simulator's bounding radii.
const KIND_RADII: Record<string, number> = {
  oyster: 0.15,
  rock: 0.5,
  coral: 0.4,
  grass: 0.3,
  shipwreck: 5.0,
  bluerov_static: 0.3,
};

// The scatter region default; purely cosmetic backdrop.
const SEABED_EXTENT = 30;

export interface RenderInfo {
  agent: { x: number; y: number };
  agentDepth: number;
  glyphCount: number;
  trailPoints: { x: number; y: number }[];
}

/**
 * Draw one frame: seabed extent, object glyphs by kind, the agent triangle
 * oriented along its yaw, and the trajectory trail. Returns where things
 * landed on the canvas so callers (and tests) can reason about the frame.
 */
export function renderSceneView(
  sceneDoc: unknown,
  trajectory: TrajectoryRecord[],
  view: ViewState,
  ctx: DrawContext,
  size: CanvasSize,
): RenderInfo {
  const scene: SceneDocument = checkScene(sceneDoc);

  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, size.width, size.height);

  const corner0 = worldToCanvas(view, size, -SEABED_EXTENT, SEABED_EXTENT);
  const corner1 = worldToCanvas(view, size, SEABED_EXTENT, -SEABED_EXTENT);
  ctx.fillStyle = SEABED;
  ctx.fillRect(corner0.x, corner0.y, corner1.x - corner0.x, corner1.y - corner0.y);

  let glyphCount = 0;
  for (const obj of scene.objects) {
    const at = worldToCanvas(view, size, obj.position[0], obj.position[1]);
    const radius = Math.max(2, (KIND_RADII[obj.kind] ?? 0.3) * view.zoom);
    ctx.beginPath();
    ctx.arc(at.x, at.y, radius, 0, Math.PI * 2);
    ctx.fillStyle = KIND_COLORS[obj.kind] ?? '#999999';
    ctx.fill();
    if (obj.id === view.selectedId) {
      ctx.beginPath();
      ctx.arc(at.x, at.y, radius + 3, 0, Math.PI * 2);
      ctx.strokeStyle = SELECTED_RING;
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
    glyphCount += 1;
  }

  const trailPoints: { x: number; y: number }[] = [];
  const window = trajectory.slice(-view.trailLength);
  if (window.length > 1) {
    ctx.beginPath();
    window.forEach((record, i) => {
      const at = worldToCanvas(view, size, record.position[0], record.position[1]);
      trailPoints.push(at);
      if (i === 0) ctx.moveTo(at.x, at.y);
      else ctx.lineTo(at.x, at.y);
    });
    ctx.strokeStyle = TRAIL;
    ctx.lineWidth = 1.5;
    ctx.stroke();
  }

  const agent = drawAgentTriangle(ctx, scene, view, size);
  return {
    agent,
    agentDepth: scene.agent.position[2],
    glyphCount,
    trailPoints,
  };
}

function drawAgentTriangle(
  ctx: DrawContext,
  scene: SceneDocument,
  view: ViewState,
  size: CanvasSize,
): { x: number; y: number } {
  const [wx, wy] = scene.agent.position;
  const yawRad = (scene.agent.orientation[0] * Math.PI) / 180;
  const lengthM = Math.max(0.9, 12 / view.zoom); // stays visible when zoomed out
  const halfWidthM = lengthM * 0.45;

  const tip = worldToCanvas(view, size, wx + Math.cos(yawRad) * lengthM, wy + Math.sin(yawRad) * lengthM);
  const leftDir = { x: -Math.sin(yawRad), y: Math.cos(yawRad) };
  const baseX = wx - Math.cos(yawRad) * lengthM * 0.6;
  const baseY = wy - Math.sin(yawRad) * lengthM * 0.6;
  const left = worldToCanvas(view, size, baseX + leftDir.x * halfWidthM, baseY + leftDir.y * halfWidthM);
  const right = worldToCanvas(view, size, baseX - leftDir.x * halfWidthM, baseY - leftDir.y * halfWidthM);

  ctx.beginPath();
  ctx.moveTo(tip.x, tip.y);
  ctx.lineTo(left.x, left.y);
  ctx.lineTo(right.x, right.y);
  ctx.closePath();
  ctx.fillStyle = AGENT;
  ctx.fill();

  return worldToCanvas(view, size, wx, wy);
}
