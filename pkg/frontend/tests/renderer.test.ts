import { describe, expect, it } from 'vitest';

import { renderSceneView } from '../src/renderer.js';
import { SchemaMismatch } from '../src/types.js';
import { defaultView, worldToCanvas } from '../src/view.js';
import { StubContext, emptyScene } from './stub_canvas.js';

const SIZE = { width: 800, height: 600 };

describe('renderSceneView', () => {
  it('draws a fresh scene with the agent at the mapped origin and no trail', () => {
    const ctx = new StubContext();
    const view = defaultView();
    const info = renderSceneView(emptyScene(), [], view, ctx, SIZE);
    expect(info.agent).toEqual(worldToCanvas(view, SIZE, 0, 0));
    expect(info.trailPoints).toHaveLength(0);
    expect(info.glyphCount).toBe(0);
    // Background, seabed, and the agent triangle were all painted.
    expect(ctx.ops('fillRect').length).toBeGreaterThanOrEqual(2);
    expect(ctx.ops('closePath').length).toBe(1);
  });

  it('draws one glyph per object in its kind color', () => {
    const scene = emptyScene();
    scene.objects.push(
      { id: 1, kind: 'oyster', position: [3, 0, 0], orientation: [0, 0, 0] },
      { id: 2, kind: 'rock', position: [-2, 5, 0], orientation: [0, 0, 0] },
    );
    const ctx = new StubContext();
    const info = renderSceneView(scene, [], defaultView(), ctx, SIZE);
    expect(info.glyphCount).toBe(2);
    const fills = ctx.ops('fill').map((c) => c.fillStyle);
    expect(fills).toContain('#ecf0f1'); // oyster
    expect(fills).toContain('#6c6e70'); // rock
  });

  it('orients the agent triangle along yaw', () => {
    const ctx0 = new StubContext();
    renderSceneView(emptyScene([0, 0, 0], 0), [], defaultView(), ctx0, SIZE);
    const tip0 = ctx0.ops('moveTo').at(-1)!.args;

    const ctx90 = new StubContext();
    renderSceneView(emptyScene([0, 0, 0], 90), [], defaultView(), ctx90, SIZE);
    const tip90 = ctx90.ops('moveTo').at(-1)!.args;

    expect(tip0[0]).toBeGreaterThan(400); // yaw 0 points +x (right)
    expect(Math.abs(tip0[1] - 300)).toBeLessThan(1e-9);
    expect(tip90[1]).toBeLessThan(300); // yaw 90 points +y (up on screen)
    expect(Math.abs(tip90[0] - 400)).toBeLessThan(1e-9);
  });

  it('draws the trajectory trail through the mapped points', () => {
    const trajectory = [0, 1, 2, 3].map((k) => ({
      frame: k,
      position: [k, k * 2, 0],
      orientation: [0, 0, 0],
    }));
    const ctx = new StubContext();
    const view = defaultView();
    const info = renderSceneView(emptyScene(), trajectory, view, ctx, SIZE);
    expect(info.trailPoints).toHaveLength(4);
    expect(info.trailPoints[3]).toEqual(worldToCanvas(view, SIZE, 3, 6));
  });

  it('respects the trail length window', () => {
    const trajectory = Array.from({ length: 50 }, (_, k) => ({
      frame: k,
      position: [k, 0, 0],
      orientation: [0, 0, 0],
    }));
    const view = { ...defaultView(), trailLength: 10 };
    const info = renderSceneView(emptyScene(), trajectory, view, new StubContext(), SIZE);
    expect(info.trailPoints).toHaveLength(10);
  });

  it('raises SchemaMismatch on malformed documents instead of drawing junk', () => {
    const ctx = new StubContext();
    expect(() => renderSceneView({ nonsense: true }, [], defaultView(), ctx, SIZE)).toThrow(
      SchemaMismatch,
    );
    const bad = emptyScene() as Record<string, unknown>;
    bad.agent = { position: [1, 2], orientation: [0, 0, 0] };
    expect(() => renderSceneView(bad, [], defaultView(), ctx, SIZE)).toThrow(SchemaMismatch);
  });

  it('reports the agent depth for the numeric readout', () => {
    const info = renderSceneView(
      emptyScene([1, 2, -3.5]),
      [],
      defaultView(),
      new StubContext(),
      SIZE,
    );
    expect(info.agentDepth).toBe(-3.5);
  });
});
