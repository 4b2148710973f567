import {
  checkScene,
  checkTrajectory,
  InstructionResult,
  SceneDocument,
  StatusInfo,
  TrajectoryRecord,
} from './types.js';

export class HttpFailure extends Error {
  constructor(
    public readonly status: number,
    public readonly body: unknown,
  ) {
    super(`HTTP ${status}`);
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the service endpoints. */
export class ApiClient {
  constructor(
    private readonly base: string = '',
    private readonly fetchFn: FetchLike = fetch.bind(globalThis),
  ) {}

  private async getJson(path: string): Promise<unknown> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) throw new HttpFailure(response.status, await response.text());
    return response.json();
  }

  private async postJson(path: string, body: unknown): Promise<unknown> {
    const response = await this.fetchFn(this.base + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) throw new HttpFailure(response.status, payload);
    return payload;
  }

  scene(): Promise<SceneDocument> {
    return this.getJson('/api/scene').then(checkScene);
  }

  trajectory(fromFrame = 0): Promise<TrajectoryRecord[]> {
    return this.getJson(`/api/trajectory?from=${fromFrame}`).then(checkTrajectory);
  }

  status(): Promise<StatusInfo> {
    return this.getJson('/api/status') as Promise<StatusInfo>;
  }

  instruct(text: string): Promise<InstructionResult> {
    return this.postJson('/api/instruct', { text }) as Promise<InstructionResult>;
  }

  step(frames: number): Promise<{ frame: number; advanced: number; halted: boolean }> {
    return this.postJson('/api/step', { frames }) as Promise<{
      frame: number;
      advanced: number;
      halted: boolean;
    }>;
  }

  run(mode: 'play' | 'pause'): Promise<{ playing: boolean; frame: number; halted: boolean }> {
    return this.postJson('/api/run', { mode }) as Promise<{
      playing: boolean;
      frame: number;
      halted: boolean;
    }>;
  }
}
