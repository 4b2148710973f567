import { ApiClient } from './api.js';
import { EventEnvelope, SceneDocument, TrajectoryRecord } from './types.js';

/**
 * Client-side mirror of server state, fed exclusively by server documents
 * and the event stream. A sequence gap (or a dropped stream) flips
 * `needsResync`; `resync` refetches the full scene and trajectory.
 */
export class ServerMirror {
  scene: SceneDocument | null = null;
  trajectory: TrajectoryRecord[] = [];
  lastSeq: number | null = null;
  needsResync = false;
  dirty = false; // a redraw is owed

  constructor(private readonly api: ApiClient) {}

  async resync(): Promise<void> {
    this.scene = await this.api.scene();
    this.trajectory = await this.api.trajectory(0);
    this.needsResync = false;
    this.lastSeq = null; // next event restarts the gap check
    this.dirty = true;
  }

  /** Apply one envelope in order; returns false when a resync is owed. */
  applyEnvelope(envelope: EventEnvelope): boolean {
    if (this.lastSeq !== null && envelope.seq !== this.lastSeq + 1) {
      this.needsResync = true;
      return false;
    }
    this.lastSeq = envelope.seq;

    if (envelope.kind === 'frame_advanced') {
      const frame = envelope.payload.frame as number;
      const position = envelope.payload.position as number[];
      const orientation = envelope.payload.orientation as number[];
      if (this.scene) {
        this.scene.agent.position = position;
        this.scene.agent.orientation = orientation;
      }
      this.trajectory.push({ frame, position, orientation });
      this.dirty = true;
    } else if (envelope.kind === 'instruction_result' || envelope.kind === 'capture_written') {
      // Object mutations land a few frames later; refresh the documents.
      this.needsResync = true;
    } else if (envelope.kind === 'run_halted') {
      this.dirty = true;
    }
    return !this.needsResync;
  }

  markStreamDropped(): void {
    this.needsResync = true;
  }
}
