import { ApiClient, HttpFailure } from './api.js';
import { EventEnvelope } from './types.js';

/**
 * Play/pause/step state. The frame counter is server truth: it only moves
 * when an event or a step/run response reports it.
 */
export class RunControls {
  frame = 0;
  playing = false;
  halted = false;
  notice = '';

  constructor(private readonly api: ApiClient) {}

  async play(): Promise<void> {
    try {
      const body = await this.api.run('play');
      this.playing = body.playing;
      this.halted = body.halted;
      this.notice = '';
    } catch (failure) {
      this.notice = `play failed: ${String(failure)}`;
    }
  }

  async pause(): Promise<void> {
    try {
      const body = await this.api.run('pause');
      this.playing = body.playing;
      this.frame = body.frame;
    } catch (failure) {
      this.notice = `pause failed: ${String(failure)}`;
    }
  }

  async step(frames: number): Promise<void> {
    try {
      const body = await this.api.step(frames);
      this.frame = body.frame;
      this.halted = body.halted;
      this.notice = '';
    } catch (failure) {
      if (failure instanceof HttpFailure && failure.status === 409) {
        this.notice = 'busy: pause playback before stepping';
      } else {
        this.notice = `step failed: ${String(failure)}`;
      }
    }
  }

  applyEvent(envelope: EventEnvelope): void {
    if (envelope.kind === 'frame_advanced') {
      this.frame = envelope.payload.frame as number;
    } else if (envelope.kind === 'run_halted') {
      this.halted = true;
      this.playing = false;
    }
  }
}
