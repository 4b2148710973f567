import { HttpFailure } from './api.js';
/**
 * Play/pause/step state. The frame counter is server truth: it only moves
 * when an event or a step/run response reports it.
 */
export class RunControls {
    constructor(api) {
        this.api = api;
        this.frame = 0;
        this.playing = false;
        this.halted = false;
        this.notice = '';
    }
    async play() {
        try {
            const body = await this.api.run('play');
            this.playing = body.playing;
            this.halted = body.halted;
            this.notice = '';
        }
        catch (failure) {
            this.notice = `play failed: ${String(failure)}`;
        }
    }
    async pause() {
        try {
            const body = await this.api.run('pause');
            this.playing = body.playing;
            this.frame = body.frame;
        }
        catch (failure) {
            this.notice = `pause failed: ${String(failure)}`;
        }
    }
    async step(frames) {
        try {
            const body = await this.api.step(frames);
            this.frame = body.frame;
            this.halted = body.halted;
            this.notice = '';
        }
        catch (failure) {
            if (failure instanceof HttpFailure && failure.status === 409) {
                this.notice = 'busy: pause playback before stepping';
            }
            else {
                this.notice = `step failed: ${String(failure)}`;
            }
        }
    }
    applyEvent(envelope) {
        if (envelope.kind === 'frame_advanced') {
            this.frame = envelope.payload.frame;
        }
        else if (envelope.kind === 'run_halted') {
            this.halted = true;
            this.playing = false;
        }
    }
}
