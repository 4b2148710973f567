import { checkScene, checkTrajectory, } from './types.js';
export class HttpFailure extends Error {
    constructor(status, body) {
        super(`HTTP ${status}`);
        this.status = status;
        this.body = body;
    }
}
/** Thin typed client over the service endpoints. */
export class ApiClient {
    constructor(base = '', fetchFn = fetch.bind(globalThis)) {
        this.base = base;
        this.fetchFn = fetchFn;
    }
    async getJson(path) {
        const response = await this.fetchFn(this.base + path);
        if (!response.ok)
            throw new HttpFailure(response.status, await response.text());
        return response.json();
    }
    async postJson(path, body) {
        const response = await this.fetchFn(this.base + path, {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(body),
        });
        const payload = await response.json().catch(() => ({}));
        if (!response.ok)
            throw new HttpFailure(response.status, payload);
        return payload;
    }
    scene() {
        return this.getJson('/api/scene').then(checkScene);
    }
    trajectory(fromFrame = 0) {
        return this.getJson(`/api/trajectory?from=${fromFrame}`).then(checkTrajectory);
    }
    status() {
        return this.getJson('/api/status');
    }
    instruct(text) {
        return this.postJson('/api/instruct', { text });
    }
    step(frames) {
        return this.postJson('/api/step', { frames });
    }
    run(mode) {
        return this.postJson('/api/run', { mode });
    }
}
