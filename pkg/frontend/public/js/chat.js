import { HttpFailure } from './api.js';
const STORAGE_KEY = 'rovsim.instruction_history';
/** Instruction panel state: history persists per browser session only. */
export class ChatPanel {
    constructor(api, storage = null) {
        this.api = api;
        this.storage = storage;
        this.history = [];
        const saved = this.storage?.getItem(STORAGE_KEY);
        if (saved) {
            try {
                this.history = JSON.parse(saved);
            }
            catch {
                this.history = [];
            }
        }
    }
    canSubmit(text) {
        return text.trim().length > 0;
    }
    /** POST the instruction; the result (or failure) becomes a history entry. */
    async submit(text) {
        let entry;
        try {
            const result = await this.api.instruct(text);
            entry = {
                text,
                status: result.status,
                source: result.source,
                findings: result.findings ?? [],
                commands: result.commands ?? [],
                error: result.error ?? '',
            };
        }
        catch (failure) {
            if (failure instanceof HttpFailure && failure.status === 502) {
                const body = failure.body;
                entry = {
                    text,
                    status: 'provider_error',
                    source: body.source ?? '',
                    findings: body.findings ?? [],
                    commands: [],
                    error: body.error ?? 'provider failure',
                };
            }
            else if (failure instanceof HttpFailure && failure.status === 409) {
                entry = {
                    text,
                    status: 'rejected',
                    source: '',
                    findings: ['simulator busy: actions still executing, retry shortly'],
                    commands: [],
                    error: '',
                };
            }
            else {
                entry = {
                    text,
                    status: 'network_error',
                    source: '',
                    findings: [],
                    commands: [],
                    error: String(failure),
                };
            }
        }
        this.history.push(entry);
        this.persist();
        return entry;
    }
    retryLast() {
        const last = this.history.at(-1);
        if (!last || last.status !== 'network_error')
            return null;
        return this.submit(last.text);
    }
    persist() {
        this.storage?.setItem(STORAGE_KEY, JSON.stringify(this.history.slice(-100)));
    }
}
