import { ApiClient, HttpFailure } from './api.js';
import { InstructionResult } from './types.js';

export interface ChatEntry {
  text: string;
  status: InstructionResult['status'] | 'network_error';
  source: string;
  findings: string[];
  commands: string[];
  error: string;
}

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const STORAGE_KEY = 'rovsim.instruction_history';

/** Instruction panel state: history persists per browser session only. */
export class ChatPanel {
  history: ChatEntry[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly storage: StorageLike | null = null,
  ) {
    const saved = this.storage?.getItem(STORAGE_KEY);
    if (saved) {
      try {
        this.history = JSON.parse(saved) as ChatEntry[];
      } catch {
        this.history = [];
      }
    }
  }

  canSubmit(text: string): boolean {
    return text.trim().length > 0;
  }

  /** POST the instruction; the result (or failure) becomes a history entry. */
  async submit(text: string): Promise<ChatEntry> {
    let entry: ChatEntry;
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
    } catch (failure) {
      if (failure instanceof HttpFailure && failure.status === 502) {
        const body = failure.body as Partial<InstructionResult>;
        entry = {
          text,
          status: 'provider_error',
          source: body.source ?? '',
          findings: body.findings ?? [],
          commands: [],
          error: body.error ?? 'provider failure',
        };
      } else if (failure instanceof HttpFailure && failure.status === 409) {
        entry = {
          text,
          status: 'rejected',
          source: '',
          findings: ['simulator busy: actions still executing, retry shortly'],
          commands: [],
          error: '',
        };
      } else {
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

  retryLast(): Promise<ChatEntry> | null {
    const last = this.history.at(-1);
    if (!last || last.status !== 'network_error') return null;
    return this.submit(last.text);
  }

  private persist(): void {
    this.storage?.setItem(STORAGE_KEY, JSON.stringify(this.history.slice(-100)));
  }
}
