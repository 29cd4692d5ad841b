// Thin REST client. Every call keeps the raw response text alongside the
// parsed value so views can display (and tests can compare) the exact bytes
// the server sent.

import type {
    DmgPayload,
    GrammarSummary,
    ResultPayload,
    SessionState,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface ApiResponse<T> {
    status: number;
    raw: string;
    data: T;
}

export class ApiError extends Error {
    constructor(
        public readonly status: number,
        public readonly raw: string,
    ) {
        super(`request failed with status ${status}`);
    }

    get detail(): string {
        try {
            const payload = JSON.parse(this.raw);
            if (payload.message) return payload.message;
            if (payload.diagnostics?.length) {
                return payload.diagnostics
                    .map((d: { message: string }) => d.message)
                    .join("; ");
            }
        } catch {
            /* non-JSON body */
        }
        return this.message;
    }
}

export class ApiClient {
    constructor(
        private readonly baseUrl: string = "",
        private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<ApiResponse<T>> {
        const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
        if (body !== undefined) {
            init.body = JSON.stringify(body);
        }
        const resp = await this.fetchFn(this.baseUrl + path, init);
        const raw = await resp.text();
        if (!resp.ok) {
            throw new ApiError(resp.status, raw);
        }
        return { status: resp.status, raw, data: JSON.parse(raw) as T };
    }

    createGrammar(text: string): Promise<ApiResponse<GrammarSummary>> {
        return this.request("POST", "/grammars", { text });
    }

    getDmg(grammarId: string): Promise<ApiResponse<DmgPayload>> {
        return this.request("GET", `/grammars/${grammarId}/dmg`);
    }

    createSession(grammarId: string): Promise<ApiResponse<SessionState>> {
        return this.request("POST", "/sessions", { grammar_id: grammarId });
    }

    choose(sessionId: string, nodeId: string, ordinal: number): Promise<ApiResponse<SessionState>> {
        return this.request("POST", `/sessions/${sessionId}/choices`, {
            node_id: nodeId,
            ordinal,
        });
    }

    setLexeme(sessionId: string, nodeId: string, value: string): Promise<ApiResponse<SessionState>> {
        return this.request("POST", `/sessions/${sessionId}/lexemes`, {
            node_id: nodeId,
            value,
        });
    }

    undo(sessionId: string): Promise<ApiResponse<SessionState>> {
        return this.request("POST", `/sessions/${sessionId}/undo`);
    }

    getResult(sessionId: string): Promise<ApiResponse<ResultPayload>> {
        return this.request("GET", `/sessions/${sessionId}/result`);
    }

    resultUrl(sessionId: string): string {
        return `${this.baseUrl}/sessions/${sessionId}/result`;
    }
}
