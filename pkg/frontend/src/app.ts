// Application state and wiring. The server owns all grammar semantics: the
// view state is nothing but the latest raw payloads, re-rendered wholesale
// after every response. At most one mutating request is in flight; clicks
// during a request are ignored.

import { ApiClient, ApiError } from "./api.js";
import { renderAtad } from "./atadView.js";
import { renderDmg } from "./dmgView.js";
import type { DmgPayload, GrammarSummary, ResultPayload, SessionState } from "./types.js";

export interface ViewState {
    grammar: GrammarSummary | null;
    grammarRaw: string | null;
    dmg: DmgPayload | null;
    dmgRaw: string | null;
    session: SessionState | null;
    sessionRaw: string | null;
    result: ResultPayload | null;
    resultRaw: string | null;
    selected: string | null;
    error: string | null;
    busy: boolean;
}

export interface AppElements {
    grammarInput: HTMLTextAreaElement;
    loadButton: HTMLButtonElement;
    errorBanner: HTMLElement;
    dmgPanel: HTMLElement;
    atadPanel: HTMLElement;
    statsLine: HTMLElement;
}

export class App {
    readonly state: ViewState = {
        grammar: null,
        grammarRaw: null,
        dmg: null,
        dmgRaw: null,
        session: null,
        sessionRaw: null,
        result: null,
        resultRaw: null,
        selected: null,
        error: null,
        busy: false,
    };

    constructor(
        private readonly api: ApiClient,
        private readonly elements: AppElements,
    ) {
        elements.loadButton.addEventListener("click", () => {
            void this.loadGrammar(elements.grammarInput.value);
        });
    }

    async loadGrammar(text: string): Promise<void> {
        if (this.state.busy) return;
        this.state.busy = true;
        this.render();
        try {
            const grammar = await this.api.createGrammar(text);
            this.state.grammar = grammar.data;
            this.state.grammarRaw = grammar.raw;
            const dmg = await this.api.getDmg(grammar.data.grammar_id);
            this.state.dmg = dmg.data;
            this.state.dmgRaw = dmg.raw;
            const session = await this.api.createSession(grammar.data.grammar_id);
            this.applySession(session.data, session.raw);
            this.state.error = null;
            await this.maybeFetchResult();
        } catch (err) {
            this.state.error = err instanceof ApiError ? err.detail : String(err);
        } finally {
            this.state.busy = false;
            this.render();
        }
    }

    private applySession(session: SessionState, raw: string): void {
        this.state.session = session;
        this.state.sessionRaw = raw;
        if (session.status !== "complete") {
            this.state.result = null;
            this.state.resultRaw = null;
        }
    }

    private async maybeFetchResult(): Promise<void> {
        const session = this.state.session;
        if (session && session.status === "complete" && !this.state.result) {
            const result = await this.api.getResult(session.id);
            this.state.result = result.data;
            this.state.resultRaw = result.raw;
        }
    }

    private async mutate(run: () => Promise<{ data: SessionState; raw: string }>): Promise<void> {
        if (this.state.busy || !this.state.session) return;
        this.state.busy = true;
        this.render();
        try {
            const response = await run();
            this.applySession(response.data, response.raw);
            this.state.error = null;
            await this.maybeFetchResult();
        } catch (err) {
            if (err instanceof ApiError) {
                this.state.error = err.detail;
                if (err.status === 409 || err.status === 404) {
                    // stale view: refetch the authoritative state
                    await this.refreshSession();
                }
            } else {
                this.state.error = String(err);
            }
        } finally {
            this.state.busy = false;
            this.render();
        }
    }

    private async refreshSession(): Promise<void> {
        const session = this.state.session;
        if (!session) return;
        try {
            const fresh = await this.api.getResult(session.id);
            // result endpoint answers for both live and finished sessions
            this.state.result = fresh.data;
            this.state.resultRaw = fresh.raw;
        } catch {
            /* keep the current view when the refetch fails */
        }
    }

    chooseAlternative(nodeId: string, ordinal: number): Promise<void> {
        return this.mutate(() => this.api.choose(this.state.session!.id, nodeId, ordinal));
    }

    submitLexeme(nodeId: string, value: string): Promise<void> {
        return this.mutate(() => this.api.setLexeme(this.state.session!.id, nodeId, value));
    }

    undo(): Promise<void> {
        return this.mutate(() => this.api.undo(this.state.session!.id));
    }

    render(): void {
        const { elements, state } = this;
        elements.errorBanner.textContent = state.error ?? "";
        elements.errorBanner.hidden = state.error === null;

        elements.statsLine.textContent = state.grammar
            ? Object.entries(state.grammar.statistics)
                  .map(([key, value]) => `${key}=${value}`)
                  .join("  ")
            : "";

        if (state.dmg) {
            const highlight = this.selectedLabel();
            renderDmg(elements.dmgPanel, state.dmg, highlight);
        }
        if (state.session) {
            renderAtad(
                elements.atadPanel,
                state.session,
                {
                    onChoose: (nodeId, ordinal) => void this.chooseAlternative(nodeId, ordinal),
                    onLexeme: (nodeId, value) => void this.submitLexeme(nodeId, value),
                    onUndo: () => void this.undo(),
                    onSelect: (nodeId) => {
                        this.state.selected = nodeId;
                    },
                },
                {
                    selected: state.selected,
                    result: state.result ?? undefined,
                    resultUrl: this.api.resultUrl(state.session.id),
                    busy: state.busy,
                },
            );
        }
    }

    private selectedLabel(): string | undefined {
        const { session, selected } = this.state;
        if (!session || selected === null) return undefined;
        if (!session.frontier.some((f) => f.node_id === selected)) return undefined;
        const find = (node: typeof session.atad): string | undefined => {
            if (node.id === selected) return node.label;
            for (const child of node.children) {
                const hit = find(child.node);
                if (hit !== undefined) return hit;
            }
            return undefined;
        };
        return find(session.atad);
    }
}
