// Test support: a fetch stub that replays byte-exact fixtures recorded from
// the real service (scripts/record_ui_fixtures.py), plus DOM scaffolding.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient, FetchLike } from "../src/api.js";
import { App, AppElements } from "../src/app.js";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

interface ManifestEntry {
    method: string;
    path: string;
    status: number;
    file: string;
    body?: unknown;
}

export function fixtureText(name: string): string {
    return readFileSync(join(FIXTURE_DIR, name), "utf-8");
}

function stableStringify(value: unknown): string {
    if (value === null || typeof value !== "object" || Array.isArray(value)) {
        return JSON.stringify(value);
    }
    const entries = Object.entries(value as Record<string, unknown>).sort(([a], [b]) =>
        a.localeCompare(b),
    );
    return "{" + entries.map(([k, v]) => `${JSON.stringify(k)}:${stableStringify(v)}`).join(",") + "}";
}

export interface RecordedCall {
    method: string;
    path: string;
    body?: unknown;
}

/** Fetch stub backed by the recorded manifest; records every call it serves. */
export function recordedFetch(extra: ManifestEntry[] = []): { fetch: FetchLike; calls: RecordedCall[] } {
    const manifest: ManifestEntry[] = JSON.parse(fixtureText("manifest.json"));
    const entries = [...manifest, ...extra];
    const calls: RecordedCall[] = [];
    const fetchFn: FetchLike = async (input, init) => {
        const method = init?.method ?? "GET";
        const body = init?.body ? JSON.parse(init.body as string) : undefined;
        calls.push({ method, path: input, body });
        const hit = entries.find(
            (e) =>
                e.method === method &&
                e.path === input &&
                stableStringify(e.body ?? null) === stableStringify(body ?? null),
        );
        if (!hit) {
            throw new Error(`no fixture for ${method} ${input} ${JSON.stringify(body)}`);
        }
        const raw = hit.file ? fixtureText(hit.file) : JSON.stringify((hit as { payload?: unknown }).payload ?? {});
        return new Response(raw, {
            status: hit.status,
            headers: { "Content-Type": "application/json" },
        });
    };
    return { fetch: fetchFn, calls };
}

export function makeDom(): AppElements {
    document.body.innerHTML = `
      <textarea id="grammar-input"></textarea>
      <button id="load-button"></button>
      <div id="error-banner" hidden></div>
      <div id="stats-line"></div>
      <div id="dmg-panel"></div>
      <div id="atad-panel"></div>
    `;
    return {
        grammarInput: document.getElementById("grammar-input") as HTMLTextAreaElement,
        loadButton: document.getElementById("load-button") as HTMLButtonElement,
        errorBanner: document.getElementById("error-banner") as HTMLElement,
        statsLine: document.getElementById("stats-line") as HTMLElement,
        dmgPanel: document.getElementById("dmg-panel") as HTMLElement,
        atadPanel: document.getElementById("atad-panel") as HTMLElement,
    };
}

export function makeApp(fetchFn: FetchLike): { app: App; elements: AppElements } {
    const elements = makeDom();
    const app = new App(new ApiClient("", fetchFn), elements);
    return { app, elements };
}

export async function flush(): Promise<void> {
    for (let i = 0; i < 8; i += 1) {
        await new Promise((resolve) => setTimeout(resolve, 0));
    }
}
