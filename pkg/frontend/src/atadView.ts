// Tree panel: the growing decision tree, choice buttons on pending !-leaves,
// a restricted input for lexeme leaves, the partial string, and - once the
// session completes - the final string with a download link for the full
// tree (the link points straight at the result endpoint, so the download is
// the server's own bytes).

import type {
    AtadNodePayload,
    FrontierEntry,
    ResultPayload,
    SessionState,
} from "./types.js";

export interface ActionHandlers {
    onChoose(nodeId: string, ordinal: number): void;
    onLexeme(nodeId: string, value: string): void;
    onUndo(): void;
    onSelect(nodeId: string): void;
}

function renderNode(
    node: AtadNodePayload,
    frontierByNode: Map<string, FrontierEntry>,
    handlers: ActionHandlers,
    selected: string | null,
): HTMLLIElement {
    const li = document.createElement("li");
    li.dataset.nodeId = node.id;
    li.dataset.state = node.state;

    const row = document.createElement("span");
    row.className = "tad-node tad-" + node.state + (node.id === selected ? " tad-selected" : "");
    row.textContent = node.lexeme !== undefined ? `${node.label} = ${node.lexeme}` : node.label;
    li.appendChild(row);

    const entry = frontierByNode.get(node.id);
    if (entry?.kind === "or" && entry.alternatives) {
        const box = document.createElement("span");
        box.className = "alt-buttons";
        for (const alt of entry.alternatives) {
            const button = document.createElement("button");
            button.className = "alt-button";
            button.dataset.nodeId = node.id;
            button.dataset.ordinal = String(alt.ordinal);
            button.dataset.targetLabel = alt.target_label;
            button.textContent = `${alt.ordinal} → ${alt.target_label}`;
            button.addEventListener("click", () => {
                handlers.onSelect(node.id);
                handlers.onChoose(node.id, alt.ordinal);
            });
            box.appendChild(button);
        }
        li.appendChild(box);
    } else if (entry?.kind === "lexeme") {
        const box = document.createElement("span");
        box.className = "lexeme-input";
        const select = document.createElement("select");
        select.dataset.nodeId = node.id;
        for (const value of entry.allowed ?? []) {
            const option = document.createElement("option");
            option.value = value;
            option.textContent = value;
            select.appendChild(option);
        }
        const button = document.createElement("button");
        button.className = "lexeme-button";
        button.textContent = "set";
        button.addEventListener("click", () => {
            handlers.onSelect(node.id);
            handlers.onLexeme(node.id, select.value);
        });
        box.appendChild(select);
        box.appendChild(button);
        li.appendChild(box);
    }

    if (node.children.length) {
        const ul = document.createElement("ul");
        for (const child of node.children) {
            const childLi = renderNode(child.node, frontierByNode, handlers, selected);
            childLi.dataset.ordinal = String(child.ordinal);
            const badge = document.createElement("span");
            badge.className = "edge-badge";
            badge.textContent = String(child.ordinal);
            childLi.prepend(badge);
            ul.appendChild(childLi);
        }
        li.appendChild(ul);
    }
    return li;
}

export function renderAtad(
    container: HTMLElement,
    session: SessionState,
    handlers: ActionHandlers,
    options: { selected?: string | null; result?: ResultPayload; resultUrl?: string; busy?: boolean } = {},
): void {
    container.textContent = "";

    const partial = document.createElement("div");
    partial.className = "partial-string";
    partial.textContent = session.partial_string;
    container.appendChild(partial);

    if (session.status === "complete") {
        const banner = document.createElement("div");
        banner.className = "complete-banner";
        const text = document.createElement("strong");
        text.className = "final-string";
        text.textContent = options.result?.string ?? "";
        banner.append("derived string: ", text);
        if (options.resultUrl) {
            const link = document.createElement("a");
            link.className = "tad-download";
            link.href = options.resultUrl;
            link.setAttribute("download", `tad-${session.id}.json`);
            link.textContent = "download TAD";
            banner.append(" · ", link);
        }
        container.appendChild(banner);
    }

    const frontierByNode = new Map(session.frontier.map((f) => [f.node_id, f]));
    const tree = document.createElement("ul");
    tree.className = "tad-tree";
    tree.appendChild(renderNode(session.atad, frontierByNode, handlers, options.selected ?? null));
    container.appendChild(tree);

    const undo = document.createElement("button");
    undo.className = "undo-button";
    undo.textContent = "undo";
    undo.addEventListener("click", () => handlers.onUndo());
    container.appendChild(undo);

    if (options.busy) {
        for (const button of container.querySelectorAll("button, select")) {
            (button as HTMLButtonElement).disabled = true;
        }
    }
}
