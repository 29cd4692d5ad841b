// Graph panel: draws the decision-making graph as layered SVG. Node shapes
// and colors only distinguish the three node types; the layout is breadth-
// first from the start node. Parallel edges between the same pair of nodes
// get distinct curvatures so both stay visible.

import type { DmgPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const NODE_W = 64;
const NODE_H = 34;
const H_GAP = 28;
const V_GAP = 72;
const MARGIN = 24;

interface Placed {
    x: number;
    y: number;
}

function layeredLayout(dmg: DmgPayload): Map<string, Placed> {
    const layerOf = new Map<string, number>();
    const queue: string[] = [dmg.start];
    layerOf.set(dmg.start, 0);
    const outgoing = new Map<string, string[]>();
    for (const e of dmg.edges) {
        const list = outgoing.get(e.from) ?? [];
        list.push(e.to);
        outgoing.set(e.from, list);
    }
    while (queue.length) {
        const id = queue.shift()!;
        for (const next of outgoing.get(id) ?? []) {
            if (!layerOf.has(next)) {
                layerOf.set(next, layerOf.get(id)! + 1);
                queue.push(next);
            }
        }
    }
    let orphanLayer = 0;
    for (const layer of layerOf.values()) orphanLayer = Math.max(orphanLayer, layer + 1);
    for (const n of dmg.nodes) {
        if (!layerOf.has(n.id)) layerOf.set(n.id, orphanLayer);
    }

    const byLayer = new Map<number, string[]>();
    for (const n of dmg.nodes) {
        const layer = layerOf.get(n.id)!;
        const list = byLayer.get(layer) ?? [];
        list.push(n.id);
        byLayer.set(layer, list);
    }
    const placed = new Map<string, Placed>();
    const widest = Math.max(...[...byLayer.values()].map((ids) => ids.length));
    const rowWidth = widest * (NODE_W + H_GAP);
    for (const [layer, ids] of byLayer) {
        const span = ids.length * (NODE_W + H_GAP);
        ids.forEach((id, i) => {
            placed.set(id, {
                x: MARGIN + (rowWidth - span) / 2 + i * (NODE_W + H_GAP) + NODE_W / 2,
                y: MARGIN + layer * V_GAP + NODE_H / 2,
            });
        });
    }
    return placed;
}

function el(name: string, attrs: Record<string, string>): SVGElement {
    const node = document.createElementNS(SVG_NS, name);
    for (const [key, value] of Object.entries(attrs)) {
        node.setAttribute(key, value);
    }
    return node;
}

function nodeShape(type: "0" | "&" | "!", x: number, y: number): SVGElement {
    if (type === "!") {
        const points = [
            `${x},${y - NODE_H / 2}`,
            `${x + NODE_W / 2},${y}`,
            `${x},${y + NODE_H / 2}`,
            `${x - NODE_W / 2},${y}`,
        ].join(" ");
        return el("polygon", { points, class: "node-shape node-or" });
    }
    if (type === "&") {
        return el("rect", {
            x: String(x - NODE_W / 2),
            y: String(y - NODE_H / 2),
            width: String(NODE_W),
            height: String(NODE_H),
            rx: "4",
            class: "node-shape node-and",
        });
    }
    return el("ellipse", {
        cx: String(x),
        cy: String(y),
        rx: String(NODE_W / 2),
        ry: String(NODE_H / 2),
        class: "node-shape node-zero",
    });
}

export function renderDmg(container: HTMLElement, dmg: DmgPayload, highlightLabel?: string): void {
    container.textContent = "";
    const placed = layeredLayout(dmg);
    const maxX = Math.max(...[...placed.values()].map((p) => p.x)) + NODE_W / 2 + MARGIN;
    const maxY = Math.max(...[...placed.values()].map((p) => p.y)) + NODE_H / 2 + MARGIN;
    const svg = el("svg", {
        viewBox: `0 0 ${maxX} ${maxY}`,
        width: String(maxX),
        height: String(maxY),
        class: "dmg-svg",
    });

    const defs = el("defs", {});
    const marker = el("marker", {
        id: "arrow",
        viewBox: "0 0 10 10",
        refX: "9",
        refY: "5",
        markerWidth: "7",
        markerHeight: "7",
        orient: "auto-start-reverse",
    });
    marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", class: "edge-arrow" }));
    defs.appendChild(marker);
    svg.appendChild(defs);

    const typeOf = new Map(dmg.nodes.map((n) => [n.id, n.type]));

    // count parallel edges per pair so each gets its own curvature
    const pairSeen = new Map<string, number>();
    for (const edge of dmg.edges) {
        const pairKey = `${edge.from}->${edge.to}`;
        const slot = pairSeen.get(pairKey) ?? 0;
        pairSeen.set(pairKey, slot + 1);

        const a = placed.get(edge.from)!;
        const b = placed.get(edge.to)!;
        const bend = (slot - 0.0) * 26 + (edge.from === edge.to ? 40 : 0);
        const mx = (a.x + b.x) / 2 + (b.y === a.y ? 0 : bend);
        const my = (a.y + b.y) / 2 + (b.y === a.y ? -40 - bend : bend * 0.4);
        const path = el("path", {
            d: `M ${a.x} ${a.y} Q ${mx} ${my} ${b.x} ${b.y}`,
            class: "dmg-edge",
            "marker-end": "url(#arrow)",
            "data-from": edge.from,
            "data-to": edge.to,
            "data-ordinal": String(edge.ordinal),
        });
        svg.appendChild(path);
        if (typeOf.get(edge.from) === "&") {
            const label = el("text", {
                x: String((a.x + mx + b.x) / 3),
                y: String((a.y + my + b.y) / 3 - 3),
                class: "edge-ordinal",
            });
            label.textContent = String(edge.ordinal);
            svg.appendChild(label);
        }
    }

    for (const node of dmg.nodes) {
        const p = placed.get(node.id)!;
        const group = el("g", {
            class:
                "dmg-node" +
                (node.id === dmg.start ? " dmg-start" : "") +
                (highlightLabel !== undefined && node.label === highlightLabel ? " dmg-highlight" : ""),
            "data-node-id": node.id,
            "data-label": node.label,
            "data-type": node.type,
        });
        group.appendChild(nodeShape(node.type, p.x, p.y));
        const text = el("text", { x: String(p.x), y: String(p.y + 4), class: "node-label" });
        text.textContent = node.label;
        group.appendChild(text);
        svg.appendChild(group);
    }

    container.appendChild(svg);
}
