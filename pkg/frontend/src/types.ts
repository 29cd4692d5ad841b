// Wire types for the session service. The server is the source of truth:
// the UI renders these payloads verbatim and never recomputes grammar
// semantics locally.

export interface DiagnosticPayload {
    severity: string;
    code: string;
    message: string;
    subject?: string;
}

export interface GrammarSummary {
    grammar_id: string;
    diagnostics: DiagnosticPayload[];
    statistics: Record<string, number>;
}

export interface DmgNodePayload {
    id: string;
    label: string;
    type: "0" | "&" | "!";
}

export interface DmgEdgePayload {
    from: string;
    to: string;
    ordinal: number;
}

export interface DmgPayload {
    start: string;
    nodes: DmgNodePayload[];
    edges: DmgEdgePayload[];
    lexical_sets?: Record<string, string[]>;
}

export interface AtadNodePayload {
    id: string;
    label: string;
    state: string;
    lexeme?: string;
    children: { ordinal: number; node: AtadNodePayload }[];
}

export interface AlternativePayload {
    ordinal: number;
    target_label: string;
}

export interface FrontierEntry {
    node_id: string;
    kind: "or" | "lexeme";
    alternatives?: AlternativePayload[];
    allowed?: string[];
}

export interface SessionState {
    id: string;
    status: "in_progress" | "complete";
    atad: AtadNodePayload;
    frontier: FrontierEntry[];
    partial_string: string;
}

export interface ResultPayload {
    status: string;
    string?: string;
    tad?: AtadNodePayload;
    partial_string?: string;
}

export interface ErrorPayload {
    error?: string;
    message?: string;
    diagnostics?: DiagnosticPayload[];
}
