"""Record real service responses as byte-exact fixtures for the UI tests.

Replays the exact request sequence the browser UI makes for the worked
sum-grammar session (plus the example-1 graph used by render tests) against
an in-process service, and writes every response body verbatim under
frontend/tests/fixtures/ together with a manifest mapping requests to
files. The UI test suite replays the same flow through a fetch stub backed
by these files, so everything it displays is a real server payload.

Run: python3 scripts/record_ui_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path
import sys

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient

from dmg_forge.service import create_app

FIXTURES = ROOT / "frontend" / "tests" / "fixtures"

EXAMPLE1 = (ROOT / "grammars" / "example1.g").read_text()
EXAMPLE2 = (ROOT / "grammars" / "example2.g").read_text()


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())
    manifest: list[dict] = []

    def record(name: str, method: str, path: str, body: dict | None = None):
        if method == "GET":
            resp = client.get(path)
        else:
            resp = client.post(path, json=body)
        file_name = f"{name}.json"
        (FIXTURES / file_name).write_bytes(resp.content)
        entry: dict = {"method": method, "path": path, "status": resp.status_code, "file": file_name}
        if body is not None:
            entry["body"] = body
        manifest.append(entry)
        return resp.json()

    # example-2 session flow, exactly as the UI drives it
    created = record("grammar_ex2", "POST", "/grammars", {"text": EXAMPLE2})
    gid = created["grammar_id"]
    record("dmg_ex2", "GET", f"/grammars/{gid}/dmg")
    state = record("session_created", "POST", "/sessions", {"grammar_id": gid})
    sid = state["id"]
    root = state["frontier"][0]["node_id"]
    state = record(
        "after_choice_1", "POST", f"/sessions/{sid}/choices", {"node_id": root, "ordinal": 1}
    )
    left, right = [f["node_id"] for f in state["frontier"]]
    record("after_choice_2", "POST", f"/sessions/{sid}/choices", {"node_id": left, "ordinal": 2})
    record("after_choice_3", "POST", f"/sessions/{sid}/choices", {"node_id": right, "ordinal": 3})
    record("result", "GET", f"/sessions/{sid}/result")

    # example-1 graph for the renderer tests
    created = record("grammar_ex1", "POST", "/grammars", {"text": EXAMPLE1})
    record("dmg_ex1", "GET", f"/grammars/{created['grammar_id']}/dmg")

    (FIXTURES / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(manifest)} fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
