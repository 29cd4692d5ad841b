"""Drive one interactive derivation end to end against an in-process service.

Walks the sum grammar the way the worked example does: follow alternative 1
at the root, then 2 on the left branch and 3 on the right, and print the
resulting string.

Run: python3 scripts/demo_session.py
"""

from __future__ import annotations

import json
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fastapi.testclient import TestClient

from dmg_forge.service import create_app

GRAMMAR = (Path(__file__).resolve().parent.parent / "grammars" / "example2.g").read_text()


def main() -> None:
    client = TestClient(create_app())
    created = client.post("/grammars", json={"text": GRAMMAR}).json()
    gid = created["grammar_id"]
    print(f"grammar {gid}: {created['statistics']}")

    state = client.post("/sessions", json={"grammar_id": gid}).json()
    sid = state["id"]
    print(f"session {sid}: partial = {state['partial_string']}")

    def choose(node_id: str, ordinal: int) -> dict:
        s = client.post(
            f"/sessions/{sid}/choices", json={"node_id": node_id, "ordinal": ordinal}
        ).json()
        print(f"chose {ordinal} at node {node_id}: partial = {s['partial_string']}")
        return s

    state = choose(state["frontier"][0]["node_id"], 1)
    left, right = [f["node_id"] for f in state["frontier"]]
    state = choose(left, 2)
    state = choose(right, 3)

    result = client.get(f"/sessions/{sid}/result").json()
    print(f"status: {result['status']}")
    print(f"string: {result['string']}")
    print("tad:")
    print(json.dumps(result["tad"], indent=2))


if __name__ == "__main__":
    main()
