"""Print summary figures for the random acceptance corpus.

Useful when tuning the generator: shows how many grammars survive each
pipeline stage and the size distribution of their bounded languages.

Run: python3 scripts/corpus_report.py [count]
"""

from __future__ import annotations

import random
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from corpus import corpus, dmg_min_yields, random_grammar_text, try_build
from dmg_forge.language import language


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 200

    rng = random.Random(1)
    attempts, kept = 0, 0
    while kept < count and attempts < count * 50:
        attempts += 1
        if try_build(random_grammar_text(rng)) is not None:
            kept += 1
    print(f"generator acceptance rate: {kept}/{attempts} ({kept / attempts:.0%})")

    entries = corpus(count)
    sizes = Counter()
    unproductive = 0
    for e in entries:
        n = len(language(e.dmg, 8).chains)
        sizes[0 if n == 0 else len(str(n))] += 1
        low, _ = dmg_min_yields(e.dmg)
        if low[e.dmg.start] == float("inf"):
            unproductive += 1
    print(f"corpus size: {len(entries)}")
    print(f"start-unproductive grammars (empty language): {unproductive}")
    print("bound-8 language size by decimal digits:")
    for digits in sorted(sizes):
        label = "empty" if digits == 0 else f"{10 ** (digits - 1)}..{10 ** digits - 1}"
        print(f"  {label}: {sizes[digits]}")


if __name__ == "__main__":
    main()
