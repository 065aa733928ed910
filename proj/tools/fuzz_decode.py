#!/usr/bin/env python3
"""Fuzz the total cell decoder: random words must never raise, and every
rejected word must come back as the designated null symbol.

Usage: tools/fuzz_decode.py [ITERATIONS] [SEED]
"""

import random
import sys

import tbf

SCHEMES = [("dec96", 16), ("dec112", 16), ("dec240", 8)]


def main() -> int:
    iterations = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    rng = random.Random(seed)
    tested = 0
    for scheme, n in SCHEMES:
        nbits = tbf.cellbits(scheme, n)
        for _ in range(iterations):
            # mix of pure noise and lightly corrupted valid words
            if rng.random() < 0.5:
                word = "".join(rng.choice("01") for _ in range(nbits))
            else:
                third = 1 + rng.randrange(n) if scheme == "dec240" else 0
                word = tbf.encode_cell(
                    scheme,
                    n,
                    rng.randrange(2),
                    l=(1 + rng.randrange(n), 1 + rng.randrange(n), third),
                    seed=rng.randrange(2**63),
                )
                flips = rng.randrange(1, 8)
                chars = list(word)
                for _ in range(flips):
                    i = rng.randrange(nbits)
                    chars[i] = "1" if chars[i] == "0" else "0"
                word = "".join(chars)
            d = tbf.decode_cell(scheme, n, word)
            if not d["valid"]:
                assert d["value"] == 0 and d["l"] is None and d["r"] is None and d["b"] is None, (
                    scheme,
                    word,
                    d,
                )
            tested += 1
    print(f"fuzzed {tested} words, no decoder crashes, null form respected")
    return 0


if __name__ == "__main__":
    sys.exit(main())
