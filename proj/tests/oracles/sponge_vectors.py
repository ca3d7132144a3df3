"""Reference sponge over explicit bit strings; writes tests/golden/sponge_vectors.json.

Bit strings are written leftmost first; as integers the leftmost bit is the most significant.
Run from the repository root.
"""
import json
import random
import sys
from pathlib import Path


def bits(v: int, w: int) -> str:
    return format(v, f"0{w}b") if w else ""


def sponge(r, c, m, n, perm, x):
    la = -(-(m + 1) // r)
    ls = -(-n // r)
    padded = bits(x, m) + "1" + "0" * (la * r - m - 1)
    state = "0" * (r + c)
    calls = 0

    def apply(s):
        nonlocal calls
        calls += 1
        return bits(perm[int(s, 2)], r + c)

    for i in range(la):
        block = padded[i * r:(i + 1) * r]
        rate = "".join("1" if a != b else "0" for a, b in zip(state[:r], block))
        state = apply(rate + state[r:])
    out = ""
    for i in range(ls):
        out += state[:r]
        if i + 1 < ls:
            state = apply(state)
    assert calls == la + ls - 1
    return int(out[:n], 2), calls, padded


CASES = [
    # (r, c, m, n, permutation kind)
    (2, 2, 1, 2, "identity"),
    (2, 2, 1, 2, "random"),
    (2, 2, 3, 2, "random"),
    (2, 2, 0, 3, "random"),
    (1, 3, 2, 3, "random"),
    (3, 1, 4, 5, "random"),
    (4, 4, 5, 6, "random"),
    (2, 6, 7, 4, "random"),
    (5, 5, 7, 3, "random"),
    (3, 3, 6, 7, "random"),
]


def main(dest: Path):
    rng = random.Random(20240611)
    out = []
    for r, c, m, n, kind in CASES:
        size = 1 << (r + c)
        perm = list(range(size))
        if kind == "random":
            rng.shuffle(perm)
        vectors = []
        for x in range(1 << m):
            y, calls, padded = sponge(r, c, m, n, perm, x)
            vectors.append({"x": x, "padded": padded, "out": y, "calls": calls})
        out.append({"r": r, "c": c, "m": m, "n": n, "perm": perm, "vectors": vectors})
    # hand-traced vector: identity π, x = "1" pads to "11", state 1100, output "11"
    assert out[0]["vectors"][1]["padded"] == "11" and out[0]["vectors"][1]["out"] == 0b11
    dest.write_text(json.dumps(out, separators=(",", ":")) + "\n")
    print(f"wrote {dest}")


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "tests/golden/sponge_vectors.json"))
