"""Independent evaluation of the hash embedder construction for golden values."""
import math
import re

M = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def fnv1a64(b):
    h = 0xCBF29CE484222325
    for c in b:
        h ^= c
        h = (h * 0x100000001B3) & M
    return h


def mix64(z):
    z &= M
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)


def token_vector(tok, dim, seed):
    key = mix64(fnv1a64(tok.encode()) ^ mix64(seed + GOLDEN))
    v = [2.0 * ((mix64(key + (i + 1) * GOLDEN) >> 11) * 2.0**-53) - 1.0 for i in range(dim)]
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def hash_embed(text, dim, seed):
    toks = [t for t in re.split(r"[^a-z0-9\x80-￿]+", text.lower()) if t]
    if not toks:
        return token_vector("", dim, seed)
    s = [0.0] * dim
    for t in toks:
        for i, x in enumerate(token_vector(t, dim, seed)):
            s[i] += x
    s = [x / len(toks) for x in s]
    n = math.sqrt(sum(x * x for x in s))
    return [x / n for x in s]


for text, dim, seed in [("acid", 8, 1), ("acid", 8, 2), ("ionic bond", 6, 7), ("", 4, 0)]:
    print(repr(text), dim, seed, [repr(x) for x in hash_embed(text, dim, seed)])
