"""Shared generators and independent oracles for the test suite.

Everything here is deliberately written without touching the library's own
algorithms: the oracles are the second, slow route every fast path gets
checked against.
"""

import random

CONSONANTS = [chr(c) for c in range(0x1780, 0x17A3)]
DEP_VOWELS = [chr(c) for c in range(0x17B6, 0x17C6)]
SHIFTERS = ["៉", "៊"]
SIGNS = ["ំ", "ះ", "់", "័"]
COENG = "្"


def random_cluster_units(rng: random.Random, max_trailing_scalars: int = 5):
    """A plausible cluster as (base, trailing units): each unit is either a
    coeng+consonant pair, a shifter, a sign, or a vowel.  Unit order is the
    free variable normalization must collapse."""
    base = rng.choice(CONSONANTS)
    units = []
    budget = max_trailing_scalars
    n_subs = rng.randint(0, 2)
    for _ in range(n_subs):
        if budget >= 2:
            units.append(COENG + rng.choice(CONSONANTS))
            budget -= 2
    if budget >= 1 and rng.random() < 0.35:
        units.append(rng.choice(SHIFTERS))
        budget -= 1
    if budget >= 1 and rng.random() < 0.45:
        units.append(rng.choice(SIGNS))
        budget -= 1
    if budget >= 1 and rng.random() < 0.8:
        units.append(rng.choice(DEP_VOWELS))
        budget -= 1
    return base, units


def random_khmer_word(rng: random.Random, min_clusters=1, max_clusters=4) -> str:
    parts = []
    for _ in range(rng.randint(min_clusters, max_clusters)):
        base, units = random_cluster_units(rng, max_trailing_scalars=3)
        parts.append(base + "".join(units))
    return "".join(parts)


def corrupt(rng: random.Random, word: str, max_edits: int) -> str:
    """Apply 1..max_edits random scalar edits."""
    chars = list(word)
    alphabet = CONSONANTS + DEP_VOWELS + SIGNS
    for _ in range(rng.randint(1, max_edits)):
        op = rng.choice(("insert", "delete", "substitute", "transpose"))
        if op == "insert" or not chars:
            chars.insert(rng.randint(0, len(chars)), rng.choice(alphabet))
        elif op == "delete":
            chars.pop(rng.randrange(len(chars)))
        elif op == "substitute":
            chars[rng.randrange(len(chars))] = rng.choice(alphabet)
        elif len(chars) >= 2:
            i = rng.randrange(len(chars) - 1)
            chars[i], chars[i + 1] = chars[i + 1], chars[i]
    return "".join(chars)


def osa_distance_ref(a, b) -> int:
    """Reference optimal-string-alignment distance, full-matrix textbook DP."""
    la, lb = len(a), len(b)
    d = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la + 1):
        d[i][0] = i
    for j in range(lb + 1):
        d[0][j] = j
    for i in range(1, la + 1):
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[la][lb]


def levenshtein_ref(a, b) -> int:
    """Plain Levenshtein (no transposition), for triangle-inequality checks."""
    la, lb = len(a), len(b)
    prev = list(range(lb + 1))
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[lb]


def all_deletes_ref(seq: tuple, max_d: int) -> set:
    """Brute-force deletion-variant enumeration, recursive and unoptimized."""
    out = set()

    def rec(s, budget):
        out.add(s)
        if budget == 0:
            return
        for i in range(len(s)):
            rec(s[:i] + s[i + 1 :], budget - 1)

    rec(seq, max_d)
    return out
