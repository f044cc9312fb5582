"""Reference implementations shared by the oracle scripts.

Everything here is written from the published algorithm descriptions and
evaluated with mpmath at 50 digits, then rounded to float at the end.
"""

import json
import os

from mpmath import mp, mpf, log

mp.dps = 50
MASK = (1 << 64) - 1
FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")

DEGREES = ["I", "i", "bII", "II", "bIII", "III", "IV", "iv", "#IV",
           "V", "v", "bVI", "VI", "bVII", "VII"]
K = len(DEGREES)


def dump(name, obj):
    path = os.path.join(FIXTURES, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(obj, f, indent=1, sort_keys=True)
        f.write("\n")


# ---- generator: SplitMix64 seeding, xoshiro256** output ----

class SplitMix64:
    def __init__(self, seed):
        self.x = seed & MASK

    def next(self):
        self.x = (self.x + 0x9E3779B97F4A7C15) & MASK
        z = self.x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


class Xoshiro256StarStar:
    def __init__(self, seed):
        sm = SplitMix64(seed)
        self.s = [sm.next() for _ in range(4)]

    def next(self):
        s = self.s
        result = (rotl((s[1] * 5) & MASK, 7) * 9) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def below(self, n):
        # Lemire multiply-and-reject
        threshold = ((1 << 64) - n) % n
        while True:
            m = self.next() * n
            if (m & MASK) >= threshold:
                return m >> 64

    def sample(self, n, k):
        idx = list(range(n))
        for i in range(min(k, n)):
            j = i + self.below(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]


# ---- counting ----

def collapse(seq):
    out = []
    for d in seq:
        if not out or out[-1] != d:
            out.append(d)
    return out


def counts(seq):
    seq = collapse(seq)
    marginal = [0] * K
    trans = [[0] * K for _ in range(K)]
    for d in seq:
        marginal[d] += 1
    for a, b in zip(seq, seq[1:]):
        trans[a][b] += 1
    return {"marginal": marginal, "transitions": trans}


def add(profiles):
    marginal = [0] * K
    trans = [[0] * K for _ in range(K)]
    for p in profiles:
        for i in range(K):
            marginal[i] += p["marginal"][i]
            for j in range(K):
                trans[i][j] += p["transitions"][i][j]
    return {"marginal": marginal, "transitions": trans}


def flat(profile, basis):
    if basis == "marginal":
        return list(profile["marginal"])
    return [c for row in profile["transitions"] for c in row]


# ---- measures ----

def smooth(cells, alpha):
    alpha = mpf(alpha)
    total = sum(cells)
    return [(mpf(c) + alpha) / (total + alpha * len(cells)) for c in cells]


def entropy(p):
    return -sum(x * log(x, 2) for x in p)


def kl(p, q):
    return sum(a * log(a / b, 2) for a, b in zip(p, q))


def js(p, q):
    m = [(a + b) / 2 for a, b in zip(p, q)]
    return kl(p, m) / 2 + kl(q, m) / 2


def zipf(probs):
    order = sorted(range(len(probs)), key=lambda i: -probs[i])  # stable
    ys = [log(probs[i]) for i in order]
    n = len(ys)
    xs = [log(r) for r in range(1, n + 1)]
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    syy = sum((y - my) ** 2 for y in ys)
    slope = sxy / sxx
    intercept = my - slope * mx
    if syy == 0:
        r2 = None
    else:
        ss_res = sum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys))
        r2 = float(1 - ss_res / syy)
    return {"slope_alpha": float(-slope), "intercept_logC": float(intercept),
            "r_squared": r2, "n_points": n}


def frac_ranks(v):
    order = sorted(range(len(v)), key=lambda i: v[i])
    ranks = [0.0] * len(v)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and v[order[j + 1]] == v[order[i]]:
            j += 1
        mean = mpf(i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = mean
        i = j + 1
    return ranks


def pearson(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        return None
    return sxy / mp.sqrt(sxx * syy)


def spearman(x, y):
    return pearson(frac_ranks(x), frac_ranks(y))


def agreement(x, y):
    if frac_ranks(x) == frac_ranks(y):
        return mpf(1)
    return spearman(x, y)


def percentile(sorted_vals, p):
    h = (len(sorted_vals) - 1) * mpf(p) / 100
    lo = int(mp.floor(h))
    hi = min(lo + 1, len(sorted_vals) - 1)
    return sorted_vals[lo] + (h - lo) * (sorted_vals[hi] - sorted_vals[lo])
