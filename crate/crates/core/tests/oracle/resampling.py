"""Seed-replaying fixtures for the bootstrap, robustness sweeps and era pools."""

import random

from common import (K, Xoshiro256StarStar, add, agreement, collapse, counts, dump, entropy,
                    flat, js, kl, percentile, smooth)


def random_piece(rng, weights, length):
    seq = []
    while len(seq) < length:
        d = rng.choices(range(K), weights=weights)[0]
        if not seq or seq[-1] != d:
            seq.append(d)
    return seq


def random_weights(rng, skew):
    return [rng.random() ** skew for _ in range(K)]


out = {}

# Raw generator output, for checking the stream itself.
g = Xoshiro256StarStar(42)
out["xoshiro_seed42"] = [str(g.next()) for _ in range(4)]
g = Xoshiro256StarStar(7)
out["below_seed7_n10"] = [g.below(10) for _ in range(20)]
out["sample_seed9_20_5"] = Xoshiro256StarStar(9).sample(20, 5)

rng = random.Random(7)

# Bootstrap: 3 pieces, B = 5, entropy of the smoothed marginal.
pieces = [random_piece(rng, random_weights(rng, 2), n) for n in (12, 30, 7)]
profiles = [counts(p) for p in pieces]
values = []
for i in range(5):
    g = Xoshiro256StarStar(42 + i)
    draw = [g.below(3) for _ in range(3)]
    values.append(entropy(smooth(add([profiles[j] for j in draw])["marginal"], 0.5)))
values.sort()
out["bootstrap"] = {
    "pieces": pieces,
    "B": 5,
    "seed": 42,
    "point": float(entropy(smooth(add(profiles)["marginal"], 0.5))),
    "ci_low": float(percentile(values, 2.5)),
    "ci_high": float(percentile(values, 97.5)),
}


def corpus_of(n_composers, n_pieces, length):
    corpus = {}
    for c in range(n_composers):
        w = random_weights(rng, 3)
        corpus["c%d" % c] = [random_piece(rng, w, length) for _ in range(n_pieces)]
    return corpus


def totals(corpus, alpha, basis="marginal"):
    names = sorted(corpus)
    return names, [smooth(flat(add([counts(p) for p in corpus[n]]), basis), alpha) for n in names]


def off_row(m, r):
    return [v for j, v in enumerate(m[r]) if j != r]


# Smoothing robustness over 5 composers.
corpus5 = corpus_of(5, 3, 25)
alphas = [0.1, 0.5, 1.0]
mats = []
for a in alphas:
    names, dists = totals(corpus5, a)
    mats.append([[kl(p, q) for q in dists] for p in dists])
robust = {}
for r, name in enumerate(names):
    rho = [[float(agreement(off_row(mats[i], r), off_row(mats[j], r))) for j in range(3)]
           for i in range(3)]
    robust[name] = {"rho": rho, "min_rho": min(rho[i][j] for i in range(3) for j in range(i + 1, 3))}
out["robustness"] = {"corpus": corpus5, "alphas": alphas, "rows": robust}

# KL/JS cross-check over 6 composers.
corpus6 = corpus_of(6, 2, 20)
names, dists = totals(corpus6, 0.5)
klm = [[kl(p, q) for q in dists] for p in dists]
jsm = [[js(p, q) for q in dists] for p in dists]
sym = [[(klm[a][b] + klm[b][a]) / 2 for b in range(6)] for a in range(6)]
cross = {}
for r, name in enumerate(names):
    v = agreement(off_row(sym, r), off_row(jsm, r))
    cross[name] = None if v is None else float(v)
out["kl_js"] = {"corpus": corpus6, "alpha": 0.5, "rows": cross}

# Era pools: three pools with known generators, one artist, concordance.
gens = {"Baroque": random_weights(rng, 3), "Classical": random_weights(rng, 3),
        "Romantic": random_weights(rng, 3)}
members = {}
pool_pieces = {}
spec = {}
sizes = {"Baroque": (2, 8), "Classical": (2, 6), "Romantic": (1, 5)}
for era, (n_members, per) in sizes.items():
    spec[era] = []
    for m in range(n_members):
        name = "%s_%d" % (era.lower(), m)
        spec[era].append(name)
        members[name] = [random_piece(rng, gens[era], rng.randint(8, 30)) for _ in range(per)]
artist_w = [0.3 * a + 0.7 * b for a, b in zip(gens["Classical"], gens["Romantic"])]
artist = [random_piece(rng, artist_w, 40) for _ in range(4)]


def argmin(artist_profile, pools, basis, alpha):
    p = smooth(flat(artist_profile, basis), alpha)
    vals = {era: kl(p, smooth(flat(prof, basis), alpha)) for era, prof in pools.items()}
    best = None
    for era in sorted(vals):
        if best is None or vals[era] < vals[best]:
            best = era
    return best, vals


eras = sorted(spec)
pieces_of = {era: [counts(p) for m in spec[era] for p in members[m]] for era in eras}
full = {era: add(pieces_of[era]) for era in eras}
artist_profile = add([counts(p) for p in artist])
table = {}
for basis in ("marginal", "transitions"):
    era, vals = argmin(artist_profile, full, basis, 0.5)
    table[basis] = {"min_era": era, "kl_bits": {k: float(v) for k, v in vals.items()}}

target, n_sub = 3, 10
hits = {"marginal": 0, "transitions": 0}
for s in range(n_sub):
    g = Xoshiro256StarStar(42 + s)
    reduced = {}
    for era in eras:
        ps = pieces_of[era]
        if len(ps) > target:
            reduced[era] = add([ps[i] for i in g.sample(len(ps), target)])
        else:
            reduced[era] = full[era]
    for basis in hits:
        if argmin(artist_profile, reduced, basis, 0.5)[0] == table[basis]["min_era"]:
            hits[basis] += 1
out["pools"] = {
    "spec": spec,
    "members": members,
    "artist": artist,
    "alpha": 0.5,
    "table": table,
    "target_size": target,
    "n_subsamples": n_sub,
    "seed": 42,
    "concordance_marginal": hits["marginal"] / n_sub,
    "concordance_transitions": hits["transitions"] / n_sub,
}

dump("resampling.json", out)
