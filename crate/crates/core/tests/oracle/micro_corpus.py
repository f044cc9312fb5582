"""Micro-corpus fixture: 3 composers x 12 chord-stream pieces, forced tonics.

Writes the piece files, a manifest and key overrides, then every expected
per-composer value computed from the labels alone.
"""

import json
import os
import random

from mpmath import log

from common import FIXTURES, DEGREES, K, add, collapse, counts, dump, entropy, flat, js, kl, smooth, zipf

NAMES = [["C"], ["C#", "Db"], ["D"], ["D#", "Eb"], ["E", "Fb"], ["F", "E#"], ["F#", "Gb"],
         ["G"], ["G#", "Ab"], ["A"], ["A#", "Bb"], ["B", "Cb"]]
LETTER = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
INTERVAL = {0: "I", 1: "bII", 2: "II", 3: "bIII", 4: "III", 5: "IV", 6: "#IV",
            7: "V", 8: "bVI", 9: "VI", 10: "bVII", 11: "VII"}
MINOR_AT = {0: "i", 5: "iv", 7: "v"}


def parse(label):
    pc = LETTER[label[0]]
    rest = label[1:]
    minor = rest.endswith("m")
    if minor:
        rest = rest[:-1]
    pc = (pc + {"": 0, "#": 1, "b": -1}[rest]) % 12
    return pc, minor


def degree(label, tonic):
    pc, minor = parse(label)
    iv = (pc - tonic) % 12
    sym = MINOR_AT[iv] if minor and iv in MINOR_AT else INTERVAL[iv]
    return DEGREES.index(sym)


rng = random.Random(1234)
root = os.path.join(FIXTURES, "micro")
os.makedirs(root, exist_ok=True)

styles = {
    "alpha": {0: 9, 5: 4, 7: 7, 9: 2, 2: 2},
    "beta": {0: 6, 3: 3, 8: 3, 10: 3, 7: 4, 5: 2},
    "gamma": {0: 4, 1: 2, 4: 2, 6: 2, 7: 3, 11: 2, 9: 2},
}
entries = []
overrides = []
sequences = {}
for composer, style in styles.items():
    for k in range(12):
        pid = "%s-%02d" % (composer, k)
        tonic = rng.randrange(12)
        mode = rng.choice(["major", "minor"])
        labels = []
        for _ in range(rng.randint(15, 40)):
            if rng.random() < 0.05:
                labels.append("N")
                continue
            iv = rng.choices(list(style), weights=list(style.values()))[0]
            name = rng.choice(NAMES[(tonic + iv) % 12])
            labels.append(name + ("m" if rng.random() < 0.4 else ""))
        if k % 2 == 0:
            fname = pid + ".csv"
            lines = ["onset_s,label"] + ["%g,%s" % (0.5 * i, l) for i, l in enumerate(labels)]
        else:
            fname = pid + ".jsonl"
            lines = [json.dumps({"onset_s": 0.5 * i, "label": l}) for i, l in enumerate(labels)]
        with open(os.path.join(root, fname), "w") as f:
            f.write("\n".join(lines) + "\n")
        entries.append({"piece_id": pid, "path": fname, "composer": composer,
                        "era": "synthetic", "group": "historical"})
        overrides.append("%s=%d,%s" % (pid, tonic, mode))
        kept = [l for l in labels if l != "N"]
        seq = collapse([degree(l, tonic) for l in kept])
        sequences[pid] = {
            "composer": composer,
            "degrees": [DEGREES[d] for d in seq],
            "dropped_fraction": (len(labels) - len(kept)) / len(labels),
        }

with open(os.path.join(root, "manifest.json"), "w") as f:
    json.dump({"entries": entries}, f, indent=1)
    f.write("\n")
with open(os.path.join(root, "overrides.txt"), "w") as f:
    f.write("\n".join(overrides) + "\n")

names = sorted(styles)
alpha = 0.5
totals = {n: add([counts([DEGREES.index(s) for s in sequences[p]["degrees"]])
                  for p in sequences if sequences[p]["composer"] == n]) for n in names}
marg = [smooth(flat(totals[n], "marginal"), alpha) for n in names]
trans = [smooth(flat(totals[n], "transitions"), alpha) for n in names]

expected = {
    "alpha": alpha,
    "names": names,
    "sequences": sequences,
    "marginal_counts": {n: totals[n]["marginal"] for n in names},
    "entropy": {n: float(entropy(marg[i])) for i, n in enumerate(names)},
    "kl_marginal": [[float(kl(p, q)) for q in marg] for p in marg],
    "kl_transitions": [[float(kl(p, q)) for q in trans] for p in trans],
    "js_marginal": [[float(js(p, q)) for q in marg] for p in marg],
    "zipf_marginal": {n: zipf(marg[i]) for i, n in enumerate(names)},
    "zipf_transitions": {n: zipf(trans[i]) for i, n in enumerate(names)},
    "marginal_sorted": {n: sorted((float(x) for x in marg[i]), reverse=True)
                        for i, n in enumerate(names)},
}
dump("micro_expected.json", expected)
