#!/usr/bin/env python3
"""Writes the small synthetic noun taxonomy in tests/fixtures/fig1.

    entity
    ├── alpha ──┐
    ├── beta ───┴── x (sense 1, leaf; two parents)
    └── gamma
        ├── x (sense 2)
        │   ├── lambda
        │   └── mu
        └── y

Word "x" has two senses; "y" one. Offsets are real byte positions.
"""
import pathlib

HEADER = "  1 synthetic taxonomy for graph-function tests\n"
# name -> (lemmas, parents)
SYNSETS = [
    ("entity", ["entity"], []),
    ("alpha", ["alpha"], ["entity"]),
    ("beta", ["beta"], ["entity"]),
    ("gamma", ["gamma"], ["entity"]),
    ("x1", ["x"], ["alpha", "beta"]),
    ("x2", ["x"], ["gamma"]),
    ("lambda", ["lambda"], ["x2"]),
    ("mu", ["mu"], ["x2"]),
    ("y", ["y"], ["gamma"]),
]


def record(offset, lemmas, pointers):
    words = " ".join(f"{w} 0" for w in lemmas)
    ptrs = " ".join(f"{sym} {off:08d} n 0000" for sym, off in pointers)
    body = f"{offset:08d} 03 n {len(lemmas):02x} {words} {len(pointers):03d}"
    if ptrs:
        body += " " + ptrs
    return body + " | synthetic\n"


def main():
    out = pathlib.Path(__file__).with_name("fig1")
    names = [s[0] for s in SYNSETS]
    children = {n: [c for c, _, ps in SYNSETS if n in ps] for n in names}
    # Record length depends only on lemma/pointer counts, so offsets can be
    # laid out before the pointers are filled in.
    offsets, pos = {}, len(HEADER)
    for name, lemmas, parents in SYNSETS:
        offsets[name] = pos
        pos += len(record(0, lemmas, [("@", 0)] * len(parents) + [("~", 0)] * len(children[name])))
    data = HEADER
    for name, lemmas, parents in SYNSETS:
        ptrs = [("@", offsets[p]) for p in parents] + [("~", offsets[c]) for c in children[name]]
        data += record(offsets[name], lemmas, ptrs)
    (out / "data.noun").write_text(data)

    senses = {}
    for name, lemmas, _ in SYNSETS:
        for w in lemmas:
            senses.setdefault(w.lower(), []).append(offsets[name])
    index = HEADER
    for w in sorted(senses):
        offs = " ".join(f"{o:08d}" for o in senses[w])
        index += f"{w} n {len(senses[w])} 1 @ {len(senses[w])} 0 {offs}\n"
    (out / "index.noun").write_text(index)
    (out / "noun.exc").write_text("mus mu\n")


if __name__ == "__main__":
    main()
