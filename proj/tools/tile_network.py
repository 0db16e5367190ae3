#!/usr/bin/env python3
"""Build a tiled network (k copies of a BIF network joined by a few edges).

Each copy's variables get a suffix _1.._k. Between consecutive tiles a fixed
number of edges is added from a random node of the earlier tile to a random
node of the later one, so the result stays acyclic. A node that gains a
parent keeps its original CPT rows for the first state of the new parent
and gets rows mixed with a random distribution for the other states.

    python3 tools/tile_network.py data/networks/child.bif 10 --seed 1 > data/networks/child10.bif
"""

import argparse
import random
import re
import sys


def parse(text):
    text = re.sub(r"//[^\n]*", "", text)
    variables = {}
    order = []
    for m in re.finditer(r"variable\s+(\S+)\s*\{\s*type\s+discrete\s*\[\s*(\d+)\s*\]\s*\{([^}]*)\}\s*;\s*\}", text):
        name = m.group(1)
        states = [s.strip() for s in m.group(3).split(",")]
        assert len(states) == int(m.group(2)), name
        variables[name] = states
        order.append(name)
    cpts = {}
    for m in re.finditer(r"probability\s*\(\s*([^)|]+?)\s*(?:\|\s*([^)]*))?\)\s*\{([^}]*)\}", text):
        child = m.group(1).strip()
        parents = [p.strip() for p in m.group(2).split(",")] if m.group(2) else []
        body = m.group(3)
        rows = {}
        table = re.search(r"table\s+([^;]*);", body)
        if table:
            rows[()] = [float(x) for x in table.group(1).replace(",", " ").split()]
        for r in re.finditer(r"\(([^)]*)\)\s*([^;]*);", body):
            key = tuple(s.strip() for s in r.group(1).split(","))
            rows[key] = [float(x) for x in r.group(2).replace(",", " ").split()]
        cpts[child] = (parents, rows)
    return order, variables, cpts


def configurations(parents, variables):
    configs = [()]
    for p in parents:
        configs = [c + (s,) for c in configs for s in variables[p]]
    return configs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("bif")
    ap.add_argument("copies", type=int)
    ap.add_argument("--links", type=int, default=2, help="edges between consecutive tiles")
    ap.add_argument("--mix", type=float, default=0.5, help="weight of the random distribution in new rows")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    with open(args.bif) as f:
        order, variables, cpts = parse(f.read())
    rng = random.Random(args.seed)

    names = lambda i: {v: f"{v}_{i}" for v in order}
    all_vars = {}
    all_cpts = {}
    tiles = []
    for i in range(1, args.copies + 1):
        rename = names(i)
        tiles.append([rename[v] for v in order])
        for v in order:
            all_vars[rename[v]] = variables[v]
            parents, rows = cpts[v]
            all_cpts[rename[v]] = ([rename[p] for p in parents], dict(rows))

    for i in range(1, len(tiles)):
        for _ in range(args.links):
            src = rng.choice(tiles[i - 1])
            dst = rng.choice(tiles[i])
            parents, rows = all_cpts[dst]
            if src in parents:
                continue
            new_rows = {}
            r = len(all_vars[dst])
            for key, probs in rows.items():
                for k, s in enumerate(all_vars[src]):
                    if k == 0:
                        new_rows[key + (s,)] = probs
                    else:
                        noise = [rng.random() + 1e-3 for _ in range(r)]
                        total = sum(noise)
                        mixed = [(1 - args.mix) * p + args.mix * n / total for p, n in zip(probs, noise)]
                        new_rows[key + (s,)] = mixed
            all_cpts[dst] = (parents + [src], new_rows)

    out = sys.stdout
    out.write(f"network tiled_{args.copies} {{\n}}\n")
    for tile in tiles:
        for v in tile:
            states = ", ".join(all_vars[v])
            out.write(f"variable {v} {{\n  type discrete [ {len(all_vars[v])} ] {{ {states} }};\n}}\n")
    for tile in tiles:
        for v in tile:
            parents, rows = all_cpts[v]
            if not parents:
                probs = ", ".join(f"{p:.10f}" for p in rows[()])
                out.write(f"probability ( {v} ) {{\n  table {probs};\n}}\n")
                continue
            out.write(f"probability ( {v} | {', '.join(parents)} ) {{\n")
            for key in configurations(parents, all_vars):
                probs = rows[key]
                total = sum(probs)
                out.write(f"  ({', '.join(key)}) {', '.join(f'{p / total:.10f}' for p in probs)};\n")
            out.write("}\n")


if __name__ == "__main__":
    main()
