#!/usr/bin/env python3
"""Writes the expected 101 x 101 output bitmap of the diamond fixture.

Row i is x1 = i/100, column j is x2 = j/100, x3 = 0.5. A cell is '?' when
some active neuron's pre-activation lies within MARGIN of its bias, since
the printed weights make those bits depend on rounding.
"""
import json
import sys

MARGIN = 5e-3


def load(path):
    with open(path) as f:
        doc = json.load(f)
    layers = []
    for layer in doc["base"]["stages"][0]["layers"]:
        layers.append([(n["support"], [float(w) for w in n["weights"]], float(n["bias"])) for n in layer])
    return layers


def active_sets(layers):
    active = [set() for _ in layers]
    active[-1] = {0}
    for l in range(len(layers) - 1, 0, -1):
        for h in active[l]:
            active[l - 1].update(layers[l][h][0])
    return active


def cell(layers, active, x):
    values = list(x)
    unsure = False
    for l, layer in enumerate(layers):
        out = []
        for h, (support, weights, bias) in enumerate(layer):
            z = 0.0
            for j, w in zip(support, weights):
                z += w * values[j]
            if h in active[l] and abs(z - bias) < MARGIN:
                unsure = True
            out.append(1 if z > bias else 0)
        values = out
    return "?" if unsure else str(values[0])


def main():
    if len(sys.argv) != 3:
        sys.exit("usage: diamond_bitmap.py FIXTURE.json OUT.txt")
    layers = load(sys.argv[1])
    active = active_sets(layers)
    rows = []
    for i in range(101):
        rows.append("".join(cell(layers, active, (i / 100, j / 100, 0.5)) for j in range(101)))
    with open(sys.argv[2], "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
