"""Z/2 Betti numbers of the real moment-angle complex RZ_K via Hochster's
formula, without building any cube complex:

    b_i(RZ_K) = sum over J of reduced b_{i-1}(K_J),

K_J the full subcomplex on J, with the empty complex contributing 1 in
degree -1. Input: a {"type":"simplicial"} JSON file, or "octahedron".
"""

import itertools
import json
import sys

import numpy as np


def gf2_rank(rows):
    rows = [int(r) for r in rows if r]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def closure(facets):
    faces = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            faces.update(itertools.combinations(sorted(f), k))
    return faces


def reduced_betti(faces, top):
    """Reduced Z/2 Betti numbers in degrees -1..top of a complex given by
    all its nonempty faces (empty face added here)."""
    by_dim = {d: sorted(f for f in faces if len(f) == d + 1) for d in range(top + 1)}
    by_dim[-1] = [()]
    index = {d: {f: i for i, f in enumerate(by_dim[d])} for d in by_dim}
    ranks = {}
    for d in range(0, top + 1):
        rows = []
        for f in by_dim[d]:
            r = 0
            for j in range(len(f)):
                g = f[:j] + f[j + 1:]
                r |= 1 << index[d - 1][g]
            rows.append(r)
        ranks[d] = gf2_rank(rows)
    out = []
    for d in range(-1, top + 1):
        out.append(len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return out


def hochster(m, facets):
    faces = closure(facets)
    top = max(len(f) for f in facets) - 1
    betti = [0] * (top + 2)
    for size in range(0, m + 1):
        for j in itertools.combinations(range(m), size):
            js = set(j)
            sub = {f for f in faces if set(f) <= js}
            rb = reduced_betti(sub, top)
            for d, b in enumerate(rb):  # degree d-1
                if b and d < len(betti):
                    betti[d] += b
    return betti


def load(arg):
    if arg == "octahedron":
        return 6, [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    with open(arg) as fh:
        j = json.load(fh)
    return j["vertices"], [tuple(f) for f in j["facets"]]


if __name__ == "__main__":
    m, facets = load(sys.argv[1])
    print(json.dumps(hochster(m, facets)))
