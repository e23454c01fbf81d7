"""Cusp census by brute force: the 2^f copies of P, glued across the facets
through each ideal vertex, split into connected components (networkx).
Input: an ideal polytope face-lattice JSON. Also prints the n = 8 formula
value 2160 * 2^(240 - 14) with Python integers.
"""

import json
import sys

import networkx as nx


def census(path):
    with open(path) as fh:
        j = json.load(fh)
    f = j["facets"]
    total = 0
    for face in j["faces"]:
        if face["rank"] != 0 or face["mark"] != "ideal":
            continue
        g = nx.Graph()
        g.add_nodes_from(range(2**f))
        for copy in range(2**f):
            for i in face["facet_set"]:
                g.add_edge(copy, copy ^ (1 << i))
        total += nx.number_connected_components(g)
    return total


if __name__ == "__main__":
    out = {p: census(p) for p in sys.argv[1:]}
    out["n8_formula"] = str(2160 * 2 ** (240 - 14))
    print(json.dumps(out))
