"""Re-runs the oracles against fresh CLI artifacts and compares them with the
values frozen in the C++ tests. Usage: check_frozen.py <cuspforge> <workdir>
"""

import json
import os
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))

FROZEN = {
    "gosset": {
        3: {"vertices": 6, "simplex_facets": 2, "cross_facets": 3, "f_vector": [6, 9, 5]},
        4: {"vertices": 10, "simplex_facets": 5, "cross_facets": 5, "f_vector": [10, 30, 30, 10]},
        5: {"vertices": 16, "simplex_facets": 16, "cross_facets": 10, "f_vector": [16, 80, 160, 120, 26]},
        6: {"vertices": 27, "simplex_facets": 72, "cross_facets": 27},
        7: {"vertices": 56, "simplex_facets": 576, "cross_facets": 126},
    },
    "subdivision": {"2": 2, "3": 4, "4": 8},
    "rzk_octahedron": [1, 3, 3, 1],
    "rzk_k2": [1, 3, 3, 1],
    "rzk_k3": [1, 30, 122, 30, 1],
    "census": {"p3": 12, "p4": 80},
    "n8_total": str(2160 * 2**226),
    "abelianization_p3": 6,
}


def run(*args):
    return subprocess.run(args, check=True, capture_output=True, text=True).stdout


def oracle(name, *args):
    return json.loads(run(sys.executable, os.path.join(HERE, name), *args).strip().splitlines()[-1])


def main():
    cli, work = sys.argv[1], sys.argv[2]
    os.makedirs(work, exist_ok=True)
    for n in (3, 4):
        run(cli, "pipeline", "--n", str(n), "--out-dir", os.path.join(work, f"n{n}"))
    failures = []

    def expect(label, got, want):
        status = "ok" if got == want else "MISMATCH"
        print(f"{status} {label}: {got}")
        if got != want:
            failures.append(label)

    lines = run(sys.executable, os.path.join(HERE, "gosset_oracle.py"), "7").strip().splitlines()
    for rec in map(json.loads, lines):
        want = FROZEN["gosset"][rec["n"]]
        expect(f"gosset n={rec['n']}", {k: rec[k] for k in want}, want)
    expect("subdivision", oracle("subdivision_oracle.py"), FROZEN["subdivision"])
    expect("RZ(octahedron)", oracle("hochster_oracle.py", "octahedron"), FROZEN["rzk_octahedron"])
    expect("RZ(K2)", oracle("hochster_oracle.py", os.path.join(work, "n3", "k2.json")), FROZEN["rzk_k2"])
    expect("RZ(K3)", oracle("hochster_oracle.py", os.path.join(work, "n4", "k3.json")), FROZEN["rzk_k3"])
    p3, p4 = os.path.join(work, "n3", "p3.json"), os.path.join(work, "n4", "p4.json")
    c = oracle("census_oracle.py", p3, p4)
    expect("census", {"p3": c[p3], "p4": c[p4]}, FROZEN["census"])
    expect("n=8 total", c["n8_formula"], FROZEN["n8_total"])
    expect("abelianization P3", oracle("abelianization_oracle.py", p3)[p3]["z2_factors"], FROZEN["abelianization_p3"])
    # The library's own answers, read back from the artifacts.
    with open(os.path.join(work, "n4", "homology4bar.json")) as fh:
        expect("library RZ(K3)", json.load(fh)["betti"], FROZEN["rzk_k3"])
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
