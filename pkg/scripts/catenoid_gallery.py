#!/usr/bin/env python3
"""Build the reference gallery: one mesh per catenoid family and parameter.

Writes OBJ meshes, diagnostics CSVs and reports under out/gallery/.  The
parameter choices (a = 3/2 and 4, b = 3/2, c = 1/2) are the ones used for
the figures; view the OBJ files in any mesh viewer, the initial circle is
the v = 0 vertex row.
"""

import pathlib
import sys

from lightcone.cli import main

CASES = [
    ("elliptic_a1.5", ["--family", "elliptic", "--param", "1.5"]),
    ("elliptic_a4", ["--family", "elliptic", "--param", "4"]),
    ("hyperbolic_b1.5", ["--family", "hyperbolic", "--param", "1.5"]),
    ("parabolic_c0.5", ["--family", "parabolic", "--param", "0.5"]),
]


def run(base: pathlib.Path) -> int:
    for name, flags in CASES:
        rc = main(["catenoid", *flags, "--out", str(base / name)])
        if rc != 0:
            return rc
    print(f"gallery written under {base}")
    return 0


if __name__ == "__main__":
    target = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("out/gallery")
    sys.exit(run(target))
