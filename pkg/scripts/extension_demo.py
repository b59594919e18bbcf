#!/usr/bin/env python3
"""Demonstrate the analytic extension across the lightlike circle.

Solves the non-rotational boundary data on its own chart, then writes both
closed-form charts of the surface: the base chart covers the half where the
parametrization is conformal, the extension chart continues through the
degenerate circle (the ut = 0 column, carried as NaN curvature rows in the
CSV because the induced metric collapses there).
"""

import json
import pathlib
import sys

from lightcone.cli import main


def run(base: pathlib.Path) -> int:
    base.mkdir(parents=True, exist_ok=True)
    job = {
        "bjorling": {
            "gamma": {"m11": "u^2", "m12": "u", "m21": "u", "m22": "1"},
            "tangent": {"m11": "0.5*u", "m12": "0.5 + i",
                        "m21": "0.5 - i", "m22": "0.5/u"},
            "interval": [0.5, 2.0],
        },
        "grid": {"u_range": [0.5, 2.0], "v_range": [-0.75, 0.75],
                 "n_u": 31, "n_v": 21},
    }
    job_path = base / "nonrotational_job.json"
    job_path.write_text(json.dumps(job, indent=2, sort_keys=True))
    rc = main(["solve", "--input", str(job_path), "--out", str(base / "solved")])
    if rc != 0:
        return rc
    rc = main(["extend", "--param", "0.5", "--out", str(base / "charts")])
    if rc != 0:
        return rc
    print(f"extension demo written under {base}")
    return 0


if __name__ == "__main__":
    target = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("out/extension")
    sys.exit(run(target))
