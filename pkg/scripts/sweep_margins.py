#!/usr/bin/env python3
"""Run every certification sweep at desk scale and save the evidence.

Writes one JSON report and one per-point margin CSV per claim into out/
(override with --out-dir).  The margin CSVs are what to plot to see how far
from sharp each inequality runs.
"""

import argparse
import csv
import time
from pathlib import Path

from sysbound import bounds, certify

HEADERS = {
    "techlem2": ["vc", "worst_ell", "margin"],
    "crossing": ["v", "crossing_volume", "margin"],
    "length-lemma": ["trace_re", "trace_im", "margin"],
    "cubic": ["vc", "x", "margin"],
}


def run(name, fn, out_dir, jobs):
    rows = []
    start = time.perf_counter()
    report = fn(rows)
    elapsed = time.perf_counter() - start
    (out_dir / f"{name}.json").write_text(report.to_json() + "\n")
    with open(out_dir / f"{name}-margins.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADERS[name])
        writer.writerows(rows)
    print(
        f"{name:14s} {report.status:4s}  worst margin {report.worst_margin:.6g} "
        f"({report.points_checked} points, {elapsed:.1f}s)"
    )
    return report.passed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=certify.DEFAULT_SEED)
    args = parser.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    ok = True
    ok &= run(
        "techlem2",
        lambda rows: certify.certify_cusp_trace_bound(
            certify.GridSpec(bounds.MIN_CUSP_VOLUME_AT_WAIST_2PI, 1e6, 200, "log"),
            10000,
            margin_rows=rows,
            jobs=args.jobs,
        ),
        out_dir,
        args.jobs,
    )
    ok &= run(
        "crossing",
        lambda rows: certify.certify_crossing(
            certify.GridSpec(0.1, 1e6, 100, "log"), margin_rows=rows, jobs=args.jobs
        ),
        out_dir,
        args.jobs,
    )
    ok &= run(
        "length-lemma",
        lambda rows: certify.certify_length_lemma(
            100000, 100.0, args.seed, margin_rows=rows
        ),
        out_dir,
        args.jobs,
    )
    ok &= run(
        "cubic",
        lambda rows: certify.certify_cubic_claims(
            certify.GridSpec(bounds.CUSP_VOLUME_THRESHOLD, 1e6, 200, "log"),
            margin_rows=rows,
        ),
        out_dir,
        args.jobs,
    )
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
