"""Parse + script-filter throughput on a synthetic dump, for several worker counts.

    python benchmarks/bench_pipeline.py [--entities 5000] [--jobs 1,4,8] [--dump PATH]
"""
import argparse
import os
import tempfile
import time

from paranames.kernels import BACKEND
from paranames.pipeline import scan_dump
from paranames.scripts import ScriptRegistry

from synth_dump import write_dump


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--entities", type=int, default=5000)
    ap.add_argument("--jobs", default="1,4,8")
    ap.add_argument("--dump", help="existing dump to scan instead of a synthetic one")
    args = ap.parse_args()
    registry = ScriptRegistry.default()
    with tempfile.TemporaryDirectory() as tmp:
        path = args.dump or os.path.join(tmp, "synth.json")
        if not args.dump:
            write_dump(path, args.entities)
        size = os.path.getsize(path)
        print(f"dump {size / 1e6:.1f} MB, kernels={BACKEND}, cpus={os.cpu_count()}")
        baseline = None
        for jobs in (int(j) for j in args.jobs.split(",")):
            t = time.perf_counter()
            result = scan_dump(path, registry, jobs=jobs)
            dt = time.perf_counter() - t
            same = "" if baseline is None else ("  (identical)" if result == baseline else "  (DIFFERS)")
            baseline = baseline or result
            print(f"jobs={jobs:<2d} {dt:6.2f} s  {size / dt / 1e6:7.1f} MB/s  kept={result['kept']} dropped={result['dropped']}{same}")


if __name__ == "__main__":
    main()
