import argparse
import logging
import sys
from pathlib import Path

# Ensure repo root is on sys.path so `sccheck` is importable when running from project root
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sccheck.config import DEFAULT_BENCH_SIZES
from sccheck.fast_scc import bench_csv, bench_linear, spec_family
from sccheck.models import GraphModel, GraphSpec

RATIO_RANGE = (1.3, 3.5)


def main():
    parser = argparse.ArgumentParser(description="Doubling benchmark for the iterative SCC solver.")
    parser.add_argument("--deg", type=float, default=8.0, help="Expected out-degree (default: 8)")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument(
        "--sizes",
        default=",".join(map(str, DEFAULT_BENCH_SIZES)),
        help="Comma-separated, strictly increasing vertex counts",
    )
    parser.add_argument("--out", type=Path, help="Write the CSV table here instead of stdout")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO)

    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    spec = GraphSpec(model=GraphModel.GNP, n=sizes[0], p=min(1.0, args.deg / sizes[0]), seed=args.seed)
    frame = bench_linear(spec_family(spec, args.deg), sizes, repeats=args.repeats)

    csv = bench_csv(frame)
    if args.out:
        args.out.write_text(csv)
    else:
        print(csv, end="")

    ratios = frame["ratio"].dropna()
    low, high = RATIO_RANGE
    outside = ratios[(ratios < low) | (ratios > high)]
    print("=== Doubling Report ===", file=sys.stderr)
    for size, ratio in zip(frame["size"][1:], ratios):
        print(f"n={size}: ratio {ratio:.2f}", file=sys.stderr)
    print(f"Total time: {frame['millis'].sum() / 1000.0:.1f}s", file=sys.stderr)
    if len(outside):
        print(f"{len(outside)} ratio(s) outside [{low}, {high}]", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
