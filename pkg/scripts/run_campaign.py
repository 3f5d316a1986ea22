import argparse
import logging
import sys
import time
from pathlib import Path

# Ensure repo root is on sys.path so `sccheck` is importable when running from project root
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from sccheck.algorithm import Mutation, SeededOrder, fuel_bound, tarjan, tarjan_fueled
from sccheck.checker import first_failures, run_checked
from sccheck.fast_scc import tarjan_fast
from sccheck.gen import generate
from sccheck.graph import Graph
from sccheck.models import GraphModel, GraphSpec
from sccheck.oracle import scc_oracle

PROBABILITIES = (0.0, 0.1, 0.3, 0.5, 0.9, 1.0)

# Small graphs on which every injected bug shows up.
MUTATION_GRAPHS = [
    Graph.from_edges(2, [(0, 1), (1, 0)]),
    Graph.from_edges(1, [(0, 0)]),
    Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)]),
    Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)]),
    Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]),
]


def oracle_campaign(count: int) -> int:
    mismatches = 0
    for i in range(count):
        spec = GraphSpec(model=GraphModel.GNP, n=i % 9, p=PROBABILITIES[(i // 9) % len(PROBABILITIES)], seed=i)
        g = generate(spec)
        expected = scc_oracle(g)
        results = {
            "tarjan": tarjan(g),
            "tarjan_fueled": tarjan_fueled(g, fuel_bound(g)),
            "tarjan_fast": tarjan_fast(g),
        }
        for name, partition in results.items():
            if partition != expected:
                mismatches += 1
                print(f"  MISMATCH {name} on {spec}: {partition!r} != {expected!r}")
    return mismatches


def checked_campaign(count: int) -> int:
    failures = 0
    for i in range(count):
        n = 1 + i % 30
        spec = GraphSpec(model=GraphModel.GNP, n=n, p=min(1.0, 2.0 / n), seed=1000 + i)
        g = generate(spec)
        partition, events, summary = run_checked(g)
        if not summary.ok or partition != scc_oracle(g):
            failures += 1
            for report in first_failures(events):
                print(f"  {spec}: {report}")
    return failures


def order_campaign(count: int, orders: int) -> int:
    disagreements = 0
    for i in range(count):
        spec = GraphSpec(model=GraphModel.GNP, n=i % 11, p=0.25, seed=5000 + i)
        g = generate(spec)
        partitions = {tarjan(g, SeededOrder(k)) for k in range(orders)}
        if len(partitions) != 1:
            disagreements += 1
            print(f"  {spec}: {len(partitions)} distinct partitions")
    return disagreements


def mutation_campaign() -> int:
    undetected = 0
    extra = [generate(GraphSpec(model=GraphModel.GNP, n=8, p=0.3, seed=s)) for s in range(20)]
    for mutation in Mutation:
        caught = None
        for g in MUTATION_GRAPHS + extra:
            _, events, summary = run_checked(g, mutation=mutation)
            if not summary.ok:
                caught = (g, summary.first_failure)
                break
        if caught is None:
            undetected += 1
            print(f"  {mutation.value}: NOT DETECTED")
        else:
            g, report = caught
            print(f"  {mutation.value}: caught by {report.clause_name} on {g!r}")
    return undetected


def scale_campaign(count: int, n: int) -> int:
    mismatches = 0
    for i in range(count):
        spec = GraphSpec(model=GraphModel.GNP, n=n, p=min(1.0, 1.5 / n), seed=9000 + i)
        g = generate(spec)
        if tarjan(g) != tarjan_fast(g):
            mismatches += 1
            print(f"  MISMATCH on {spec}")
    return mismatches


def main():
    parser = argparse.ArgumentParser(description="Run the SCC acceptance campaigns.")
    parser.add_argument(
        "--only",
        choices=["oracle", "checked", "orders", "mutations", "scale"],
        action="append",
        help="Run only the named campaign(s) (default: all)",
    )
    parser.add_argument("--scale-n", type=int, default=10_000, help="Vertex count for the scale campaign")
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING)

    selected = set(args.only or ["oracle", "checked", "orders", "mutations", "scale"])
    campaigns = [
        ("oracle", "Oracle equivalence (2000 graphs)", lambda: oracle_campaign(2000)),
        ("checked", "Checked runs (300 graphs)", lambda: checked_campaign(300)),
        ("orders", "Choice-order independence (100 graphs x 10 orders)", lambda: order_campaign(100, 10)),
        ("mutations", "Mutation sensitivity (6 injections)", mutation_campaign),
        ("scale", f"Scale differential (20 graphs, n={args.scale_n})", lambda: scale_campaign(20, args.scale_n)),
    ]

    print("=== Campaign Report ===")
    total_failures = 0
    for key, title, run in campaigns:
        if key not in selected:
            continue
        started = time.perf_counter()
        failures = run()
        elapsed = time.perf_counter() - started
        status = "OK" if failures == 0 else f"{failures} FAILURE(S)"
        print(f"{title}: {status} in {elapsed:.1f}s")
        total_failures += failures
    sys.exit(1 if total_failures else 0)


if __name__ == "__main__":
    main()
