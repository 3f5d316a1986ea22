import sys
import threading
from concurrent.futures import ThreadPoolExecutor

import pytest

from sccheck import runtime
from sccheck.algorithm import tarjan
from sccheck.graph import Graph
from sccheck.partition import SccPartition


def chain(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def depth(k):
    return 0 if k == 0 else 1 + depth(k - 1)


def test_errors_reach_the_caller():
    def boom():
        raise KeyError("inside")

    with pytest.raises(KeyError):
        runtime.run_deep(boom)


def test_nested_calls_run_inline():
    assert runtime.run_deep(lambda: runtime.run_deep(depth, 5000)) == 5000


def test_limit_is_restored_after_the_last_worker():
    before = sys.getrecursionlimit()
    runtime.run_deep(depth, 100)
    assert sys.getrecursionlimit() == before
    assert runtime.active_workers() == 0


def test_first_worker_finishing_keeps_the_limit_for_the_second():
    a_inside = threading.Event()
    b_inside = threading.Event()
    a_finished = threading.Event()
    results = {}

    def first():
        a_inside.set()
        b_inside.wait(10)
        return "first"

    def second():
        b_inside.set()
        a_finished.wait(10)
        return depth(20_000)

    def call(name, fn):
        try:
            results[name] = runtime.run_deep(fn)
        except BaseException as exc:
            results[name] = exc

    ta = threading.Thread(target=call, args=("first", first))
    ta.start()
    a_inside.wait(10)
    tb = threading.Thread(target=call, args=("second", second))
    tb.start()
    ta.join(30)
    a_finished.set()
    tb.join(60)

    assert results == {"first": "first", "second": 20_000}
    assert runtime.active_workers() == 0


def test_overlapping_deep_tarjan_runs():
    sizes = [4_000, 20_000, 8_000, 12_000]
    with ThreadPoolExecutor(max_workers=len(sizes)) as pool:
        partitions = list(pool.map(lambda n: tarjan(chain(n)), sizes))
    for n, partition in zip(sizes, partitions):
        assert partition == SccPartition([v] for v in range(n))
