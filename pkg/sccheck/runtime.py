"""Run deeply recursive code on a worker thread with a large stack."""

import logging
import sys
import threading
from typing import Any, Callable, Dict, TypeVar

from . import config

logger = logging.getLogger(__name__)

T = TypeVar("T")

_local = threading.local()

# Guards the process-wide recursion limit and thread stack size.
_lock = threading.Lock()
_active = 0
_saved_limit = None


def _acquire_limit() -> None:
    global _active, _saved_limit
    with _lock:
        if _active == 0:
            _saved_limit = sys.getrecursionlimit()
        _active += 1
        if sys.getrecursionlimit() < config.RECURSION_LIMIT:
            sys.setrecursionlimit(config.RECURSION_LIMIT)


def _release_limit() -> None:
    global _active, _saved_limit
    with _lock:
        _active -= 1
        # Only the last live worker may lower the limit again.
        if _active == 0 and _saved_limit is not None:
            sys.setrecursionlimit(_saved_limit)
            _saved_limit = None


def active_workers() -> int:
    with _lock:
        return _active


def _start(worker: threading.Thread) -> None:
    with _lock:
        previous_size = threading.stack_size(config.STACK_MB * 1024 * 1024)
        try:
            worker.start()
        finally:
            threading.stack_size(previous_size)


def run_deep(fn: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    """Call ``fn`` on a thread whose stack and recursion limit fit |V| nested frames.

    Exceptions raised by ``fn`` propagate to the caller. Nested calls run
    inline on the current worker. Concurrent calls from several threads are
    safe: the raised recursion limit stays in place while any worker runs.
    """
    if getattr(_local, "deep", False):
        return fn(*args, **kwargs)

    outcome: Dict[str, Any] = {}

    def target() -> None:
        _local.deep = True
        try:
            outcome["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised on the calling thread
            outcome["error"] = exc

    logger.debug(f"running {getattr(fn, '__name__', fn)} on a deep worker ({config.STACK_MB} MB stack)")
    _acquire_limit()
    try:
        worker = threading.Thread(target=target, name="sccheck-deep")
        _start(worker)
        worker.join()
    finally:
        _release_limit()

    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]
