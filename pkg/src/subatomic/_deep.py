"""Run deeply recursive code on a thread with a large stack.

Constructions recurse along formula structure; a formula of size 10^5 may be
that deep.  ``deep_recursion`` moves the outermost call onto a worker thread
with a 1 GiB stack and a raised recursion limit; nested calls run inline.
"""
from __future__ import annotations

import functools
import sys
import threading

STACK_BYTES = 1 << 30
RECURSION_LIMIT = 2_000_000

_state = threading.local()
_lock = threading.Lock()


def deep_recursion(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_state, "active", False):
            return fn(*args, **kwargs)
        box: dict = {}

        def target():
            _state.active = True
            try:
                box["value"] = fn(*args, **kwargs)
            except BaseException as exc:  # re-raised in the caller's thread
                box["error"] = exc

        with _lock:
            old_size = threading.stack_size()
            threading.stack_size(STACK_BYTES)
            try:
                worker = threading.Thread(target=target, name=f"deep-{fn.__name__}")
                worker.start()
            finally:
                threading.stack_size(old_size)
        if sys.getrecursionlimit() < RECURSION_LIMIT:
            sys.setrecursionlimit(RECURSION_LIMIT)
        worker.join()
        if "error" in box:
            raise box["error"]
        return box["value"]

    return wrapper
