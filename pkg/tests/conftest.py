import time
from contextlib import contextmanager

# criterion number -> (passed, seconds, note); filled by the acceptance tests
RESULTS = {}


@contextmanager
def criterion(n, note=""):
    """Record pass/fail of one acceptance criterion.  The body may change
    info["note"] to explain the outcome."""
    info = {"note": note}
    t0 = time.time()
    try:
        yield info
    except BaseException:
        RESULTS[n] = (False, time.time() - t0, info["note"])
        raise
    RESULTS[n] = (True, time.time() - t0, info["note"])


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, secs, note = RESULTS[n]
        tail = f"  [{note}]" if note else ""
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({secs:.1f}s){tail}")
