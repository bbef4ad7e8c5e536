"""Collects one PASS/FAIL line per acceptance criterion."""

RESULTS = {}


def line(n, ok, detail):
    return "criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)


def record(n, ok, detail):
    RESULTS[n] = (ok, detail)
