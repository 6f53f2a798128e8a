"""The compiled kernel and the pure-Python fallback must agree exactly."""

import pytest

from arithgroups import closure
from arithgroups.closure_py import bfs_closure_py

CASES = [
    # (gens flat, n, m)
    ([(1, 1, 0, 1), (1, 0, 1, 1)], 2, 3),
    ([(1, 1, 0, 1), (1, 0, 1, 1)], 2, 5),
    ([(1, 1, 0, 1), (1, 0, 1, 1)], 2, 12),
    ([(1, 2, 0, 1), (1, 0, 2, 1)], 2, 8),
    ([(1, 2, 0, 1), (1, 0, 2, 1)], 2, 17),
    ([(1, 1, 0, 0, 1, 0, 0, 0, 1), (1, 0, 0, 0, 1, 1, 0, 0, 1)], 3, 3),
]


def backends():
    out = [("python", bfs_closure_py)]
    if closure._native is not None:
        out.append(("native", closure._native))
    return out


@pytest.mark.parametrize("gens,n,m", CASES)
def test_backends_agree(gens, n, m):
    results = {}
    for name, fn in backends():
        order, truncated, elements = fn(list(gens), n, m, 10 ** 6, True)
        results[name] = (order, truncated, sorted(elements))
    vals = list(results.values())
    assert all(v == vals[0] for v in vals)


def test_backends_agree_on_truncation():
    for name, fn in backends():
        order, truncated, elements = fn([(1, 1, 0, 1), (1, 0, 1, 1)], 2, 101, 500, True)
        assert truncated and elements is None
        assert order == 501          # cap + 1 wherever the cap fires


def test_dispatcher_fallback_for_wide_shapes():
    # n^2 * bits(m) > 63 must route to the pure engine and still be exact
    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    m = 1 << 17
    assert not closure.fits_native(2, m)
    order, truncated, _ = closure.run_closure(gens, 2, 3, 10 ** 4, False)
    assert order == 24 and not truncated


def test_force_pure_env(monkeypatch):
    monkeypatch.setenv("ARITHGROUPS_PURE", "1")
    assert closure.backend_name() == "python"
    order, _, _ = closure.run_closure([(1, 1, 0, 1), (1, 0, 1, 1)], 2, 5, 10 ** 4, False)
    assert order == 120
