import random
from functools import lru_cache

import pytest

from hopfz.hopf import builtin_algebras
from hopfz.ograph import OGraph, validate


@lru_cache(maxsize=None)
def algebras():
    return builtin_algebras()


def random_valid_graphs(seed, count, min_n=1, max_n=4):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_n, max_n)
        passes = [(v, s) for v in range(1, n + 1) for s in "ou"]
        rng.shuffle(passes)
        g = OGraph(n, tuple(rng.choice((1, -1)) for _ in range(n)), tuple(passes))
        if validate(g).ok:
            out.append(g)
    return out


@pytest.fixture(scope="session")
def builtins():
    return algebras()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
