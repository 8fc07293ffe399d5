import itertools

import numpy as np
import pytest
from scipy.optimize import linprog

from mvbp.generate import GeneratorParams, generate
from mvbp.model import Incarnation, Instance, Item


def random_instance(seed, n, m=1, D=1, T=1, weighted=False, size_hi=0.6, item_weights=False):
    return generate(
        GeneratorParams(
            n=n, m=m, D=D, T=T, size_lo=0.05, size_hi=size_hi,
            weight_lo=1.0 if not item_weights else 0.5,
            weight_hi=1.0 if not item_weights else 10.0,
            capacity_lo=0.6 if T > 1 else 1.0, capacity_hi=1.0,
            bin_weight_lo=0.5 if weighted else 1.0, bin_weight_hi=1.5 if weighted else 1.0,
            seed=seed,
        )
    )


def random_knapsack(rng, n, m, D):
    items = []
    for _ in range(n):
        k = int(rng.integers(1, m + 1))
        items.append(
            Item(tuple(Incarnation(tuple(rng.uniform(0, 0.7, D)), float(rng.uniform(0, 10))) for _ in range(k)))
        )
    return Instance(D, tuple(items))


def brute_mmk(inst):
    """Best knapsack value by trying every incarnation choice (independent of the package)."""
    best = 0.0
    choices = [range(-1, len(it.incarnations)) for it in inst.items]
    for pick in itertools.product(*choices):
        load = np.zeros(inst.dimension)
        value = 0.0
        for it, j in zip(inst.items, pick):
            if j >= 0:
                load += it.incarnations[j].sizes
                value += it.incarnations[j].weight
        if np.all(load <= 1 + 1e-9):
            best = max(best, value)
    return best


def brute_columns(inst):
    """All (type, item set) pairs that some incarnation map makes compatible."""
    out = []
    for t, bt in enumerate(inst.bin_types):
        cap = np.array(bt.capacities)
        for k in range(1, inst.n + 1):
            for C in itertools.combinations(range(inst.n), k):
                for pick in itertools.product(*(range(len(inst.items[i].incarnations)) for i in C)):
                    load = sum(np.array(inst.items[i].incarnations[j].sizes) for i, j in zip(C, pick))
                    if np.all(load <= cap + 1e-9):
                        out.append((t, C))
                        break
    return out


def brute_cover_lp(inst):
    """Covering LP over every compatible set, solved by scipy's HiGHS."""
    cols = brute_columns(inst)
    if inst.n == 0:
        return 0.0
    A = np.zeros((inst.n, len(cols)))
    for k, (_, C) in enumerate(cols):
        A[list(C), k] = 1
    c = [inst.bin_types[t].weight for t, _ in cols]
    res = linprog(c, A_ub=-A, b_ub=-np.ones(inst.n), method="highs")
    assert res.status == 0
    return res.fun


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.SUMMARY:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.SUMMARY:
        terminalreporter.write_line(line)
