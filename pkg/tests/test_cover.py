import numpy as np
import pytest
from conftest import brute_columns, brute_cover_lp, random_instance

from mvbp import lp
from mvbp.appr import load_duals
from mvbp.cover import (
    initial_columns,
    is_compatible,
    master_problem,
    separate,
    solve_cover_lp,
)
from mvbp.instances import e1, halves, two_families
from mvbp.model import BinType, Instance, Item
from mvbp.oracle import exact_cover_lp


def test_initial_columns_one_per_item():
    inst = random_instance(0, 3, m=2, D=2, T=2)
    cols = initial_columns(inst)
    assert [c.items for c in cols] == [(0,), (1,), (2,)]
    assert all(is_compatible(inst, c) for c in cols)


def test_initial_column_of_e1_item():
    c = initial_columns(e1())[0]
    assert (c.bin_type, c.items, c.assignment) == (0, (0,), (1,))


def test_empty_instance():
    sol = solve_cover_lp(Instance(1, (), (BinType((1.0,)),)))
    assert initial_columns(Instance(1, (), (BinType((1.0,)),))) == []
    assert sol.value == 0 and sol.columns == []


def test_zero_duals_give_no_column():
    assert separate(e1(), np.zeros(3)) is None


def test_pair_column_found():
    inst = Instance(1, (Item.of((0.5,)), Item.of((0.5,))), (BinType((1.0,)),))
    # exhaustive: {}, {0}, {1} and {0,1} -> only the pair has profit 1.4 > 1
    col = separate(inst, [0.7, 0.7])
    assert col is not None and col.items == (0, 1) and col.bin_type == 0


def test_no_column_when_pairs_do_not_fit():
    inst = Instance(1, tuple(Item.of((s,)) for s in (0.6, 0.7, 0.55)), (BinType((1.0,)),))
    assert all(len(C) == 1 for _, C in brute_columns(inst))
    assert separate(inst, [1.0, 1.0, 1.0]) is None


def test_single_item_value():
    inst = Instance(1, (Item.of((0.6,)),), (BinType((1.0,), 2.0), BinType((0.7,), 0.8), BinType((0.5,), 0.1)))
    assert solve_cover_lp(inst).value == pytest.approx(0.8)


def test_halves():
    inst = halves(4)
    assert len(brute_columns(inst)) == 4 + 6
    assert brute_cover_lp(inst) == pytest.approx(2)
    assert solve_cover_lp(inst).value == pytest.approx(2)


def test_two_families():
    inst = two_families(4)
    assert brute_cover_lp(inst) == pytest.approx(2)
    sol = solve_cover_lp(inst)
    assert sol.value == pytest.approx(2)
    used = sorted((sol.columns[k].bin_type, sol.columns[k].items) for k in sol.support)
    assert used == [(0, (0, 1)), (1, (2, 3))]


def test_history_nonincreasing_and_columns_compatible():
    for seed in range(8):
        inst = random_instance(seed, 9, m=2, D=2, T=2, weighted=True)
        sol = solve_cover_lp(inst)
        assert all(b <= a + 1e-9 for a, b in zip(sol.history, sol.history[1:]))
        assert all(is_compatible(inst, c) for c in sol.columns)
        assert len({c.key for c in sol.columns}) == len(sol.columns)


def test_solution_invariants():
    inst = random_instance(3, 8, m=2, D=2, T=2, weighted=True)
    sol = solve_cover_lp(inst)
    A = master_problem(inst, sol.columns).A
    assert np.all(A @ sol.x >= 1 - lp.LP_TOL)
    assert np.all(sol.x >= 0)
    assert sol.value == pytest.approx(sum(c.cost * x for c, x in zip(sol.columns, sol.x)))
    assert separate(inst, sol.y, sol.eps_lp) is None


def test_terminal_duals_nearly_feasible():
    for seed in range(6):
        inst = random_instance(seed, 8, m=2, D=2, T=2, weighted=True)
        sol = solve_cover_lp(inst)
        for t, C in brute_columns(inst):
            w = inst.bin_types[t].weight
            assert sol.y[list(C)].sum() <= w * (1 + sol.eps_lp) + lp.LP_TOL


def test_certified_against_brute_force():
    for seed in range(10):
        inst = random_instance(seed, 8, m=2, D=2, T=2, weighted=True)
        ref = brute_cover_lp(inst)
        got = solve_cover_lp(inst).value
        assert ref - 1e-6 <= got <= ref * 1.1 + 1e-6
        assert exact_cover_lp(inst) == pytest.approx(ref, abs=1e-7)


def test_load_duals_feasible_on_generated_columns():
    for seed in range(6):
        inst = random_instance(seed, 9, m=2, D=3, T=3, weighted=True)
        y = load_duals(inst)
        for c in solve_cover_lp(inst).columns:
            assert y[list(c.items)].sum() <= c.cost + lp.LP_TOL
