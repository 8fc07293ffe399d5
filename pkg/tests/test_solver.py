import math

import numpy as np
import pytest
from conftest import random_instance

from mvbp.appr import load_duals
from mvbp.cover import Column, CoverLpSolution, solve_cover_lp
from mvbp.errors import EmptySupport, InfeasibleItem
from mvbp.instances import e1, halves, two_families
from mvbp.model import BinType, Instance, Item, check_packing, packing_cost
from mvbp.oracle import exact_mvbp
from mvbp.solver import (
    greedy_phase,
    solve_unweighted,
    solve_weighted,
    solve_weighted_wrapped,
    cost_bound,
)


def test_greedy_empty_instance():
    inst = Instance(1, (), (BinType((1.0,)),))
    cover = solve_cover_lp(inst)
    g = greedy_phase(inst, cover, np.zeros(0), 2)
    assert g.chosen == [] and g.uncovered == set()


def test_greedy_single_covering_column():
    inst = Instance(1, (Item.of((0.3,)), Item.of((0.3,))), (BinType((1.0,)),))
    cover = CoverLpSolution([Column(0, (0, 1), (0, 0), 1.0)], np.array([1.0]), 1.0, np.array([0.5, 0.5]), 0.1, [1.0], [0])
    g = greedy_phase(inst, cover, load_duals(inst), 2)
    assert len(g.chosen) == 1 and not g.uncovered


def test_greedy_halves_trace():
    inst = halves(4)
    cover = solve_cover_lp(inst)
    assert cover.value == pytest.approx(2)
    g = greedy_phase(inst, cover, load_duals(inst), 2)
    # threshold ln 2 * 2 ~ 1.386 is passed after the second unit column
    assert g.threshold == pytest.approx(math.log(2) * 2)
    assert len(g.chosen) == 2
    assert g.weight == 2 and g.weight < g.threshold + 1


def test_greedy_empty_support_raises():
    inst = halves(2)
    cover = CoverLpSolution([], np.zeros(0), 1.0, np.zeros(2), 0.1, [1.0], [])
    with pytest.raises(EmptySupport):
        greedy_phase(inst, cover, load_duals(inst), 2)


def test_single_item_uses_cheapest_fitting_type():
    inst = Instance(1, (Item.of((0.6,)),), (BinType((1.0,), 2.0), BinType((0.7,), 0.8), BinType((0.5,), 0.1)))
    rep = solve_weighted(inst)
    assert rep.cost == pytest.approx(0.8)
    assert [b.bin_type for b in rep.packing.bins] == [1]


def test_halves_cost_and_bound():
    inst = halves(4)
    rep = solve_weighted(inst)
    assert exact_mvbp(inst)[1] == 2
    assert rep.cost == 2
    assert rep.bound == pytest.approx((math.log(2) + 1) * 2 + 1 + 1)
    assert rep.bound_ok


def test_e1_bound_fields():
    rep = solve_weighted(e1())
    assert rep.sum_weights == 1.5 and rep.w_max == 1.0
    assert rep.bound == pytest.approx((math.log(4) + 1) * rep.opt_star + 2.5)
    assert rep.cost <= rep.bound
    assert check_packing(e1(), rep.packing)


def test_unweighted_examples():
    one = Instance(3, (Item.of((0.2, 0.3, 0.1)),), (BinType((1, 1, 1)),))
    rep = solve_unweighted(one)
    assert len(rep.packing) == 1
    assert rep.bound == pytest.approx((math.log(6) + 1) * 1 + 2)
    rep = solve_unweighted(halves(4))
    assert len(rep.packing) == 2 and rep.bound == pytest.approx((math.log(2) + 1) * 2 + 2)


def test_unweighted_rejects_weights():
    with pytest.raises(ValueError):
        solve_unweighted(e1())


def test_duplicate_bin_types_same_cost():
    for seed in range(6):
        inst = random_instance(seed, 8, m=2, D=2, T=1)
        doubled = inst.with_bin_types(inst.bin_types * 3)
        a, b = solve_unweighted(inst), solve_unweighted(doubled)
        assert a.cost == b.cost
        assert b.bound - a.bound == pytest.approx(2)


def test_wrapper_single_type_matches():
    inst = halves(5)
    a, b = solve_weighted(inst), solve_weighted_wrapped(inst)
    assert a.cost == b.cost and a.packing == b.packing and b.subsolves == 1


def test_wrapper_counts_subsolves():
    inst = Instance(1, (Item.of((0.3,)),), (BinType((1.0,)), BinType((0.5,)), BinType((0.4,))))
    assert solve_weighted_wrapped(inst).subsolves == 7


def test_wrapper_skips_infeasible_subsets():
    inst = Instance(1, (Item.of((0.9,)),), (BinType((1.0,)), BinType((0.5,))))
    assert solve_weighted_wrapped(inst).subsolves == 2


def test_wrapper_beats_unwrapped_on_expensive_type():
    # type 0 is huge and costly; per unit of load it looks cheapest, so the
    # residual packer sends leftovers there. The optimum uses type 1 only.
    items = tuple(Item.of((0.3,)) for _ in range(6))
    inst = Instance(1, items, (BinType((10.0,), 20.0), BinType((0.35,), 1.0)))
    assert exact_mvbp(inst)[1] == 6
    plain, wrapped = solve_weighted(inst), solve_weighted_wrapped(inst)
    assert plain.residual_cost == 20
    assert wrapped.cost == 6 < plain.cost
    assert wrapped.bin_types == (1,)


def test_greedy_invariants_random():
    for seed in range(15):
        inst = random_instance(seed, 9, m=2, D=int(seed % 3) + 1, T=2, weighted=True)
        rep = solve_weighted(inst)
        g, cover = rep.greedy, rep.cover
        y = load_duals(inst)
        w_max = inst.bin_weights.max()
        assert g.weight < math.log(2 * inst.dimension) * cover.value + w_max + 1e-9
        prod, mass = 1.0, y.sum()
        for step in g.steps:
            prod *= max(0.0, 1 - step.weight / cover.value)
            assert step.residual_mass <= prod * mass + 1e-7
        if g.reached_threshold and g.uncovered:
            assert y[sorted(g.uncovered)].sum() <= y.sum() / (2 * inst.dimension) + 1e-7
        assert check_packing(inst, rep.packing)
        assert rep.bound_ok
        assert rep.cost == pytest.approx(packing_cost(inst, rep.packing))
        assert rep.cost == pytest.approx(rep.greedy_cost + rep.residual_cost)


def test_multiply_covered_items_kept_once():
    for seed in range(10):
        inst = random_instance(seed, 10, m=2, D=2, T=2)
        rep = solve_weighted(inst)
        items = [i for b in rep.packing.bins for i, _ in b.assignments]
        assert sorted(items) == list(range(inst.n))


def test_two_families_solved_optimally():
    rep = solve_weighted_wrapped(two_families(4))
    assert rep.cost == 2


def test_infeasible_item_propagates():
    inst = Instance(1, (Item.of((1.5,)),), (BinType((1.0,)),))
    for f in (solve_weighted, solve_weighted_wrapped):
        with pytest.raises(InfeasibleItem):
            f(inst)


def test_zero_size_items():
    inst = Instance(2, tuple(Item.of((0.0, 0.0)) for _ in range(4)), (BinType((1, 1)), BinType((1, 1), 0.0)))
    rep = solve_weighted(inst)
    assert rep.opt_star == 0
    assert rep.greedy.chosen == []
    assert rep.cost <= 1.0 and check_packing(inst, rep.packing)


def test_cost_bound_formula():
    assert cost_bound(2.0, 1, 1.0, 1.0) == pytest.approx((math.log(2) + 1) * 2 + 2)


def test_fallback_beyond_tmax():
    inst = halves(3)
    rep = solve_weighted_wrapped(inst.with_bin_types(inst.bin_types * 3), t_max=2)
    assert rep.fallback and rep.cost == 2
