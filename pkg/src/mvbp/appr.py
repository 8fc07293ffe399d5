"""First-Fit based residual packer and its dual certificate.

Every item is sent to the (incarnation, bin type) pair minimising
``w_t * max_d a_ijd / b_td`` over pairs that fit; each bin-type class is
then packed by scalar First-Fit using the item's load in its critical
dimension. The critical dimension carries the largest load, so a scalar
fit implies a vector fit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InfeasibleItem, ItemTooLarge
from .model import FEAS_TOL, Bin, Instance, Packing


@dataclass(frozen=True)
class ItemSelector:
    effective_load: float
    incarnation: int
    bin_type: int
    dimension: int
    scalar_size: float


def load_table(inst: Instance, i: int) -> np.ndarray:
    """``(incarnations, T, D)`` array of ``a_ijd / b_td`` for item ``i``."""
    return inst.size_arrays[i][:, None, :] / inst.capacities[None, :, :]


def compute_selectors(inst: Instance) -> list[ItemSelector]:
    out = []
    w = inst.bin_weights
    for i in range(inst.n):
        loads = load_table(inst, i)
        peak = loads.max(axis=2)
        cand = np.where(peak <= 1.0 + FEAS_TOL, w[None, :] * peak, np.inf)
        best = cand.min() if cand.size else np.inf
        if not np.isfinite(best):
            raise InfeasibleItem(i)
        # lowest j, then lowest t among (near-)ties
        ties = np.argwhere(cand <= best + 1e-12 * max(1.0, best))
        j, t = (int(v) for v in ties[0])
        d = int(np.argmax(loads[j, t]))
        out.append(ItemSelector(float(w[t] * loads[j, t, d]), j, t, d, float(loads[j, t, d])))
    return out


def first_fit(sizes: Sequence[float], capacity: float = 1.0, tol: float = FEAS_TOL, loads=None):
    """Place each size in the leftmost bin with room; returns bins as index lists.

    If ``loads`` is a list, the per-bin loads after every placement are
    appended to it.
    """
    bins: list[list[int]] = []
    level: list[float] = []
    for k, s in enumerate(sizes):
        if s > capacity + tol:
            raise ItemTooLarge(k, s)
        for b, lv in enumerate(level):
            if lv + s <= capacity + tol:
                bins[b].append(k)
                level[b] = lv + s
                break
        else:
            bins.append([k])
            level.append(s)
        if loads is not None:
            loads.append(list(level))
    return bins


def half_full_violations(levels: Sequence[float], capacity: float = 1.0) -> int:
    """How many bins beyond the first are at most half full (0 when the invariant holds)."""
    low = sum(1 for lv in levels if lv <= capacity / 2)
    return max(0, low - 1)


def appr_pack(
    inst: Instance,
    subset: Sequence[int] | None = None,
    order: Sequence[int] | None = None,
    selectors: list[ItemSelector] | None = None,
) -> Packing:
    """Pack ``subset`` (default: all items) bin type by bin type with First-Fit.

    ``order`` overrides the scan order (default ascending item index).
    """
    if selectors is None:
        selectors = compute_selectors(inst)
    items = range(inst.n) if subset is None else subset
    if order is not None:
        if sorted(order) != sorted(items):
            raise ValueError("order must be a permutation of the packed items")
        items = order
    else:
        items = sorted(items)
    classes: dict[int, list[int]] = {}
    for i in items:
        classes.setdefault(selectors[i].bin_type, []).append(i)
    bins = []
    for t in sorted(classes):
        members = classes[t]
        tol = FEAS_TOL / max(1.0, float(inst.capacities[t].max()))
        for group in first_fit([selectors[i].scalar_size for i in members], tol=tol):
            bins.append(Bin(t, tuple((members[k], selectors[members[k]].incarnation) for k in group)))
    partial = subset is not None and len(set(subset)) != inst.n
    return Packing(tuple(bins), partial=partial)


def load_duals(inst: Instance, selectors: list[ItemSelector] | None = None) -> np.ndarray:
    """Dual vector ``y_i = effective_load_i / D``; feasible for the covering dual."""
    if selectors is None:
        selectors = compute_selectors(inst)
    return np.array([s.effective_load for s in selectors], dtype=float) / inst.dimension


def oblivious_bound(inst: Instance, y: np.ndarray, subset: Sequence[int]) -> float:
    """``2D * sum_{i in S} y_i + sum_t w_t``."""
    return 2 * inst.dimension * float(np.sum(y[list(subset)])) + float(inst.bin_weights.sum())
