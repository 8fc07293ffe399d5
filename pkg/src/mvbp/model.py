"""Instances, packings and the feasibility checker.

Indices are 0-based everywhere. Sizes are stored as plain tuples so that
instances hash and compare by value; numpy views are built lazily for the
numerical code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InfeasibleItem

FEAS_TOL = 1e-9


@dataclass(frozen=True)
class Incarnation:
    sizes: tuple[float, ...]
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(float(s) for s in self.sizes))
        object.__setattr__(self, "weight", float(self.weight))


@dataclass(frozen=True)
class Item:
    incarnations: tuple[Incarnation, ...]

    def __post_init__(self):
        object.__setattr__(self, "incarnations", tuple(self.incarnations))

    @classmethod
    def of(cls, *sizes, weights=None):
        """Shorthand: ``Item.of((0.5, 0.2), (0.3, 0.4))``."""
        if weights is None:
            weights = [1.0] * len(sizes)
        return cls(tuple(Incarnation(s, w) for s, w in zip(sizes, weights)))


@dataclass(frozen=True)
class BinType:
    capacities: tuple[float, ...]
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "capacities", tuple(float(c) for c in self.capacities))
        object.__setattr__(self, "weight", float(self.weight))


@dataclass(frozen=True)
class Instance:
    """An MVBP instance, or an MMK instance when ``bin_types`` is empty.

    A pure knapsack instance has an implicit single knapsack of capacity 1
    in every dimension; incarnation weights are the profits.
    """

    dimension: int
    items: tuple[Item, ...] = ()
    bin_types: tuple[BinType, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "bin_types", tuple(self.bin_types))

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def T(self) -> int:
        return len(self.bin_types)

    @property
    def m(self) -> int:
        return max((len(it.incarnations) for it in self.items), default=0)

    @cached_property
    def size_arrays(self) -> list[np.ndarray]:
        """Per item, an (incarnations x D) array of sizes."""
        D = self.dimension
        return [
            np.array([inc.sizes for inc in it.incarnations], dtype=float).reshape(-1, D)
            for it in self.items
        ]

    @cached_property
    def weight_arrays(self) -> list[np.ndarray]:
        return [np.array([inc.weight for inc in it.incarnations], dtype=float) for it in self.items]

    @cached_property
    def capacities(self) -> np.ndarray:
        return np.array([b.capacities for b in self.bin_types], dtype=float).reshape(-1, self.dimension)

    @cached_property
    def bin_weights(self) -> np.ndarray:
        return np.array([b.weight for b in self.bin_types], dtype=float)

    def with_bin_types(self, bin_types: Sequence[BinType]) -> "Instance":
        return Instance(self.dimension, self.items, tuple(bin_types))

    def restrict(self, subset: Sequence[int]) -> "Instance":
        """The instance holding only the listed items, in the given order."""
        return Instance(self.dimension, tuple(self.items[i] for i in subset), self.bin_types)


@dataclass(frozen=True)
class Bin:
    bin_type: int
    assignments: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "assignments", tuple((int(i), int(j)) for i, j in self.assignments)
        )


@dataclass(frozen=True)
class Packing:
    bins: tuple[Bin, ...] = ()
    partial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(self.bins))

    def __len__(self):
        return len(self.bins)


@dataclass(frozen=True)
class KnapsackSelection:
    chosen: tuple[tuple[int, int], ...] = ()
    value: float = 0.0


@dataclass
class Verdict:
    feasible: bool
    violations: list[str] = field(default_factory=list)
    slack: list[np.ndarray] = field(default_factory=list)

    def __bool__(self):
        return self.feasible


def validate_instance(inst: Instance) -> list[str]:
    """Return a description of every broken invariant (empty if valid)."""
    out = []
    D = inst.dimension
    if not isinstance(D, (int, np.integer)) or D < 1:
        return [f"dimension must be a positive integer, got {D!r}"]
    for i, item in enumerate(inst.items):
        if not item.incarnations:
            out.append(f"item {i}: has no incarnations")
        for j, inc in enumerate(item.incarnations):
            if len(inc.sizes) != D:
                out.append(f"item {i} incarnation {j}: sizes has {len(inc.sizes)} entries, expected {D}")
            bad = [d for d, s in enumerate(inc.sizes) if not (s >= 0 and np.isfinite(s))]
            if bad:
                out.append(f"item {i} incarnation {j}: negative or non-finite size in dimension(s) {bad}")
            if not (inc.weight >= 0 and np.isfinite(inc.weight)):
                out.append(f"item {i} incarnation {j}: weight {inc.weight!r} is negative or non-finite")
    for t, bt in enumerate(inst.bin_types):
        if len(bt.capacities) != D:
            out.append(f"bin type {t}: capacities has {len(bt.capacities)} entries, expected {D}")
        bad = [d for d, c in enumerate(bt.capacities) if not (c > 0 and np.isfinite(c))]
        if bad:
            out.append(f"bin type {t}: capacity must be positive in dimension(s) {bad}")
        if not (bt.weight >= 0 and np.isfinite(bt.weight)):
            out.append(f"bin type {t}: weight {bt.weight!r} is negative or non-finite")
    return out


def fits_alone(inst: Instance, i: int) -> np.ndarray:
    """Boolean (incarnations x T) table: incarnation j of item i fits alone in type t."""
    sizes = inst.size_arrays[i]
    return np.all(sizes[:, None, :] <= inst.capacities[None, :, :] + FEAS_TOL, axis=2)


def check_solvable(inst: Instance) -> None:
    """Raise InfeasibleItem for the first item that fits nowhere."""
    for i in range(inst.n):
        if not fits_alone(inst, i).any():
            raise InfeasibleItem(i)


def check_packing(inst: Instance, p: Packing, tol: float = FEAS_TOL) -> Verdict:
    violations = []
    slack = []
    seen: dict[int, int] = {}
    for b, bin_ in enumerate(p.bins):
        t = bin_.bin_type
        if not 0 <= t < inst.T:
            violations.append(f"bin {b}: malformed packing, bin type {t} out of range")
            slack.append(np.full(inst.dimension, np.nan))
            continue
        load = np.zeros(inst.dimension)
        for i, j in bin_.assignments:
            if not 0 <= i < inst.n or not 0 <= j < len(inst.items[i].incarnations):
                violations.append(f"bin {b}: malformed packing, assignment ({i}, {j}) out of range")
                continue
            if i in seen:
                violations.append(f"item {i} assigned more than once (bins {seen[i]} and {b})")
            else:
                seen[i] = b
            load += inst.size_arrays[i][j]
        cap = inst.capacities[t]
        s = cap - load
        slack.append(s)
        for d in np.flatnonzero(load > cap + tol):
            violations.append(
                f"bin {b}: dimension {d} load {load[d]:.12g} > capacity {cap[d]:.12g}"
            )
    if not p.partial:
        for i in range(inst.n):
            if i not in seen:
                violations.append(f"item {i} unassigned")
    return Verdict(not violations, violations, slack)


def packing_cost(inst: Instance, p: Packing) -> float:
    return float(sum(inst.bin_types[b.bin_type].weight for b in p.bins))


def selection_loads(inst: Instance, sel: KnapsackSelection) -> np.ndarray:
    load = np.zeros(inst.dimension)
    for i, j in sel.chosen:
        load += inst.size_arrays[i][j]
    return load


def check_selection(inst: Instance, sel: KnapsackSelection, tol: float = FEAS_TOL) -> list[str]:
    """Violations of the knapsack invariants (unit capacity, one incarnation per item)."""
    out = []
    items = [i for i, _ in sel.chosen]
    if len(items) != len(set(items)):
        out.append("an item is selected more than once")
    load = selection_loads(inst, sel)
    for d in np.flatnonzero(load > 1 + tol):
        out.append(f"dimension {d} load {load[d]:.12g} > 1")
    value = sum(inst.items[i].incarnations[j].weight for i, j in sel.chosen)
    if abs(value - sel.value) > 1e-9 * max(1.0, abs(value)):
        out.append(f"reported value {sel.value} differs from recomputed {value}")
    return out
