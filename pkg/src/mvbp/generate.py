"""Seeded random instances."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .model import BinType, Incarnation, Instance, Item

MAX_TRIES = 1000


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    m: int = 1
    D: int = 1
    T: int = 1
    size_lo: float = 0.05
    size_hi: float = 0.6
    weight_lo: float = 1.0
    weight_hi: float = 1.0
    capacity_lo: float = 1.0
    capacity_hi: float = 1.0
    bin_weight_lo: float = 1.0
    bin_weight_hi: float = 1.0
    seed: int = 0

    def validate(self):
        if self.n < 0 or self.m < 1 or self.D < 1 or self.T < 0:
            raise ValueError("need n >= 0, m >= 1, D >= 1, T >= 0")
        for lo, hi, name in (
            (self.size_lo, self.size_hi, "size"),
            (self.weight_lo, self.weight_hi, "weight"),
            (self.capacity_lo, self.capacity_hi, "capacity"),
            (self.bin_weight_lo, self.bin_weight_hi, "bin weight"),
        ):
            if not 0 <= lo <= hi:
                raise ValueError(f"{name} range must satisfy 0 <= lo <= hi, got ({lo}, {hi})")
        if self.capacity_lo <= 0:
            raise ValueError("capacities must be positive")

    def as_dict(self):
        return asdict(self)


def generate(params: GeneratorParams) -> Instance:
    """Uniform random instance; every incarnation fits alone in some bin type.

    Each item gets between 1 and ``m`` incarnations. With ``T = 0`` the
    result is a knapsack instance against unit capacities and no fit
    requirement is enforced.
    """
    params.validate()
    rng = np.random.default_rng(params.seed)
    D = params.D
    bins = tuple(
        BinType(
            tuple(float(v) for v in rng.uniform(params.capacity_lo, params.capacity_hi, D)),
            float(rng.uniform(params.bin_weight_lo, params.bin_weight_hi)),
        )
        for _ in range(params.T)
    )
    caps = np.array([b.capacities for b in bins]).reshape(-1, D)
    items = []
    for _ in range(params.n):
        incs = []
        for _ in range(int(rng.integers(1, params.m + 1))):
            for _ in range(MAX_TRIES):
                s = rng.uniform(params.size_lo, params.size_hi, D)
                if params.T == 0 or np.any(np.all(s <= caps, axis=1)):
                    break
            else:
                raise ValueError("could not draw an incarnation that fits any bin type")
            w = float(rng.uniform(params.weight_lo, params.weight_hi))
            incs.append(Incarnation(tuple(float(v) for v in s), w))
        items.append(Item(tuple(incs)))
    return Instance(D, tuple(items), bins)
