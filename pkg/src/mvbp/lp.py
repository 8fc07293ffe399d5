"""Dense two-phase primal simplex.

Returns *basic* optimal solutions together with row duals. The knapsack
PTAS relies on the basic-support property (at most one positive variable
per row), so this engine never returns an interior optimum.

Pivoting is Dantzig's largest reduced cost; after ``2 * (rows + cols)``
consecutive degenerate pivots the engine switches to Bland's rule for the
rest of the solve, which guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NumericalInstability

LP_TOL = 1e-7
PIVOT_TOL = 1e-10
MAX_ITER = 100_000

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LpProblem:
    """``sense`` is ``"max"`` or ``"min"``; variables are nonnegative."""

    sense: str
    c: np.ndarray
    A: np.ndarray
    senses: Sequence[str]
    b: np.ndarray

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        self.b = np.asarray(self.b, dtype=float).reshape(-1)
        self.A = np.asarray(self.A, dtype=float).reshape(len(self.b), len(self.c))
        self.senses = list(self.senses)
        if self.sense not in ("max", "min"):
            raise ValueError(f"unknown objective sense {self.sense!r}")
        if len(self.senses) != len(self.b):
            raise ValueError("one constraint sense per row is required")
        bad = [s for s in self.senses if s not in (LE, GE, EQ)]
        if bad:
            raise ValueError(f"unknown constraint sense(s) {bad}")


@dataclass
class LpResult:
    status: str
    x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    objective: float = float("nan")
    duals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    basis: frozenset = frozenset()
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def support(self, tol: float = 0.0) -> np.ndarray:
        return np.flatnonzero(self.x > tol)


def duals_of(r: LpResult) -> np.ndarray:
    """Row prices: the rate of change of the optimal objective per unit of rhs."""
    if not r.optimal:
        raise ValueError(f"duals requested for a {r.status} LP")
    return r.duals


class _Tableau:
    def __init__(self, T, basis):
        self.T = T
        self.basis = basis
        self.bland = False
        self.stall = 0
        self.iterations = 0

    def run(self, cost, allowed):
        """Maximise ``cost @ x`` over the current tableau. Returns False if unbounded."""
        T = self.T
        m = T.shape[0]
        ncols = T.shape[1] - 1
        stall_limit = 2 * (m + ncols)
        while True:
            if self.iterations >= MAX_ITER:
                raise NumericalInstability("simplex iteration cap reached")
            cb = cost[self.basis]
            red = cost - cb @ T[:, :-1]
            red[~allowed] = 0.0
            red[self.basis] = 0.0
            cand = np.flatnonzero(red > LP_TOL)
            if cand.size == 0:
                return True
            if self.bland:
                e = int(cand[0])
            else:
                e = int(cand[np.argmax(red[cand])])
            col = T[:, e]
            rows = np.flatnonzero(col > PIVOT_TOL)
            if rows.size == 0:
                return False
            rhs = np.maximum(T[rows, -1], 0.0)
            ratios = rhs / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, best)]
            # smallest leaving index keeps Bland's rule valid
            r = int(ties[np.argmin(np.asarray(self.basis)[ties])])
            if col[r] < PIVOT_TOL:
                raise NumericalInstability(f"pivot magnitude {col[r]:.3g} below {PIVOT_TOL}")
            self.pivot(r, e)
            if best <= LP_TOL:
                self.stall += 1
                if self.stall >= stall_limit:
                    self.bland = True
            else:
                self.stall = 0

    def pivot(self, r, e):
        T = self.T
        T[r] /= T[r, e]
        f = T[:, e].copy()
        f[r] = 0.0
        T -= np.outer(f, T[r])
        self.basis[r] = e
        self.iterations += 1


def solve(p: LpProblem) -> LpResult:
    m, n = p.A.shape
    flip = p.b < 0
    A = np.where(flip[:, None], -p.A, p.A)
    b = np.where(flip, -p.b, p.b)
    senses = []
    for s, f in zip(p.senses, flip):
        if f and s != EQ:
            s = GE if s == LE else LE
        senses.append(s)
    sigma = 1.0 if p.sense == "max" else -1.0
    c = sigma * p.c

    slack_rows = [i for i, s in enumerate(senses) if s != EQ]
    art_rows = [i for i, s in enumerate(senses) if s != LE]
    ns, na = len(slack_rows), len(art_rows)
    N = n + ns + na
    A_std = np.zeros((m, N))
    A_std[:, :n] = A
    basis = [-1] * m
    for k, i in enumerate(slack_rows):
        A_std[i, n + k] = 1.0 if senses[i] == LE else -1.0
        if senses[i] == LE:
            basis[i] = n + k
    for k, i in enumerate(art_rows):
        A_std[i, n + ns + k] = 1.0
        basis[i] = n + ns + k

    if m == 0:
        if np.any(c > LP_TOL):
            return LpResult("unbounded")
        return LpResult("optimal", np.zeros(n), 0.0, np.zeros(0), frozenset(), 0)

    tab = _Tableau(np.hstack([A_std, b[:, None]]), basis)
    is_art = np.zeros(N, dtype=bool)
    is_art[n + ns:] = True

    if na:
        phase1 = np.where(is_art, -1.0, 0.0)
        tab.run(phase1, np.ones(N, dtype=bool))
        infeas = -float(phase1[tab.basis] @ tab.T[:, -1])
        if infeas > LP_TOL * (1.0 + np.abs(b).max()):
            return LpResult("infeasible", iterations=tab.iterations)
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if is_art[tab.basis[r]]:
                row = np.abs(tab.T[r, :-1])
                row[is_art] = 0.0
                j = int(np.argmax(row))
                if row[j] > PIVOT_TOL:
                    tab.pivot(r, j)
                else:
                    keep[r] = False
        if not keep.all():
            tab.T = tab.T[keep]
            tab.basis = [bv for bv, k in zip(tab.basis, keep) if k]
        tab.stall = 0
        tab.bland = False
    else:
        keep = np.ones(m, dtype=bool)

    cost = np.zeros(N)
    cost[:n] = c
    if not tab.run(cost, ~is_art):
        return LpResult("unbounded", iterations=tab.iterations)

    basis = list(tab.basis)
    rows = np.flatnonzero(keep)
    B = A_std[np.ix_(rows, basis)]
    try:
        xb = np.linalg.solve(B, b[rows])
        pi = np.linalg.solve(B.T, cost[basis])
    except np.linalg.LinAlgError as exc:
        raise NumericalInstability("singular final basis") from exc
    if np.any(xb < -LP_TOL * (1.0 + np.abs(b).max())):
        raise NumericalInstability("refactored basis is primal infeasible")
    xb[np.abs(xb) < 1e-13] = 0.0
    xb = np.maximum(xb, 0.0)
    x_full = np.zeros(N)
    x_full[basis] = xb
    x = x_full[:n]
    duals = np.zeros(m)
    duals[rows] = pi
    sign = np.where(flip, -1.0, 1.0)
    duals = sigma * sign * duals
    duals[np.abs(duals) < 1e-13] = 0.0
    return LpResult(
        "optimal",
        x,
        float(p.c @ x),
        duals,
        frozenset(int(j) for j in basis),
        tab.iterations,
    )
