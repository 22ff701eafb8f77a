"""Dense phase-one simplex for feasibility of ``A x <= b`` with free ``x``.

Pivoting uses Dantzig's rule and switches to Bland's rule after a run of
degenerate pivots, which rules out cycling.  Given the same inputs the
pivot sequence, and therefore the returned point, is fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-7
MAX_ITERATIONS = 100_000
PIVOT_TOL = 1e-9
DEGENERATE_RUN = 50


class SimplexStallError(RuntimeError):
    """The iteration cap was reached before phase one terminated."""

    def __init__(self, iterations: int):
        super().__init__(f"simplex stalled after {iterations} iterations")
        self.iterations = iterations


@dataclass(frozen=True)
class SimplexResult:
    feasible: bool
    x: np.ndarray | None
    infeasibility: float
    iterations: int


def _pivot(T: np.ndarray, r: int, j: int) -> None:
    prow = T[r] / T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    nz = np.flatnonzero(col)
    if nz.size:
        T[nz] -= np.outer(col[nz], prow)
    T[r] = prow


def find_feasible_point(
    A: np.ndarray,
    b: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITERATIONS,
) -> SimplexResult:
    """Decide whether some ``x`` satisfies ``A x <= b`` and return one if so.

    ``infeasibility`` is the phase-one optimum (sum of artificial variables);
    the system is declared feasible when it is at most ``tol``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if b.shape != (m,):
        raise ValueError(f"bound vector has shape {b.shape}, expected ({m},)")
    if m == 0:
        return SimplexResult(True, np.zeros(n), 0.0, 0)

    # columns: u (n) | v (n) | slack (m) | artificial (k) | rhs, with x = u - v
    neg = np.flatnonzero(b < 0)
    k = neg.size
    width = 2 * n + m + k
    T = np.zeros((m + 1, width + 1))
    T[:m, :n] = A
    T[:m, n : 2 * n] = -A
    T[:m, 2 * n : 2 * n + m] = np.eye(m)
    T[:m, -1] = b
    T[neg, : 2 * n + m + 1] *= -1.0
    T[neg, 2 * n + m :] = 0.0
    T[neg, 2 * n + m + np.arange(k)] = 1.0
    T[neg, -1] = -b[neg]

    basis = np.arange(2 * n, 2 * n + m)
    basis[neg] = 2 * n + m + np.arange(k)

    # phase-one cost row: reduced costs of sum(artificials)
    if k:
        T[m, : 2 * n + m] = -T[neg, : 2 * n + m].sum(axis=0)
        T[m, -1] = -T[neg, -1].sum()

    iterations = 0
    degenerate = 0
    while True:
        costs = T[m, :width]
        candidates = np.flatnonzero(costs < -PIVOT_TOL)
        if candidates.size == 0:
            break
        if iterations >= max_iter:
            raise SimplexStallError(iterations)
        if degenerate >= DEGENERATE_RUN:
            j = int(candidates[0])
        else:
            j = int(candidates[np.argmin(costs[candidates])])

        col = T[:m, j]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            # phase one is bounded below by 0, so this only happens on numerical noise
            T[m, j] = 0.0
            continue
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + PIVOT_TOL]
        r = int(tied[np.argmin(basis[tied])])

        degenerate = degenerate + 1 if best <= PIVOT_TOL else 0
        _pivot(T, r, j)
        basis[r] = j
        iterations += 1

    infeasibility = max(0.0, -float(T[m, -1]))
    if infeasibility > tol:
        return SimplexResult(False, None, infeasibility, iterations)

    values = np.zeros(width)
    values[basis] = T[:m, -1]
    x = values[:n] - values[n : 2 * n]
    return SimplexResult(True, x, infeasibility, iterations)
