"""Small statevector simulator for chosen-input and random-input oracles,
plus the upper-bound strategies run against them.

Oracles count their own applications; strategies report ``oracle.calls``
rather than tallying queries themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .field import FunctionTable, evaluate, lagrange_interpolate

MAX_GROVER_N = 2**16
NORM_TOL = 1e-9


class NothingToFindError(ValueError):
    """Grover search was asked to look for an empty marked set."""


class RegisterMismatchError(ValueError):
    """State registers do not fit the oracle."""


@dataclass
class QueryState:
    amplitudes: np.ndarray
    registers: tuple[str, ...]
    query_count: int = 0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.ndim != len(self.registers):
            raise ValueError("one register name is needed per amplitude axis")

    @classmethod
    def basis(cls, dims: Sequence[int], index: Sequence[int], registers: Sequence[str]) -> "QueryState":
        amps = np.zeros(tuple(dims), dtype=complex)
        amps[tuple(index)] = 1.0
        return cls(amps, tuple(registers))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.amplitudes.shape

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "QueryState":
        return QueryState(self.amplitudes.copy(), self.registers, self.query_count)


@dataclass
class ChosenOracle:
    """|x, b, c> -> |x, b + f(x), c>, with x indexing ``f.domain``."""

    f: FunctionTable
    calls: int = 0

    def query(self, x: int) -> int:
        self.calls += 1
        return self.f(x)


@dataclass
class RandomOracle:
    """|i, a, b, c> -> |i, a + X(i), b + Y(i), c> for a hidden arrangement X.

    ``a`` indexes ``domain`` and is added modulo |D|; ``b`` is added modulo
    ``modulus``.  Indices are 0-based in the register, 1-based in ``query``.
    """

    X: tuple[int, ...]
    Y: tuple[int, ...]
    modulus: int
    domain: tuple[int, ...] = ()
    calls: int = 0
    _pos: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.X, self.Y = tuple(self.X), tuple(self.Y)
        if len(self.X) != len(self.Y):
            raise ValueError(f"|X| = {len(self.X)} but |Y| = {len(self.Y)}")
        if not self.domain:
            self.domain = tuple(sorted(set(self.X)))
        self.domain = tuple(self.domain)
        if set(self.X) != set(self.domain):
            raise ValueError("X must map onto the domain")
        if any(not 0 <= y < self.modulus for y in self.Y):
            raise ValueError(f"Y values must lie in 0..{self.modulus - 1}")
        self._pos = {x: t for t, x in enumerate(self.domain)}

    @property
    def n(self) -> int:
        return len(self.X)

    def query(self, i: int) -> tuple[int, int]:
        self.calls += 1
        return self.X[i - 1], self.Y[i - 1]


def apply_chosen_oracle(state: QueryState, oracle: ChosenOracle) -> QueryState:
    D, R = len(oracle.f.domain), oracle.f.modulus
    if len(state.dims) < 2 or state.dims[0] != D or state.dims[1] != R:
        raise RegisterMismatchError(
            f"chosen oracle needs registers (x:{D}, b:{R}, ...), state has {state.dims}"
        )
    amps = state.amplitudes
    out = np.empty_like(amps)
    for xi, y in enumerate(oracle.f.values):
        out[xi] = np.roll(amps[xi], y, axis=0)
    state.amplitudes = out
    state.query_count += 1
    oracle.calls += 1
    return state


def apply_random_oracle(state: QueryState, oracle: RandomOracle) -> QueryState:
    n, D, R = oracle.n, len(oracle.domain), oracle.modulus
    if len(state.dims) < 3 or state.dims[:3] != (n, D, R):
        raise RegisterMismatchError(
            f"random oracle needs registers (i:{n}, a:{D}, b:{R}, ...), state has {state.dims}"
        )
    amps = state.amplitudes
    out = np.empty_like(amps)
    for i in range(n):
        shifted = np.roll(amps[i], oracle._pos[oracle.X[i]], axis=0)
        out[i] = np.roll(shifted, oracle.Y[i], axis=1)
    state.amplitudes = out
    state.query_count += 1
    oracle.calls += 1
    return state


def apply_phase_oracle(state: QueryState, oracle: RandomOracle, marked_points) -> QueryState:
    """Phase form of one random-input query: negate indices i with X(i) in the set."""
    if state.dims != (oracle.n,):
        raise RegisterMismatchError(f"phase oracle needs a single (i:{oracle.n}) register")
    marked = np.array([x in marked_points for x in oracle.X])
    state.amplitudes = np.where(marked, -state.amplitudes, state.amplitudes)
    state.query_count += 1
    oracle.calls += 1
    return state


@dataclass(frozen=True)
class ParityResult:
    parity: int
    queries_used: int
    success_probability: float


def _pair_xor_distribution(oracle: ChosenOracle, u: int, v: int) -> tuple[float, float]:
    dom = oracle.f.domain
    iu, iv = dom.index(u), dom.index(v)
    amps = np.zeros((len(dom), 2), dtype=complex)
    h = 0.5
    amps[iu] = (h, -h)
    amps[iv] = (h, -h)
    state = apply_chosen_oracle(QueryState(amps, ("x", "b")), oracle)
    a = state.amplitudes
    same = np.sum(np.abs((a[iu] + a[iv]) / math.sqrt(2)) ** 2)
    diff = np.sum(np.abs((a[iu] - a[iv]) / math.sqrt(2)) ** 2)
    return float(same), float(diff)


def _single_bit_distribution(oracle: ChosenOracle, u: int) -> tuple[float, float]:
    iu = oracle.f.domain.index(u)
    state = QueryState.basis((len(oracle.f.domain), 2), (iu, 0), ("x", "b"))
    a = apply_chosen_oracle(state, oracle).amplitudes
    return float(np.sum(np.abs(a[:, 0]) ** 2)), float(np.sum(np.abs(a[:, 1]) ** 2))


def run_dj_parity(f_bits: FunctionTable, U: Sequence[int]) -> ParityResult:
    """XOR of f over U with ceil(|U|/2) queries.

    Elements of U are paired in domain order; each pair's XOR comes from one
    phase-kickback query, and a leftover element is read with one basis query.
    """
    if f_bits.modulus != 2:
        raise ValueError(f"parity needs a Boolean range, got modulus {f_bits.modulus}")
    U = sorted(set(U), key=f_bits.domain.index)
    if not U:
        raise ValueError("U must be nonempty")
    oracle = ChosenOracle(f_bits)
    dist = np.array([1.0, 0.0])  # distribution of the running XOR
    for t in range(0, len(U) - 1, 2):
        p0, p1 = _pair_xor_distribution(oracle, U[t], U[t + 1])
        dist = np.array([dist[0] * p0 + dist[1] * p1, dist[0] * p1 + dist[1] * p0])
    if len(U) % 2:
        p0, p1 = _single_bit_distribution(oracle, U[-1])
        dist = np.array([dist[0] * p0 + dist[1] * p1, dist[0] * p1 + dist[1] * p0])
    parity = int(np.argmax(dist))
    truth = sum(f_bits(u) for u in U) % 2
    return ParityResult(parity, oracle.calls, float(dist[truth]))


def grover_closed_form(N: int, M: int, k: int) -> float:
    """sin^2((2k + 1) theta) with sin(theta) = sqrt(M / N)."""
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * k + 1) * theta) ** 2


def optimal_grover_iterations(N: int, M: int) -> int:
    theta = math.asin(math.sqrt(M / N))
    return max(0, int(math.floor(math.pi / (4 * theta))))


@dataclass(frozen=True)
class GroverResult:
    success_probability: float
    distribution: np.ndarray
    queries_used: int
    marked: tuple[int, ...]


def run_grover(oracle: RandomOracle, S, iterations: int) -> GroverResult:
    """Search for an index i with X(i) in S; success is the marked probability mass."""
    S = set(S)
    marked = tuple(i for i, x in enumerate(oracle.X, start=1) if x in S)
    if not marked:
        raise NothingToFindError("no index maps into the exceptional set; nothing to find")
    if oracle.n > MAX_GROVER_N:
        raise ValueError(f"n = {oracle.n} exceeds simulator limit {MAX_GROVER_N}")
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    n = oracle.n
    start = oracle.calls
    state = QueryState(np.full(n, 1 / math.sqrt(n), dtype=complex), ("i",))
    for _ in range(iterations):
        apply_phase_oracle(state, oracle, S)
        a = state.amplitudes
        state.amplitudes = 2 * a.mean() - a
    probs = np.abs(state.amplitudes) ** 2
    success = float(probs[[i - 1 for i in marked]].sum())
    return GroverResult(success, probs, oracle.calls - start, marked)


@dataclass(frozen=True)
class SearchThenReadResult:
    success_probability: float
    queries_used: int
    index: int
    value: int


def search_then_read(oracle: RandomOracle, z: int, iterations: int | None = None) -> SearchThenReadResult:
    """Grover for an index with X(i) = z, then one more query to read Y there."""
    M = sum(1 for x in oracle.X if x == z)
    if M == 0:
        raise NothingToFindError(f"point {z} has no preimage")
    if iterations is None:
        iterations = optimal_grover_iterations(oracle.n, M)
    start = oracle.calls
    result = run_grover(oracle, {z}, iterations)
    best = int(np.argmax(result.distribution)) + 1
    _, value = oracle.query(best)
    return SearchThenReadResult(result.success_probability, oracle.calls - start, best, value)


@dataclass(frozen=True)
class InterpolationResult:
    success: bool
    estimate: int | None
    queries_used: int
    points: tuple[tuple[int, int], ...]


def classical_interpolation_strategy(
    oracle: Union[ChosenOracle, RandomOracle], d: int, z: int, budget: int | None = None
) -> InterpolationResult:
    """Collect d + 1 distinct point-values, interpolate, and evaluate at z.

    Chosen model queries the first d + 1 domain points.  Random model queries
    indices 1, 2, ... until d + 1 distinct x-values are seen or the budget
    runs out, in which case the result reports failure.
    """
    start = oracle.calls
    if isinstance(oracle, ChosenOracle):
        dom = oracle.f.domain
        if len(dom) < d + 1:
            raise ValueError(f"chosen model needs |D| >= d + 1 = {d + 1}, got {len(dom)}")
        points = tuple((x, oracle.query(x)) for x in dom[: d + 1])
        p = oracle.f.modulus
    else:
        budget = oracle.n if budget is None else budget
        if budget < d + 1:
            raise ValueError(f"random model needs budget >= d + 1 = {d + 1}")
        seen: dict[int, int] = {}
        for i in range(1, min(budget, oracle.n) + 1):
            x, y = oracle.query(i)
            seen.setdefault(x, y)
            if len(seen) == d + 1:
                break
        points = tuple(seen.items())
        p = oracle.modulus
        if len(points) < d + 1:
            return InterpolationResult(False, None, oracle.calls - start, points)
    poly = lagrange_interpolate(points, p)
    return InterpolationResult(True, evaluate(poly, z).value, oracle.calls - start, points)
