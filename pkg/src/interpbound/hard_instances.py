"""Block-permutation hard instances for the random-input model and the
symmetrization pipeline that turns a bounded polynomial on them into a
one-variable polynomial with a jump between 0 and 1.

Indices ``i`` and point positions are 1-based as in the construction
``X(i + k j) = z_{i + k pi(j)}``; block labels ``j`` and ``pi`` values are
0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .simplex import DEFAULT_TOL, find_feasible_point

EXHAUSTIVE_CAP = 8


class Xi(NamedTuple):
    """Indicator [X(index) = point]."""

    index: int
    point: int


class Delta(NamedTuple):
    """Indicator [X(index) = point and Y(index) = value]; point must be exceptional."""

    index: int
    point: int
    value: int


Variable = Union[Xi, Delta]


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _clean(terms: Mapping) -> dict:
    return {m: c for m, c in terms.items() if c != 0}


@dataclass(frozen=True)
class RandomInputPoly:
    """Multilinear polynomial in Xi / Delta indicators with rational coefficients."""

    terms: Mapping[frozenset, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {frozenset(m): _as_fraction(c) for m, c in self.terms.items()}
        object.__setattr__(self, "terms", _clean(cleaned))

    @classmethod
    def constant(cls, c) -> "RandomInputPoly":
        return cls({frozenset(): c})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Iterable[Variable], object]]) -> "RandomInputPoly":
        out: dict = {}
        for variables, c in items:
            key = frozenset(variables)
            out[key] = out.get(key, Fraction(0)) + _as_fraction(c)
        return cls(out)

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def __add__(self, other: "RandomInputPoly") -> "RandomInputPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return RandomInputPoly(out)

    def scale(self, a) -> "RandomInputPoly":
        a = _as_fraction(a)
        return RandomInputPoly({m: a * c for m, c in self.terms.items()})

    def evaluate(self, X: Sequence[int], Y: Sequence[int]) -> Fraction:
        def value(v: Variable) -> bool:
            if isinstance(v, Delta):
                return X[v.index - 1] == v.point and Y[v.index - 1] == v.value
            return X[v.index - 1] == v.point

        return sum((c for m, c in self.terms.items() if all(value(v) for v in m)), Fraction(0))


@dataclass(frozen=True)
class BlockTemplate:
    """Fixed data of the block family: everything except the block map ``pi``."""

    n: int
    k: int
    z_order: tuple[int, ...]
    g_values: tuple[int, ...]
    h_values: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.z_order) != self.n:
            raise ValueError(f"z_order has {len(self.z_order)} points, expected n={self.n}")
        if len(set(self.z_order)) != self.n:
            raise ValueError("z_order points must be distinct")
        for name in ("g_values", "h_values"):
            if len(getattr(self, name)) != self.k:
                raise ValueError(f"{name} must have length k={self.k}")

    @property
    def B(self) -> int:
        return self.n // self.k

    @property
    def exceptional(self) -> tuple[int, ...]:
        return self.z_order[: self.k]

    def point_position(self, x: int) -> int:
        try:
            return self.z_order.index(x) + 1
        except ValueError:
            raise ValueError(f"point {x} is not in z_order") from None

    def instance(self, pi: Sequence[int]) -> "BlockInstance":
        pi = tuple(pi)
        B, k = self.B, self.k
        if len(pi) != B:
            raise ValueError(f"pi must have length B={B}, got {len(pi)}")
        if any(not 0 <= v < B for v in pi):
            raise ValueError(f"pi values must lie in 0..{B - 1}")
        X = list(self.z_order)
        Y = [0] * self.n
        for j in range(B):
            for a in range(1, k + 1):
                X[a + k * j - 1] = self.z_order[a + k * pi[j] - 1]
                Y[a + k * j - 1] = (self.g_values if j % 2 == 0 else self.h_values)[a - 1]
        return BlockInstance(self, pi, tuple(X), tuple(Y))


@dataclass(frozen=True)
class BlockInstance:
    """One arrangement of the block family. Y is 0 on the tail positions i > Bk."""

    template: BlockTemplate
    pi: tuple[int, ...]
    X: tuple[int, ...]
    Y: tuple[int, ...]

    n = property(lambda self: self.template.n)
    k = property(lambda self: self.template.k)
    B = property(lambda self: self.template.B)
    z_order = property(lambda self: self.template.z_order)
    g_values = property(lambda self: self.template.g_values)
    h_values = property(lambda self: self.template.h_values)


def build_block_instance(
    n: int,
    k: int,
    pi: Sequence[int],
    g_values: Sequence[int],
    h_values: Sequence[int],
    z_order: Sequence[int] | None = None,
) -> BlockInstance:
    if z_order is None:
        z_order = range(1, n + 1)
    template = BlockTemplate(n, k, tuple(z_order), tuple(g_values), tuple(h_values))
    return template.instance(pi)


@dataclass(frozen=True)
class EtaPolynomial:
    """Polynomial in eta[j, j'] = [pi(j) = j'], at most one factor per block j."""

    terms: Mapping[frozenset, Fraction]
    B: int

    def __post_init__(self):
        cleaned = {}
        for m, c in self.terms.items():
            m = frozenset(m)
            blocks = [j for j, _ in m]
            if len(set(blocks)) != len(blocks):
                raise ValueError(f"eta monomial repeats a block index: {sorted(m)}")
            if any(not (0 <= j < self.B and 0 <= jj < self.B) for j, jj in m):
                raise ValueError(f"eta indices out of range for B={self.B}: {sorted(m)}")
            cleaned[m] = _as_fraction(c)
        object.__setattr__(self, "terms", _clean(cleaned))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def evaluate(self, pi: Sequence[int]) -> Fraction:
        return sum(
            (c for m, c in self.terms.items() if all(pi[j] == jj for j, jj in m)), Fraction(0)
        )

    def __add__(self, other: "EtaPolynomial") -> "EtaPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return EtaPolynomial(out, self.B)

    def scale(self, a) -> "EtaPolynomial":
        a = _as_fraction(a)
        return EtaPolynomial({m: a * c for m, c in self.terms.items()}, self.B)


_ZERO = None
_ONE = ()


def _reduce_variable(v: Variable, tpl: BlockTemplate):
    """``None`` for the constant 0, ``()`` for the constant 1, else an eta pair."""
    n, k, B = tpl.n, tpl.k, tpl.B
    if not 1 <= v.index <= n:
        raise ValueError(f"variable {v} references index outside 1..{n}")
    pos = tpl.point_position(v.point)
    if isinstance(v, Delta) and pos > k:
        raise ValueError(f"delta variable {v} must use an exceptional point")
    if v.index > B * k:
        # tail positions are fixed: X(i) = z_i, never exceptional
        if isinstance(v, Delta):
            return _ZERO
        return _ONE if pos == v.index else _ZERO
    a, j = (v.index - 1) % k + 1, (v.index - 1) // k
    if pos > B * k:
        return _ZERO
    a2, j2 = (pos - 1) % k + 1, (pos - 1) // k
    if a2 != a:
        return _ZERO
    if isinstance(v, Delta):
        expected = (tpl.g_values if j % 2 == 0 else tpl.h_values)[a - 1]
        if v.value != expected:
            return _ZERO
    return (j, j2)


def eta_reduce(poly: RandomInputPoly, template: BlockTemplate | BlockInstance) -> EtaPolynomial:
    """Rewrite ``poly`` on the block family as a polynomial in the block map."""
    tpl = template.template if isinstance(template, BlockInstance) else template
    out: dict = {}
    for monomial, c in poly.terms.items():
        chosen: dict[int, int] = {}
        alive = True
        for v in monomial:
            r = _reduce_variable(v, tpl)
            if r is _ZERO:
                alive = False
                break
            if r == _ONE:
                continue
            j, jj = r
            if chosen.setdefault(j, jj) != jj:
                alive = False
                break
        if alive:
            key = frozenset(chosen.items())
            out[key] = out.get(key, Fraction(0)) + c
    return EtaPolynomial(out, tpl.B)


@dataclass(frozen=True)
class ZeroPatternPoly:
    """Polynomial in eta_j = [pi(j) = 0] (multilinear)."""

    terms: Mapping[frozenset, Fraction]
    B: int

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def evaluate(self, zero_blocks: Iterable[int]) -> Fraction:
        zs = set(zero_blocks)
        return sum((c for m, c in self.terms.items() if m <= zs), Fraction(0))


def range_symmetrize(poly: EtaPolynomial) -> ZeroPatternPoly:
    """Average out the nonzero values of pi, leaving only the pattern of zeros.

    A factor eta[j, j'] with j' != 0 becomes (1 - eta_j) / (B - 1): given
    pi(j) != 0, the value is uniform over 1..B-1.
    """
    B = poly.B
    out: dict = {}
    for m, c in poly.terms.items():
        zeros = [j for j, jj in m if jj == 0]
        nonzero = [j for j, jj in m if jj != 0]
        scale = c / Fraction(B - 1) ** len(nonzero) if nonzero else c
        for r in range(len(nonzero) + 1):
            for picked in itertools.combinations(nonzero, r):
                key = frozenset(zeros) | frozenset(picked)
                out[key] = out.get(key, Fraction(0)) + (-1) ** r * scale
    return ZeroPatternPoly(_clean(out), B)


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _falling(r: int) -> list:
    """Coefficients of t (t - 1) ... (t - r + 1)."""
    out = [Fraction(1)]
    for s in range(r):
        out = _poly_mul(out, [Fraction(-s), Fraction(1)])
    return out


@dataclass(frozen=True)
class TwoVarPoly:
    """q(alpha, beta) = sum c[a, b] alpha^a beta^b with rational coefficients."""

    coefficients: Mapping[tuple[int, int], Fraction]
    B: int

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.coefficients), default=0)

    @property
    def n_even(self) -> int:
        return (self.B + 1) // 2

    @property
    def n_odd(self) -> int:
        return self.B // 2

    def __call__(self, alpha, beta) -> Fraction:
        return sum(
            (c * Fraction(alpha) ** a * Fraction(beta) ** b for (a, b), c in self.coefficients.items()),
            Fraction(0),
        )

    def grid(self) -> dict[tuple[int, int], Fraction]:
        return {
            (a, b): self(a, b) for a in range(self.n_even + 1) for b in range(self.n_odd + 1)
        }


def parity_symmetrize(poly: ZeroPatternPoly) -> TwoVarPoly:
    """Average over rearrangements of even blocks and of odd blocks.

    With alpha zeros among E even blocks placed uniformly, a product of e
    even indicators has mean (alpha)_e / (E)_e, and likewise for odd blocks.
    """
    B = poly.B
    E, O = (B + 1) // 2, B // 2
    out: dict = {}
    for m, c in poly.terms.items():
        e = sum(1 for j in m if j % 2 == 0)
        o = len(m) - e
        denom = prod(range(E - e + 1, E + 1)) * prod(range(O - o + 1, O + 1))
        fa, fb = _falling(e), _falling(o)
        for a, ca in enumerate(fa):
            for b, cb in enumerate(fb):
                if ca and cb:
                    out[a, b] = out.get((a, b), Fraction(0)) + c * ca * cb / denom
    return TwoVarPoly(_clean(out), B)


def symmetrize_two_var(poly: EtaPolynomial) -> TwoVarPoly:
    """Exact q(alpha, beta): the mean of ``poly`` over all block maps pi having
    alpha even and beta odd blocks sent to 0."""
    return parity_symmetrize(range_symmetrize(poly))


def exhaustive_orbit_average(
    poly: EtaPolynomial, cap: int = EXHAUSTIVE_CAP
) -> dict[tuple[int, int], Fraction]:
    """Brute-force class means over all B^B maps pi, grouped by (alpha, beta).

    Only achievable classes appear (for B = 1 that is just (1, 0)).
    """
    B = poly.B
    if B > cap:
        raise ValueError(f"exhaustive averaging needs B <= {cap}, got B={B}")
    E, O = (B + 1) // 2, B // 2
    size = (E + 1) * (O + 1)
    class_sizes = np.zeros(size, dtype=np.int64)
    sums = {m: np.zeros(size, dtype=np.int64) for m in poly.terms}
    even_cols = list(range(0, B, 2))
    odd_cols = list(range(1, B, 2))
    # chunk over pi(0) to bound memory
    rest = np.array(list(itertools.product(range(B), repeat=B - 1)), dtype=np.int8).reshape(
        B ** (B - 1), B - 1
    )
    for first in range(B):
        pis = np.concatenate([np.full((rest.shape[0], 1), first, dtype=np.int8), rest], axis=1)
        alpha = (pis[:, even_cols] == 0).sum(axis=1)
        beta = (pis[:, odd_cols] == 0).sum(axis=1) if odd_cols else np.zeros_like(alpha)
        cls = alpha * (O + 1) + beta
        class_sizes += np.bincount(cls, minlength=size)
        for m in poly.terms:
            hit = np.ones(pis.shape[0], dtype=bool)
            for j, jj in m:
                hit &= pis[:, j] == jj
            sums[m] += np.bincount(cls[hit], minlength=size)
    out = {}
    for a in range(E + 1):
        for b in range(O + 1):
            idx = a * (O + 1) + b
            if class_sizes[idx] == 0:
                continue
            total = sum((c * int(sums[m][idx]) for m, c in poly.terms.items()), Fraction(0))
            out[a, b] = total / int(class_sizes[idx])
    return out


@dataclass(frozen=True)
class OneVarPoly:
    """q_hat on {0, ..., floor(B/2)} with its coefficient vector and the line it came from."""

    values: tuple[Fraction, ...]
    coefficients: tuple[Fraction, ...]
    case: str

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if c != 0]
        return nz[-1] if nz else 0

    @property
    def gap(self) -> Fraction | None:
        if len(self.values) < 2:
            return None
        return abs(self.values[1] - self.values[0])


def collapse_to_one_var(q: TwoVarPoly, B: int | None = None) -> OneVarPoly:
    """Restrict q to the beta-axis when q(0,0) <= 1/2, else to the alpha-axis."""
    B = q.B if B is None else B
    if B < 1:
        raise ValueError("grid values unavailable for B < 1")
    m = B // 2
    if q(0, 0) <= Fraction(1, 2):
        case = "beta-axis"
        pick = lambda a, b: a == 0
        power = lambda a, b: b
        at = lambda t: q(0, t)
    else:
        case = "alpha-axis"
        pick = lambda a, b: b == 0
        power = lambda a, b: a
        at = lambda t: q(t, 0)
    coeffs = [Fraction(0)] * (q.degree + 1)
    for (a, b), c in q.coefficients.items():
        if pick(a, b):
            coeffs[power(a, b)] += c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    values = tuple(at(t) for t in range(m + 1))
    return OneVarPoly(values, tuple(coeffs), case)


def _chebyshev_matrix(m: int, T: int) -> np.ndarray:
    """V[i, k] = T_k(2 i / m - 1) for i in 0..m, k in 0..T."""
    t = 2.0 * np.arange(m + 1) / m - 1.0
    V = np.empty((m + 1, T + 1))
    V[:, 0] = 1.0
    if T >= 1:
        V[:, 1] = t
    for k in range(2, T + 1):
        V[:, k] = 2.0 * t * V[:, k - 1] - V[:, k - 2]
    return V


def bounded_jump_feasible(m: int, gap: float, T: int, tol: float = DEFAULT_TOL) -> bool:
    """Is there a degree-T polynomial in [0, 1] on {0..m} with q(1) - q(0) >= gap?"""
    V = _chebyshev_matrix(m, T)
    jump = V[1] - V[0]
    A = np.vstack([-V, V, -jump[None, :]])
    b = np.concatenate([np.zeros(m + 1), np.ones(m + 1), [-gap]])
    result = find_feasible_point(A, b, tol=tol)
    if not result.feasible:
        return False
    return float((A @ result.x - b).max()) <= tol


def paturi_min_degree(m: int, gap: float, tol: float = DEFAULT_TOL, T_max: int | None = None) -> int | None:
    """Smallest degree of a [0,1]-bounded polynomial on {0..m} whose values at
    0 and 1 differ by at least ``gap`` (scanning degrees upward)."""
    if m < 1:
        raise ValueError(f"grid size must be at least 1, got {m}")
    if not 0 < gap <= 1:
        raise ValueError(f"gap must lie in (0, 1], got {gap}")
    T_max = m if T_max is None else T_max
    for T in range(T_max + 1):
        if bounded_jump_feasible(m, gap, T, tol):
            return T
    return None


def exception_lookup_poly(template: BlockTemplate) -> RandomInputPoly:
    """Accept iff the Y-value stored at the preimage of z_1 equals h(z_1).

    On a block instance this reads off the parity of the block that pi sends
    to 0, provided g and h differ at z_1.
    """
    z1, h1 = template.z_order[0], template.h_values[0]
    return RandomInputPoly.from_terms(([Delta(i, z1, h1)], 1) for i in range(1, template.n + 1))


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PipelineTrace:
    B: int
    input_degree: int
    eta_terms: int
    eta_degree: int
    q_grid: dict
    q_degree: int
    case: str
    q_hat_values: tuple
    q_hat_degree: int
    gap: Fraction | None
    paturi_degree: int | None
    note: str = ""

    @property
    def degree_chain_holds(self) -> bool:
        return self.q_hat_degree <= self.q_degree <= self.eta_degree <= self.input_degree

    def to_dict(self) -> dict:
        return {
            "B": self.B,
            "input_degree": self.input_degree,
            "eta_terms": self.eta_terms,
            "eta_degree": self.eta_degree,
            "q_grid": {f"{a},{b}": _fmt(v) for (a, b), v in sorted(self.q_grid.items())},
            "q_degree": self.q_degree,
            "case": self.case,
            "q_hat_values": [_fmt(v) for v in self.q_hat_values],
            "q_hat_degree": self.q_hat_degree,
            "gap": None if self.gap is None else _fmt(self.gap),
            "paturi_degree": self.paturi_degree,
            "degree_chain_holds": self.degree_chain_holds,
            "note": self.note,
        }


def run_pipeline(
    poly: RandomInputPoly, template: BlockTemplate, *, paturi: bool = True, tol: float = DEFAULT_TOL
) -> PipelineTrace:
    eta = eta_reduce(poly, template)
    q = symmetrize_two_var(eta)
    q_hat = collapse_to_one_var(q)
    gap = q_hat.gap
    note = ""
    paturi_degree = None
    if template.B < 2:
        note = "B < 2: the block family yields no lower bound beyond a constant"
    elif gap is None or gap == 0:
        note = "no jump between q_hat(0) and q_hat(1)"
    elif paturi:
        paturi_degree = paturi_min_degree(template.B // 2, float(min(gap, Fraction(1))), tol)
    return PipelineTrace(
        B=template.B,
        input_degree=poly.degree,
        eta_terms=len(eta.terms),
        eta_degree=eta.degree,
        q_grid=q.grid(),
        q_degree=q.degree,
        case=q_hat.case,
        q_hat_values=q_hat.values,
        q_hat_degree=q_hat.degree,
        gap=gap,
        paturi_degree=paturi_degree,
        note=note,
    )
