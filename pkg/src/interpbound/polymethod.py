"""Polynomial-method feasibility LPs over indicator monomials.

A multilinear polynomial ``p`` in the indicators ``d[x,y] = [f(x) = y]``
separates a property when ``0 <= p(g) <= 1`` on every total function
``g: D -> R`` and ``p`` lands on the correct side of 1/2 (with margin
``eps``) for every family member.  Each such condition is linear in the
coefficients of ``p``, so deciding whether a degree-T separator exists is an
LP feasibility question.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceededError
from .field import Family
from .independence import DeltaMonomial, PropertySpec, count_monomials, family_labels
from .simplex import DEFAULT_TOL, MAX_ITERATIONS, find_feasible_point

BASIS_BUDGET = 2 * 10**5
FUNCTION_BUDGET = 10**5
RATIONAL_DENOMINATOR = 10**6


class LPNumericalError(RuntimeError):
    """A solver claimed feasibility but its point fails re-substitution."""


@dataclass(frozen=True)
class MonomialBasis:
    monomials: tuple[DeltaMonomial, ...]
    T: int
    domain: tuple[int, ...]
    range_size: int

    def __len__(self):
        return len(self.monomials)

    def index(self) -> dict[DeltaMonomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}


def _range_size(R) -> int:
    return R if isinstance(R, int) else len(tuple(R))


def enumerate_basis(D: Sequence[int], R, T: int, budget: int = BASIS_BUDGET) -> MonomialBasis:
    """All monomials of degree <= T with distinct x, ordered by degree then (x, y)."""
    if T < 0:
        raise ValueError(f"degree cap must be non-negative, got {T}")
    size = _range_size(R)
    pts = sorted(D)
    total = count_monomials(len(pts), size, T)
    if total > budget:
        raise BudgetExceededError("monomial basis", total, budget)
    monomials = [
        DeltaMonomial(tuple(zip(xs, ys)))
        for t in range(min(T, len(pts)) + 1)
        for xs in itertools.combinations(pts, t)
        for ys in itertools.product(range(size), repeat=t)
    ]
    return MonomialBasis(tuple(monomials), T, tuple(D), size)


def indicator_matrix(basis: MonomialBasis, tables: np.ndarray) -> np.ndarray:
    """0/1 matrix whose (r, k) entry is monomial k evaluated on value table r.

    ``tables`` has one row per function, columns in ``basis.domain`` order.
    """
    tables = np.asarray(tables, dtype=np.int64)
    col = {x: i for i, x in enumerate(basis.domain)}
    R = basis.range_size
    out = np.zeros((tables.shape[0], len(basis)), dtype=np.int8)
    # group monomials by x-set so each x-set's value codes are computed once
    codes_by_xs: dict[tuple[int, ...], np.ndarray] = {}
    for k, m in enumerate(basis.monomials):
        xs = tuple(x for x, _ in m.factors)
        codes = codes_by_xs.get(xs)
        if codes is None:
            codes = np.zeros(tables.shape[0], dtype=np.int64)
            for x in xs:
                codes = codes * R + tables[:, col[x]]
            codes_by_xs[xs] = codes
        target = 0
        for _, y in m.factors:
            target = target * R + y
        out[:, k] = codes == target
    return out


@dataclass(frozen=True)
class LPInstance:
    """Rows ``coefficients[r] . c  (relations[r])  bounds[r]`` over basis coefficients ``c``.

    ``kinds`` tags each row as ``box-lo``, ``box-hi`` or ``sep``.
    """

    basis: MonomialBasis
    coefficients: np.ndarray
    relations: tuple[str, ...]
    bounds: np.ndarray
    bias: float
    kinds: tuple[str, ...]

    @property
    def objective(self) -> np.ndarray:
        return np.zeros(len(self.basis))

    @property
    def n_rows(self) -> int:
        return len(self.relations)

    def as_upper_form(self) -> tuple[np.ndarray, np.ndarray]:
        sign = np.array([1.0 if r == "<=" else -1.0 for r in self.relations])
        return self.coefficients * sign[:, None], self.bounds * sign

    def residuals(self, c: Sequence[float]) -> np.ndarray:
        """Positive entries are constraint violations."""
        A, b = self.as_upper_form()
        return A @ np.asarray(c, dtype=float) - b

    def to_text(self) -> str:
        lines = [f"# basis {len(self.basis)} monomials, degree <= {self.basis.T}, bias {self.bias}"]
        lines.append("# columns: " + " ".join(repr(m) for m in self.basis.monomials))
        for row, rel, bound, kind in zip(
            self.coefficients, self.relations, self.bounds, self.kinds
        ):
            coeffs = " ".join(str(int(v)) if float(v).is_integer() else repr(float(v)) for v in row)
            lines.append(f"{coeffs} {rel} {float(bound)!r}  # {kind}")
        return "\n".join(lines) + "\n"


def all_functions(domain_size: int, range_size: int, budget: int = FUNCTION_BUDGET) -> np.ndarray:
    total = range_size**domain_size
    if total > budget:
        raise BudgetExceededError("total functions D -> R", total, budget)
    return np.array(
        list(itertools.product(range(range_size), repeat=domain_size)), dtype=np.int64
    ).reshape(total, domain_size)


def build_feasibility_lp(
    family: Family,
    spec: PropertySpec,
    T: int,
    eps: float,
    *,
    function_budget: int = FUNCTION_BUDGET,
    basis_budget: int = BASIS_BUDGET,
) -> LPInstance:
    if not 0 < eps <= 0.5:
        raise ValueError(f"bias must lie in (0, 1/2], got {eps}")
    labels = family_labels(family, spec)
    domain = family.domain
    R = family.range_size
    basis = enumerate_basis(domain, R, T, basis_budget)

    everything = all_functions(len(domain), R, function_budget)
    box = indicator_matrix(basis, everything).astype(float)
    members = np.array([m.values for m in family.members], dtype=np.int64).reshape(
        len(family), len(domain)
    )
    sep = indicator_matrix(basis, members).astype(float)

    n_box = box.shape[0]
    coefficients = np.empty((2 * n_box + len(labels), len(basis)))
    coefficients[0 : 2 * n_box : 2] = box
    coefficients[1 : 2 * n_box : 2] = box
    coefficients[2 * n_box :] = sep
    relations = (">=", "<=") * n_box + tuple(">=" if y else "<=" for y in labels)
    bounds = np.concatenate(
        [
            np.tile([0.0, 1.0], n_box),
            np.array([0.5 + eps if y else 0.5 - eps for y in labels]),
        ]
    )
    kinds = ("box-lo", "box-hi") * n_box + ("sep",) * len(labels)
    return LPInstance(basis, coefficients, relations, bounds, float(eps), kinds)


@dataclass(frozen=True)
class LPVerdict:
    status: str
    witness: tuple | None
    max_violation: float | None
    exact: bool = False
    infeasibility: float = 0.0
    iterations: int = 0

    def __post_init__(self):
        if (self.status == "feasible") != (self.witness is not None):
            raise ValueError("witness must be present exactly for feasible verdicts")

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _exact_violation(instance: LPInstance, coeffs: Sequence[Fraction]) -> Fraction:
    eps = Fraction(instance.bias).limit_denominator(RATIONAL_DENOMINATOR)
    half = Fraction(1, 2)
    worst = Fraction(-1)
    for row, rel, kind, bound in zip(
        instance.coefficients, instance.relations, instance.kinds, instance.bounds
    ):
        value = sum((coeffs[k] for k in np.flatnonzero(row)), Fraction(0))
        if kind == "box-lo":
            exact_bound = Fraction(0)
        elif kind == "box-hi":
            exact_bound = Fraction(1)
        else:
            exact_bound = half + eps if rel == ">=" else half - eps
        worst = max(worst, exact_bound - value if rel == ">=" else value - exact_bound)
    return worst


def lp_feasible(
    instance: LPInstance, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITERATIONS
) -> LPVerdict:
    """Phase-one simplex feasibility with witness re-substitution.

    Feasible witnesses are upgraded to exact rationals when the rounded
    coefficients satisfy every row exactly; otherwise floats are returned.
    """
    A, b = instance.as_upper_form()
    result = find_feasible_point(A, b, tol=tol, max_iter=max_iter)
    if not result.feasible:
        return LPVerdict("infeasible", None, None, False, result.infeasibility, result.iterations)

    x = result.x
    violation = max(0.0, float(instance.residuals(x).max())) if instance.n_rows else 0.0
    if violation > tol:
        raise LPNumericalError(
            f"simplex point violates a row by {violation:.3g} (tolerance {tol:g})"
        )
    if instance.coefficients.size and np.all(
        np.isin(instance.coefficients, (0.0, 1.0))
    ):
        rational = [Fraction(float(v)).limit_denominator(RATIONAL_DENOMINATOR) for v in x]
        if _exact_violation(instance, rational) <= 0:
            return LPVerdict(
                "feasible", tuple(rational), 0.0, True, result.infeasibility, result.iterations
            )
    return LPVerdict(
        "feasible", tuple(float(v) for v in x), violation, False,
        result.infeasibility, result.iterations,
    )


def scan_separating_degree(
    family: Family, spec: PropertySpec, eps: float, T_max: int, tol: float = DEFAULT_TOL, **budgets
) -> Iterator[tuple[int, LPVerdict]]:
    for T in range(T_max + 1):
        yield T, lp_feasible(build_feasibility_lp(family, spec, T, eps, **budgets), tol)


def min_separating_degree(
    family: Family, spec: PropertySpec, eps: float, T_max: int, tol: float = DEFAULT_TOL, **budgets
) -> int | None:
    """Smallest T <= T_max admitting a degree-T separating polynomial, else None."""
    for T, verdict in scan_separating_degree(family, spec, eps, T_max, tol, **budgets):
        if verdict.feasible:
            return T
    return None


def query_lower_bound_from_degree(deg: int) -> int:
    """Minimum query count T with 2T >= deg."""
    if deg < 0:
        raise ValueError(f"degree must be non-negative, got {deg}")
    return (deg + 1) // 2
