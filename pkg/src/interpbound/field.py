"""Prime-field arithmetic, polynomials over GF(p), and enumeration of
polynomial families restricted to a finite domain."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import BudgetExceededError

PRIME_CHECK_LIMIT = 10**6
ENUMERATION_CAP = 10**6


class FieldMismatchError(ValueError):
    """Raised when elements or polynomials over different moduli are combined."""


class EnumerationCapError(BudgetExceededError):
    """Raised when a family enumeration would exceed its configured cap."""

    def __init__(self, required: int, cap: int):
        super().__init__("family enumeration", required, cap)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"modulus must be an int, got {type(p).__name__}")
    if p > PRIME_CHECK_LIMIT:
        raise ValueError(f"modulus {p} exceeds trial-division limit {PRIME_CHECK_LIMIT}")
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    return p


def inverse_mod(a: int, p: int) -> int:
    """Multiplicative inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    return t0 % p


@dataclass(frozen=True)
class FieldElem:
    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not reduced modulo {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "FieldElem":
        return cls(value % modulus, modulus)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.modulus != self.modulus:
                raise FieldMismatchError(f"GF({self.modulus}) vs GF({other.modulus})")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElem((self.value + v) % self.modulus, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElem((self.value - v) % self.modulus, self.modulus)

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElem((v - self.value) % self.modulus, self.modulus)

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElem((self.value * v) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem((-self.value) % self.modulus, self.modulus)

    def inverse(self) -> "FieldElem":
        return FieldElem(inverse_mod(self.value, self.modulus), self.modulus)

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return self * FieldElem(v, self.modulus).inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


Scalar = Union[int, FieldElem]


def _residue(x: Scalar, p: int) -> int:
    if isinstance(x, FieldElem):
        if x.modulus != p:
            raise FieldMismatchError(f"element of GF({x.modulus}) used with GF({p})")
        return x.value
    return int(x) % p


@dataclass(frozen=True)
class FieldPoly:
    """Polynomial over GF(p); coefficients lowest degree first, trailing zeros stripped.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coefficients: tuple[int, ...]
    modulus: int

    def __init__(self, coefficients: Iterable[Scalar], modulus: int):
        check_modulus(modulus)
        coeffs = [_residue(c, modulus) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "modulus", modulus)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, j: int) -> int:
        return self.coefficients[j] if j < len(self.coefficients) else 0

    def __call__(self, x: Scalar) -> FieldElem:
        return evaluate(self, x)

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        _same_field(self, other)
        n = max(len(self.coefficients), len(other.coefficients))
        return FieldPoly(
            (self.coefficient(i) + other.coefficient(i) for i in range(n)), self.modulus
        )

    def __mul__(self, other: Union["FieldPoly", Scalar]) -> "FieldPoly":
        p = self.modulus
        if not isinstance(other, FieldPoly):
            c = _residue(other, p)
            return FieldPoly((a * c for a in self.coefficients), p)
        _same_field(self, other)
        if self.is_zero() or other.is_zero():
            return FieldPoly((), p)
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = (out[i + j] + a * b) % p
        return FieldPoly(out, p)

    __rmul__ = __mul__


def _same_field(a: FieldPoly, b: FieldPoly) -> None:
    if a.modulus != b.modulus:
        raise FieldMismatchError(f"GF({a.modulus}) vs GF({b.modulus})")


def evaluate(poly: FieldPoly, x: Scalar) -> FieldElem:
    """Horner evaluation of ``poly`` at ``x``."""
    p = poly.modulus
    xv = _residue(x, p)
    acc = 0
    for c in reversed(poly.coefficients):
        acc = (acc * xv + c) % p
    return FieldElem(acc, p)


def lagrange_interpolate(points: Sequence[tuple[Scalar, Scalar]], p: int) -> FieldPoly:
    """Unique polynomial of degree < len(points) through ``points`` over GF(p)."""
    check_modulus(p)
    if not points:
        raise ValueError("interpolation needs at least one point")
    xs = [_residue(x, p) for x, _ in points]
    ys = [_residue(y, p) for _, y in points]
    seen = set()
    for x in xs:
        if x in seen:
            raise ValueError(f"duplicate x-coordinate {x} in interpolation points")
        seen.add(x)

    result = FieldPoly((), p)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = FieldPoly((1,), p)
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = basis * FieldPoly((-xj, 1), p)
            denom = denom * (xi - xj) % p
        result = result + basis * (yi * inverse_mod(denom, p))
    return result


@dataclass(frozen=True)
class FunctionTable:
    """Explicit map from an ordered finite domain into range(modulus)."""

    domain: tuple[int, ...]
    values: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise ValueError(
                f"domain has {len(self.domain)} entries but values has {len(self.values)}"
            )
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain entries must be pairwise distinct")
        for v in self.values:
            if not 0 <= v < self.modulus:
                raise ValueError(f"value {v} outside range(0, {self.modulus})")

    def __call__(self, x: int) -> int:
        return self.values[self.domain.index(x)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.values))


@dataclass(frozen=True)
class FamilyDescriptor:
    p: int
    d: int | None
    domain: tuple[int, ...]


@dataclass(frozen=True)
class Family:
    """A uniform-distribution family of function tables sharing one domain.

    ``polys`` holds the generating polynomials for polynomial families and is
    ``None`` for families of arbitrary tables (e.g. all Boolean functions).
    """

    members: tuple[FunctionTable, ...]
    descriptor: FamilyDescriptor
    polys: tuple[FieldPoly, ...] | None = field(default=None)

    def __post_init__(self):
        dom = self.descriptor.domain
        for m in self.members:
            if m.domain != dom:
                raise ValueError("all family members must share the descriptor's domain")
        if self.polys is not None and len(self.polys) != len(self.members):
            raise ValueError("polys and members differ in length")

    def __len__(self):
        return len(self.members)

    @property
    def domain(self) -> tuple[int, ...]:
        return self.descriptor.domain

    @property
    def range_size(self) -> int:
        return self.descriptor.p


def enumerate_family(p: int, d: int, D: Sequence[Scalar], cap: int = ENUMERATION_CAP) -> Family:
    """All polynomials of degree <= d over GF(p), restricted to ``D``.

    Members appear in lexicographic order of the coefficient vector
    (c_0, ..., c_d).
    """
    check_modulus(p)
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    count = p ** (d + 1)
    if count > cap:
        raise EnumerationCapError(count, cap)
    domain = tuple(_residue(x, p) for x in D)
    if len(set(domain)) != len(domain):
        raise ValueError("domain entries must be pairwise distinct")

    members = []
    polys = []
    for coeffs in itertools.product(range(p), repeat=d + 1):
        poly = FieldPoly(coeffs, p)
        values = tuple(evaluate(poly, x).value for x in domain)
        members.append(FunctionTable(domain, values, p))
        polys.append(poly)
    return Family(tuple(members), FamilyDescriptor(p, d, domain), tuple(polys))


def boolean_family(D: Sequence[int], cap: int = ENUMERATION_CAP) -> Family:
    """Every function from ``D`` to {0, 1}, in lexicographic order of value tables."""
    domain = tuple(D)
    count = 2 ** len(domain)
    if count > cap:
        raise EnumerationCapError(count, cap)
    members = tuple(
        FunctionTable(domain, values, 2)
        for values in itertools.product(range(2), repeat=len(domain))
    )
    return Family(members, FamilyDescriptor(2, None, domain), None)
