"""Exact sparse multivariate polynomials and truncated power series.

Coefficients are Python integers (arbitrary precision) throughout: every
formula in this package is exact and no tolerance exists anywhere.  Terms
are stored sparsely as a map from exponent tuples to nonzero coefficients.

A ring fixes the variable count and, optionally, a truncation profile: one
degree cap per variable.  Truncation is a ring quotient (terms exceeding a
cap are discarded by every operation), so the ring axioms survive it.
Division is deliberately absent: every rational function we expand has a
denominator with unit constant term and is handled by `geom_inverse`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class PolyRing:
    """Variable count plus an optional per-variable truncation profile."""

    nvars: int
    caps: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.nvars < 0:
            raise ValueError("variable count must be nonnegative")
        if self.caps is not None:
            caps = tuple(self.caps)
            if len(caps) != self.nvars:
                raise ValueError("truncation profile length must equal the variable count")
            if any(c < 0 for c in caps):
                raise ValueError("degree caps must be nonnegative")
            object.__setattr__(self, "caps", caps)

    def in_profile(self, exps: tuple[int, ...]) -> bool:
        if self.caps is None:
            return True
        return all(e <= c for e, c in zip(exps, self.caps))

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, {})

    def one(self) -> "SparsePoly":
        return self.const(1)

    def const(self, c: int) -> "SparsePoly":
        if c == 0:
            return self.zero()
        return SparsePoly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "SparsePoly":
        """The i-th variable (0-based) as a polynomial."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range for {self.nvars} variables")
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e), 1)

    def monomial(self, exps: Sequence[int], c: int) -> "SparsePoly":
        e = tuple(exps)
        if len(e) != self.nvars:
            raise ValueError("exponent vector length mismatch")
        if any(x < 0 for x in e):
            raise ValueError("exponents must be nonnegative")
        if c == 0 or not self.in_profile(e):
            return self.zero()
        return SparsePoly(self, {e: c})


class SparsePoly:
    """Immutable sparse polynomial over a `PolyRing`.

    `terms` maps exponent tuples to nonzero integer coefficients; zero
    coefficients and out-of-profile exponents are never stored.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0 and ring.in_profile(e)}

    # -- ring plumbing -----------------------------------------------------

    def _check_same_ring(self, other: "SparsePoly"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "SparsePoly":
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        self._check_same_ring(q)
        out = dict(self.terms)
        for e, c in q.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other) -> "SparsePoly":
        q = self._coerce(other)
        if q is NotImplemented:
            return NotImplemented
        self._check_same_ring(q)
        ring = self.ring
        caps = ring.caps
        out: dict[tuple[int, ...], int] = {}
        # iterate the smaller factor outside
        a, b = (self.terms, q.terms) if len(self.terms) <= len(q.terms) else (q.terms, self.terms)
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if caps is not None and any(x > c for x, c in zip(e, caps)):
                    continue
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SparsePoly(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return isinstance(other, SparsePoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Sequence[int]) -> int:
        """Stored coefficient at the exponent vector, 0 if absent."""
        e = tuple(exps)
        if len(e) != self.ring.nvars:
            raise ValueError("exponent vector length mismatch")
        if self.ring.caps is not None and not self.ring.in_profile(e):
            if __debug__:
                raise ValueError(f"exponent {e} lies outside the truncation profile")
            return 0
        return self.terms.get(e, 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def items_sorted(self):
        """Terms in lexicographic exponent order (the deterministic order)."""
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for e, c in self.items_sorted():
            factors = [f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p]
            if not factors:
                chunks.append(str(c))
            elif c == 1:
                chunks.append("*".join(factors))
            elif c == -1:
                chunks.append("-" + "*".join(factors))
            else:
                chunks.append(f"{c}*" + "*".join(factors))
        return " + ".join(chunks).replace("+ -", "- ")

    __repr__ = __str__


def geom_inverse(f: SparsePoly) -> SparsePoly:
    """Truncated expansion of 1/(1-f) = sum_k f^k.

    Requires a zero constant term (so the expansion is a well-defined formal
    series) and a truncation profile (so it is finite).
    """
    if f.ring.caps is None:
        raise ValueError("geom_inverse requires a truncation profile")
    if f.constant_term() != 0:
        raise ValueError("geom_inverse requires a zero constant term")
    acc = f.ring.one()
    power = f.ring.one()
    limit = sum(f.ring.caps) + 1
    for _ in range(limit):
        power = power * f
        if power.is_zero():
            return acc
        acc = acc + power
    raise AssertionError("geometric series failed to terminate under the profile")


def det(matrix: Sequence[Sequence[SparsePoly]]) -> SparsePoly:
    """Leibniz-expansion determinant of a small square matrix of polynomials.

    Exact; meant for dimensions up to 8 (8! = 40320 terms).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        raise ValueError("determinant of an empty matrix is not defined here")
    if n > 8:
        raise ValueError("determinant dimension capped at 8")
    ring = matrix[0][0].ring
    for row in matrix:
        for entry in row:
            if entry.ring != ring:
                raise ValueError("ring mismatch")
    acc = ring.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = ring.one()
        for i in range(n):
            prod = prod * matrix[i][perm[i]]
            if prod.is_zero():
                break
        acc = acc + (prod if inv % 2 == 0 else -prod)
    return acc


def h_complete(a: int, args: Sequence[SparsePoly], ring: PolyRing | None = None) -> SparsePoly:
    """Complete homogeneous symmetric polynomial h_a evaluated at `args`.

    h_a(y_1,...,y_n) = sum over i_1+...+i_n = a of y_1^i_1 ... y_n^i_n;
    h_0 = 1, and h_a of an empty argument list is 0 for a > 0.
    """
    if a < 0:
        raise ValueError("degree must be nonnegative")
    if ring is None:
        if not args:
            raise ValueError("ring required when the argument list is empty")
        ring = args[0].ring
    for y in args:
        if y.ring != ring:
            raise ValueError("ring mismatch")
    # column DP: after processing y, table[m] = h_m of the args seen so far
    table = [ring.one()] + [ring.zero()] * a
    for y in args:
        powers = [ring.one()]
        for _ in range(a):
            powers.append(powers[-1] * y)
        new = [ring.zero()] * (a + 1)
        for m in range(a + 1):
            s = ring.zero()
            for i in range(m + 1):
                s = s + powers[i] * table[m - i]
            new[m] = s
        table = new
    return table[a]


def e_elementary(k: int, args: Sequence[SparsePoly], ring: PolyRing | None = None) -> SparsePoly:
    """Elementary symmetric polynomial e_k of the given arguments."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if ring is None:
        if not args:
            raise ValueError("ring required when the argument list is empty")
        ring = args[0].ring
    for y in args:
        if y.ring != ring:
            raise ValueError("ring mismatch")
    table = [ring.one()] + [ring.zero()] * k
    for y in args:
        for m in range(min(k, len(table) - 1), 0, -1):
            table[m] = table[m] + y * table[m - 1]
    return table[k]
