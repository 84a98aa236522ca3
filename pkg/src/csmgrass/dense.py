"""Dense array backend for truncated series on a capped exponent box.

The table-producing formulas multiply a handful of small sparse factors into
a series whose support is essentially the whole truncation box, which makes
a dense int64 array the right representation for the hot paths.  Arithmetic
stays exact: a conservative bound on the largest absolute coefficient is
maintained alongside every operation, and an operation that could leave the
int64-safe range first re-measures the true maximum and, failing that,
raises `DenseOverflow` so the caller can fall back to the arbitrary
precision sparse path.

Factors and quotients are the same shapes the sparse engine consumes: a
term dict for multiplication, and a term dict f (zero constant term) for
multiplication by the series 1/(1-f).
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

# stay clear of int64 wraparound with a wide margin
INT64_SAFE = 1 << 62


class DenseOverflow(Exception):
    """Raised when int64 safety cannot be guaranteed; use the sparse path."""


def _l1(terms: Mapping[tuple[int, ...], int]) -> int:
    return sum(abs(c) for c in terms.values())


class BoxSeries:
    """A truncated series stored densely on the box prod [0, cap_i]."""

    __slots__ = ("caps", "arr", "bound")

    def __init__(self, caps: tuple[int, ...], arr: np.ndarray | None = None, bound: int = 0):
        if not caps:
            raise ValueError("BoxSeries requires at least one variable")
        self.caps = tuple(int(c) for c in caps)
        shape = tuple(c + 1 for c in self.caps)
        if arr is None:
            self.arr = np.zeros(shape, dtype=np.int64)
            self.bound = 0
        else:
            assert arr.shape == shape and arr.dtype == np.int64
            self.arr = arr
            self.bound = bound

    @classmethod
    def one(cls, caps: tuple[int, ...]) -> "BoxSeries":
        out = cls(caps)
        out.arr[(0,) * len(caps)] = 1
        out.bound = 1
        return out

    @classmethod
    def from_terms(cls, caps: tuple[int, ...], terms: Mapping[tuple[int, ...], int]) -> "BoxSeries":
        out = cls(caps)
        for e, c in terms.items():
            if all(x <= cap for x, cap in zip(e, out.caps)):
                out.arr[e] = c
        out.bound = max((abs(c) for c in terms.values()), default=0)
        return out

    def copy(self) -> "BoxSeries":
        return BoxSeries(self.caps, self.arr.copy(), self.bound)

    def append_axis(self, cap: int) -> "BoxSeries":
        """Embed into the ring with one more variable (new last axis).

        The series is constant in the new variable, so the data lands in its
        zero slice.  Growing the box lazily keeps early factor products small.
        """
        out = BoxSeries(self.caps + (int(cap),))
        out.arr[..., 0] = self.arr
        out.bound = self.bound
        return out

    def _tighten(self) -> int:
        self.bound = int(np.abs(self.arr).max()) if self.arr.size else 0
        return self.bound

    def _require(self, projected: int, tighten_factor_fn):
        """Ensure the next op stays int64-safe, re-measuring if needed."""
        if projected < INT64_SAFE:
            return
        self._tighten()
        projected = tighten_factor_fn(self.bound)
        if projected >= INT64_SAFE:
            raise DenseOverflow(
                f"coefficient bound {projected} exceeds the int64-safe range"
            )

    def mul_terms(self, terms: Mapping[tuple[int, ...], int]) -> "BoxSeries":
        """Product with a sparse polynomial, truncated to the box."""
        l1 = _l1(terms)
        self._require(self.bound * l1, lambda b: b * l1)
        out = np.zeros_like(self.arr)
        shape = self.arr.shape
        for e, c in terms.items():
            if any(x > cap for x, cap in zip(e, self.caps)):
                continue
            dst = tuple(slice(x, None) for x in e)
            src = tuple(slice(0, n - x) for x, n in zip(e, shape))
            out[dst] += c * self.arr[src]
        return BoxSeries(self.caps, out, self.bound * l1)

    def iadd(self, other: "BoxSeries"):
        if self.caps != other.caps:
            raise ValueError("box mismatch")
        projected = self.bound + other.bound
        if projected >= INT64_SAFE:
            self._tighten()
            other._tighten()
            projected = self.bound + other.bound
            if projected >= INT64_SAFE:
                raise DenseOverflow("coefficient bound exceeds the int64-safe range")
        self.arr += other.arr
        self.bound = projected

    def divide_one_minus(self, terms: Mapping[tuple[int, ...], int]) -> "BoxSeries":
        """Product with the series 1/(1 - f), f given by a term dict.

        f must have zero constant term; iteration adds f^k * self until the
        powers fall off the box.
        """
        zero = (0,) * len(self.caps)
        if terms.get(zero, 0) != 0:
            raise ValueError("divisor must have zero constant term")
        # every power of f raises the exponent of a var present in all terms,
        # which caps the iteration count; total degree caps it in any case
        always_raised = [
            v for v in range(len(self.caps)) if all(e[v] > 0 for e in terms)
        ]
        if always_raised:
            max_iters = min(self.caps[v] for v in always_raised)
        else:
            max_iters = sum(self.caps)
        acc = self.copy()
        power = self
        for _ in range(max_iters):
            power = power.mul_terms(terms)
            if not power.arr.any():
                break
            acc.iadd(power)
        return acc

    def get(self, exps: tuple[int, ...]) -> int:
        if any(x > cap or x < 0 for x, cap in zip(exps, self.caps)):
            return 0
        return int(self.arr[exps])

    def items(self):
        """Nonzero (exponent tuple, coefficient) pairs."""
        idx = np.nonzero(self.arr)
        vals = self.arr[idx]
        cols = list(zip(*(a.tolist() for a in idx)))
        for e, v in zip(cols, vals.tolist()):
            yield e, v

    def to_terms(self) -> dict[tuple[int, ...], int]:
        return dict(self.items())
