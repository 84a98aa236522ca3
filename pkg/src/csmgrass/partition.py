"""Young diagrams (partitions) and the diagram surgeries used throughout.

A partition is stored canonically: a weakly decreasing tuple of positive
integers, with the empty tuple standing for the empty diagram.  The number
of rows ``d`` is never part of the stored state; operations that need a
fixed ``d`` take it as an argument and zero-pad on demand.

Rows are counted from the bottom: ``parts[0]`` is the bottom (longest) row.

Textual syntax, used by the CLI and JSON output alike: comma-separated
decreasing positive integers ("7,5,3,2"); the empty diagram is spelled "0".
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator


class Partition:
    """A Young diagram in canonical form (no trailing zeros)."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = list(parts)
        for p in ps:
            if not isinstance(p, int):
                raise ValueError(f"partition part {p!r} is not an integer")
            if p < 0:
                raise ValueError(f"partition part {p} is negative")
        for a, b in zip(ps, ps[1:]):
            if a < b:
                raise ValueError(f"not weakly decreasing: {ps}")
        while ps and ps[-1] == 0:
            ps.pop()
        object.__setattr__(self, "parts", tuple(ps))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    # -- basic queries ----------------------------------------------------

    def size(self) -> int:
        """Number of boxes; equals the dimension of the Schubert cell."""
        return sum(self.parts)

    def num_parts(self) -> int:
        return len(self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def part(self, i: int) -> int:
        """1-based part with zero-padding: part(i) = alpha_i, 0 for i > d."""
        if i < 1:
            raise IndexError("parts are 1-based")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def padded(self, d: int) -> tuple[int, ...]:
        """The first d parts, zero-padded.  Requires d >= num_parts."""
        if d < len(self.parts):
            raise ValueError(f"cannot pad {self} to d={d} < {len(self.parts)} parts")
        return self.parts + (0,) * (d - len(self.parts))

    def contains(self, other: "Partition") -> bool:
        """Containment of diagrams: other_i <= self_i for every row."""
        if len(other.parts) > len(self.parts):
            return False
        return all(b <= a for a, b in zip(self.parts, other.parts))

    def transpose(self) -> "Partition":
        """Interchange rows and columns."""
        if not self.parts:
            return Partition()
        cols = self.parts[0]
        return Partition(sum(1 for p in self.parts if p >= j) for j in range(1, cols + 1))

    # -- diagram surgeries -------------------------------------------------

    def remove_column(self) -> "Partition":
        """Remove the rightmost column: alpha - (1^d), re-canonicalized."""
        if not self.parts:
            raise ValueError("cannot remove a column from the empty diagram")
        return Partition(p - 1 for p in self.parts)

    def remove_bottom_row(self) -> "Partition":
        """Drop the bottom (first, longest) row."""
        if not self.parts:
            raise ValueError("cannot remove a row from the empty diagram")
        return Partition(self.parts[1:])

    # -- text syntax ---------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the partition syntax: "3,2" or "0" for the empty diagram."""
        s = text.strip()
        if not s:
            raise ValueError("empty partition string (the empty diagram is spelled '0')")
        if s == "0":
            return cls()
        vals = []
        for tok in s.split(","):
            tok = tok.strip()
            try:
                vals.append(int(tok))
            except ValueError:
                raise ValueError(f"bad partition token {tok!r}") from None
        return cls(vals)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "0"

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    # -- container protocol --------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def sort_key(p: Partition, d: int | None = None):
    """Key implementing the documented enumeration order.

    Graded by size; ties broken lexicographically on the zero-padded parts,
    descending (so within one grade, (2,0) precedes (1,1)).
    """
    width = len(p.parts) if d is None else d
    padded = p.parts + (0,) * (width - len(p.parts))
    return (p.size(), tuple(-x for x in padded))


def subdiagrams(a: Partition) -> Iterator[Partition]:
    """All partitions contained in `a`, each exactly once.

    The order is deterministic and documented: graded by size, ties broken
    lexicographically on the padded parts, descending.  Reports and JSON
    output rely on this order being stable byte-for-byte.
    """
    found: list[tuple[int, ...]] = []

    def rec(row: int, bound: int, prefix: list[int]):
        found.append(tuple(prefix))
        if row >= len(a.parts):
            return
        for v in range(1, min(bound, a.parts[row]) + 1):
            prefix.append(v)
            rec(row + 1, v, prefix)
            prefix.pop()

    rec(0, a.parts[0] if a.parts else 0, [])
    d = len(a.parts)
    for parts in sorted(found, key=lambda q: (sum(q), tuple(-x for x in q + (0,) * (d - len(q))))):
        yield Partition(parts)


def count_subdiagrams(a: Partition) -> int:
    return sum(1 for _ in subdiagrams(a))


def rectangle(cols: int, rows: int) -> Partition:
    """The cols x rows rectangle (N^d); its Schubert variety is a Grassmannian."""
    if cols < 0 or rows < 0:
        raise ValueError("rectangle sides must be nonnegative")
    if cols == 0 or rows == 0:
        return Partition()
    return Partition([cols] * rows)


def rectangle_cell_count(cols: int, rows: int) -> int:
    """binomial(N+d, d): number of Schubert cells of the Grassmannian."""
    return comb(cols + rows, rows)
