"""Schubert-class linear algebra and the resolution pushforward.

The Chow group of the Schubert variety of a diagram `alpha` is freely
generated by the classes [S(beta)] for beta <= alpha.  A `ChowClass` is a
finite integer combination of such classes.

The core operation is the pushforward of a monomial in the tautological
classes xi_1..xi_d from the resolution down to the Schubert variety: the
monomial xi_1^r_1 ... xi_d^r_d over V(alpha) maps to the normalization of
the integer spec (alpha_d - r_d + 1, ..., alpha_1 - r_1 + d).  The
normalization sorts the spec strictly increasingly, tracks the sign of the
sorting permutation, and vanishes unless the entries are positive and
distinct.  Cap products with Chern classes of the tautological subbundle
(dual) and quotient bundle are derived from this single kernel rather than
from hard-coded box-addition rules, so there is exactly one convention that
can be wrong.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence

from .partition import Partition, sort_key
from .poly import SparsePoly, e_elementary, h_complete, PolyRing

DUAL_SUBBUNDLE = "dual-subbundle"
QUOTIENT = "quotient"


def omega_reduce(entries: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Normalize an integer spec (a_d, ..., a_1) to (sign, beta_parts) or None.

    Returns None when the class vanishes (an entry <= 0 or a repeat).
    Otherwise the entries are sorted strictly increasingly; the sign is the
    parity of the sorting permutation, counted by inversions, and the j-th
    smallest value v contributes a part v - (j+1) to beta (read top row down),
    so beta comes out weakly decreasing with trailing zeros stripped.
    """
    d = len(entries)
    for v in entries:
        if v <= 0:
            return None
    if len(set(entries)) != d:
        return None
    inversions = 0
    for i in range(d):
        for j in range(i + 1, d):
            if entries[i] > entries[j]:
                inversions += 1
    sign = -1 if inversions % 2 else 1
    ordered = sorted(entries)
    beta = [ordered[j] - (j + 1) for j in range(d - 1, -1, -1)]
    while beta and beta[-1] == 0:
        beta.pop()
    return sign, tuple(beta)


class ChowClass:
    """Finite formal sum of Schubert classes: map Partition -> integer.

    When `ambient` is set, every key must be contained in it (the class then
    lives in the Chow group of that Schubert variety).  Keys are canonical
    partitions, so classes computed at different d merge correctly.
    """

    __slots__ = ("terms", "ambient")

    def __init__(self, terms: Mapping[Partition, int] | None = None, ambient: Partition | None = None):
        self.terms: dict[Partition, int] = {}
        self.ambient = ambient
        if terms:
            for beta, c in terms.items():
                if c == 0:
                    continue
                if ambient is not None and not ambient.contains(beta):
                    raise ValueError(f"class key {beta} not contained in ambient {ambient}")
                self.terms[beta] = c

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, beta: Partition) -> int:
        return self.terms.get(beta, 0)

    def items_sorted(self):
        d = max((len(b) for b in self.terms), default=0)
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0], d))

    def __eq__(self, other) -> bool:
        return isinstance(other, ChowClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ChowClass") -> "ChowClass":
        return chow_add(self, other)

    def __neg__(self) -> "ChowClass":
        return chow_scale(self, -1)

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        return chow_add(self, chow_scale(other, -1))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for beta, c in self.items_sorted():
            name = f"[S({beta})]"
            if c == 1:
                chunks.append(name)
            elif c == -1:
                chunks.append("-" + name)
            else:
                chunks.append(f"{c}*{name}")
        return " + ".join(chunks).replace("+ -", "- ")

    __repr__ = __str__

    def to_json_obj(self) -> list[dict]:
        """Array of {"beta": [ints], "coeff": "decimal string"}.

        Coefficients are serialized as decimal strings because they may
        exceed 64-bit JSON-safe integers.
        """
        return [{"beta": list(beta.parts), "coeff": str(c)} for beta, c in self.items_sorted()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def chow_add(a: ChowClass, b: ChowClass) -> ChowClass:
    if a.ambient is not None and b.ambient is not None and a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
    out = dict(a.terms)
    for beta, c in b.terms.items():
        s = out.get(beta, 0) + c
        if s:
            out[beta] = s
        else:
            del out[beta]
    return ChowClass(out, ambient=a.ambient if a.ambient is not None else b.ambient)


def chow_scale(a: ChowClass, k: int) -> ChowClass:
    if k == 0:
        return ChowClass({}, ambient=a.ambient)
    return ChowClass({beta: k * c for beta, c in a.terms.items()}, ambient=a.ambient)


def omega_normalize(entries: Sequence[int], ambient: Partition | None = None) -> ChowClass:
    """The class [Omega(a_d, ..., a_1)] as a ChowClass (possibly zero)."""
    reduced = omega_reduce(entries)
    if reduced is None:
        return ChowClass({}, ambient=ambient)
    sign, beta = reduced
    return ChowClass({Partition(beta): sign}, ambient=ambient)


def push_spec(alpha_padded: Sequence[int], r: Sequence[int], d: int) -> list[int]:
    # spec entry j (left to right, j=1..d) is alpha_{d+1-j} - r_{d+1-j} + j
    return [alpha_padded[d - j] - r[d - j] + j for j in range(1, d + 1)]


def pushforward_monomial(alpha: Partition, r: Sequence[int], d: int | None = None) -> ChowClass:
    """Pushforward of xi_1^r_1 ... xi_d^r_d over V(alpha) to the Chow group.

    d defaults to len(r); it must cover every part of alpha.  The result is
    independent of padding alpha with extra zero rows (and a larger d).
    """
    r = tuple(r)
    if d is None:
        d = len(r)
    if len(r) != d:
        raise ValueError(f"exponent vector has length {len(r)}, expected d={d}")
    if d < alpha.num_parts():
        raise ValueError(f"d={d} is smaller than the number of parts of {alpha}")
    if any(x < 0 for x in r):
        raise ValueError("exponents must be nonnegative")
    padded = alpha.padded(d)
    return omega_normalize(push_spec(padded, r, d), ambient=alpha)


def pushforward_poly(alpha: Partition, p: SparsePoly, d: int | None = None) -> ChowClass:
    """Linear extension of the monomial pushforward over the terms of p."""
    if d is None:
        d = p.ring.nvars
    if p.ring.nvars != d:
        raise ValueError(f"polynomial has {p.ring.nvars} variables, expected d={d}")
    if d < alpha.num_parts():
        raise ValueError(f"d={d} is smaller than the number of parts of {alpha}")
    padded = alpha.padded(d)
    out: dict[Partition, int] = {}
    for exps, coeff in p.terms.items():
        reduced = omega_reduce(push_spec(padded, exps, d))
        if reduced is None:
            continue
        sign, beta_parts = reduced
        beta = Partition(beta_parts)
        s = out.get(beta, 0) + sign * coeff
        if s:
            out[beta] = s
        else:
            del out[beta]
    return ChowClass(out, ambient=alpha)


def cap_special(c: ChowClass, k: int, bundle: str, d: int | None = None) -> ChowClass:
    """Cap with the k-th Chern class of a tautological bundle.

    bundle "dual-subbundle": c_k of the dual universal subbundle, whose total
    Chern class is the product of (1 + xi_i), so the capping polynomial is
    the elementary symmetric e_k(xi_1..xi_d).
    bundle "quotient": c_k of the universal quotient bundle, with total class
    1 / prod(1 - xi_i), so the capping polynomial is h_k(xi_1..xi_d).

    Every key of c must fit in d rows; d defaults to the largest key.
    """
    if bundle not in (DUAL_SUBBUNDLE, QUOTIENT):
        raise ValueError(f"unknown bundle {bundle!r}")
    if k < 0:
        raise ValueError("Chern degree must be nonnegative")
    if k == 0:
        return c
    if d is None:
        d = max((len(beta) for beta in c.terms), default=1)
    for beta in c.terms:
        if len(beta) > d:
            raise ValueError(f"class key {beta} has more than d={d} parts")
    ring = PolyRing(d)
    xs = [ring.var(i) for i in range(d)]
    p = e_elementary(k, xs, ring) if bundle == DUAL_SUBBUNDLE else h_complete(k, xs, ring)
    out: dict[Partition, int] = {}
    for beta, coeff in c.terms.items():
        for delta, v in pushforward_poly(beta, p, d).terms.items():
            s = out.get(delta, 0) + coeff * v
            if s:
                out[delta] = s
            else:
                del out[delta]
    return ChowClass(out, ambient=c.ambient)


def cap_total(c: ChowClass, bundle: str, top: int, d: int | None = None) -> ChowClass:
    """Cap with the full total Chern class sum_{k=0..top} c_k of a bundle."""
    out = ChowClass({}, ambient=c.ambient)
    for k in range(top + 1):
        out = chow_add(out, cap_special(c, k, bundle, d))
    return out
