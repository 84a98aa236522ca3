"""Whole-table evaluation of the binomial-determinant coefficient formula.

For a diagram alpha with d rows the coefficient of [S(beta)] is a sum, over
tuples of auxiliary nonnegative integers l^k_i (1 <= k < i <= d, with
l^k_{k+1} + ... + l^k_d <= alpha_{k+1}), of a d x d determinant whose (i, j)
entry is binom(alpha_i - L_i, beta_j + (i - j) + g_i - L_i), where L_i sums
the l's with superscript i and g_i sums the l's with subscript i.

Computing a full table naively repeats the determinant work for every beta.
Two structural facts make it fast:

  * the determinant depends on the tuple only through the 2d row parameters
    (alpha_i - L_i, g_i - L_i), so tuples are deduplicated into weighted
    parameter sets first;
  * column j depends on beta only through c_j = beta_j - j, so one pass of
    a Laplace recursion over the column pool {alpha_1 - 1, ..., -d} yields
    the determinants for every beta at once (all maximal minors of a
    d x (alpha_1 + d) matrix).

The numpy path runs vectorized over the deduplicated parameter sets in
int64, guarded by an a priori bound; the pure-Python path runs the same
recursion with arbitrary precision and is used when the bound fails.
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb, factorial

import numpy as np

from .partition import Partition


def compositions_bounded(length: int, total_max: int):
    """All nonnegative integer vectors of the given length with sum <= total_max."""
    if length == 0:
        yield ()
        return
    for head in range(total_max + 1):
        for tail in compositions_bounded(length - 1, total_max - head):
            yield (head,) + tail


def ell_groups(alpha: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    # group k (1-based) collects (l^k_{k+1}, ..., l^k_d), sum <= alpha_{k+1}
    d = len(alpha)
    return [list(compositions_bounded(d - k, alpha[k])) for k in range(1, d)]


def _subset_transitions(m: int, d: int):
    """Laplace recursion tables: ranks of column subsets and their parents.

    For each size k, subsets of range(m) in lexicographic order; for each
    subset and each deleted position, the rank of the parent subset of size
    k - 1 together with the deleted column and the cofactor sign.
    """
    ranks: list[dict[tuple[int, ...], int]] = [dict() for _ in range(d + 1)]
    subsets: list[list[tuple[int, ...]]] = [[] for _ in range(d + 1)]
    for k in range(d + 1):
        subsets[k] = list(combinations(range(m), k))
        ranks[k] = {s: i for i, s in enumerate(subsets[k])}
    trans = []
    for k in range(1, d + 1):
        rows = []
        for s in subsets[k]:
            entry = []
            for p in range(k):
                parent = s[:p] + s[p + 1:]
                sign = 1 if (k - 1 + p) % 2 == 0 else -1
                entry.append((ranks[k - 1][parent], s[p], sign))
            rows.append(entry)
        trans.append(rows)
    return subsets, trans


def _valid_beta_map(alpha: tuple[int, ...], subsets_d: list[tuple[int, ...]]):
    """Map subset rank -> beta parts for the subsets encoding valid beta <= alpha."""
    d = len(alpha)
    xs = [alpha[0] - 1 - m for m in range(alpha[0] + d)]  # decreasing column pool
    out = {}
    for rank, s in enumerate(subsets_d):
        beta = []
        ok = True
        for j, m in enumerate(s, start=1):
            bj = xs[m] + j
            if bj < 0 or bj > alpha[j - 1]:
                ok = False
                break
            beta.append(bj)
        if ok:
            while beta and beta[-1] == 0:
                beta.pop()
            out[rank] = tuple(beta)
    return out


def _row_params(alpha: tuple[int, ...]):
    """Deduplicated row parameters (n_i, s_i) per tuple with multiplicities.

    Returns (n, s, w): int64 arrays of shape (U, d), (U, d), (U,).
    """
    d = len(alpha)
    groups = ell_groups(alpha)
    if not groups:
        n = np.asarray([alpha], dtype=np.int64)
        s = np.zeros((1, d), dtype=np.int64)
        return n, s, np.ones(1, dtype=np.int64)
    g_arrs = [np.asarray(g, dtype=np.int64) for g in groups]
    sizes = tuple(len(g) for g in groups)
    total = 1
    for c in sizes:
        total *= c
    idx = np.unravel_index(np.arange(total), sizes)
    n = np.empty((total, d), dtype=np.int64)
    s = np.zeros((total, d), dtype=np.int64)
    for i in range(1, d + 1):
        if i <= d - 1:
            L = g_arrs[i - 1].sum(axis=1)[idx[i - 1]]
        else:
            L = np.zeros(total, dtype=np.int64)
        g = np.zeros(total, dtype=np.int64)
        for k in range(1, i):
            g += g_arrs[k - 1][idx[k - 1], i - k - 1]
        n[:, i - 1] = alpha[i - 1] - L
        s[:, i - 1] = g - L
    # dedupe identical parameter rows; the determinant only sees (n, s)
    packed = np.concatenate([n, s], axis=1)
    uniq, counts = np.unique(packed, axis=0, return_counts=True)
    return (
        np.ascontiguousarray(uniq[:, :d]),
        np.ascontiguousarray(uniq[:, d:]),
        counts.astype(np.int64),
    )


def _tuple_count(alpha: tuple[int, ...]) -> int:
    d = len(alpha)
    total = 1
    for k in range(1, d):
        total *= comb(alpha[k] + d - k, d - k)
    return total


def int64_bound_ok(alpha: tuple[int, ...]) -> bool:
    """Conservative a priori bound: T * d! * maxbinom^d fits well inside int64."""
    d = len(alpha)
    if d == 0:
        return True
    max_binom = comb(alpha[0], alpha[0] // 2)
    bound = _tuple_count(alpha) * factorial(d) * max_binom**d
    return bound < (1 << 62)


def det_table_numpy(alpha: Partition, chunk: int = 8192) -> dict[Partition, int]:
    parts = alpha.parts
    d = len(parts)
    if d == 0:
        return {Partition(): 1}
    if not int64_bound_ok(parts):
        return det_table_python(alpha)
    m = parts[0] + d
    subsets, trans = _subset_transitions(m, d)
    beta_map = _valid_beta_map(parts, subsets[d])
    xs = np.asarray([parts[0] - 1 - j for j in range(m)], dtype=np.int64)
    n_arr, s_arr, w_arr = _row_params(parts)
    nmax = parts[0]
    binom_tab = np.zeros((nmax + 1, nmax + 1), dtype=np.int64)
    for a in range(nmax + 1):
        for b in range(a + 1):
            binom_tab[a, b] = comb(a, b)
    totals = np.zeros(len(subsets[d]), dtype=np.int64)
    u_count = n_arr.shape[0]
    for lo in range(0, u_count, chunk):
        hi = min(lo + chunk, u_count)
        n = n_arr[lo:hi]
        s = s_arr[lo:hi]
        w = w_arr[lo:hi]
        span = hi - lo
        # F[i, col] = binom(n_i, x_col + i + s_i), zero outside the valid range
        f_rows = []
        for i in range(1, d + 1):
            lower = xs[None, :] + i + s[:, i - 1][:, None]
            ni = n[:, i - 1][:, None]
            ok = (lower >= 0) & (lower <= ni)
            f_rows.append(np.where(ok, binom_tab[ni, np.clip(lower, 0, nmax)], 0))
        level = f_rows[0].T.copy()  # size-1 subsets are single columns
        for k in range(2, d + 1):
            nxt = np.zeros((len(subsets[k]), span), dtype=np.int64)
            fk = f_rows[k - 1]
            for rank, entry in enumerate(trans[k - 1]):
                acc = nxt[rank]
                for parent, col, sign in entry:
                    if sign > 0:
                        acc += fk[:, col] * level[parent]
                    else:
                        acc -= fk[:, col] * level[parent]
            level = nxt
        totals += (level * w[None, :]).sum(axis=1)
    table = {Partition(bp): int(totals[rank]) for rank, bp in beta_map.items()}
    return table


def det_table_python(alpha: Partition) -> dict[Partition, int]:
    """Arbitrary-precision fallback: same Laplace recursion, Python integers."""
    parts = alpha.parts
    d = len(parts)
    if d == 0:
        return {Partition(): 1}
    m = parts[0] + d
    subsets, trans = _subset_transitions(m, d)
    beta_map = _valid_beta_map(parts, subsets[d])
    xs = [parts[0] - 1 - j for j in range(m)]
    totals = [0] * len(subsets[d])
    groups = ell_groups(parts)
    for combo in product(*groups):
        lsum = [sum(v) for v in combo] + [0]
        f_rows = []
        for i in range(1, d + 1):
            gi = sum(combo[k - 1][i - k - 1] for k in range(1, i))
            ni = parts[i - 1] - lsum[i - 1]
            si = gi - lsum[i - 1]
            f_rows.append([comb(ni, x + i + si) if 0 <= x + i + si <= ni else 0 for x in xs])
        level = [f_rows[0][s[0]] for s in subsets[1]]
        for k in range(2, d + 1):
            fk = f_rows[k - 1]
            level = [
                sum(sign * fk[col] * level[parent] for parent, col, sign in entry)
                for entry in trans[k - 1]
            ]
        for rank in range(len(totals)):
            totals[rank] += level[rank]
    return {Partition(bp): totals[rank] for rank, bp in beta_map.items()}
