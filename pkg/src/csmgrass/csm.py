"""The CSM class calculators.

Every route to the coefficients gamma_{alpha,beta} of the CSM class of a
Schubert cell is implemented here as an independent computation path:

  * csm_h      - pushforward of the cell polynomial built from complete
                 homogeneous symmetric factors, one pass per diagram;
  * csm_rat    - pushforward of the truncated expansion of the rational
                 form prod (1+x_i)^(alpha_i+d-i) / prod (1+x_i-x_j);
  * gamma_det  - the sum of binomial determinants over auxiliary indices;
  * gamma_genfun - coefficient extraction from the 2d-variable generating
                 series (the costliest path);
  * gamma_onerow - the closed product for one-row coefficients;
  * gamma_lgv  - nonintersecting lattice paths, for two-row diagrams, by
                 exhaustive enumeration or by the path-count determinant.

All paths return exact integers; agreement between them is enforced by the
verification suite.  Table-producing paths accept an `engine` argument:
"dense" runs on the guarded int64 array backend, "sparse" on the arbitrary
precision sparse polynomials, and "auto" tries dense first and falls back
when the int64 safety bound cannot be met.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial
from typing import Mapping, Sequence

from .dense import BoxSeries, DenseOverflow
from .dettable import ell_groups, det_table_numpy, det_table_python, int64_bound_ok
from .partition import Partition, sort_key, subdiagrams
from .poly import PolyRing, SparsePoly, geom_inverse, h_complete
from .schubert import ChowClass, omega_reduce, push_spec

ENGINES = ("auto", "dense", "sparse")


class GammaTable:
    """The full map beta -> gamma_{alpha,beta} for a fixed alpha.

    Unlike ChowClass, zero entries are stored explicitly: the key set is
    exactly the subdiagrams of alpha, so tables are shape-complete and can
    be diffed across methods and under transposition.
    """

    __slots__ = ("alpha", "method", "entries")

    def __init__(self, alpha: Partition, entries: Mapping[Partition, int], method: str,
                 cell: bool = True):
        self.alpha = alpha
        self.method = method
        shape = list(subdiagrams(alpha))
        shape_set = set(shape)
        for beta in entries:
            if beta not in shape_set:
                raise ValueError(f"table key {beta} is not a subdiagram of {alpha}")
        self.entries = {beta: entries.get(beta, 0) for beta in shape}
        if self.entries[alpha] != 1:
            raise AssertionError(f"leading coefficient at {alpha} is {self.entries[alpha]}, not 1")
        if cell and self.entries[Partition()] != 1:
            raise AssertionError(
                f"point coefficient of the {alpha} cell is {self.entries[Partition()]}, not 1"
            )

    def get(self, beta: Partition) -> int:
        return self.entries[beta]

    def items_ordered(self):
        d = len(self.alpha)
        return sorted(self.entries.items(), key=lambda kv: sort_key(kv[0], d))

    def negatives(self) -> list[tuple[Partition, int]]:
        return [(b, c) for b, c in self.items_ordered() if c < 0]

    def as_chow(self) -> ChowClass:
        return ChowClass({b: c for b, c in self.entries.items() if c}, ambient=self.alpha)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GammaTable)
            and self.alpha == other.alpha
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"GammaTable(alpha={self.alpha}, method={self.method}, {len(self.entries)} entries)"

    def to_json_obj(self) -> dict:
        return {
            "alpha": list(self.alpha.parts),
            "method": self.method,
            "entries": [
                {"beta": list(b.parts), "coeff": str(c)} for b, c in self.items_ordered()
            ],
        }


# ---------------------------------------------------------------------------
# shared expansion machinery


@dataclass
class _Factor:
    """One factor of a product: plain terms, or the series 1/(1 - terms)."""

    terms: dict[tuple[int, ...], int]
    invert: bool = False


def _expand(caps: tuple[int, ...], factors: Sequence[_Factor], engine: str):
    """Multiply the factors under the truncation profile.

    Returns either a BoxSeries (dense engine) or a term dict (sparse).
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine in ("auto", "dense"):
        try:
            series = BoxSeries.one(caps)
            for f in factors:
                if f.invert:
                    series = series.divide_one_minus(f.terms)
                else:
                    series = series.mul_terms(f.terms)
            return series
        except DenseOverflow:
            if engine == "dense":
                raise
    ring = PolyRing(len(caps), caps)
    p = ring.one()
    for f in factors:
        q = SparsePoly(ring, f.terms)
        p = p * (geom_inverse(q) if f.invert else q)
    return dict(p.terms)


def _coeff(series, exps: tuple[int, ...]) -> int:
    if isinstance(series, BoxSeries):
        return series.get(exps)
    return series.get(exps, 0)


def _terms(series):
    return series.items()


def _unit_exp(nvars: int, i: int, k: int = 1) -> tuple[int, ...]:
    e = [0] * nvars
    e[i] = k
    return tuple(e)


def _binomial_power_terms(nvars: int, i: int, count: int, base_sign: int = 1):
    """(1 + sign*x_i)^count as a term dict."""
    return {_unit_exp(nvars, i, k): base_sign**k * comb(count, k) for k in range(count + 1)}


def _table_from_cell_series(alpha: Partition, d: int, series, method: str) -> GammaTable:
    padded = alpha.padded(d)
    acc: dict[Partition, int] = {}
    for exps, coeff in _terms(series):
        reduced = omega_reduce(push_spec(padded, exps, d))
        if reduced is None:
            continue
        sign, beta_parts = reduced
        beta = Partition(beta_parts)
        s = acc.get(beta, 0) + sign * coeff
        if s:
            acc[beta] = s
        else:
            del acc[beta]
    return GammaTable(alpha, acc, method)


# ---------------------------------------------------------------------------
# route 1: complete homogeneous symmetric factors


def _h_factors(alpha: Partition, d: int, caps: tuple[int, ...] | None) -> list[_Factor]:
    ring = PolyRing(d, caps)
    padded = alpha.padded(d) + (0,)
    factors = []
    for i in range(1, d + 1):
        drop = padded[i - 1] - padded[i]
        if drop:
            factors.append(_Factor(_binomial_power_terms(d, i - 1, drop)))
        a = padded[i]
        if a:
            args = [ring.one() + ring.var(i - 1)] + [ring.var(j) for j in range(i, d)]
            factors.append(_Factor(dict(h_complete(a, args, ring).terms)))
    return factors


def cell_poly_h(alpha: Partition, d: int | None = None) -> SparsePoly:
    """The untruncated cell polynomial of the symmetric-factor route.

    prod over i of (1+x_i)^(alpha_i - alpha_{i+1}) * h_{alpha_{i+1}}(1+x_i,
    x_{i+1}, ..., x_d).  Mostly useful for inspection (verbose CLI output);
    the table builders cap each variable at its largest useful exponent.
    """
    d = alpha.num_parts() if d is None else d
    ring = PolyRing(d)
    p = ring.one()
    for f in _h_factors(alpha, d, None):
        p = p * SparsePoly(ring, f.terms)
    return p


def _pushforward_caps(alpha: Partition, d: int) -> tuple[int, ...]:
    # exponents r_i > alpha_i + d - i push forward to zero, so cap there
    padded = alpha.padded(d)
    return tuple(padded[i - 1] + d - i for i in range(1, d + 1))


def csm_h(alpha: Partition, d: int | None = None, engine: str = "auto") -> GammaTable:
    """Cell table via the symmetric-factor polynomial, pushed forward."""
    d = alpha.num_parts() if d is None else d
    if d < alpha.num_parts():
        raise ValueError(f"d={d} is smaller than the number of parts of {alpha}")
    if d == 0:
        return GammaTable(alpha, {Partition(): 1}, "h")
    caps = _pushforward_caps(alpha, d)
    series = _expand(caps, _h_factors(alpha, d, caps), engine)
    return _table_from_cell_series(alpha, d, series, "h")


# ---------------------------------------------------------------------------
# route 2: rational form


def _rat_factors(alpha: Partition, d: int) -> list[_Factor]:
    padded = alpha.padded(d)
    factors = []
    for i in range(1, d + 1):
        factors.append(_Factor(_binomial_power_terms(d, i - 1, padded[i - 1] + d - i)))
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            # 1/(1 + x_i - x_j) expanded as the geometric series in x_j - x_i
            f = {_unit_exp(d, j - 1): 1, _unit_exp(d, i - 1): -1}
            factors.append(_Factor(f, invert=True))
    return factors


def csm_rat(alpha: Partition, d: int | None = None, engine: str = "auto") -> GammaTable:
    """Cell table via the truncated expansion of the rational form."""
    d = alpha.num_parts() if d is None else d
    if d < alpha.num_parts():
        raise ValueError(f"d={d} is smaller than the number of parts of {alpha}")
    if d == 0:
        return GammaTable(alpha, {Partition(): 1}, "rat")
    caps = _pushforward_caps(alpha, d)
    series = _expand(caps, _rat_factors(alpha, d), engine)
    return _table_from_cell_series(alpha, d, series, "rat")


# ---------------------------------------------------------------------------
# route 3: sum of binomial determinants


@lru_cache(maxsize=16)
def _signed_perms(d: int):
    out = []
    for perm in permutations(range(d)):
        inv = sum(1 for a in range(d) for b in range(a + 1, d) if perm[a] > perm[b])
        out.append((perm, -1 if inv % 2 else 1))
    return out


def _comb0(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def gamma_det(alpha: Partition, beta: Partition) -> int:
    """Single coefficient by direct summation of binomial determinants.

    The auxiliary indices l^k_i (1 <= k < i <= d) each run over nonnegative
    integers subject to l^k_{k+1} + ... + l^k_d <= alpha_{k+1}; the binomial
    convention is binom(n, m) = 0 for m < 0 or m > n.
    """
    if not alpha.contains(beta):
        raise ValueError(f"{beta} is not contained in {alpha}")
    d = alpha.num_parts()
    if d == 0:
        return 1
    bpad = beta.padded(d)
    apad = alpha.parts
    total = 0
    perms = _signed_perms(d)
    for combo in product(*ell_groups(apad)):
        rows = []
        for i in range(1, d + 1):
            l_out = sum(combo[i - 1]) if i <= d - 1 else 0
            g_in = sum(combo[k - 1][i - k - 1] for k in range(1, i))
            n = apad[i - 1] - l_out
            shift = g_in - l_out
            rows.append([_comb0(n, bpad[j - 1] + (i - j) + shift) for j in range(1, d + 1)])
        det = 0
        for perm, sign in perms:
            term = sign
            for i in range(d):
                term *= rows[i][perm[i]]
                if term == 0:
                    break
            det += term
        total += det
    return total


def gamma_det_table(alpha: Partition, engine: str = "auto") -> GammaTable:
    """Full table of the determinant route, amortizing the auxiliary sum."""
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine == "dense" or (engine == "auto" and int64_bound_ok(alpha.parts)):
        raw = det_table_numpy(alpha)
    else:
        raw = det_table_python(alpha)
    return GammaTable(alpha, raw, "det")


# ---------------------------------------------------------------------------
# route 4: generating series in 2d variables


def _genfun_factors(d: int) -> list[_Factor]:
    """Factors of the generating series, smallest support first.

    Variables 0..d-1 are t_1..t_d, variables d..2d-1 are u_1..u_d.  The
    monomial prefactor is absorbed by shifting the target exponents.
    """
    n = 2 * d
    plain: list[_Factor] = []
    inverted: list[_Factor] = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            plain.append(_Factor({_unit_exp(n, i - 1): 1, _unit_exp(n, j - 1): -1}))
            plain.append(_Factor({_unit_exp(n, d + i - 1): 1, _unit_exp(n, d + j - 1): -1}))
            # 1/(1 - 2 t_j + t_i t_j)
            tt = [0] * n
            tt[i - 1] = 1
            tt[j - 1] = 1
            inverted.append(_Factor({_unit_exp(n, j - 1): 2, tuple(tt): -1}, invert=True))
    for i in range(1, d + 1):
        plain.append(_Factor(_binomial_power_terms(n, i - 1, d, base_sign=-1)))
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            # 1/(1 - t_i (1 + u_j))
            tu = [0] * n
            tu[i - 1] = 1
            tu[d + j - 1] = 1
            inverted.append(_Factor({_unit_exp(n, i - 1): 1, tuple(tu): 1}, invert=True))
    return plain + inverted


def _genfun_series_dense(d: int, t_caps: tuple[int, ...], u_caps: tuple[int, ...]) -> BoxSeries:
    """Staged dense expansion of the generating series.

    Multiplies the same factors as `_genfun_factors` under the same caps,
    but introduces each u axis only when its factors come up, so the early
    products run on the small t-only box.
    """
    series = BoxSeries.one(t_caps)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            series = series.mul_terms({_unit_exp(d, i - 1): 1, _unit_exp(d, j - 1): -1})
    for i in range(1, d + 1):
        series = series.mul_terms(_binomial_power_terms(d, i - 1, d, base_sign=-1))
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            tt = [0] * d
            tt[i - 1] = 1
            tt[j - 1] = 1
            series = series.divide_one_minus({_unit_exp(d, j - 1): 2, tuple(tt): -1})
    for j in range(1, d + 1):
        series = series.append_axis(u_caps[j - 1])
        nv = d + j
        for i in range(1, d + 1):
            tu = [0] * nv
            tu[i - 1] = 1
            tu[nv - 1] = 1
            series = series.divide_one_minus({_unit_exp(nv, i - 1): 1, tuple(tu): 1})
    nv = 2 * d
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            series = series.mul_terms(
                {_unit_exp(nv, d + i - 1): 1, _unit_exp(nv, d + j - 1): -1}
            )
    return series


def _genfun_series(d: int, t_caps: tuple[int, ...], u_caps: tuple[int, ...], engine: str):
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if engine in ("auto", "dense"):
        try:
            return _genfun_series_dense(d, t_caps, u_caps)
        except DenseOverflow:
            if engine == "dense":
                raise
    return _expand(t_caps + u_caps, _genfun_factors(d), "sparse")


def _genfun_targets(alpha: Partition, beta: Partition, d: int):
    t_target = tuple(alpha.padded(d)[i - 1] + d + 1 - i for i in range(1, d + 1))
    u_target = tuple(beta.padded(d)[j - 1] + d + 1 - j for j in range(1, d + 1))
    return t_target, u_target


def gamma_genfun(alpha: Partition, beta: Partition, engine: str = "auto") -> int:
    """Single coefficient read off the generating series expansion."""
    if not alpha.contains(beta):
        raise ValueError(f"{beta} is not contained in {alpha}")
    d = alpha.num_parts()
    if d == 0:
        return 1
    t_target, u_target = _genfun_targets(alpha, beta, d)
    series = _genfun_series(d, t_target, u_target, engine)
    return _coeff(series, t_target + u_target)


def gamma_genfun_table(alpha: Partition, engine: str = "auto") -> GammaTable:
    """Full table from one expansion of the generating series."""
    d = alpha.num_parts()
    if d == 0:
        return GammaTable(alpha, {Partition(): 1}, "genfun")
    t_target, _ = _genfun_targets(alpha, alpha, d)
    # u_j <= alpha_j + d + 1 - j covers the target of every beta <= alpha
    series = _genfun_series(d, t_target, t_target, engine)
    table = {}
    for beta in subdiagrams(alpha):
        _, u_target = _genfun_targets(alpha, beta, d)
        table[beta] = _coeff(series, t_target + u_target)
    return GammaTable(alpha, table, "genfun")


# ---------------------------------------------------------------------------
# route 5: one-row coefficients


def gamma_onerow(alpha: Partition) -> SparsePoly:
    """The univariate polynomial whose u^r coefficient is gamma_{alpha,(r)}.

    Equal to prod over i of (1 + i*u)^(alpha_i - alpha_{i+1}); in particular
    the constant term is 1, the point coefficient.
    """
    ring = PolyRing(1)
    padded = alpha.parts + (0,)
    p = ring.one()
    for i in range(1, alpha.num_parts() + 1):
        p = p * (ring.one() + ring.const(i) * ring.var(0)) ** (padded[i - 1] - padded[i])
    return p


# ---------------------------------------------------------------------------
# route 6: nonintersecting lattice paths (two-row diagrams)

LGV_MODES = ("enumerate", "determinant")


def _lattice_paths(a: tuple[int, int], b: tuple[int, int]) -> list[frozenset]:
    """All right/down lattice paths from a to b, as point sets."""
    right = b[0] - a[0]
    down = a[1] - b[1]
    if right < 0 or down < 0:
        return []
    out = []

    def rec(x, y, acc):
        if (x, y) == b:
            out.append(frozenset(acc))
            return
        if x < b[0]:
            rec(x + 1, y, acc + [(x + 1, y)])
        if y > b[1]:
            rec(x, y - 1, acc + [(x, y - 1)])

    rec(a[0], a[1], [a])
    return out


def lgv_per_ell(alpha: Partition, beta: Partition, mode: str = "enumerate") -> list[int]:
    """Per-offset counts of nonintersecting path pairs (or determinants)."""
    if mode not in LGV_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if alpha.num_parts() > 2:
        raise ValueError(f"lattice path route requires at most 2 rows, got {alpha}")
    if not alpha.contains(beta):
        raise ValueError(f"{beta} is not contained in {alpha}")
    a1, a2 = alpha.part(1), alpha.part(2)
    b1, b2 = beta.part(1), beta.part(2)
    counts = []
    for ell in range(a2 + 1):
        if mode == "determinant":
            v = _comb0(a1 - ell, b1 - ell) * _comb0(a2, b2 + ell) - _comb0(
                a1 - ell, b2 - 1 - ell
            ) * _comb0(a2, b1 + 1 + ell)
        else:
            first = _lattice_paths((ell + 2, a1 + 2), (b1 + 2, b1 + 2))
            second = _lattice_paths((1 - ell, a2 + 1 - ell), (b2 + 1, b2 + 1))
            v = sum(1 for p1 in first for p2 in second if not (p1 & p2))
        counts.append(v)
    return counts


def gamma_lgv(alpha: Partition, beta: Partition, mode: str = "enumerate") -> int:
    """Coefficient for a two-row diagram counted by nonintersecting paths."""
    if alpha.num_parts() == 0:
        if beta.num_parts() != 0:
            raise ValueError(f"{beta} is not contained in {alpha}")
        return 1
    return sum(lgv_per_ell(alpha, beta, mode))


# ---------------------------------------------------------------------------
# aggregation


METHODS = ("h", "rat", "det", "genfun")


def gamma_table(alpha: Partition, method: str = "h", engine: str = "auto") -> GammaTable:
    """Full cell table via the named method."""
    if method == "h":
        return csm_h(alpha, engine=engine)
    if method == "rat":
        return csm_rat(alpha, engine=engine)
    if method == "det":
        return gamma_det_table(alpha, engine=engine)
    if method == "genfun":
        return gamma_genfun_table(alpha, engine=engine)
    raise ValueError(f"unknown method {method!r}")


def gamma_coefficient(alpha: Partition, beta: Partition, method: str = "det",
                      engine: str = "auto") -> int:
    """Single coefficient via the named method (including the lgv modes)."""
    if method == "det":
        return gamma_det(alpha, beta)
    if method == "genfun":
        return gamma_genfun(alpha, beta, engine=engine)
    if method in ("lgv", "lgv-enum"):
        return gamma_lgv(alpha, beta, "enumerate")
    if method == "lgv-det":
        return gamma_lgv(alpha, beta, "determinant")
    if method in ("h", "rat"):
        if not alpha.contains(beta):
            raise ValueError(f"{beta} is not contained in {alpha}")
        return gamma_table(alpha, method, engine).get(beta)
    raise ValueError(f"unknown method {method!r}")


def csm_variety(alpha: Partition, method: str = "h", engine: str = "auto") -> GammaTable:
    """CSM class of the Schubert variety: sum of the cell classes inside it.

    The coefficient of [S(delta)] is the sum of gamma_{beta,delta} over all
    beta between delta and alpha; the point entry is the Euler
    characteristic, i.e. the number of cells.
    """
    acc: dict[Partition, int] = {}
    for beta in subdiagrams(alpha):
        cell = gamma_table(beta, method, engine)
        for delta, c in cell.entries.items():
            acc[delta] = acc.get(delta, 0) + c
    return GammaTable(alpha, acc, f"variety-{method}", cell=False)


def chern_grass_onerow(cols: int, rows: int) -> SparsePoly:
    """One-row part of the total Chern class of the Grassmannian G_d(V).

    For d = rows and dim V = cols + rows, the u^r coefficient of the result
    is the coefficient of the one-row class [S((r))]; it is computed as
    (1/(d! u^d)) * sum_{i=0..d} binom(d,i) (-1)^(d-i) (1+iu)^(dim V), and
    the division must be exact (anything else is an implementation bug).
    """
    if cols < 1 or rows < 1:
        raise ValueError("both Grassmannian sides must be at least 1")
    n, d = cols, rows
    ring = PolyRing(1)
    u = ring.var(0)
    acc = ring.zero()
    for i in range(d + 1):
        sign = -1 if (d - i) % 2 else 1
        acc = acc + ring.const(sign * comb(d, i)) * (ring.one() + ring.const(i) * u) ** (n + d)
    fact = factorial(d)
    out = {}
    for (k,), c in acc.terms.items():
        if k < d:
            raise AssertionError(f"nonzero coefficient {c} at u^{k} below u^{d}")
        if c % fact:
            raise AssertionError(f"coefficient {c} at u^{k} is not divisible by {d}!")
        out[(k - d,)] = c // fact
    return SparsePoly(ring, out)
