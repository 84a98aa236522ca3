"""Identity checks, the positivity scan, and the parallel scan runner.

Every check walks a family of diagrams (usually all diagrams fitting in an
N x D rectangle), evaluates an exact identity, and collects mismatches into
a `VerificationReport`.  Mismatches are report content, not exceptions: a
failed positivity scan would be a counterexample worth keeping.

Reports are deterministic: diagrams are processed in the canonical
enumeration order, failure payloads are fully self-describing, and the
rendered text does not depend on worker count or timing.  Wall-clock time
is kept on the report but excluded from the deterministic text rendering.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .csm import csm_h, gamma_lgv, gamma_onerow, gamma_table
from .partition import Partition, rectangle, subdiagrams
from .schubert import (
    DUAL_SUBBUNDLE,
    QUOTIENT,
    cap_special,
    cap_total,
    chow_scale,
    pushforward_monomial,
)

CHECKS = ("positivity", "cross", "duality", "adjunction", "euler", "antisym")

# enumerate-mode lattice path counting is exponential in the width; beyond
# this width only the determinant mode runs in cross checks
LGV_ENUM_WIDTH_LIMIT = 10


@dataclass(frozen=True)
class RectUniverse:
    """All diagrams fitting in cols x rows, optionally capped by box count."""

    cols: int
    rows: int
    max_size: int | None = None

    @classmethod
    def parse(cls, text: str, max_size: int | None = None) -> "RectUniverse":
        try:
            cols_s, rows_s = text.lower().split("x")
            return cls(int(cols_s), int(rows_s), max_size)
        except (ValueError, AttributeError):
            raise ValueError(f"bad rectangle spec {text!r}, expected e.g. '5x5'") from None

    def diagrams(self) -> list[Partition]:
        out = subdiagrams(rectangle(self.cols, self.rows))
        if self.max_size is not None:
            return [a for a in out if a.size() <= self.max_size]
        return list(out)

    def describe(self) -> str:
        base = f"rect {self.cols}x{self.rows}"
        if self.max_size is not None:
            base += f" size<={self.max_size}"
        return base


@dataclass
class Failure:
    alpha: str
    beta: str | None
    expected: str
    actual: str

    def to_json_obj(self):
        return {"alpha": self.alpha, "beta": self.beta, "expected": self.expected,
                "actual": self.actual}

    def render(self) -> str:
        where = self.alpha if self.beta is None else f"{self.alpha} @ {self.beta}"
        return f"FAIL {where}: expected {self.expected}, got {self.actual}"


@dataclass
class VerificationReport:
    check: str
    universe: str
    tested: int = 0
    failures: list[Failure] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def render_text(self) -> str:
        lines = [
            f"check: {self.check}",
            f"universe: {self.universe}",
            f"tested: {self.tested}",
        ]
        if self.skipped:
            lines.append(f"skipped: {' '.join(self.skipped)}")
        lines.append(f"failures: {len(self.failures)}")
        lines.extend(f.render() for f in self.failures)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        return {
            "check": self.check,
            "universe": self.universe,
            "tested": self.tested,
            "failures": [f.to_json_obj() for f in self.failures],
            "skipped": list(self.skipped),
            "elapsed_ms": int(self.elapsed * 1000),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


# ---------------------------------------------------------------------------
# per-diagram check bodies (top level, so worker processes can import them)


def _deadline(budget: float | None):
    start = time.perf_counter()

    def over() -> bool:
        return budget is not None and time.perf_counter() - start > budget

    return over


def _alpha_cross(alpha: Partition, methods: tuple[str, ...], budget: float | None):
    over = _deadline(budget)
    failures: list[Failure] = []
    tables = {}
    base = methods[0]
    for m in methods:
        if over():
            return failures, True
        tables[m] = gamma_table(alpha, m)
    for beta in subdiagrams(alpha):
        ref = tables[base].get(beta)
        for m in methods[1:]:
            val = tables[m].get(beta)
            if val != ref:
                failures.append(Failure(str(alpha), str(beta), f"{base}={ref}", f"{m}={val}"))
    if alpha.num_parts() <= 2:
        modes = ["determinant"]
        if alpha.part(1) <= LGV_ENUM_WIDTH_LIMIT:
            modes.append("enumerate")
        for beta in subdiagrams(alpha):
            if over():
                return failures, True
            ref = tables[base].get(beta)
            for mode in modes:
                val = gamma_lgv(alpha, beta, mode)
                if val != ref:
                    failures.append(
                        Failure(str(alpha), str(beta), f"{base}={ref}", f"lgv-{mode}={val}")
                    )
    return failures, False


def _alpha_positivity(alpha: Partition, method: str, budget: float | None):
    over = _deadline(budget)
    if over():
        return [], True
    table = gamma_table(alpha, method)
    failures = [
        Failure(str(alpha), str(beta), ">= 0", str(c)) for beta, c in table.negatives()
    ]
    return failures, False


def _alpha_duality(alpha: Partition, budget: float | None):
    over = _deadline(budget)
    if over():
        return [], True
    table = csm_h(alpha)
    table_t = csm_h(alpha.transpose())
    failures = []
    for beta, c in table.items_ordered():
        ct = table_t.get(beta.transpose())
        if ct != c:
            failures.append(
                Failure(str(alpha), str(beta), f"gamma={c}", f"transposed gamma={ct}")
            )
    return failures, False


def _alpha_euler(alpha: Partition, budget: float | None):
    over = _deadline(budget)
    failures = []
    point = Partition()
    cells = list(subdiagrams(alpha))
    variety_point = 0
    for beta in cells:
        if over():
            return failures, True
        cell_point = csm_h(beta).get(point)
        variety_point += cell_point
        if cell_point != 1:
            failures.append(Failure(str(alpha), str(beta), "cell point coeff 1", str(cell_point)))
    if variety_point != len(cells):
        failures.append(
            Failure(str(alpha), None, f"variety point coeff {len(cells)}", str(variety_point))
        )
    return failures, False


def _alpha_adjunction(alpha: Partition, budget: float | None):
    over = _deadline(budget)
    failures = []
    if alpha.is_empty():
        return failures, False
    if over():
        return failures, True
    d = alpha.num_parts()
    cell = csm_h(alpha).as_chow()
    # rows: cap with c_d(dual subbundle) vs total class over the column-removed diagram
    lhs = cap_special(cell, d, DUAL_SUBBUNDLE, d)
    rhs = cap_total(csm_h(alpha.remove_column()).as_chow(), DUAL_SUBBUNDLE, d, d)
    if lhs != rhs:
        failures.append(Failure(str(alpha), None, f"rows: {rhs}", str(lhs)))
    if over():
        return failures, True
    # columns: cap with c_{alpha_1}(quotient) vs total class over the row-removed diagram
    top = alpha.part(1)
    lhs = cap_special(cell, top, QUOTIENT, d)
    rhs = cap_total(csm_h(alpha.remove_bottom_row()).as_chow(), QUOTIENT, top, d)
    if lhs != rhs:
        failures.append(Failure(str(alpha), None, f"cols: {rhs}", str(lhs)))
    return failures, False


def _alpha_onerow(alpha: Partition, budget: float | None):
    over = _deadline(budget)
    if over():
        return [], True
    table = csm_h(alpha)
    poly = gamma_onerow(alpha)
    failures = []
    for r in range(alpha.part(1) + 1):
        beta = Partition([r] if r else [])
        expected = poly.coefficient((r,))
        actual = table.get(beta)
        if actual != expected:
            failures.append(Failure(str(alpha), str(beta), f"onerow {expected}", str(actual)))
    return failures, False


def _alpha_dstab(alpha: Partition, budget: float | None):
    over = _deadline(budget)
    if over():
        return [], True
    d = alpha.num_parts()
    base = csm_h(alpha, d)
    padded = csm_h(alpha, d + 1)
    failures = []
    if base != padded:
        for beta in subdiagrams(alpha):
            a, b = base.get(beta), padded.get(beta)
            if a != b:
                failures.append(Failure(str(alpha), str(beta), f"d={d}: {a}", f"d={d + 1}: {b}"))
    return failures, False


_ALPHA_CHECKS = {
    "cross": _alpha_cross,
    "positivity": _alpha_positivity,
    "duality": _alpha_duality,
    "euler": _alpha_euler,
    "adjunction": _alpha_adjunction,
    "onerow": _alpha_onerow,
    "dstab": _alpha_dstab,
}


def _run_alpha(task):
    name, alpha_parts, args, budget = task
    alpha = Partition(alpha_parts)
    failures, skipped = _ALPHA_CHECKS[name](alpha, *args, budget)
    return str(alpha), failures, skipped


def _scan(name: str, universe: RectUniverse, args: tuple, jobs: int | None,
          budget: float | None, check_label: str | None = None) -> VerificationReport:
    start = time.perf_counter()
    tasks = [(name, a.parts, args, budget) for a in universe.diagrams()]
    if jobs is None:
        jobs = 1
    if jobs > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_alpha, tasks, chunksize=chunk))
    else:
        results = [_run_alpha(t) for t in tasks]
    report = VerificationReport(check=check_label or name, universe=universe.describe())
    for alpha_str, failures, skipped in results:
        if skipped:
            report.skipped.append(alpha_str)
        else:
            report.tested += 1
            report.failures.extend(failures)
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# public checks


def check_cross_methods(universe: RectUniverse, methods: tuple[str, ...] = ("h", "rat", "det"),
                        jobs: int | None = 1, budget: float | None = None) -> VerificationReport:
    """Compare every enabled coefficient route on every diagram in the universe.

    The lattice path route (both modes) joins in automatically on diagrams
    with at most two rows.
    """
    for m in methods:
        if m not in ("h", "rat", "det", "genfun"):
            raise ValueError(f"unknown method {m!r}")
    if len(methods) < 2:
        raise ValueError("need at least two methods to cross-check")
    return _scan("cross", universe, (tuple(methods),), jobs, budget)


def check_positivity(universe: RectUniverse, method: str = "h", jobs: int | None = 1,
                     budget: float | None = None) -> VerificationReport:
    """Record every negative coefficient in the universe (conjecturally none)."""
    return _scan("positivity", universe, (method,), jobs, budget)


def check_duality(universe: RectUniverse, jobs: int | None = 1,
                  budget: float | None = None) -> VerificationReport:
    """gamma_{alpha,beta} = gamma_{alpha^t,beta^t} over the universe."""
    return _scan("duality", universe, (), jobs, budget)


def check_euler(universe: RectUniverse, jobs: int | None = 1,
                budget: float | None = None) -> VerificationReport:
    """Point coefficients: 1 per cell, cell count for the variety class."""
    return _scan("euler", universe, (), jobs, budget)


def check_adjunction(universe: RectUniverse, jobs: int | None = 1,
                     budget: float | None = None) -> VerificationReport:
    """Both adjunction identities for every nonempty diagram in the universe."""
    return _scan("adjunction", universe, (), jobs, budget)


def check_adjunction_rows(alpha: Partition) -> VerificationReport:
    """Column-removal adjunction for a single diagram.

    Capping the cell class of alpha with the top Chern class of the dual
    subbundle equals capping the cell class of the column-removed diagram
    with the full total class.
    """
    start = time.perf_counter()
    report = VerificationReport(check="adjunction-rows", universe=str(alpha))
    d = alpha.num_parts()
    if d == 0:
        raise ValueError("adjunction requires a nonempty diagram")
    cell = csm_h(alpha).as_chow()
    lhs = cap_special(cell, d, DUAL_SUBBUNDLE, d)
    rhs = cap_total(csm_h(alpha.remove_column()).as_chow(), DUAL_SUBBUNDLE, d, d)
    report.tested = 1
    if lhs != rhs:
        report.failures.append(Failure(str(alpha), None, str(rhs), str(lhs)))
    report.elapsed = time.perf_counter() - start
    return report


def check_adjunction_cols(alpha: Partition) -> VerificationReport:
    """Row-removal adjunction for a single diagram, via quotient bundle caps."""
    start = time.perf_counter()
    report = VerificationReport(check="adjunction-cols", universe=str(alpha))
    d = alpha.num_parts()
    if d == 0:
        raise ValueError("adjunction requires a nonempty diagram")
    top = alpha.part(1)
    cell = csm_h(alpha).as_chow()
    lhs = cap_special(cell, top, QUOTIENT, d)
    rhs = cap_total(csm_h(alpha.remove_bottom_row()).as_chow(), QUOTIENT, top, d)
    report.tested = 1
    if lhs != rhs:
        report.failures.append(Failure(str(alpha), None, str(rhs), str(lhs)))
    report.elapsed = time.perf_counter() - start
    return report


def check_pushforward_antisymmetry(cols: int, rows: int) -> VerificationReport:
    """Adjacent-exponent antisymmetry of the pushforward over a rectangle.

    For the cols x rows rectangle and every exponent vector with entries up
    to cols + rows: swapping (r_i, r_{i+1}) to (r_{i+1}+1, r_i-1) negates
    the pushed-forward class.
    """
    if rows < 2:
        raise ValueError("antisymmetry needs at least two rows")
    start = time.perf_counter()
    alpha = rectangle(cols, rows)
    report = VerificationReport(check="antisym", universe=f"rect {cols}x{rows}")
    bound = cols + rows
    for r in _exponent_vectors(rows, bound):
        tested_here = False
        for i in range(rows - 1):
            if r[i] == 0:
                continue
            tested_here = True
            swapped = list(r)
            swapped[i], swapped[i + 1] = r[i + 1] + 1, r[i] - 1
            lhs = pushforward_monomial(alpha, r, rows)
            rhs = chow_scale(pushforward_monomial(alpha, tuple(swapped), rows), -1)
            if lhs != rhs:
                report.failures.append(
                    Failure(str(alpha), None, f"r={r}: {lhs}", f"swap@{i + 1}: {rhs}")
                )
        if tested_here:
            report.tested += 1
    report.elapsed = time.perf_counter() - start
    return report


def _exponent_vectors(length: int, bound: int):
    if length == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in _exponent_vectors(length - 1, bound):
            yield (head,) + tail


def check_structural(universe: RectUniverse, jobs: int | None = 1,
                     budget: float | None = None) -> list[VerificationReport]:
    """The bundle of structural identities: duality, d-stability, one-row,
    leading/point normalization (part of every table build), Euler counts."""
    return [
        check_duality(universe, jobs, budget),
        _scan("dstab", universe, (), jobs, budget, check_label="d-stability"),
        _scan("onerow", universe, (), jobs, budget, check_label="one-row"),
        check_euler(universe, jobs, budget),
    ]
