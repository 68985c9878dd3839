"""Reference-table reproduction, consistency checks and report emission.

Three fixed parameter grids ("table 1", "table 2", "table 3") measure
the relative accuracy of the truncated large-a expansions against the
direct sum and compare the result with frozen reference values:

* table 1: sign -, mu = 1/2, lam = 1, a in {6, 8, 10}, truncation
  k in {0, 1, 2, 4, 6, 8}, plus one direct-sum value row per a;
* table 2: sign -, complex a = 6 e^(i pi phi) (or 6 e^(i phi) under the
  alternative angle convention), phi in {0, 0.1, 0.2, 0.3, 0.4}, three
  (mu, lam) columns, truncation k = 8;
* table 3: sign +, mu = 1/4, lam = 1, a in {10, 15, 20}, truncation
  k in {0, ..., 5}, plus one direct-sum value row per a.

The quoted error cell is  |S_direct - S_algebraic(k)| / |S_direct|,
i.e. the accuracy of the algebraic expansion alone, without the Bessel
tail.  "Truth" is the binary64 direct sum at tol = 1e-15; the frozen
error references carry four significant figures, so a 2 percent
comparison tolerance absorbs their last-digit rounding (value rows
carry six figures and get 1e-5).

Beyond the tables: ``tail_agreement_check`` compares the Bessel tail
against the independently measured defect S - 1/(2 a^(2 mu)) - H,
``decay_rate_fit`` extracts the exponential decay rate of that defect
from a high-precision remainder (expected -pi for sign -, -2 pi for
sign +), and ``emit_report`` writes rows as CSV or JSON with
round-trip float formatting.

Grid cells are independent; ``MXSUM_THREADS`` (> 1) evaluates them in
a thread pool, with results always collected in input order, so
reports are byte-identical regardless of the thread count.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from csv import writer as _csv_writer
from dataclasses import dataclass

from .errors import NonConvergenceError, PreconditionError
from .evaluators import (
    SeriesParams,
    algebraic_minus,
    algebraic_plus,
    bessel_tail_minus,
    direct_sum,
    h_minus_quadrature,
    mu_step_check,
)

__all__ = [
    "CSV_HEADER",
    "ReportRow",
    "TableSpec",
    "check_suite",
    "decay_rate_fit",
    "emit_report",
    "reproduce_table1",
    "reproduce_table2",
    "reproduce_table3",
    "row_record",
    "table2_convention_report",
    "table_spec",
    "tail_agreement_check",
]

CSV_HEADER = (
    "table",
    "row_id",
    "sign",
    "mu",
    "lambda",
    "a_re",
    "a_im",
    "k",
    "computed",
    "reference",
    "rel_error",
    "pass",
)


@dataclass(frozen=True)
class ReportRow:
    """One checked quantity.

    table: "1" | "2" | "3" for grid rows, "check" for the consistency
        suite
    row_id: stable identifier, unique within a report and chosen so
        that lexicographic order equals grid order
    sign, mu, lam, a, k: inputs (None where not applicable; k is the
        truncation index for expansion-error rows, None for value rows)
    computed: the measured quantity (a relative error for error rows,
        a value otherwise)
    reference: frozen comparison value, None for unreferenced checks
    relative_error: |computed - reference| / |reference| when a
        reference is present
    passed: whether the row met tolerance_used
    """

    table: str
    row_id: str
    sign: str
    mu: float | None
    lam: float | None
    a: complex | None
    k: int | None
    computed: float
    reference: float | None
    relative_error: float | None
    passed: bool
    tolerance_used: float


@dataclass(frozen=True)
class TableSpec:
    """Frozen definition of one reference table.

    parameter_grid: (row_id, params, truncation index or None) per cell
    reference_values: (row_id, reference) pairs, same row_ids
    """

    table_id: int
    parameter_grid: tuple[tuple[str, SeriesParams, int | None], ...]
    reference_values: tuple[tuple[str, float], ...]


# ---------------------------------------------------------------------------
# frozen reference data

_T1_MU, _T1_LAM = 0.5, 1.0
_T1_A = (6.0, 8.0, 10.0)
# error cells, one tuple per truncation index, columns a = 6, 8, 10;
# the (k=0, a=8) entry disagrees with 30-digit recomputation of the
# same quantity (9.85925e-4) and with the monotone trend of its row;
# it is kept verbatim, so that one row reports as failing
_T1_ERRORS = {
    0: (1.775e-3, 4.859e-4, 6.275e-4),
    1: (5.148e-5, 1.593e-5, 6.455e-6),
    2: (2.681e-6, 4.738e-7, 1.233e-7),
    4: (5.156e-8, 1.959e-9, 1.713e-10),
    6: (1.278e-8, 2.411e-10, 1.000e-11),
    8: (3.294e-9, 3.834e-12, 7.940e-14),
}
_T1_S = (1.22060e-1, 9.14725e-2, 7.31518e-2)

_T2_RADIUS = 6.0
_T2_K = 8
_T2_COLUMNS = ((0.25, 0.5), (0.75, 1.5), (1.0 / 3.0, 0.2))  # (mu, lam)
_T2_PHI = (0.0, 0.10, 0.20, 0.30, 0.40)
_T2_ERRORS = {
    0.0: (4.497e-9, 4.157e-10, 1.006e-8),
    0.10: (8.383e-9, 2.293e-9, 2.798e-8),
    0.20: (6.178e-8, 1.005e-8, 3.321e-7),
    0.30: (2.088e-6, 1.098e-7, 1.667e-5),
    0.40: (2.615e-4, 5.917e-6, 2.698e-3),
}

_T3_MU, _T3_LAM = 0.25, 1.0
_T3_A = (10.0, 15.0, 20.0)
_T3_ERRORS = {
    0: (2.959e-3, 1.358e-3, 7.736e-4),
    1: (1.991e-4, 4.293e-5, 1.408e-5),
    2: (3.864e-5, 3.962e-6, 7.525e-7),
    3: (1.485e-5, 7.268e-7, 8.054e-8),
    4: (9.491e-6, 2.214e-7, 1.433e-8),
    5: (9.129e-6, 1.010e-7, 3.817e-9),
}
_T3_S = (4.98789e-1, 4.07911e-1, 3.53467e-1)

_ERROR_CELL_TOL = 0.02  # four-significant-figure references
_VALUE_CELL_TOL = 1e-5  # six-significant-figure references
_T2_OFFAXIS_TOL = 0.05  # phi > 0 cells compare more loosely

_CONVENTIONS = ("pi_phi", "phi")


def table_spec(table_id: int, convention: str = "pi_phi") -> TableSpec:
    """Grid and reference values for one table.

    pre: table_id in {1, 2, 3}; convention in {"pi_phi", "phi"}
         (convention only affects table 2)
    """

    if table_id not in (1, 2, 3):
        raise PreconditionError(f"table_id must be 1, 2 or 3, got {table_id!r}")
    if convention not in _CONVENTIONS:
        raise PreconditionError(
            f"convention must be one of {_CONVENTIONS}, got {convention!r}"
        )
    grid: list[tuple[str, SeriesParams, int | None]] = []
    refs: list[tuple[str, float]] = []
    if table_id == 1:
        for k in sorted(_T1_ERRORS):
            for a, ref in zip(_T1_A, _T1_ERRORS[k]):
                rid = f"k{k}-a{a:02.0f}"
                grid.append((rid, SeriesParams(_T1_MU, _T1_LAM, a, "minus"), k))
                refs.append((rid, ref))
        for a, ref in zip(_T1_A, _T1_S):
            rid = f"s-a{a:02.0f}"
            grid.append((rid, SeriesParams(_T1_MU, _T1_LAM, a, "minus"), None))
            refs.append((rid, ref))
    elif table_id == 2:
        for phi in _T2_PHI:
            ang = (math.pi if convention == "pi_phi" else 1.0) * phi
            a = _T2_RADIUS * cmath.exp(1j * ang)
            for col, (mu, lam) in enumerate(_T2_COLUMNS, start=1):
                rid = f"{convention}:phi{phi:.2f}-c{col}"
                grid.append((rid, SeriesParams(mu, lam, a, "minus"), _T2_K))
                refs.append((rid, _T2_ERRORS[phi][col - 1]))
    else:
        for k in sorted(_T3_ERRORS):
            for a, ref in zip(_T3_A, _T3_ERRORS[k]):
                rid = f"k{k}-a{a:02.0f}"
                grid.append((rid, SeriesParams(_T3_MU, _T3_LAM, a, "plus"), k))
                refs.append((rid, ref))
        for a, ref in zip(_T3_A, _T3_S):
            rid = f"s-a{a:02.0f}"
            grid.append((rid, SeriesParams(_T3_MU, _T3_LAM, a, "plus"), None))
            refs.append((rid, ref))
    return TableSpec(table_id, tuple(grid), tuple(refs))


# ---------------------------------------------------------------------------
# grid evaluation

def _thread_count() -> int:
    raw = os.environ.get("MXSUM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        warnings.warn(
            f"MXSUM_THREADS={raw!r} is not an integer; running serially",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0
    return max(n, 0)


def _map_ordered(fn, items):
    n = _thread_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _cell_tolerance(table_id: int, row_id: str, k: int | None) -> float:
    if k is None:
        return _VALUE_CELL_TOL
    if table_id == 2 and "phi0.00" not in row_id:
        return _T2_OFFAXIS_TOL
    return _ERROR_CELL_TOL


def _evaluate_cell(job) -> ReportRow:
    table_id, row_id, params, k, reference = job
    if k is None:
        computed = direct_sum(params, tol=1e-15).value.real
    else:
        expansion = algebraic_minus if params.sign == "minus" else algebraic_plus
        exact = direct_sum(params, tol=1e-15).value
        approx = expansion(params, K=k).value
        computed = abs(exact - approx) / abs(exact)
    tol = _cell_tolerance(table_id, row_id, k)
    rel = abs(computed - reference) / abs(reference)
    return ReportRow(
        table=str(table_id),
        row_id=row_id,
        sign=params.sign,
        mu=params.mu,
        lam=params.lam,
        a=params.a,
        k=k,
        computed=computed,
        reference=reference,
        relative_error=rel,
        passed=rel <= tol,
        tolerance_used=tol,
    )


def _reproduce(spec: TableSpec) -> list[ReportRow]:
    ref_by_id = dict(spec.reference_values)
    jobs = [
        (spec.table_id, rid, params, k, ref_by_id[rid])
        for rid, params, k in spec.parameter_grid
    ]
    return _map_ordered(_evaluate_cell, jobs)


def reproduce_table1() -> list[ReportRow]:
    """18 expansion-error cells plus 3 direct-sum value rows (21 rows).

    post: failures are pass=False rows, never exceptions.
    """

    return _reproduce(table_spec(1))


def reproduce_table2(convention: str = "pi_phi") -> list[ReportRow]:
    """15 expansion-error cells at complex a under one angle convention.

    pre: convention in {"pi_phi", "phi"}; under "pi_phi" the grid point
         is a = 6 e^(i pi phi), under "phi" it is a = 6 e^(i phi).
    post: phi = 0 rows are identical under both conventions; phi = 0
          cells compare at 2 percent, the rest at 5 percent.
    """

    return _reproduce(table_spec(2, convention))


def reproduce_table3() -> list[ReportRow]:
    """18 expansion-error cells plus 3 direct-sum value rows (21 rows)."""

    return _reproduce(table_spec(3))


def table2_convention_report() -> list[ReportRow]:
    """Table 2 under both angle conventions, plus a marker row.

    The marker row records which convention reproduced all 15 cells
    (row_id "matching-pi_phi", "matching-phi", or "matching-none" if
    neither did; "matching-ambiguous" if both did); its computed value
    is the passing-cell count of the recorded convention.
    """

    rows: list[ReportRow] = []
    counts: dict[str, int] = {}
    for convention in _CONVENTIONS:
        sub = reproduce_table2(convention)
        counts[convention] = sum(r.passed for r in sub)
        rows.extend(sub)
    total = len(rows) // 2
    matching = [c for c in _CONVENTIONS if counts[c] == total]
    if len(matching) == 1:
        name, passed = matching[0], True
    elif not matching:
        name, passed = "none", False
    else:
        name, passed = "ambiguous", False
    best = max(counts.values()) if name in ("none", "ambiguous") else counts[name]
    rows.append(
        ReportRow(
            table="2",
            row_id=f"matching-{name}",
            sign="minus",
            mu=None,
            lam=None,
            a=None,
            k=None,
            computed=float(best),
            reference=float(total),
            relative_error=abs(best - total) / total,
            passed=passed,
            tolerance_used=0.0,
        )
    )
    return rows


# ---------------------------------------------------------------------------
# consistency checks

def tail_agreement_check(a: float = 3.0) -> ReportRow:
    """Bessel tail vs the measured defect S - 1/(2 a^(2 mu)) - H.

    Fixed mu = 1/2, lam = 1, sign -. computed is the tail, reference
    the defect (direct sum at tol 1e-15 minus quadrature H at 1e-14,
    combined with compensated summation); both are exact to roughly
    twelve significant digits, so the row passes at 1e-11 relative.
    """

    params = SeriesParams(0.5, 1.0, a, "minus")
    s_value = direct_sum(params, tol=1e-15).value.real
    h_value = h_minus_quadrature(params, tol=1e-14).value.real
    defect = math.fsum([s_value, -0.5 * a ** (-2.0 * params.mu), -h_value])
    tail, _ = bessel_tail_minus(params)
    computed = tail.value.real
    rel = abs(computed - defect) / abs(defect)
    return ReportRow(
        table="check",
        row_id=f"tail-a{a:g}",
        sign="minus",
        mu=params.mu,
        lam=params.lam,
        a=params.a,
        k=None,
        computed=computed,
        reference=defect,
        relative_error=rel,
        passed=rel <= 1e-11,
        tolerance_used=1e-11,
    )


def decay_rate_fit(
    sign: str, mu: float, lam: float, a_grid
) -> float:
    """Least-squares slope of ln|remainder| + (2 mu - 1) ln a against a.

    The remainder is S minus its algebraic content, computed in
    40-digit arithmetic so that exponentially small values survive:
    S - 1/(2 a^(2 mu)) - H for sign -, additionally minus the Laplace
    integral J for sign +.  The slope estimates the decay rate of the
    Bessel tail: -pi (sign -) or -2 pi (sign +), independent of mu.

    pre: sign in {"plus", "minus"}; 0 <= mu < 1; lam > 0; a_grid holds
         at least 4 distinct real points, each > 0.
    errors: NonConvergenceError when a remainder falls below the
        40-digit noise floor (grid reaches too far right); shrink the
        grid.  Roughly a <= 25 is safe for sign -, a <= 12 for sign +.
    """

    if sign not in ("plus", "minus"):
        raise PreconditionError(f"sign must be 'plus' or 'minus', got {sign!r}")
    if not 0.0 <= mu < 1.0:
        raise PreconditionError(
            f"remainder decomposition uses the branch-cut integral, "
            f"defined for 0 <= mu < 1; got mu = {mu}"
        )
    if not lam > 0.0:
        raise PreconditionError(f"lam must be positive, got {lam}")
    grid = [float(a) for a in a_grid]
    if len(grid) < 4 or len(set(grid)) != len(grid):
        raise PreconditionError("a_grid needs at least 4 distinct points")
    if any(not (a > 0.0 and math.isfinite(a)) for a in grid):
        raise PreconditionError("a_grid points must be positive real numbers")

    from mpmath import mp  # deferred: only this fit needs it

    xs: list[float] = []
    ys: list[float] = []
    with mp.workdps(40):
        mu_mp = mp.mpf(mu)
        for a in grid:
            s_value = _mp_reference_sum(mu_mp, lam, a, sign)
            remainder = s_value - mp.mpf(a) ** (-2 * mu_mp) / 2
            remainder -= _mp_branch_cut(mu_mp, lam, a, sign)
            if sign == "plus":
                remainder -= _mp_laplace(mu_mp, lam, a)
            if abs(remainder) < abs(s_value) * mp.mpf(10) ** -34:
                raise NonConvergenceError(
                    f"remainder at a = {a} is below the 40-digit noise "
                    f"floor; shrink the grid"
                )
            xs.append(a)
            ys.append(float(mp.log(abs(remainder))) + (2 * mu - 1) * math.log(a))
    n = len(xs)
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    return sxy / sxx


def _mp_reference_sum(mu, lam, a, sign):
    # brute high-precision sum; converges for lam > 0 only
    from mpmath import mp

    alt = sign == "minus"
    a_sq = mp.mpf(a) ** 2
    total = mp.mpf(0)
    floor = mp.mpf(10) ** -38
    n = 0
    while True:
        term = mp.e ** (-lam * n) * (n * n + a_sq) ** (-mu)
        if alt and n % 2 == 1:
            term = -term
        total += term
        if n > 5 and abs(term) < floor * abs(total):
            return total
        n += 1
        if n > 500_000:
            raise NonConvergenceError(
                f"reference sum did not converge at lam = {lam}"
            )


def _mp_branch_cut(mu, lam, a, sign):
    # H as its defining integral over (0, 1); integrable endpoint
    # singularity (1 - t^2)^(-mu) is handled by tanh-sinh quadrature
    from mpmath import mp

    damped = sign == "plus"

    def integrand(t):
        value = mp.sin(lam * a * t) / mp.sinh(mp.pi * a * t)
        value *= (1 - t * t) ** (-mu)
        if damped:
            value *= mp.e ** (-mp.pi * a * t)
        return value

    return mp.mpf(a) ** (1 - 2 * mu) * mp.quad(integrand, [0, 1])


def _mp_laplace(mu, lam, a):
    # J = int_0^inf e^(-lam t) (t^2 + a^2)^(-mu) dt in closed form
    # via the Struve-H and Bessel-Y pair of order 1/2 - mu
    from mpmath import mp

    nu = mp.mpf(1) / 2 - mu
    prefactor = (
        mp.sqrt(mp.pi)
        * mp.mpf(a) ** (1 - 2 * mu)
        * mp.gamma(1 - mu)
        / (2 * (lam * a / 2) ** nu)
    )
    return prefactor * (mp.struveh(nu, lam * a) - mp.bessely(nu, lam * a))


_DECAY_GRID = (5.0, 6.0, 7.0, 8.0, 9.0, 10.0)


def check_suite() -> list[ReportRow]:
    """Tail agreement, decay-rate fits and the mu-step recurrence.

    Five rows: tail vs defect at a = 3 and a = 4; fitted decay rate vs
    -pi (sign -, mu = 1/2) and vs -2 pi (sign +, mu = 1/4) over
    a = 5 .. 10 at 2 percent; recurrence discrepancy of
    S_{mu+1} = -(1/(2 mu a)) dS_mu/da at (mu, lam, a) = (1/2, 1, 4)
    with step 1e-4, bounded by 1e-7.

    Runs serially regardless of MXSUM_THREADS: the fits share one
    global-precision arbitrary-precision context.
    """

    rows = [tail_agreement_check(3.0), tail_agreement_check(4.0)]
    for sign, mu, target in (("minus", 0.5, -math.pi), ("plus", 0.25, -2 * math.pi)):
        slope = decay_rate_fit(sign, mu, 1.0, _DECAY_GRID)
        rel = abs(slope - target) / abs(target)
        rows.append(
            ReportRow(
                table="check",
                row_id=f"decay-{sign}-mu{mu:g}",
                sign=sign,
                mu=mu,
                lam=1.0,
                a=None,
                k=None,
                computed=slope,
                reference=target,
                relative_error=rel,
                passed=rel <= 0.02,
                tolerance_used=0.02,
            )
        )
    params = SeriesParams(0.5, 1.0, 4.0, "minus")
    discrepancy = mu_step_check(params, h=1e-4)
    rows.append(
        ReportRow(
            table="check",
            row_id="mu-step-h1e-04",
            sign="minus",
            mu=params.mu,
            lam=params.lam,
            a=params.a,
            k=None,
            computed=discrepancy,
            reference=None,
            relative_error=None,
            passed=discrepancy <= 1e-7,
            tolerance_used=1e-7,
        )
    )
    return rows


# ---------------------------------------------------------------------------
# report emission

def row_record(row: ReportRow) -> dict:
    """Flat mapping with the exact report columns, in header order."""

    return {
        "table": row.table,
        "row_id": row.row_id,
        "sign": row.sign,
        "mu": row.mu,
        "lambda": row.lam,
        "a_re": None if row.a is None else row.a.real,
        "a_im": None if row.a is None else row.a.imag,
        "k": row.k,
        "computed": row.computed,
        "reference": row.reference,
        "rel_error": row.relative_error,
        "pass": row.passed,
    }


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_report(rows, format: str = "csv", destination=None) -> None:
    """Write rows sorted by (table, row_id) as CSV or JSON.

    destination: a path, or None / "-" for standard output.  Floats are
    written in round-trip (shortest repr) form, so re-running the same
    grid yields byte-identical output.  Empty rows produce a header-only
    CSV (or an empty JSON array).

    errors: PreconditionError for an unknown format; OSError, carrying
        the destination path, when the file cannot be written.
    """

    if format not in ("csv", "json"):
        raise PreconditionError(f"format must be 'csv' or 'json', got {format!r}")
    ordered = sorted(rows, key=lambda r: (r.table, r.row_id))
    if destination is None or destination == "-":
        _write_report(sys.stdout, ordered, format)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as handle:
            _write_report(handle, ordered, format)
    except OSError as exc:
        raise OSError(f"cannot write report to {destination!r}: {exc}") from exc


def _write_report(handle, rows, format: str) -> None:
    if format == "csv":
        out = _csv_writer(handle, lineterminator="\n")
        out.writerow(CSV_HEADER)
        for row in rows:
            record = row_record(row)
            out.writerow([_csv_cell(record[key]) for key in CSV_HEADER])
    else:
        json.dump([row_record(r) for r in rows], handle, indent=2, allow_nan=False)
        handle.write("\n")
