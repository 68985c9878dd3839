"""Command-line front end.

Subcommands: ``eval`` (one sum evaluation by a chosen route),
``table`` (reproduce a reference table and emit its report),
``coeffs`` (expansion-coefficient generation as CSV) and ``check``
(tail-agreement, decay-rate and recurrence consistency suite).

Exit status:

* 0: success (and, for ``table``/``check``, every judged row passed);
* 1: at least one report row failed its tolerance;
* 2: invalid command line, or an unwritable destination;
* 3: an evaluator precondition was violated;
* 4: an algorithm did not converge.

All numeric output uses round-trip (shortest repr) decimal formatting.
"""

from __future__ import annotations

import argparse
import json
import sys
from csv import writer as _csv_writer
from dataclasses import dataclass

from .coefficients import a_coefficients, b_coefficients, bhat_coefficients
from .errors import NonConvergenceError, PreconditionError
from .evaluators import (
    Evaluation,
    SeriesParams,
    algebraic_minus,
    algebraic_plus,
    bessel_tail_minus,
    bessel_tail_plus,
    direct_sum,
    full_minus,
    full_plus,
    integer_mu_closed_form,
    j_mu_asymptotic,
    j_mu_quadrature,
    lambda0_plus,
    olver_lambda0_minus,
    small_a_minus,
)
from .harness import (
    check_suite,
    emit_report,
    reproduce_table1,
    reproduce_table2,
    reproduce_table3,
    table2_convention_report,
)

__all__ = ["CliConfig", "cmd_check", "cmd_coeffs", "cmd_eval", "cmd_table", "main"]

_METHODS = (
    "oracle",
    "small-a",
    "algebraic",
    "full",
    "tail",
    "j-mu",
    "integer-mu",
    "lambda0",
)

EVAL_CSV_HEADER = (
    "value_re",
    "value_im",
    "method",
    "error_estimate",
    "truncation_index",
    "tail_terms_used",
    "notes",
)

COEFFS_CSV_HEADER = ("kind", "k", "lambda", "value")


@dataclass(frozen=True)
class CliConfig:
    """Parsed command line, one instance per invocation."""

    subcommand: str
    sign: str = "minus"
    mu: float = 0.5
    lam: float = 1.0
    a_re: float = 1.0
    a_im: float = 0.0
    method: str | None = None
    K: int | None = None
    tol: float = 1e-12
    format: str = "text"
    output: str | None = None
    table_id: int | None = None
    convention: str | None = None
    kind: str | None = None


# ---------------------------------------------------------------------------
# parser

_EVAL_EPILOG = """\
methods and what they evaluate:
  oracle      the sum itself, by compensated direct summation (uses --tol)
  full        the sum itself, as algebraic part + Bessel tail (0 < mu < 1)
  algebraic   the sum's large-a algebraic expansion, truncated at --K
  integer-mu  the sum itself, hypergeometric closed form (mu = 1 .. 5)
  lambda0     the sum itself at lam = 0 (requires --lambda 0)
  small-a     the branch-cut contribution H alone, convergent small-a
              series (--sign minus only, |a| <= 1)
  tail        the exponentially small Bessel tail alone (--K = number
              of tail terms)
  j-mu        the Laplace integral J alone: quadrature by default
              (uses --tol), or the large-a expansion when --K is given

default method: full when mu < 1, oracle otherwise.
--format csv prints header and one row:
  value_re,value_im,method,error_estimate,truncation_index,tail_terms_used,notes
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mxsum",
        description=(
            "Evaluate S(a; lam, mu, sign) = sum_(n>=0) (sign)^n "
            "e^(-lam n) / (n^2 + a^2)^mu and its expansions."
        ),
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ev = sub.add_parser(
        "eval",
        help="evaluate one sum (or one of its components) by a chosen route",
        epilog=_EVAL_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
    )
    ev.add_argument("--sign", choices=("minus", "plus"), default="minus",
                    help="minus: alternating sum; plus: all terms positive")
    ev.add_argument("--mu", type=float, required=True,
                    help="exponent on n^2 + a^2 (>= 0)")
    ev.add_argument("--lambda", dest="lam", type=float, default=1.0,
                    help="exponential decay rate (>= 0, default 1)")
    ev.add_argument("--a", type=float, default=1.0,
                    help="real part of a (> 0, default 1)")
    ev.add_argument("--a-im", type=float, default=0.0,
                    help="imaginary part of a (default 0)")
    ev.add_argument("--method", choices=_METHODS, default=None,
                    help="evaluation route (see below; default depends on mu)")
    ev.add_argument("--K", type=int, default=None,
                    help="truncation index / term count, where the route has one")
    ev.add_argument("--tol", type=float, default=1e-12,
                    help="target tolerance for oracle and quadrature routes")
    ev.add_argument("--format", choices=("text", "csv", "json"), default="text",
                    help="output format (default text)")
    ev.add_argument("--output", default=None,
                    help="destination path (default: standard output)")

    tb = sub.add_parser(
        "table",
        help="reproduce one reference table and write its report",
        description=(
            "Recomputes every cell of the chosen reference table and "
            "writes a report; exits 0 only if all judged rows pass. "
            "Table 2 by default runs both angle conventions (a = 6 "
            "e^(i pi phi) and a = 6 e^(i phi)) and appends a marker row "
            "recording which one matched; the exit status then judges "
            "the matching convention's rows. With --convention given, "
            "only that convention runs and every row is judged."
        ),
        allow_abbrev=False,
    )
    tb.add_argument("table_id", type=int, choices=(1, 2, 3),
                    help="which reference table to reproduce")
    tb.add_argument("--convention", choices=("pi_phi", "phi"), default=None,
                    help="angle convention for table 2 (default: run both)")
    tb.add_argument("--format", choices=("csv", "json"), default="csv",
                    help="report format (default csv)")
    tb.add_argument("--output", default=None,
                    help="destination path (default: standard output)")

    co = sub.add_parser(
        "coeffs",
        help="generate expansion coefficients as CSV",
        description=(
            "Writes coefficients k = 0 .. K as CSV with header "
            "kind,k,lambda,value. Kinds: A (Taylor coefficients of "
            "sin(lam x)/sinh(pi x), K <= 60), B and Bhat (large-a "
            "expansion coefficients, K <= 100)."
        ),
        allow_abbrev=False,
    )
    co.add_argument("kind", choices=("A", "B", "Bhat"),
                    help="coefficient family")
    co.add_argument("--lambda", dest="lam", type=float, default=1.0,
                    help="decay rate the coefficients depend on (default 1)")
    co.add_argument("--K", type=int, default=8,
                    help="largest index to generate (default 8)")
    co.add_argument("--output", default=None,
                    help="destination path (default: standard output)")

    ck = sub.add_parser(
        "check",
        help="run the consistency suite (tail agreement, decay rates, mu-step)",
        description=(
            "Runs the tail-vs-defect agreement check at a = 3 and 4, "
            "fits the remainder decay rates against -pi and -2 pi, and "
            "verifies the mu-step recurrence; writes the five-row "
            "report and exits 0 only if every row passes."
        ),
        allow_abbrev=False,
    )
    ck.add_argument("--format", choices=("csv", "json"), default="csv",
                    help="report format (default csv)")
    ck.add_argument("--output", default=None,
                    help="destination path (default: standard output)")
    return parser


def _config(ns: argparse.Namespace) -> CliConfig:
    fields = dict(
        subcommand=ns.subcommand,
        sign=getattr(ns, "sign", "minus"),
        mu=getattr(ns, "mu", 0.5),
        lam=getattr(ns, "lam", 1.0),
        a_re=getattr(ns, "a", 1.0),
        a_im=getattr(ns, "a_im", 0.0),
        method=getattr(ns, "method", None),
        K=getattr(ns, "K", None),
        tol=getattr(ns, "tol", 1e-12),
        format=getattr(ns, "format", "text"),
        output=getattr(ns, "output", None),
        table_id=getattr(ns, "table_id", None),
        convention=getattr(ns, "convention", None),
        kind=getattr(ns, "kind", None),
    )
    return CliConfig(**fields)


# ---------------------------------------------------------------------------
# eval

def _run_method(method: str, p: SeriesParams, config: CliConfig) -> Evaluation:
    K = config.K
    if method == "oracle":
        return direct_sum(p, tol=config.tol)
    if method == "small-a":
        if p.sign != "minus":
            raise PreconditionError(
                "method small-a applies to the alternating sum; use --sign minus"
            )
        return small_a_minus(p, K=K) if K is not None else small_a_minus(p)
    if method == "algebraic":
        if p.sign == "minus":
            return algebraic_minus(p, K=K) if K is not None else algebraic_minus(p)
        return algebraic_plus(p, K=K) if K is not None else algebraic_plus(p)
    if method == "full":
        return full_minus(p) if p.sign == "minus" else full_plus(p)
    if method == "tail":
        tail_fn = bessel_tail_minus if p.sign == "minus" else bessel_tail_plus
        evaluation, _terms = tail_fn(p, n_terms=K) if K is not None else tail_fn(p)
        return evaluation
    if method == "j-mu":
        if K is not None:
            return j_mu_asymptotic(p, K=K)
        return j_mu_quadrature(p, tol=config.tol)
    if method == "integer-mu":
        return integer_mu_closed_form(int(round(p.mu)), p)
    # lambda0
    if p.lam != 0.0:
        raise PreconditionError(
            f"method lambda0 evaluates the lam = 0 sum; pass --lambda 0 "
            f"(got lambda = {p.lam})"
        )
    reduce_fn = olver_lambda0_minus if p.sign == "minus" else lambda0_plus
    if K is not None:
        return reduce_fn(p.mu, p.a, n_terms=K)
    return reduce_fn(p.mu, p.a)


def _scalar(value) -> float | complex:
    value = complex(value)
    return value.real if value.imag == 0.0 else value


def _print_evaluation(evaluation: Evaluation, config: CliConfig, handle) -> None:
    value = complex(evaluation.value)
    if config.format == "text":
        print(f"value = {_scalar(value)!r}", file=handle)
        print(f"method = {evaluation.method}", file=handle)
        print(f"error_estimate = {evaluation.error_estimate!r}", file=handle)
        print(f"truncation_index = {evaluation.truncation_index}", file=handle)
        print(f"tail_terms_used = {evaluation.tail_terms_used}", file=handle)
        if evaluation.notes:
            print(f"notes = {evaluation.notes}", file=handle)
        return
    record = {
        "value_re": value.real,
        "value_im": value.imag,
        "method": evaluation.method,
        "error_estimate": evaluation.error_estimate,
        "truncation_index": evaluation.truncation_index,
        "tail_terms_used": evaluation.tail_terms_used,
        "notes": evaluation.notes,
    }
    if config.format == "json":
        json.dump(record, handle, indent=2, allow_nan=False)
        handle.write("\n")
        return
    out = _csv_writer(handle, lineterminator="\n")
    out.writerow(EVAL_CSV_HEADER)
    out.writerow(
        [repr(v) if isinstance(v, float) else str(v) for v in record.values()]
    )


def cmd_eval(config: CliConfig) -> int:
    params = SeriesParams(
        config.mu, config.lam, complex(config.a_re, config.a_im), config.sign
    )
    method = config.method
    if method is None:
        method = "full" if config.mu < 1.0 else "oracle"
    evaluation = _run_method(method, params, config)
    with _destination(config.output) as handle:
        _print_evaluation(evaluation, config, handle)
    return 0


# ---------------------------------------------------------------------------
# table / check / coeffs

def cmd_table(config: CliConfig) -> int:
    if config.table_id == 1:
        rows = reproduce_table1()
        ok = all(r.passed for r in rows)
    elif config.table_id == 3:
        rows = reproduce_table3()
        ok = all(r.passed for r in rows)
    elif config.convention is not None:
        rows = reproduce_table2(config.convention)
        ok = all(r.passed for r in rows)
    else:
        rows = table2_convention_report()
        marker = next(r for r in rows if r.row_id.startswith("matching-"))
        ok = marker.passed
    emit_report(rows, config.format, config.output)
    return 0 if ok else 1


def cmd_check(config: CliConfig) -> int:
    rows = check_suite()
    emit_report(rows, config.format, config.output)
    return 0 if all(r.passed for r in rows) else 1


def cmd_coeffs(config: CliConfig) -> int:
    generate = {
        "A": a_coefficients,
        "B": b_coefficients,
        "Bhat": bhat_coefficients,
    }[config.kind]
    table = generate(config.lam, config.K)
    with _destination(config.output) as handle:
        out = _csv_writer(handle, lineterminator="\n")
        out.writerow(COEFFS_CSV_HEADER)
        for k, value in enumerate(table.values):
            out.writerow([table.kind, k, repr(table.lam), repr(value)])
    return 0


# ---------------------------------------------------------------------------
# dispatch

class _destination:
    """Context manager: open a path for writing, or hand out stdout."""

    def __init__(self, output: str | None):
        self.output = output
        self.handle = None

    def __enter__(self):
        if self.output is None or self.output == "-":
            return sys.stdout
        try:
            self.handle = open(self.output, "w", encoding="utf-8", newline="")
        except OSError as exc:
            raise OSError(f"cannot write to {self.output!r}: {exc}") from exc
        return self.handle

    def __exit__(self, *exc_info):
        if self.handle is not None:
            self.handle.close()
        return False


_DISPATCH = {
    "eval": cmd_eval,
    "table": cmd_table,
    "coeffs": cmd_coeffs,
    "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    config = _config(ns)
    try:
        return _DISPATCH[config.subcommand](config)
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return 3
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
