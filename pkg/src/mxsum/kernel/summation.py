"""Compensated summation and series-acceleration primitives.

Everything downstream (quadrature levels, hypergeometric series, the
evaluation routines) funnels floating-point accumulation through the
helpers here so that rounding behavior is uniform and testable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import NonConvergenceError, PreconditionError

__all__ = [
    "KahanSum",
    "SeriesSum",
    "alternating_accelerated_sum",
    "sum_terms",
]


@dataclass
class SeriesSum:
    """Result of an adaptive summation or quadrature.

    value: accumulated sum (complex; imaginary part 0.0 for real input)
    terms_used: number of terms (or function evaluations) consumed
    last_term_magnitude: |final increment|, the raw stopping quantity
    converged: True when the stopping criterion was met within budget
    """

    value: complex
    terms_used: int
    last_term_magnitude: float
    converged: bool


class _NeumaierFloat:
    """Scalar compensated accumulator (Kahan with Neumaier's carry).

    Keeps a running correction so terms much smaller than the partial
    sum are not lost; unlike plain Kahan it also survives terms larger
    than the current sum.
    """

    __slots__ = ("total", "carry")

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0

    def add(self, term: float) -> None:
        t = self.total + term
        if abs(self.total) >= abs(term):
            self.carry += (self.total - t) + term
        else:
            self.carry += (term - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.carry


class KahanSum:
    """Compensated accumulator for real or complex terms."""

    __slots__ = ("_re", "_im")

    def __init__(self) -> None:
        self._re = _NeumaierFloat()
        self._im = _NeumaierFloat()

    def add(self, term: complex) -> None:
        z = complex(term)
        self._re.add(z.real)
        self._im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self._re.value, self._im.value)

    @property
    def real(self) -> float:
        return self._re.value


def sum_terms(
    term: Callable[[int], complex],
    tol: float,
    max_terms: int,
    min_terms: int = 2,
) -> SeriesSum:
    """Sum term(0) + term(1) + ... until two successive terms are small.

    Stops once |term| <= tol * |partial sum| holds for two consecutive
    terms (a single small term can be an accidental zero of an
    oscillating series). Raises NonConvergenceError at max_terms.
    """

    acc = KahanSum()
    small_streak = 0
    last_mag = math.inf
    for n in range(max_terms):
        t = term(n)
        acc.add(t)
        last_mag = abs(t)
        if n + 1 >= min_terms:
            scale = abs(acc.value)
            if last_mag <= tol * scale:
                small_streak += 1
                if small_streak >= 2:
                    return SeriesSum(acc.value, n + 1, last_mag, True)
            else:
                small_streak = 0
    raise NonConvergenceError(
        f"series did not converge within {max_terms} terms "
        f"(last |term| = {last_mag:.3e})"
    )


def _cvz_stages(tol: float) -> int:
    # error decays like (3 + sqrt 8)^(-n); pad by a few stages
    return max(6, math.ceil(-math.log(max(tol, 1e-18)) / 1.7627) + 3)


def _cvz_core(magnitudes: Sequence[complex], n: int) -> complex:
    """Chebyshev-accelerated alternating sum of sum (-1)^k c_k.

    ``magnitudes`` supplies c_0 .. c_{n-1} (sign-free). This is the
    polynomial scheme with d = (3+sqrt 8)^n; exact for the geometric
    worst case and geometrically convergent for totally monotone c_k.
    """

    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = KahanSum()
    for k in range(n):
        c = b - c
        acc.add(c * magnitudes[k])
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return acc.value / d


def alternating_accelerated_sum(
    term: Callable[[int], float] | Sequence[float],
    tol: float = 1e-15,
) -> SeriesSum:
    """Accelerated value of sum_{k>=0} term(k) for alternating term(k).

    ``term`` is either a callable k -> signed term or a pre-computed
    sequence of signed terms. Signs must strictly alternate and the
    magnitudes must be eventually decreasing; a non-alternating or
    non-decaying input raises PreconditionError. Convergence is judged
    by comparing two acceleration orders (n and n+4 stages).
    """

    n = _cvz_stages(tol)
    n_hi = n + 4
    if callable(term):
        raw = [float(term(k)) for k in range(n_hi)]
    else:
        raw = [float(t) for t in term]
        if len(raw) < 4:
            raise PreconditionError(
                "alternating sum needs at least 4 terms to accelerate"
            )
        n_hi = len(raw)
        n = max(4, n_hi - 4)

    first_sign = math.copysign(1.0, raw[0]) if raw[0] != 0.0 else 1.0
    mags = []
    for k, t in enumerate(raw):
        expected = first_sign * (-1.0) ** k
        if t != 0.0 and math.copysign(1.0, t) != expected:
            raise PreconditionError(
                f"terms do not alternate in sign at index {k}"
            )
        mags.append(abs(t))
    tail = mags[-6:]
    if all(m > 0 for m in tail) and not any(
        tail[i + 1] < tail[i] for i in range(len(tail) - 1)
    ):
        raise PreconditionError(
            "term magnitudes do not decay; acceleration would be meaningless"
        )

    lo = _cvz_core(mags, n)
    hi = _cvz_core(mags, n_hi)
    value = first_sign * hi
    delta = abs(hi - lo)
    scale = max(abs(hi), 1e-300)
    return SeriesSum(
        complex(value),
        n_hi,
        delta,
        delta <= 10.0 * tol * scale + 1e-300,
    )


def accelerated_alternating_complex(
    magnitude: Callable[[int], complex],
    tol: float = 1e-15,
    stages: int | None = None,
) -> SeriesSum:
    """CVZ acceleration of sum (-1)^k c_k for complex c_k.

    Internal variant used where the c_k are constructed directly (so no
    sign validation is possible or needed). ``magnitude(k)`` returns c_k.
    ``stages`` pins the acceleration order; default derives it from tol.
    """

    n = stages if stages is not None else _cvz_stages(tol)
    if n < 4:
        raise PreconditionError("acceleration needs at least 4 stages")
    n_hi = n + 4
    cs = [complex(magnitude(k)) for k in range(n_hi)]
    lo = _cvz_core(cs, n)
    hi = _cvz_core(cs, n_hi)
    delta = abs(hi - lo)
    scale = max(abs(hi), 1e-300)
    return SeriesSum(hi, n_hi, delta, delta <= 10.0 * tol * scale + 1e-300)
