"""Expose the exponentially small tail hiding below the algebraic part.

For the alternating sum the complete large-a representation is

    S = 1/(2 a^(2 mu)) + H + T

with H the branch-cut integral and T a sum of K-Bessel terms of size
~ a^(1-2mu) exp(-pi a). Subtracting the first two pieces from a
high-accuracy direct sum leaves a defect that the Bessel terms must
reproduce digit for digit; the defect shrinks like exp(-pi a) times a
slowly turning phase factor, so the per-step log column hovers around
-pi without landing on it exactly.

Run:  python3 demos/tail_anatomy.py
"""

import math

from mxsum import (
    SeriesParams,
    bessel_tail_minus,
    direct_sum,
    h_minus_quadrature,
)

MU, LAM = 0.5, 1.0

print(f"mu={MU}, lam={LAM}, alternating sign")
print()
print("  a     defect = S - lead - H        Bessel tail T        agreement")
prev = None
for a in (2.0, 3.0, 4.0, 5.0):
    p = SeriesParams(MU, LAM, a)
    s = direct_sum(p, tol=1e-15).value.real
    h = h_minus_quadrature(p, tol=1e-14).value.real
    defect = math.fsum([s, -0.5 * a ** (-2.0 * MU), -h])
    tail = bessel_tail_minus(p)[0].value.real
    digits = -math.log10(abs(defect - tail) / abs(tail))
    slope = ""
    if prev is not None:
        slope = f"   log-step {math.log(abs(defect) / prev):+.3f} (-pi = {-math.pi:.3f})"
    prev = abs(defect)
    print(f"  {a:.0f}   {defect: .15e}   {tail: .15e}   {digits:4.1f} digits{slope}")

print()
p = SeriesParams(MU, LAM, 3.0)
_, terms = bessel_tail_minus(p)
print("per-term anatomy at a = 3 (argument X_k = (2k+1) pi a + i lam a):")
for t in terms:
    print(
        f"  k={t.k}: |X|={abs(t.X):7.2f}  theta={t.theta:+.4f}  "
        f"magnitude={t.magnitude:.3e}"
    )
