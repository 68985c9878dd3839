"""Evaluate one parameter point by every applicable route.

Shows how the routes relate at (mu, lam, a) = (1/2, 1, 6), alternating
sign: the brute-force sum is the reference, the algebraic expansion
gets within ~3e-9 of it at its optimal truncation, and adding the
exponentially small Bessel tail closes the remaining gap to machine
precision.

Run:  python3 demos/evaluate_point.py
"""

from mxsum import (
    SeriesParams,
    algebraic_minus,
    bessel_tail_minus,
    direct_sum,
    full_minus,
    h_minus_quadrature,
)

p = SeriesParams(mu=0.5, lam=1.0, a=6.0, sign="minus")

ref = direct_sum(p)
print(f"parameters        : mu={p.mu}, lam={p.lam}, a={p.a.real}, {p.sign}")
print(f"direct sum        : {ref.value.real!r}  ({ref.truncation_index + 1} terms)")

lead = 0.5 * p.a.real ** (-2.0 * p.mu)
h = h_minus_quadrature(p)
print(f"leading term      : {lead!r}")
print(f"branch-cut integral: {h.value.real!r}")

print()
print("algebraic expansion truncated at K (relative error vs direct):")
for K in (0, 2, 4, 8):
    alg = algebraic_minus(p, K=K)
    rel = abs(alg.value.real - ref.value.real) / abs(ref.value.real)
    print(f"  K={K}: value {alg.value.real:.15f}   rel err {rel:.3e}")

tail, terms = bessel_tail_minus(p)
print()
print(f"Bessel tail       : {tail.value.real!r}  ({tail.tail_terms_used} terms)")
print(f"  term magnitudes : {[f'{t.magnitude:.3e}' for t in terms]}")

full = full_minus(p)
rel = abs(full.value.real - ref.value.real) / abs(ref.value.real)
print()
print(f"full representation: {full.value.real!r}")
print(f"closure vs direct  : {rel:.3e}  (leading + integral + tail is exact)")
