"""Pressure estimates and the weak-Gibbs sandwich.

Partition sums over canonical configuration sets give finite-n
pressure estimates; a transfer-style dynamic program computes them
without enumerating words. Cylinder masses are estimated by averaging
window-constrained partition ratios, and explicit constants bound how
far those masses may drift from exp(Birkhoff - m * pressure).
"""

import math

from abshift import (
    Params,
    Potential,
    cylinder_estimate,
    cylinder_estimate_exact,
    gibbs_diagnostic,
    pressure_estimate,
    restricted_pressure_estimate,
    total_oscillation,
)
from abshift.language import enumerate_words

p = Params.make("2/7", "7/2")
zero = Potential.zero(p)
phi = Potential(p, 2, {(0, 1): 0.4, (3, 3): -0.3, (1, 2): 0.15})
print(f"test potential: range {phi.range}, total oscillation {total_oscillation(p, phi)}")
print()

# Zero-potential pressure converges to log(beta), the topological rate.
print(" n   pressure    log(beta)")
for n in (1, 3, 6, 9, 12):
    r = pressure_estimate(p, zero, n)
    print(f"{n:2d}   {r.value:.6f}   {math.log(float(p.beta)):.6f}"
          f"   ({r.term_count} configurations)")
print()

# Restricted sums (walks that pass through the root at the window
# start) sandwich the full ones; the gap closes like 1/m.
print(" m   full       restricted  gap")
for m in (5, 9, 15, 21):
    full = pressure_estimate(p, phi, (m - 1) // 2).value
    restr = restricted_pressure_estimate(p, phi, m).value
    print(f"{m:2d}   {full:.6f}   {restr:.6f}   {full - restr:.6f}")
print()

# Cylinder masses: exact rationals for the zero potential, floats
# otherwise. The masses over all words of one length sum to a simple
# rational by construction.
n = 4
tot = sum(cylinder_estimate_exact(p, u, n) for u in enumerate_words(p, 2))
print(f"sum of zero-potential masses over all 2-letter words at n={n}: {tot}")
for u in [(3, 3), (0, 1), (1, 1)]:
    ex = cylinder_estimate_exact(p, u, n)
    fl = cylinder_estimate(p, phi, u, n)
    print(f"  {u}: zero-potential {ex} = {float(ex):.6f}, test potential {fl:.6f}")
print()

# The weak-Gibbs diagnostic for one word: is the measure estimate
# within the explicit constant bounds of the Birkhoff/pressure bracket?
rep = gibbs_diagnostic(p, phi, (3, 3), 6, 0.1)
bracket = math.exp(rep.birkhoff - rep.m * rep.pressure_used)
print(f"word {rep.word}, n = {rep.n}: measure estimate {rep.nu_hat:.6f}")
print(f"bracket exp(S - m*P) = {bracket:.6f}, ratio = {rep.nu_hat / bracket:.4f}")
print(f"K- = {rep.K_minus:.3e}, K+ = {rep.K_plus:.3f}, within = {rep.within_bounds}")
