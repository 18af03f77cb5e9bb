"""Boundary expansions of an intercept-slope interval map.

The map x -> beta*x + alpha (mod 1) produces two distinguished digit
sequences: the expansion of 0 under the lower (floor) convention and
the expansion of 1 under the upper (ceiling) convention. Everything
else in the package is parameterized by these two sequences.
"""

from fractions import Fraction

from abshift import (
    Params,
    expansion_of_one,
    expansion_of_zero,
    format_rational,
    itinerary,
    lower_step,
    orbit_points,
    partial_sum,
)

p = Params.make("2/7", "7/2")
print(f"alpha = {p.alpha}, beta = {p.beta}")
print(f"largest digit = {p.lam}, alphabet = 0..{p.lam}, main mode = {p.main_mode}")
print()

# The two boundary expansions. In the main mode (beta > 3, alpha = 1/beta)
# the lower expansion is always 0 followed by 1s; the upper expansion
# carries all the structure.
print("a (expansion of 0):", expansion_of_zero(p, 16))
print("b (expansion of 1):", expansion_of_one(p, 16))
print()

# Orbit points are exact rationals; digit decisions sit on interval
# boundaries, so floats would misclassify them.
pts = orbit_points(p, "one", 6)
digs = expansion_of_one(p, 6)
print("upper orbit, point -> digit:")
for x, d in zip(pts, digs):
    print(f"  {format_rational(x):>8}  ->  {d}")
print()

# One step at a time, for an arbitrary start point.
x = Fraction(1, 2)
print(f"itinerary of {x}: {itinerary(p, x, 8)}")
d, y = lower_step(p, x)
print(f"one lower step from {x}: digit {d}, next point {y}")
print()

# The digit partial sums reconstruct the start point geometrically:
# x - partial_sum(digits) shrinks like beta^-n.
for n in (4, 8, 12, 16):
    err = x - partial_sum(p, itinerary(p, x, n))
    print(f"n = {n:2d}: reconstruction error = {float(err):.3e}")
