"""The obstruction series zbar(n)/n.

z of a b-prefix measures how far it can be continued by digits of the
zero expansion while remaining a b-prefix; zbar(n) is the running
maximum over prefix lengths up to n. Decay of zbar(n)/n is the
summability criterion the thermodynamic results hinge on. A finite
horizon can only ever suggest the limit, so the series is reported,
never classified.
"""

from abshift import Params, p1, z_of_b_prefix, z_of_word, zbar_series
from abshift.expansion import boundary

p = Params.make("2/7", "7/2")
bd = boundary(p)

# z on individual b-prefixes.
print("b-prefix          z")
for l in (1, 2, 3, 5, 14):
    u = bd.b_prefix(l)
    print(f"{str(u):40} {z_of_b_prefix(p, u)}")
print()

# z extends to arbitrary admissible words through their b-suffix.
for w in [(1, 3, 3), (3, 3, 0), (0, 1)]:
    print(f"z of word {w} = {z_of_word(p, w)}")
print(f"p1 = z((lambda,)) = {p1(p)}")
print()

# The series: zbar is nondecreasing, the ratio decays once it plateaus.
s = zbar_series(p, 60)
print(" n  zbar  ratio")
shown = set()
for n in range(1, 61):
    key = (s.zbar[n - 1], n in (1, 2, 13, 14, 30, 60))
    if n <= 4 or key[1] or s.zbar[n - 1] != s.zbar[n - 2]:
        if n not in shown:
            print(f"{n:2d}  {s.zbar[n - 1]:4d}  {s.ratios[n - 1]}")
            shown.add(n)
print(f"max ratio over the last quartile: {s.last_quartile_max()}")
