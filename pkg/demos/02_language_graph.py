"""The admissible language and its follower graph.

A word is admissible when every suffix sits lexicographically between
the two boundary expansions. The same language is recognized by a
labeled graph whose vertices track the longest boundary-prefix
suffixes; paths from the root spell exactly the admissible words.
"""

from abshift import (
    Params,
    build,
    count_words,
    enumerate_words,
    export_dot,
    is_admissible,
    k_values,
    stats,
    suffix_decompose,
    walk,
)

p = Params.make("2/7", "7/2")

# Direct lexicographic checks.
for w in [(3, 3, 0, 1), (3, 3, 3), (0, 0), (2, 0, 1)]:
    print(f"{w}: admissible = {is_admissible(p, w)}")
print()

# Suffix statistics: k1 = longest suffix matching the zero expansion,
# k2 = longest suffix matching the one expansion.
for w in [(2, 0, 1), (3, 3), (2,)]:
    d = suffix_decompose(p, w)
    print(f"{w}: k-values = {k_values(p, w)}, tag = {d.tag.value}, suffix = {d.suffix}")
print()

# Language growth: the number of admissible words grows like beta^n.
print(" n  count   ratio")
prev = None
for n in range(1, 13):
    c = count_words(p, n)
    ratio = f"{c / prev:.4f}" if prev else "     -"
    print(f"{n:2d}  {c:6d}  {ratio}")
    prev = c
print(f"(beta = {float(p.beta)})")
print()

# The follower graph recognizes the same language.
g = build(p, 10)
print("graph stats:", stats(g))
path = walk(g, (3, 3, 0, 1))
print("walk of (3,3,0,1):", path)
print("agreement with the direct check over all length-4 words:",
      all((walk(g, w) is not None) == is_admissible(p, w)
          for w in enumerate_words(p, 4)))
print()

# DOT export for rendering with graphviz.
dot = export_dot(build(p, 3))
print("first lines of the DOT export:")
for line in dot.splitlines()[:8]:
    print(" ", line)
