"""Word surgery: small edits that steer walks back to the root.

The hat edit changes at most 2 letters and clears a boundary-prefix
suffix; applying it twice (the tilde edit, at most 3 letters) always
lands on the root vertex [0,0]. The point of both: every admissible
word can be made "neutral" by a bounded edit, and only boundedly many
words collapse onto the same result. The extension letter g(w) plus
1-padding embeds any word into a two-sided point.
"""

from collections import Counter

from abshift import (
    Params,
    class_of,
    enumerate_words,
    g_letter,
    hat,
    is_admissible,
    k_values,
    multiplicity_profile,
    sharp,
    tilde,
)

p = Params.make("2/7", "7/2")

print("word          class  hat           tilde         k-values of tilde")
for w in [(3, 3), (2, 0, 1), (3, 3, 0, 1), (1, 3), (2, 2)]:
    h, t = hat(p, w), tilde(p, w)
    print(f"{str(w):13} {class_of(p, w).value:5}  {str(h):13} {str(t):13} {k_values(p, t)}")
print()

# Edit distance and class flow over an exhaustive sweep.
n = 6
dist = Counter()
flow = Counter()
for w in enumerate_words(p, n):
    h = hat(p, w)
    dist[sum(1 for a, b in zip(w, h) if a != b)] += 1
    flow[(class_of(p, w).value, class_of(p, h).value)] += 1
print(f"hat edit distance histogram over all {sum(dist.values())} words of length {n}:")
print(" ", dict(sorted(dist.items())))
print("class flow (before -> after):")
for (src, dst), c in sorted(flow.items()):
    print(f"  {src:4} -> {dst:4}: {c}")
print()

# Preimage multiplicities stay bounded (7 for tilde, 3 for hat on the
# b-suffix class at these parameters).
prof = multiplicity_profile(p, 8)
print(f"observed preimage maxima up to length 8: tilde {prof.max_tilde}, "
      f"hat on b-class {prof.max_hat_on_LB}")
print()

# The extension letter and 1-padding give two-sided membership.
for w in [(3, 3), (2,), (3, 3, 0)]:
    gw = g_letter(p, w)
    padded = (1, 1) + w + (gw,) + (1, 1)
    x = sharp(p, w, 1)
    print(f"{w}: g = {gw}, padded word admissible = {is_admissible(p, padded)}, "
          f"two-sided certificate = {x.check_two_sided(p)}")
