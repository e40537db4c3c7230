"""
Phase 1: from coin flips to edge-disjoint 1-factors
===================================================

Builds the auxiliary bipartite graph in two exposure rounds, reads off the
minimum degree delta, extracts delta edge-disjoint perfect matchings, and
maps everything through a uniform bijection into a digraph whose 1-factors
are the matchings with loops erased.

Run:  python3 demos/phase1_generation.py
"""

import math

from hampack import phase_one

n, p, seed = 60, 0.4, 7
doc = phase_one(n, p, seed)

# the two exposure rounds: a dense first round at p0, then a sparse top-up
# around the two special vertices
print(f"n={n}, p={p}, seed={seed}")
print(f"first exposure placed {doc['first_edges']} edges")
print(f"second exposure added {doc['second_added']} more")
print(f"minimum bipartite degree delta = {doc['delta']}")

# the two special vertices: the minimum-degree vertex on each side after
# round one; round two re-exposes exactly their row and column
print(f"x+ (min degree, left side)  = {doc['x_plus']}")
print(f"y- (min degree, right side) = {doc['y_minus']}")

# delta edge-disjoint perfect matchings, peeled one at a time
print(f"\n{len(doc['matchings'])} edge-disjoint perfect matchings extracted")
seen = set()
for i, m in enumerate(doc["matchings"]):
    edges = {(x, y) for x, y in enumerate(m, start=1)}
    assert not edges & seen
    seen |= edges

# the bijection pi relabels the right side; matched pairs (x, pi(x)) would
# become loops, so those edges are erased on the way into the digraph
pi = doc["pi"]
factors = doc["one_factors"]
print(f"conversion target pi(y-) = pi({doc['y_minus']}) = "
      f"{pi[doc['y_minus'] - 1]}")

# each matching becomes a 1-factor: a disjoint union of directed cycles
# covering every vertex; the expected cycle count of a uniform permutation
# is harmonic, about log n
print(f"\ncycle counts per 1-factor (log n = {math.log(n):.2f}):")
for i, cycles in enumerate(factors):
    lens = sorted((len(c) for c in cycles), reverse=True)
    print(f"  factor {i}: {len(cycles)} cycles, lengths {lens}")
