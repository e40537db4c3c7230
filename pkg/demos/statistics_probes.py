"""
Statistical probes behind the analysis
======================================

Three seeded experiments against closed forms: the cycle structure of a
uniform permutation (mean count, 2^sigma identity, tail bound), the
designation rate of the conversion phase, and the degree spread after the
first exposure round.

Run:  python3 demos/statistics_probes.py
"""

from hampack import (degree_gap_probe, designation_moment_estimate,
                     exact_power_moment, harmonic_number,
                     permutation_cycle_stats, sigma_variance)

# sigma = number of cycles of a uniform permutation of 1..n.
# E[sigma] = H_n and E[2^sigma] = n + 1 exactly; both show up in how many
# merges a 1-factor needs and how designation weights concentrate
n = 12
print(f"closed forms at n={n}:")
print(f"  H_n            = {harmonic_number(n):.6f}")
print(f"  Var sigma      = {sigma_variance(n):.6f}")
print(f"  E[2^sigma]     = {exact_power_moment(n, 2)}  (always n + 1)")
print(f"  E[3^sigma]     = {exact_power_moment(n, 3)}")

out = permutation_cycle_stats(n, samples=100_000, seed=2)
print(f"\n100k sampled permutations of 1..{n}:")
print(f"  mean sigma     = {out['mean_sigma']:.4f}  vs {out['reference_mean']:.4f}")
print(f"  mean 2^sigma   = {out['mean_two_power']:.4f}  vs {out['reference_two_power']}")
print(f"  frac sigma >= 4 log n = {out['tail_freq']}")

sweep = permutation_cycle_stats(8, samples=0, seed=0, exhaustive=True)
print(f"exhaustive sweep of all 8! permutations: mean 2^sigma = "
      f"{sweep['mean_two_power_exact']} exactly")

# how often the conversion designates a probe vertex's cycle for work:
# the empirical weight against the p log^3 n reference scale
des = designation_moment_estimate(n=80, p=0.35, trials=400, seed=9)
print(f"\ndesignation probe (n=80, p=0.35, 400 phase-1 runs):")
print(f"  completed runs = {des['completed']}")
print(f"  mean weight    = {des['estimate']:.4f}")
print(f"  reference p log^3 n = {des['reference']:.4f} "
      f"(ratio {des['ratio']:.3f})")

# degree spread after round one: max minus min of the 2n side degrees,
# against the sqrt(n p0) / log n scale that drives the second round
gap = degree_gap_probe(n=200, p0=0.3, trials=40, seed=3)
print(f"\ndegree-gap probe (n=200, p0=0.3, 40 rounds):")
print(f"  mean gap  = {gap['mean_gap']:.2f}")
print(f"  reference = {gap['reference']:.2f}")
