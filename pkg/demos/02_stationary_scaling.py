"""
Stationary negativity and ensemble sizes
========================================

The t -> infinity negativity is known in closed form.  Growing the common
ensemble hurts when the excitation starts there and helps, up to a plateau,
when it starts on a side qubit.  The best side-ensemble size is 2n for the
first case and 2 for the second.
"""

import numpy as np

from overlap_entanglement import argmax_over_N, stationary_negativity_common, stationary_negativity_side

n_values = np.array([1, 2, 5, 10, 50, 200])
print("   n   common(N=2)   side(N=2)")
for n in n_values:
    print(f"{n:4d}   {stationary_negativity_common(2, n):.3e}   {stationary_negativity_side(2, n):.6f}")

print("\nbest N for a common-site start:")
for n in range(1, 6):
    print(f"  n={n}: N={argmax_over_N(stationary_negativity_common, n, 40)}")

print("best N for a side-site start:")
for n in range(1, 6):
    print(f"  n={n}: N={argmax_over_N(stationary_negativity_side, n, 40)}")

# with no common qubits the baths are disjoint and nothing is generated
print("\nside start, n=0:", [stationary_negativity_side(N, 0) for N in range(1, 5)])
