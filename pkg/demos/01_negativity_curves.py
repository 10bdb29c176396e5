"""
Negativity versus time
======================

One excitation starts either on a common qubit (coupled to both baths) or
on a side qubit of ensemble A.  Entanglement between A and B builds up from
zero and settles at a stationary value that depends on the initial state.
"""

import numpy as np

from overlap_entanglement import negativity_common, negativity_side

t = np.linspace(0, 6, 13)

# two side qubits per ensemble, a single common qubit
N, n = 2, 1
common = negativity_common(t, N, n)
side = negativity_side(t, N, n)

print(f"N={N}, n={n}")
print("   t    common      side")
for ti, c, s in zip(t, common, side):
    print(f"{ti:4.1f}  {c:.6f}  {s:.6f}")

# both curves only grow; the dissipator never destroys this entanglement
print("monotone:", np.all(np.diff(common) >= 0), np.all(np.diff(side) >= 0))

# For a single qubit per ensemble the two limits agree, the transients do not.
t = np.linspace(0, 10, 6)
print("\nN=1, n=1")
print(np.c_[t, negativity_common(t, 1, 1), negativity_side(t, 1, 1)].round(6))
