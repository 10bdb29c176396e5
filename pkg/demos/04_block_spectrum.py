"""
Where the negative eigenvalue lives
===================================

In the structured basis the partial transpose splits into an arrow block
tau and two blocks omega.  Only tau can go negative.  For the side-site
start the nontrivial omega eigenvalues come from a 2x2 reduction, and the
square root there carries a factor 1/2; dropping it gives the wrong spectrum.
"""

import numpy as np

from overlap_entanglement import pt_spectrum, reduced_state
from overlap_entanglement.negativity import side_omega_block, side_omega_eigenvalues

s = reduced_state("side", 1.5, 3, 2)
spec = pt_spectrum(s)
print("tau:  ", np.round(spec.tau, 6))
print("omega:", np.round(spec.omega, 6))

a1, a2, a5, N = 0.4, 0.1, 0.08, 5
dense = np.linalg.eigvalsh(side_omega_block(a1, a2, a5, N))
print("\ndense omega block:", np.round(dense, 6))
print("closed form:      ", np.round(side_omega_eigenvalues(a1, a2, a5, N), 6))

mean = 0.5 * (a1 + (N - 1) * a2)
root = np.sqrt((a1 - (N - 1) * a2) ** 2 + 4 * (N - 1) * a5**2)
print("without the 1/2:  ", np.round([mean - root, mean + root], 6))
