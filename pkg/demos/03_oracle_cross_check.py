"""
Cross-check against brute force
===============================

The oracle builds the collective lowering operators on all 2N+n qubits,
integrates the master equation with RK4, traces out the common ensemble and
diagonalises the partial transpose.  It shares no formulas with the closed
forms, so agreement is a strong test of both.
"""

from overlap_entanglement import EnsembleConfig, negativity
from overlap_entanglement import oracle

times = [0.5, 1.0, 2.0, 5.0]
for case, N, n in [("common", 1, 2), ("side", 2, 1), ("side", 1, 3)]:
    cfg = EnsembleConfig(N, n)
    brute = oracle.oracle_negativities(cfg, case, times)
    print(f"{case:6s} N={N} n={n}")
    for t, b in zip(times, brute):
        exact = negativity(case, t, N, n)
        print(f"  t={t:3.1f}  closed={exact:.10f}  oracle={b:.10f}  diff={abs(exact - b):.1e}")

# the state never leaves the 11-operator span
cfg = EnsembleConfig(2, 2)
rho = oracle.evolve_full(cfg, "side", 3.0)
print("\nleakage out of the operator span:", oracle.subspace_leakage(rho, cfg, "side"))
