# Manufactured solutions, temporal refinement, and the fidelity modes.
#
# Part 1 builds a problem from a chosen smooth solution (the source term is
# synthesized by high-order differencing) and confirms the solver converges
# against it, independently of the built-in benchmarks.
#
# Part 2 fixes the grid and halves the time step to isolate the temporal
# order of the stepper (expected: second order).
#
# Part 3 demonstrates the two documented fidelity switches:
#   rhs_sign="paper"   flips the sign of the trapezoid operator on the
#                      right-hand side; the update then loses the elliptic
#                      physics at leading order and refinement stalls.
#   stepper="split"    composes the literal directional sub-steps, whose
#                      per-direction mass operators do not add up to the
#                      full mixed-derivative mass; the y-direction physics
#                      cancels between cycles and errors plateau.
#
# Usage: python demos/04_manufactured_and_modes.py

import numpy as np

from sobrlw import SchemeConfig, convergence_study, example1, make_grid, manufactured, run

# --- part 1: manufactured solution ------------------------------------------

exact = lambda X, Y, t: np.sin(np.pi * (X - t)) * np.sin(np.pi * Y)
problem = manufactured(alpha=0.8, beta=0.5, gamma=0.6, exact_u=exact,
                       name="manufactured-wave")
print("manufactured problem: alpha=0.8, beta=0.5, gamma=0.6, "
      "u = sin(pi(x - t)) sin(pi y)")
prev = None
for M in (8, 16, 32):
    grid = make_grid(0, 1, 0, 1, M)
    rec = run(problem, grid, SchemeConfig())
    r = "" if prev is None else f"  rate {np.log2(prev / rec.sup_err):.3f}"
    print(f"  M={M:3d}: error {rec.sup_err:.4e}{r}")
    prev = rec.sup_err

# --- part 2: temporal refinement at fixed h ----------------------------------

print("\ntemporal refinement on the first benchmark (M = 32 fixed):")
p1 = example1()
g32 = make_grid(0, 1, 0, 1, 32)
prev = None
for k in (2.0 ** -3, 2.0 ** -4, 2.0 ** -5):
    rec = run(p1, g32, SchemeConfig(k_rule=k))
    r = "" if prev is None else f"  rate {np.log2(prev / rec.sup_err):.3f}"
    print(f"  k={k:.5f}: error {rec.sup_err:.4e}{r}")
    prev = rec.sup_err

# --- part 3: fidelity modes ---------------------------------------------------

print("\nmode comparison on the first benchmark, levels 2..4:")
for label, cfg in (
        ("default (coupled, derived sign)", SchemeConfig()),
        ("rhs_sign='paper'", SchemeConfig(rhs_sign="paper")),
        ("stepper='split' (literal directional)", SchemeConfig(stepper="split"))):
    rows = convergence_study(p1, [2, 3, 4], cfg)
    errs = " -> ".join(f"{r.error:.3e}" for r in rows if not r.failed)
    print(f"  {label:42s} errors {errs}")
print("\nonly the default mode refines toward zero; the fidelity modes "
      "document why the corrections are needed.")
