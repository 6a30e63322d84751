"""The experiment drivers behind the command line interface.

Each driver returns rows of plain dictionaries; the same tables are printed by
``halfharmonic <subcommand>``.
"""
import numpy as np

from halfharmonic import experiments as ex
from halfharmonic import spectral_energy

cfg = ex.ExperimentConfig(n=512)

rows = ex.run_lambda_sweep(ex.default_lambda_grid()[::3], cfg)
for r in rows:
    print(f"lam {r['lambda']:.3f}  E0/2pi {r['E_class0'] / (2 * np.pi):.4f}  "
          f"E1/2pi {r['E_class1'] / (2 * np.pi):.4f}")
print("estimated crossing:", ex.crossing_estimate(rows))

rows = ex.run_concentration_demo()
for r in rows:
    print(f"lam {r['lambda']:.1e}  E {r['energy']:.4f}  degree {r['resolved_degree']}")
print("energy drop at the transition:", ex.transition_drop(rows))

rep = ex.multi_bubble_competitor(1.0, 2, 2048)[1]
print("two-bubble competitor E/2pi:", spectral_energy(rep) / (2 * np.pi))

for r in ex.run_pathological("sqrt_log", (9, 10, 11)):
    print(r)
