# %% The relaxed eigenvalue problem never goes below g for s3 >= 1/72
import numpy as np

from tourncycles import bounds, spopt

# %% a single instance: the three-part point
sol = spopt.solve_structured(spopt.SpectrumInstance(1 / 72, 1 / 6))
print(sol.value, 1 / 432, sol.case_tag, sol.reals, sol.pairs)

# %% sweeping rho
for s3 in np.linspace(1 / 72, 1 / 8, 8):
    val, rho = spopt.min_over_rho(float(s3), grid=400)
    print(f"s3={s3:.5f}  min={val:.7f}  g={bounds.g(s3):.7f}  at rho={rho:.4f}")

# %% below 1/72 the relaxation can undercut g slightly
s3 = 1 / 72 - 2e-4
val, _ = spopt.min_over_rho(s3, grid=400)
print("s3 just under 1/72:", val - bounds.g(s3))

# %% local search agrees with the closed forms
inst = spopt.SpectrumInstance(0.05, 0.4, 2, 2)
print(spopt.solve_structured(inst).value, spopt.solve_numeric(inst, 2, 2, seed=0, restarts=16).value)
