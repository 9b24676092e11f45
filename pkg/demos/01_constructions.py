# %% Cycle densities of the standard constructions against g
import numpy as np

from tourncycles import bounds, count, gen

n = 1500

# %% random blow-ups trace the curve (d, g(d))
for z in (1.0, 0.75, 0.5, 0.4, 1 / 3, 0.3):
    r = count.density_report(gen.gen_blowup(gen.BlowupParams(z, n, seed=1)))
    d, g4 = bounds.construction_point(z)
    print(f"z={z:.3f}  t3={r.t3:.5f} (limit {d:.5f})  t4={r.t4:.5f} (g={g4:.5f})")

# %% circular family sits on the upper envelope t4 = 2 t3 / 3
for xi in np.linspace(0.1, 0.5, 5):
    r = count.density_report(gen.gen_circular(xi, 1001))
    print(f"xi={xi:.1f}  t3={r.t3:.5f}  t4={r.t4:.5f}  2t3/3={2 * r.t3 / 3:.5f}")

# %% a sample from a potential kernel lands near g
p = np.random.default_rng(0).uniform(0, 0.5, n)
r = count.density_report(gen.gen_potential(p, seed=2))
print("potential sample:", round(r.sigma3, 5), round(r.sigma4, 5), "g:", round(bounds.g(r.sigma3), 5))

# %% 8 t3 + 24 tT4 - 6 t4 drifts to 1 like 1/n
for m in (100, 200, 400, 800):
    print(m, m * count.density_report(gen.gen_uniform(m, m)).identity_residual)
