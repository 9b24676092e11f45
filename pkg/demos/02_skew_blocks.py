# %% Block form of B = J - 2A and the two moment identities
import numpy as np

from tourncycles import count, gen, spectral
from tourncycles.core import to_matrix

A = to_matrix(gen.gen_uniform(101, seed=3))
dec = spectral.decompose(A)
prof = dec.profile
print("residual of B - U L U^T:", dec.residual)
print("largest lambdas:", np.round(prof.lambdas[:5], 4))
print("sum cos^2:", prof.cos2_total())

# %% sigma3 and sigma4 from the profile alone
for l in (3, 4):
    print(l, spectral.reconstruct_sigma(prof, l), count.sigma(A, l))

# %% a potential matrix has a single block, and it is extremal
z = np.sort(np.random.default_rng(1).uniform(0, 0.5, 40))
P = gen.matrix_potential(z)
pp = spectral.skew_decompose(P)
print("nonzero lambdas:", int(np.sum(pp.lambdas > 1e-9)), " 4 Var z:", 4 * z.var(), pp.weighted())
print("recovered potentials match:", np.allclose(spectral.extremality_test(P), z - z[0]))

# %% the normalised spectrum of the same tournament
s = spectral.eigs_normalized(A)
print("rho:", s.rho, " pairs:", len(s.complex_pairs), " checks:", s.checks["linear_ok"], s.checks["cubic_ok"])
