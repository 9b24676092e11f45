import math

import numpy as np
import pytest

from tourncycles import count, gen, spectral
from tourncycles.core import TournamentMatrix, to_matrix


def half(n):
    return TournamentMatrix(np.full((n, n), 0.5))


def test_triangle_profile(triangle):
    p = spectral.skew_decompose(to_matrix(triangle))
    assert len(p.pairs) == 1
    lam, alpha = p.pairs[0]
    assert lam == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert alpha == pytest.approx(math.pi / 2, abs=1e-9)
    assert p.alpha_extra == pytest.approx(0.0, abs=1e-7)


def test_triangle_reconstruction(triangle):
    p = spectral.skew_decompose(to_matrix(triangle))
    assert spectral.reconstruct_sigma(p, 3) == pytest.approx(1 / 8, abs=1e-12)
    assert spectral.reconstruct_sigma(p, 4) == pytest.approx(11 / 144, abs=1e-12)


def test_zero_profile():
    p = spectral.skew_decompose(half(6))
    assert np.all(p.lambdas == 0)
    assert spectral.reconstruct_sigma(p, 3) == 1 / 8
    assert spectral.reconstruct_sigma(p, 4) == 1 / 16
    with pytest.raises(ValueError):
        spectral.reconstruct_sigma(p, 5)


@pytest.mark.parametrize("seed", range(4))
def test_potential_profile(seed):
    z = np.random.default_rng(seed).uniform(0, 0.5, 40)
    p = spectral.skew_decompose(gen.matrix_potential(z))
    nonzero = p.lambdas[p.lambdas > 1e-9]
    assert nonzero.size == 1
    assert p.weighted() == pytest.approx(4 * z.var(), abs=1e-12)


@pytest.mark.parametrize("n, seed", [(7, 0), (8, 1), (51, 2), (100, 3)])
def test_decomposition_invariants(n, seed):
    A = to_matrix(gen.gen_uniform(n, seed))
    d = spectral.decompose(A)
    U, L = d.U, d.L
    B = 1 - 2 * A.entries
    assert np.allclose(U.T @ U, np.eye(n), atol=1e-10)
    assert np.max(np.abs(B - U @ L @ U.T)) <= 1e-9 * n
    j = np.ones(n)
    m = len(d.profile.pairs)
    assert np.all(np.abs(U[:, 1:2 * m:2].T @ j) <= 1e-8 * n)
    lam = d.profile.lambdas
    assert np.all(np.diff(lam) <= 1e-12)
    assert d.profile.cos2_total() == pytest.approx(1, abs=1e-10)
    assert d.profile.quartic() >= d.profile.weighted() ** 2 - 1e-12
    for l in (3, 4):
        assert spectral.reconstruct_sigma(d.profile, l) == pytest.approx(count.sigma(A, l), abs=1e-10)


def test_eigs_triangle(triangle):
    s = spectral.eigs_normalized(to_matrix(triangle))
    assert s.rho == pytest.approx(0.5, abs=1e-12)
    assert s.reals == ()
    assert len(s.complex_pairs) == 1
    a, b = s.complex_pairs[0]
    assert a == pytest.approx(0, abs=1e-12)
    assert b == pytest.approx(math.sqrt(3) / 6, abs=1e-12)


def test_eigs_half():
    s = spectral.eigs_normalized(half(5))
    assert s.rho == pytest.approx(0.5, abs=1e-12)
    assert np.allclose(s.reals, 0, atol=1e-12)


def test_eigs_transitive():
    n = 6
    s = spectral.eigs_normalized(to_matrix(gen.gen_transitive(n)))
    assert s.rho == pytest.approx(1 / (2 * n), abs=1e-12)
    assert np.allclose(s.reals, 1 / (2 * n), atol=1e-6)


@pytest.mark.parametrize("seed", range(5))
def test_eigs_checks(seed):
    s = spectral.eigs_normalized(to_matrix(gen.gen_uniform(60, seed)))
    c = s.checks
    assert c["rho_dominates"] and c["real_parts_nonnegative"]
    assert c["linear_ok"] and c["cubic_ok"]


def test_extremality_examples(triangle):
    z = spectral.extremality_test(gen.matrix_potential([0, .25, .5]))
    assert np.allclose(z, [0, .25, .5], atol=1e-12)
    assert spectral.extremality_test(to_matrix(triangle)) is None
    assert np.all(spectral.extremality_test(half(4)) == 0)


def test_extremality_shift():
    z = np.array([0.1, 0.3, 0.2, 0.45])
    assert np.allclose(spectral.extremality_test(gen.matrix_potential(z)), z - 0.1, atol=1e-12)
