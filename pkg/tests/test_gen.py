import numpy as np
import pytest

from tourncycles import bounds, core, count, gen
from tourncycles.core import to_matrix


def densities(t):
    r = count.density_report(t)
    return r.t3, r.t4


def test_transitive_has_no_cycles():
    for n in (3, 4, 6):
        r = count.density_report(gen.gen_transitive(n))
        assert r.homs3 == r.homs4 == 0
    assert gen.gen_transitive(1).n == 1
    with pytest.raises(ValueError):
        gen.gen_transitive(0)


def test_uniform_deterministic():
    assert gen.gen_uniform(5, 1) == gen.gen_uniform(5, 1)
    assert gen.gen_uniform(40, 1) != gen.gen_uniform(40, 2)


def test_uniform_large_densities():
    t3, t4 = densities(gen.gen_uniform(2000, 11))
    assert abs(t3 - 1 / 8) <= 0.01
    assert abs(t4 - 1 / 16) <= 0.01


@pytest.mark.parametrize("family", [
    lambda s: gen.gen_uniform(31, s),
    lambda s: gen.gen_blowup(gen.BlowupParams(0.3, 31, s)),
    lambda s: gen.gen_potential(np.linspace(0, 0.5, 31), s),
    lambda s: gen.gen_wrandom(gen.matrix_potential([0, 0.2, 0.5]), 31, s),
    lambda s: gen.gen_mixed(gen.MixedParams(2, 0.4, 1, 2, (0.1,) * 19, 31, s)),
])
def test_families_valid(family):
    for s in range(5):
        assert core.validate(family(s)) == []


def test_blowup_part_sizes():
    assert gen.BlowupParams(0.5, 300).part_sizes == [150, 150, 0]
    assert gen.BlowupParams(0.4, 100).part_sizes == [40, 40, 20]
    assert gen.BlowupParams(1.0, 10).part_sizes == [10, 0]
    with pytest.raises(ValueError):
        gen.BlowupParams(0.0, 10)


def test_blowup_arcs_go_forward_between_parts():
    t = gen.gen_blowup(gen.BlowupParams(0.4, 50, 3))
    lab = np.repeat([0, 1, 2], [20, 20, 10])
    fwd = lab[:, None] < lab[None, :]
    assert np.all(t.adj[fwd] == 1)


def test_blowup_one_part_is_uniform():
    assert gen.gen_blowup(gen.BlowupParams(1.0, 100, 9)) == gen.gen_uniform(100, 9)


@pytest.mark.parametrize("z, target", [(1 / 2, (1 / 32, 1 / 128)), (1 / 3, (1 / 72, 1 / 432))])
def test_blowup_densities(z, target):
    t3, t4 = densities(gen.gen_blowup(gen.BlowupParams(z, 3000, 1)))
    assert abs(t3 - target[0]) <= 0.005
    assert abs(t4 - target[1]) <= 0.005


def test_circular_zero_is_transitive():
    assert gen.gen_circular(0.0, 50) == gen.gen_transitive(50)


def test_circular_half_is_regular():
    n = 1001
    t = gen.gen_circular(0.5, n)
    out = t.adj.sum(axis=1)
    assert np.all(out == n // 2)
    for i in (0, 17, 1000):
        nxt = [(i + s) % n for s in range(1, n // 2 + 1)]
        assert np.all(t.adj[i, nxt] == 1)


def test_circular_rejects_xi():
    with pytest.raises(ValueError):
        gen.gen_circular(0.6, 10)


def test_matrix_potential_examples():
    assert np.allclose(gen.matrix_potential([0, .25, .5]).entries,
                       [[.5, .25, 0], [.75, .5, .25], [1, .75, .5]])
    assert np.all(gen.matrix_potential([.3] * 4).entries == 0.5)
    assert np.array_equal(gen.matrix_potential([0, .5]).entries, [[.5, 0], [1, .5]])
    with pytest.raises(ValueError):
        gen.matrix_potential([0, .7])


def test_potential_zero_is_uniform():
    assert gen.gen_potential(np.zeros(60), 4) == gen.gen_uniform(60, 4)


def test_potential_split_matches_two_parts():
    p = np.repeat([0.5, 0.0], 1500)
    t3, _ = densities(gen.gen_potential(p, 2))
    assert abs(t3 - 1 / 32) <= 0.005


def test_potential_uniform_sigma3():
    # Var of U[0, 1/2] is 1/48, so sigma3 of the kernel is (1 - 12/48)/8 = 3/32
    p = np.random.default_rng(0).uniform(0, 0.5, 3000)
    t = gen.gen_potential(p, 3)
    assert abs(count.sigma(to_matrix(t), 3) - 3 / 32) <= 0.005


def test_wrandom_matches_potential():
    z = np.linspace(0, 0.5, 40)
    assert gen.gen_wrandom(gen.matrix_potential(z), 40, 8) == gen.gen_potential(z, 8)


def test_wrandom_order_one_is_uniform():
    A = core.TournamentMatrix(np.array([[0.5]]))
    assert gen.gen_wrandom(A, 500, 6) == gen.gen_uniform(500, 6)


def test_wrandom_triangle_sigma3(triangle):
    t = gen.gen_wrandom(to_matrix(triangle), 3000, 1)
    assert abs(count.sigma(to_matrix(t), 3) - 1 / 8) <= 0.005


def test_mixed_part_sizes():
    assert gen.mixed_part_sizes(2, 0.4, 3, 100) == [40, 40, 20]
    assert gen.mixed_part_sizes(2, 0.4, 1, 100) == [20, 40, 40]


def test_mixed_validation():
    with pytest.raises(ValueError):
        gen.MixedParams(2, 0.6, 1, 2, (), 30)
    with pytest.raises(ValueError):
        gen.MixedParams(2, 0.4, 1, 3, (0,) * 20, 30)
    with pytest.raises(ValueError):
        gen.MixedParams(2, 0.4, 1, 2, (0,) * 5, 30)


def test_mixed_zero_potential_merges_parts():
    # p = 0 turns V_1 u V_2 into a single fair-coin part: parts (2n/3, n/3)
    n = 300
    m = gen.gen_mixed(gen.MixedParams(2, 1 / 3, 1, 2, (0.0,) * 200, n, 5))
    assert m == gen.gen_blowup(gen.BlowupParams(2 / 3, n, 5))


def test_mixed_on_curve():
    n = 3000
    p = (0.5,) * 1000 + (0.0,) * 1000
    t3, t4 = densities(gen.gen_mixed(gen.MixedParams(2, 1 / 3, 1, 2, p, n, 2)))
    assert abs(t4 - bounds.g(t3)) <= 0.005
