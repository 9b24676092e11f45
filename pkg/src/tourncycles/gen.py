"""Seeded tournament constructions.

Every random family orients pair ``(i, j)``, ``i < j``, from the uniform draw
``u[i, j]`` of an ``n x n`` block taken from ``numpy.random.PCG64(seed)``; the
draw for a pair sits at flat index ``i*n + j`` regardless of how the rest of
the block is used.  The pair becomes ``i -> j`` iff ``u[i, j] < P[i, j]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Tournament, TournamentMatrix

_EPS = 1e-9


def _uniforms(n: int, seed: int) -> np.ndarray:
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(int(seed))).random((n, n))


def _orient(prob: np.ndarray, seed: int) -> Tournament:
    """Sample a tournament where ``prob[i, j]`` is the chance of i -> j (i < j)."""
    n = prob.shape[0]
    u = _uniforms(n, seed)
    upper = np.triu(u < prob, k=1)
    adj = upper | np.triu(~(u < prob), k=1).T
    return Tournament(adj.astype(np.uint8))


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def gen_transitive(n: int) -> Tournament:
    n = _check_n(n)
    return Tournament(np.triu(np.ones((n, n), dtype=np.uint8), k=1))


def gen_uniform(n: int, seed: int) -> Tournament:
    n = _check_n(n)
    return _orient(np.full((n, n), 0.5), seed)


@dataclass(frozen=True)
class BlowupParams:
    z: float
    n: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.z <= 1.0:
            raise ValueError(f"z must lie in (0, 1], got {self.z!r}")
        _check_n(self.n)

    @property
    def part_sizes(self) -> list[int]:
        full = int(math.floor(1.0 / self.z + 1e-12))
        size = int(math.floor(self.z * self.n + _EPS))
        return [size] * full + [self.n - full * size]


def _part_labels(sizes) -> np.ndarray:
    return np.repeat(np.arange(len(sizes)), sizes)


def blowup_probabilities(sizes) -> np.ndarray:
    """Arc probabilities of a random transitive blow-up with the given part sizes."""
    lab = _part_labels(sizes)
    return np.where(lab[:, None] < lab[None, :], 1.0,
                    np.where(lab[:, None] == lab[None, :], 0.5, 0.0))


def gen_blowup(params: BlowupParams) -> Tournament:
    """Transitive blow-up: ``floor(1/z)`` parts of ``floor(z n)`` vertices, then the rest."""
    return _orient(blowup_probabilities(params.part_sizes), params.seed)


def gen_circular(xi: float, n: int) -> Tournament:
    """For ``i < j`` the arc is ``i -> j`` iff ``j - i <= floor((1 - xi) n)``."""
    n = _check_n(n)
    if not 0.0 <= xi <= 0.5:
        raise ValueError(f"xi must lie in [0, 1/2], got {xi!r}")
    reach = int(math.floor((1.0 - xi) * n + _EPS))
    i, j = np.indices((n, n))
    fwd = (i < j) & (j - i <= reach)
    back = (i < j) & (j - i > reach)
    return Tournament((fwd | back.T).astype(np.uint8))


def _check_potentials(z) -> np.ndarray:
    z = np.asarray(z, dtype=float).ravel()
    if z.size == 0:
        raise ValueError("need at least one potential")
    if np.any(z < 0) or np.any(z > 0.5):
        raise ValueError("potentials must lie in [0, 1/2]")
    return z


def matrix_potential(z) -> TournamentMatrix:
    """Tournament matrix with entries ``1/2 + z_i - z_j``."""
    z = _check_potentials(z)
    return TournamentMatrix(0.5 + z[:, None] - z[None, :])


def gen_potential(p, seed: int) -> Tournament:
    p = _check_potentials(p)
    return _orient(0.5 + p[:, None] - p[None, :], seed)


def gen_wrandom(A: TournamentMatrix, N: int, seed: int) -> Tournament:
    """Sample ``N`` vertices from the step kernel of ``A``; vertex ``v`` is in class ``v mod n``."""
    N = _check_n(N)
    cls = np.arange(N) % A.n
    return _orient(A.entries[np.ix_(cls, cls)], seed)


@dataclass(frozen=True)
class MixedParams:
    """Parameters of the ``k + 1`` part construction with two potential-governed parts.

    ``i`` and ``i2`` are 1-based adjacent part indices.  ``p`` holds one
    potential per vertex of ``V_i`` and ``V_i2`` in increasing vertex order.
    """

    k: int
    z: float
    i: int
    i2: int
    p: tuple
    n: int
    seed: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if not 1.0 / (self.k + 1) - 1e-12 <= self.z <= 1.0 / self.k + 1e-12:
            raise ValueError(f"z must lie in [1/(k+1), 1/k], got {self.z!r}")
        for idx in (self.i, self.i2):
            if not 1 <= idx <= self.k + 1:
                raise ValueError(f"part index {idx} outside [1, {self.k + 1}]")
        if abs(self.i - self.i2) != 1:
            raise ValueError("the two potential parts must be adjacent")
        _check_n(self.n)
        sizes = self.part_sizes
        if min(sizes) < 0:
            raise ValueError("n too small for these parameters")
        p = _check_potentials(self.p) if len(self.p) else np.zeros(0)
        want = sizes[self.i - 1] + sizes[self.i2 - 1]
        if p.size != want:
            raise ValueError(f"expected {want} potentials for parts {self.i},{self.i2}, got {p.size}")
        object.__setattr__(self, "p", tuple(float(x) for x in p))

    @property
    def part_sizes(self) -> list[int]:
        return mixed_part_sizes(self.k, self.z, self.i, self.n)

    def merged_vertices(self) -> np.ndarray:
        lab = _part_labels(self.part_sizes)
        return np.flatnonzero((lab == self.i - 1) | (lab == self.i2 - 1))


def mixed_part_sizes(k: int, z: float, i: int, n: int) -> list[int]:
    """Part sizes: ``floor(z n)`` everywhere except part ``i`` (1-based), which takes the rest."""
    size = int(math.floor(z * n + _EPS))
    sizes = [size] * (k + 1)
    sizes[i - 1] = n - k * size
    return sizes


def gen_mixed(params: MixedParams) -> Tournament:
    lab = _part_labels(params.part_sizes)
    prob = np.where(lab[:, None] < lab[None, :], 1.0,
                    np.where(lab[:, None] == lab[None, :], 0.5, 0.0))
    idx = params.merged_vertices()
    p = np.asarray(params.p)
    prob[np.ix_(idx, idx)] = 0.5 + p[:, None] - p[None, :]
    return _orient(prob, params.seed)
