"""Exact cycle and transitive-subtournament counts, densities and σ_ℓ.

Integer matrix products are formed with float64 BLAS; every entry and
partial sum involved stays below 2**53 for n < 9e4, so the results are exact
integers.  Traces of the third and higher powers are reduced to elementwise
sums of lower powers in int64.
"""
from __future__ import annotations

import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import bounds
from .core import Tournament, TournamentMatrix, from_upper_bits, write_trn

ENUM_MAX_N = 7
SIGMA3_FLOOR = 1.0 / 72.0


def _int_square(m: np.ndarray) -> np.ndarray:
    f = m.astype(np.float64)
    return np.rint(f @ f).astype(np.int64)


def _powers(t: Tournament):
    m = t.checked().adj.astype(np.int64)
    m2 = _int_square(m)
    m3 = np.rint(m2.astype(np.float64) @ m.astype(np.float64)).astype(np.int64)
    return m, m2, m3


def cycle_homs(t: Tournament, length: int) -> int:
    """Number of homomorphisms of the directed cycle ``C_length`` into ``t``.

    Equals the trace of the ``length``-th power of the 0/1 adjacency matrix.
    """
    if length not in (3, 4, 5):
        raise ValueError(f"cycle length must be 3, 4 or 5, got {length!r}")
    m, m2, m3 = _powers(t)
    if length == 3:
        return int(np.trace(m3))
    if length == 4:
        return int(np.sum(m2 * m2.T))
    return int(np.sum(m3 * m2.T))


def sigma(A: TournamentMatrix, length: int) -> float:
    """``Tr(A^length) / n^length`` by dense floating point products."""
    if int(length) != length or length < 1:
        raise ValueError(f"length must be a positive integer, got {length!r}")
    a = A.entries
    n = A.n
    if length == 1:
        return float(np.trace(a)) / n
    if length == 2:
        return float(np.sum(a * a.T)) / n**2
    if length == 3:
        return float(np.sum((a @ a) * a.T)) / n**3
    if length == 4:
        a2 = a @ a
        return float(np.sum(a2 * a2.T)) / n**4
    return float(np.trace(np.linalg.matrix_power(a / n, length)))


def trans_count(t: Tournament, k: int) -> int:
    """Number of ``k``-subsets of vertices inducing a transitive subtournament.

    A transitive triple has a unique source, so there are
    ``sum_v C(outdeg v, 2)`` of them.  A transitive 4-set has a unique source
    ``v`` and a unique second vertex ``u``; the other two lie in the common
    out-neighbourhood of ``v`` and ``u``.
    """
    if k not in (3, 4):
        raise ValueError(f"k must be 3 or 4, got {k!r}")
    m = t.checked().adj.astype(np.int64)
    if k == 3:
        d = m.sum(axis=1)
        return int(np.sum(d * (d - 1) // 2))
    f = m.astype(np.float64)
    common = np.rint(f @ f.T).astype(np.int64)
    return int(np.sum(m * (common * (common - 1) // 2)))


def trans_density(t: Tournament, k: int) -> float:
    return trans_count(t, k) / t.n**k


@dataclass(frozen=True)
class DensityReport:
    n: int
    homs3: int
    homs4: int
    homs5: int
    t3: float
    t4: float
    t5: float
    tT3: float
    tT4: float
    sigma3: float
    sigma4: float
    identity_residual: float

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)


def density_report(t: Tournament) -> DensityReport:
    """All densities of ``t``.

    ``sigma3`` and ``sigma4`` come from the integer counts: with ``M`` the
    0/1 matrix, ``Tr M = Tr M^2 = 0`` collapses the binomial expansion of
    ``Tr (M + I/2)^l``.
    """
    m, m2, m3 = _powers(t)
    n = t.n
    h3 = int(np.trace(m3))
    h4 = int(np.sum(m2 * m2.T))
    h5 = int(np.sum(m3 * m2.T))
    tt4 = trans_count(t, 4) / n**4
    t3, t4 = h3 / n**3, h4 / n**4
    return DensityReport(
        n=n, homs3=h3, homs4=h4, homs5=h5,
        t3=t3, t4=t4, t5=h5 / n**5,
        tT3=trans_count(t, 3) / n**3, tT4=tt4,
        sigma3=(h3 + n / 8) / n**3,
        sigma4=(h4 + 2 * h3 + n / 16) / n**4,
        identity_residual=8 * t3 + 24 * tt4 - 6 * t4 - 1,
    )


# exhaustive enumeration ------------------------------------------------------

def _pairs(n: int):
    return np.triu_indices(n, k=1)


def bits_of(index, n: int) -> np.ndarray:
    """Upper-triangle bit strings for enumeration indices, most significant pair first."""
    m = n * (n - 1) // 2
    idx = np.atleast_1d(np.asarray(index, dtype=np.uint64))
    shifts = np.arange(m - 1, -1, -1, dtype=np.uint64)
    return ((idx[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)


def tournament_at(n: int, index: int) -> Tournament:
    """The ``index``-th tournament in the lexicographic enumeration order."""
    return from_upper_bits(n, bits_of(index, n)[0])


def adjacency_batch(n: int, start: int, stop: int) -> np.ndarray:
    bits = bits_of(np.arange(start, stop, dtype=np.uint64), n)
    iu, ju = _pairs(n)
    adj = np.zeros((stop - start, n, n), dtype=np.int64)
    adj[:, iu, ju] = bits
    adj[:, ju, iu] = 1 - bits
    return adj


def batch_homs(adj: np.ndarray):
    """Exact ``(homs3, homs4)`` for a stack of adjacency matrices."""
    n = adj.shape[-1]
    out = adj.sum(axis=2)
    cyclic = math.comb(n, 3) - np.sum(out * (out - 1) // 2, axis=1)
    m2 = np.matmul(adj, adj)
    h4 = np.sum(m2 * np.swapaxes(m2, 1, 2), axis=(1, 2))
    return 3 * cyclic, h4


@dataclass
class EnumerationSummary:
    n: int
    visited: int
    cyclic_triangles_total: int
    min_gap: float | None = None
    argmin_index: int | None = None
    argmin_trn: str | None = None
    argmin_sigma3: float | None = None
    argmin_sigma4: float | None = None
    eligible: int = 0

    def merge(self, other: "EnumerationSummary") -> "EnumerationSummary":
        best = self
        if other.min_gap is not None and (
            self.min_gap is None
            or other.min_gap < self.min_gap
            or (other.min_gap == self.min_gap and other.argmin_index < self.argmin_index)
        ):
            best = other
        return EnumerationSummary(
            n=self.n,
            visited=self.visited + other.visited,
            cyclic_triangles_total=self.cyclic_triangles_total + other.cyclic_triangles_total,
            min_gap=best.min_gap, argmin_index=best.argmin_index,
            argmin_trn=best.argmin_trn, argmin_sigma3=best.argmin_sigma3,
            argmin_sigma4=best.argmin_sigma4,
            eligible=self.eligible + other.eligible,
        )

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)


def _scan(n: int, start: int, stop: int, chunk: int, visitor, g_cache: dict) -> EnumerationSummary:
    acc = EnumerationSummary(n=n, visited=0, cyclic_triangles_total=0)
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        adj = adjacency_batch(n, lo, hi)
        h3, h4 = batch_homs(adj)
        s3 = (h3 + n / 8) / n**3
        s4 = (h4 + 2 * h3 + n / 16) / n**4
        part = EnumerationSummary(n=n, visited=hi - lo, cyclic_triangles_total=int(h3.sum()) // 3)
        ok = s3 >= SIGMA3_FLOOR
        if ok.any():
            for v in np.unique(s3[ok]):
                if v not in g_cache:
                    g_cache[v] = bounds.g(float(v))
            gap = s4[ok] - np.array([g_cache[v] for v in s3[ok]])
            j = int(np.argmin(gap))
            where = int(np.flatnonzero(ok)[j])
            part.eligible = int(ok.sum())
            part.min_gap = float(gap[j])
            part.argmin_index = lo + where
            part.argmin_sigma3 = float(s3[where])
            part.argmin_sigma4 = float(s4[where])
            part.argmin_trn = write_trn(tournament_at(n, lo + where)).decode()
        acc = acc.merge(part)
        if visitor is not None:
            for off in range(hi - lo):
                visitor(lo + off, Tournament(adj[off].astype(np.uint8)))
    return acc


def enumerate_all(n: int, visitor=None, *, allow_large: bool = False, threads: int = 1,
                  chunk: int = 1 << 15, progress: bool = False) -> EnumerationSummary:
    """Visit all ``2^(n(n-1)/2)`` labelled tournaments on ``n`` vertices.

    Order is lexicographic in the upper-triangle bit string (pair ``(0,1)``
    most significant, bit 1 meaning the lower-indexed vertex beats the
    other).  ``visitor(index, tournament)`` is called once per tournament;
    leave it out for the fast vectorised path.  The summary records the
    minimum of ``sigma4 - g(sigma3)`` over tournaments with
    ``sigma3 >= 1/72`` together with a witness.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > ENUM_MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds the enumeration guard of {ENUM_MAX_N}; pass allow_large=True")
    total = 1 << (n * (n - 1) // 2)
    g_cache: dict = {}
    if threads <= 1 or visitor is not None:
        if not progress:
            return _scan(n, 0, total, chunk, visitor, g_cache)
        acc = EnumerationSummary(n=n, visited=0, cyclic_triangles_total=0)
        step = max(chunk, total // 20)
        for lo in range(0, total, step):
            acc = acc.merge(_scan(n, lo, min(lo + step, total), chunk, visitor, g_cache))
            print(f"enumerate n={n}: {acc.visited}/{total}", file=sys.stderr)
        return acc
    bounds_ = np.linspace(0, total, threads + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ab: _scan(n, int(ab[0]), int(ab[1]), chunk, None, {}),
                              zip(bounds_[:-1], bounds_[1:])))
    acc = parts[0]
    for p in parts[1:]:
        acc = acc.merge(p)
    return acc
