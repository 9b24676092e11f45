"""Skew-symmetric block decomposition of ``B = J - 2A`` and the spectrum of ``A``.

``B`` is real skew-symmetric, so ``iB`` is Hermitian.  An eigenvector
``x = a + ib`` of ``iB`` for the eigenvalue ``θ > 0`` gives the invariant
plane ``v1 = √2 a``, ``v2 = -√2 b`` with ``B v1 = -θ v2`` and ``B v2 = θ v1``,
i.e. the 2x2 block ``[[0, θ], [-θ, 0]]`` with ``θ = λ n``.  Choosing the
eigenvector as the normalised projection of ``j`` onto its eigenspace puts the
whole component of ``j`` in ``v1`` and leaves ``v2 ⊥ j``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import TournamentMatrix
from .count import sigma

ZERO_LAMBDA = 1e-10
GROUP_TOL = 1e-9
REAL_TOL = 1e-9


class NumericalError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    pairs: tuple
    alpha_extra: float | None = None

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs], dtype=float)

    @property
    def alphas(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs], dtype=float)

    def cos2_total(self) -> float:
        c = float(np.sum(np.cos(self.alphas) ** 2))
        if self.alpha_extra is not None:
            c += math.cos(self.alpha_extra) ** 2
        return c

    def weighted(self) -> float:
        """``sum λ_i^2 cos^2 α_i``."""
        return float(np.sum(self.lambdas**2 * np.cos(self.alphas) ** 2))

    def quartic(self) -> float:
        return float(np.sum(self.lambdas**4))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pairs": [{"lambda": lam, "alpha": al} for lam, al in self.pairs],
            "alpha_extra": self.alpha_extra,
        }


@dataclass
class Decomposition:
    """Profile plus the orthonormal basis ``U`` and block matrix ``L``."""

    profile: SpectralProfile
    U: np.ndarray = field(repr=False)
    L: np.ndarray = field(repr=False)
    residual: float = 0.0


def _complete(basis: np.ndarray, first: np.ndarray | None) -> np.ndarray:
    """Orthonormal basis of span(basis) whose first column is ``first`` (if given)."""
    if first is None:
        return basis
    rest = basis - np.outer(first, first @ basis)
    q, r = np.linalg.qr(rest)
    keep = np.abs(np.diag(r)) > 1e-10 if r.size else np.zeros(0, bool)
    if keep.sum() != basis.shape[1] - 1:
        # rank-revealing fallback
        u, s, _ = np.linalg.svd(rest, full_matrices=False)
        q = u[:, : basis.shape[1] - 1]
    else:
        q = q[:, keep]
    return np.column_stack([first, q])


def decompose(A: TournamentMatrix) -> Decomposition:
    n = A.n
    B = 1.0 - 2.0 * A.entries
    j = np.ones(n)
    theta, X = scipy.linalg.eigh(1j * B)
    tol = ZERO_LAMBDA * n
    pos = np.flatnonzero(theta > tol)[::-1]  # descending

    planes = []  # (theta, v1, v2)
    start = 0
    while start < len(pos):
        stop = start + 1
        while stop < len(pos) and theta[pos[start]] - theta[pos[stop]] <= GROUP_TOL * max(1.0, theta[pos[start]]):
            stop += 1
        grp = pos[start:stop]
        th = float(np.mean(theta[grp]))
        Xg = X[:, grp]
        c = Xg.conj().T @ j
        if np.linalg.norm(c) > 1e-12 * math.sqrt(n):
            x0 = Xg @ c / np.linalg.norm(c)
            Q = _complete_complex(Xg, x0)
        else:
            Q = Xg
        for col in range(Q.shape[1]):
            x = Q[:, col]
            # phase so that x^* j is real and nonnegative
            proj = np.vdot(x, j)
            if abs(proj) > 1e-14:
                x = x * (proj / abs(proj))
            v1 = math.sqrt(2.0) * x.real
            v2 = -math.sqrt(2.0) * x.imag
            planes.append((th, v1, v2))
        start = stop

    V = np.column_stack([v for _, a, b in planes for v in (a, b)]) if planes else np.zeros((n, 0))
    # real orthonormal basis of the kernel
    if V.shape[1]:
        K = scipy.linalg.null_space(V.T, rcond=1e-10)
    else:
        K = np.eye(n)
    if K.shape[1] != n - V.shape[1]:
        raise NumericalError(f"kernel has dimension {K.shape[1]}, expected {n - V.shape[1]}")
    jk = K @ (K.T @ j)
    first = jk / np.linalg.norm(jk) if np.linalg.norm(jk) > 1e-12 * math.sqrt(n) else None
    K = _complete(K, first)

    odd = n % 2 == 1
    zero_vecs = list(K.T)
    extra = None
    if odd:
        extra = zero_vecs.pop(0)
    for a, b in zip(zero_vecs[0::2], zero_vecs[1::2]):
        planes.append((0.0, a, b))

    cols, blocks, pairs = [], [], []
    for th, v1, v2 in planes:
        lam = th / n
        c1 = float(v1 @ j) / math.sqrt(n)
        if c1 < 0:
            v1, v2 = -v1, -v2
            c1 = -c1
        alpha = math.acos(min(1.0, c1)) if c1 >= 1e-12 else math.pi / 2
        cols += [v1, v2]
        blocks.append(th)
        pairs.append((lam, alpha))
    alpha_extra = None
    if extra is not None:
        ce = abs(float(extra @ j)) / math.sqrt(n)
        alpha_extra = math.acos(min(1.0, ce)) if ce >= 1e-12 else math.pi / 2
        cols.append(extra)
    U = np.column_stack(cols)
    L = np.zeros((n, n))
    for i, th in enumerate(blocks):
        L[2 * i, 2 * i + 1] = th
        L[2 * i + 1, 2 * i] = -th
    residual = float(np.max(np.abs(B - U @ L @ U.T)))
    if residual > 1e-7 * n:
        raise NumericalError(f"decomposition residual {residual:.3g} exceeds {1e-7 * n:.3g}")
    return Decomposition(SpectralProfile(n=n, pairs=tuple(pairs), alpha_extra=alpha_extra), U, L, residual)


def _complete_complex(basis: np.ndarray, first: np.ndarray) -> np.ndarray:
    if basis.shape[1] == 1:
        return first[:, None]
    rest = basis - np.outer(first, first.conj() @ basis)
    u, s, _ = np.linalg.svd(rest, full_matrices=False)
    return np.column_stack([first, u[:, : basis.shape[1] - 1]])


def skew_decompose(A: TournamentMatrix) -> SpectralProfile:
    """The ``(λ_i, α_i)`` profile of ``B = J - 2A``; λ sorted descending."""
    return decompose(A).profile


def reconstruct_sigma(profile: SpectralProfile, length: int) -> float:
    w = profile.weighted()
    if length == 3:
        return (1.0 - 3.0 * w) / 8.0
    if length == 4:
        return (1.0 - 4.0 * w + 2.0 * profile.quartic()) / 16.0
    raise ValueError(f"length must be 3 or 4, got {length!r}")


@dataclass(frozen=True)
class EigenSpectrum:
    rho: float
    reals: tuple
    complex_pairs: tuple
    checks: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "reals": list(self.reals),
            "complex_pairs": [list(p) for p in self.complex_pairs],
            "checks": self.checks,
        }


def eigs_normalized(A: TournamentMatrix) -> EigenSpectrum:
    """Eigenvalues of ``A / n`` split into the Perron root, other reals and conjugate pairs."""
    n = A.n
    ev = np.linalg.eigvals(A.entries) / n
    if not np.all(np.isfinite(ev)):
        raise NumericalError("eigenvalue solver returned non-finite values")
    if ev.real.min() < -REAL_TOL:
        raise NumericalError(f"eigenvalue with real part {ev.real.min():.3g} < 0")
    is_real = np.abs(ev.imag) <= REAL_TOL
    reals = np.sort(ev.real[is_real])[::-1]
    if reals.size == 0:
        raise NumericalError("no real eigenvalue found")
    rho = float(reals[0])
    rest = reals[1:]
    upper = ev[(~is_real) & (ev.imag > 0)]
    lower = ev[(~is_real) & (ev.imag < 0)]
    if upper.size != lower.size:
        raise NumericalError("complex eigenvalues do not pair up")
    upper = upper[np.lexsort((upper.imag, -upper.real))]
    pairs = tuple((float(z.real), float(z.imag)) for z in upper)
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    linear = rho + rest.sum() + 2 * a.sum()
    cubic = rho**3 + np.sum(rest**3) + 2 * np.sum(a**3 - 3 * a * b**2)
    s3 = sigma(A, 3)
    checks = {
        "rho_dominates": bool(np.all(rest <= rho + REAL_TOL)),
        "reals_nonnegative": bool(np.all(rest >= -REAL_TOL)),
        "real_parts_nonnegative": bool(np.all(a >= -REAL_TOL)),
        "linear_sum": float(linear),
        "linear_ok": bool(abs(linear - 0.5) <= REAL_TOL),
        "cubic_sum": float(cubic),
        "cubic_ok": bool(abs(cubic - s3) <= REAL_TOL),
    }
    return EigenSpectrum(rho=rho, reals=tuple(float(r) for r in rest), complex_pairs=pairs, checks=checks)


def potential_fit(A: TournamentMatrix) -> tuple[np.ndarray, float]:
    """Best row-sum potential for ``A`` and the max entrywise misfit."""
    a = A.entries
    z = a.sum(axis=1) / A.n - 0.5
    z = z - z.min()
    misfit = float(np.max(np.abs(a - (0.5 + z[:, None] - z[None, :]))))
    return z, misfit


def extremality_test(A: TournamentMatrix, tol: float = 1e-9) -> np.ndarray | None:
    """Return potentials ``z`` (``min z = 0``) with ``A_ij = 1/2 + z_i - z_j``, or None."""
    z, misfit = potential_fit(A)
    return z if misfit <= tol else None


def profile_json(profile: SpectralProfile, spectrum: EigenSpectrum | None = None, **kw) -> str:
    out = {"profile": profile.to_dict()}
    if spectrum is not None:
        out["spectrum"] = spectrum.to_dict()
    return json.dumps(out, **kw)

