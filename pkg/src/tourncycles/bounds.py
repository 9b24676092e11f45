"""The conjectured extremal curve g and the known envelopes around it.

The curve is parametrised by a part size ``z``: a transitive blow-up with
``floor(1/z)`` parts of relative size ``z`` and one remainder part, each part
oriented at random.  ``g`` maps the 3-cycle density of that construction to
its 4-cycle density.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

D_MAX = 0.125
CLAMP_TOL = 1e-12
INVERT_TOL = 1e-13


@dataclass(frozen=True)
class RegimePoint:
    d: float
    z: float
    k: int


def _n_full_parts(z: float) -> int:
    # floor(1/z) with a guard against 1/(1/3) landing a hair under 3
    return int(math.floor(1.0 / z + 1e-12))


def construction_point(z: float) -> tuple[float, float]:
    """Return ``(t3, t4)`` of the random blow-up with part size ``z``."""
    if not 0.0 < z <= 1.0:
        raise ValueError(f"z must lie in (0, 1], got {z!r}")
    m = _n_full_parts(z)
    rest = max(1.0 - m * z, 0.0)
    return (m * z**3 + rest**3) / 8.0, (m * z**4 + rest**4) / 16.0


def _regime_d(z: float, k: int) -> float:
    # inside regime k there are k-1 full parts and one remainder
    rest = 1.0 - (k - 1) * z
    return ((k - 1) * z**3 + rest**3) / 8.0


def _regime_g(z: float, k: int) -> float:
    rest = 1.0 - (k - 1) * z
    return ((k - 1) * z**4 + rest**4) / 16.0


def regime_of(d: float) -> int:
    """Smallest ``k`` with ``d >= 1/(8 k^2)``."""
    if d <= 0:
        raise ValueError("d = 0 has no finite regime")
    k = max(1, math.ceil(1.0 / math.sqrt(8.0 * d) - 1e-9))
    while k > 1 and d >= 1.0 / (8.0 * (k - 1) ** 2):
        k -= 1
    while d < 1.0 / (8.0 * k**2):
        k += 1
    return k


def _check_d(d: float) -> float:
    if not (-CLAMP_TOL <= d <= D_MAX + CLAMP_TOL):
        raise ValueError(f"d must lie in [0, 1/8], got {d!r}")
    return min(max(d, 0.0), D_MAX)


def invert_z(d: float) -> RegimePoint:
    """Find the part size ``z`` whose construction has 3-cycle density ``d``.

    Within the regime ``k`` the density is nondecreasing in ``z`` on
    ``[1/k, 1/(k-1)]``, so plain bisection is enough.
    """
    d = _check_d(d)
    if d == 0.0:
        raise ValueError("invert_z is undefined at d = 0; g(0) = 0 directly")
    k = regime_of(d)
    if k == 1:
        return RegimePoint(d=d, z=1.0, k=1)
    lo, hi = 1.0 / k, min(1.0, 1.0 / (k - 1))
    f_lo, f_hi = _regime_d(lo, k) - d, _regime_d(hi, k) - d
    if f_lo >= 0:
        return RegimePoint(d=d, z=lo, k=k)
    if f_hi <= 0:
        return RegimePoint(d=d, z=hi, k=k)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = _regime_d(mid, k) - d
        if abs(f_mid) <= INVERT_TOL or hi - lo < 1e-16:
            lo = hi = mid
            break
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    if abs(_regime_d(z, k) - d) > INVERT_TOL:
        z = _refine_on_grid(d, k)
    return RegimePoint(d=d, z=z, k=k)


def _refine_on_grid(d: float, k: int) -> float:
    # fallback for a bracket that is not monotone at the tolerance scale
    lo, hi = 1.0 / k, min(1.0, 1.0 / (k - 1))
    zs = np.linspace(lo, hi, 4097)
    err = np.abs(np.array([_regime_d(z, k) for z in zs]) - d)
    i = int(np.argmin(err))
    a, b = zs[max(i - 1, 0)], zs[min(i + 1, len(zs) - 1)]
    for _ in range(200):
        m1, m2 = a + (b - a) / 3, b - (b - a) / 3
        if abs(_regime_d(m1, k) - d) < abs(_regime_d(m2, k) - d):
            b = m2
        else:
            a = m1
    return 0.5 * (a + b)


def g(d: float) -> float:
    """Conjectured minimum 4-cycle density at 3-cycle density ``d``."""
    d = _check_d(d)
    if d == 0.0:
        return 0.0
    pt = invert_z(d)
    return _regime_g(pt.z, pt.k)


def g_many(ds) -> np.ndarray:
    """Vectorised ``g`` that evaluates each distinct value once."""
    ds = np.asarray(ds, dtype=float)
    uniq, inv = np.unique(ds, return_inverse=True)
    vals = np.array([g(float(d)) for d in uniq])
    return vals[inv].reshape(ds.shape)


def lower_envelope_lm(d: float) -> float:
    d = _check_d(d)
    return 12.0 * d * d / (1.0 + 16.0 * d)


def upper_envelope(d: float) -> float:
    d = _check_d(d)
    return 2.0 * d / 3.0
