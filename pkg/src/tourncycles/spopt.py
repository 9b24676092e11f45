"""The spectrum problem: smallest fourth-moment of a candidate normalised spectrum.

A candidate spectrum is the Perron root ``rho``, reals ``r_i`` in ``[0, rho]``
and conjugate pairs ``a_i ± i b_i`` with ``a_i >= 0``; it must have first
moment ``1/2`` and third moment ``s3``.  The objective is the fourth moment.

Optimal points come in two families, so :func:`solve_structured` enumerates
them exhaustively:

* real family: every value is ``0``, ``rho`` or one of two free values
  ``v1``, ``v2`` (pairs with ``b = 0`` count as two equal reals);
* complex family: reals are ``0`` or ``rho`` and all non-zero pairs share one
  ``(a, ±b)``.

:func:`solve_numeric` is an independent multistart local search used to
cross-check it.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import bounds

FEAS_TOL = 1e-10
ROOT_IMAG_TOL = 1e-9


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumInstance:
    s3: float
    rho: float
    k_max: int = 4
    l_max: int = 4

    def __post_init__(self):
        if not -1e-12 <= self.s3 <= 0.125 + 1e-12:
            raise ValueError(f"s3 must lie in [0, 1/8], got {self.s3!r}")
        if not 0.0 <= self.rho <= 0.5 + 1e-12:
            raise ValueError(f"rho must lie in [0, 1/2], got {self.rho!r}")
        if self.k_max < 0 or self.l_max < 0 or self.k_max + self.l_max < 1:
            raise ValueError("need nonnegative k_max, l_max with k_max + l_max >= 1")


@dataclass(frozen=True)
class SpectrumSolution:
    value: float
    rho: float
    reals: tuple
    pairs: tuple
    case_tag: str
    notes: tuple = field(default=(), compare=False)

    def moments(self) -> tuple[float, float, float]:
        r = np.array(self.reals, dtype=float)
        a = np.array([p[0] for p in self.pairs], dtype=float)
        b = np.array([p[1] for p in self.pairs], dtype=float)
        m1 = self.rho + r.sum() + 2 * a.sum()
        m3 = self.rho**3 + np.sum(r**3) + 2 * np.sum(a**3 - 3 * a * b**2)
        m4 = self.rho**4 + np.sum(r**4) + 2 * np.sum(a**4 - 6 * a**2 * b**2 + b**4)
        return float(m1), float(m3), float(m4)

    def violations(self, s3: float, tol: float = FEAS_TOL) -> list[str]:
        out = []
        r = np.array(self.reals, dtype=float)
        if r.size and (r.min() < -tol or r.max() > self.rho + tol):
            out.append("reals outside [0, rho]")
        if self.pairs and min(p[0] for p in self.pairs) < -tol:
            out.append("negative real part")
        m1, m3, m4 = self.moments()
        if abs(m1 - 0.5) > tol:
            out.append(f"first moment {m1!r} != 1/2")
        if abs(m3 - s3) > tol:
            out.append(f"third moment {m3!r} != s3")
        if abs(m4 - self.value) > tol:
            out.append("objective does not match witness")
        return out

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "rho": self.rho,
            "reals": list(self.reals),
            "pairs": [list(p) for p in self.pairs],
            "case_tag": self.case_tag,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def rho_min(s3: float) -> float:
    """Least normalised spectral radius compatible with third moment ``s3``.

    This is the ``z`` in ``(0, 1/2]`` with
    ``s3 = q z^3 + (1/2 - q z)^3``, ``q = floor(1/(2z))``; doubling ``z``
    turns the equation into the blow-up curve, so the regime bisection of
    :func:`bounds.invert_z` applies.
    """
    if not 0.0 < s3 <= 0.125 + 1e-12:
        raise ValueError(f"s3 must lie in (0, 1/8], got {s3!r}")
    return bounds.invert_z(min(s3, 0.125)).z / 2.0


# realisation of value multiplicities ------------------------------------------

def _realise(values, mults, rho, k_max, l_max):
    """Split multiplicities into real slots and b = 0 pairs, or return None.

    A value above ``rho`` can only be carried by pairs.
    """
    forced_pairs = 0
    free_real = 0
    convertible = 0
    for v, mu in zip(values, mults):
        if mu == 0:
            continue
        if v > rho + FEAS_TOL:
            if mu % 2:
                return None
            forced_pairs += mu // 2
        else:
            free_real += mu
            convertible += mu // 2
    need = max(0, -(-(free_real - k_max) // 2))
    room = min(convertible, l_max - forced_pairs)
    if need > room:
        return None
    # convert exactly `need` pairs, greedily from the first values
    reals, pairs = [], []
    left = need
    for v, mu in zip(values, mults):
        if mu == 0:
            continue
        if v > rho + FEAS_TOL:
            pairs += [(v, 0.0)] * (mu // 2)
            continue
        c = min(left, mu // 2)
        left -= c
        pairs += [(v, 0.0)] * c
        reals += [v] * (mu - 2 * c)
    return reals, pairs


def _two_value_roots(R1, R3, p, q):
    """Positive solutions ``(x, y)`` of ``p x + q y = R1``, ``p x^3 + q y^3 = R3``."""
    out = []
    if R1 <= 0:
        return out
    N = p + q
    m = R1 / N
    c = p / q
    D = (R3 - N * m**3) / (p * (1 + c))
    if D < -1e-15:
        return out
    D = max(D, 0.0)
    if p == q:
        us = [math.sqrt(D / (3 * m)), -math.sqrt(D / (3 * m))]
    else:
        # (1 - c) u^3 + 3 m u^2 - D = 0
        roots = np.roots([1.0 - c, 3.0 * m, 0.0, -D])
        us = [r.real for r in roots if abs(r.imag) <= ROOT_IMAG_TOL * max(1.0, abs(r))]
    for u in us:
        x = m + u
        for _ in range(3):
            y = (R1 - p * x) / q
            f = p * x**3 + q * y**3 - R3
            df = 3 * p * (x * x - y * y)
            if abs(df) < 1e-14:
                break
            x -= f / df
        y = (R1 - p * x) / q
        if x < -FEAS_TOL or y < -FEAS_TOL:
            continue
        x, y = max(x, 0.0), max(y, 0.0)
        if abs(p * x**3 + q * y**3 - R3) <= FEAS_TOL:
            out.append((x, y))
    return out


def _mult_cap(rho: float) -> int:
    return math.ceil(1.0 / (2.0 * max(rho, 1e-3))) + 2


def _real_family(s3, rho, k_max, l_max, mult_cap):
    """Candidates with all ``b = 0``."""
    slots = k_max + 2 * l_max
    cap = min(slots, mult_cap)
    top_rho = min(slots, int(math.floor(0.5 / rho + 1e-12)) - 1) if rho > 0 else 0
    for m_rho in range(0, max(top_rho, 0) + 1):
        R1 = 0.5 - (1 + m_rho) * rho
        R3 = s3 - (1 + m_rho) * rho**3
        if R1 < -FEAS_TOL:
            break
        base_vals, base_mult = [rho], [m_rho]
        if abs(R1) <= FEAS_TOL and abs(R3) <= FEAS_TOL:
            yield base_vals, base_mult
        if R1 <= FEAS_TOL:
            continue
        for p in range(1, cap + 1):
            v = R1 / p
            if abs(p * v**3 - R3) <= FEAS_TOL:
                yield base_vals + [v], base_mult + [p]
            for q in range(p, cap + 1):
                if m_rho + p + q > slots:
                    break
                for x, y in _two_value_roots(R1, R3, p, q):
                    yield base_vals + [x, y], base_mult + [p, q]


def _complex_family(s3, rho, k_max, l_max):
    """Candidates: ``m`` copies of ``rho`` and ``mp`` pairs ``(a, ±b)``."""
    top = min(1 + k_max, int(math.floor(0.5 / rho + 1e-12))) if rho > 0 else 1
    for m in range(1, top + 1):
        for mp in range(1, l_max + 1):
            a = (0.5 - m * rho) / (2 * mp)
            if a <= 0:
                continue
            b2 = (m * rho**3 + 2 * mp * a**3 - s3) / (6 * mp * a)
            if b2 < -FEAS_TOL:
                continue
            b = math.sqrt(max(b2, 0.0))
            yield m, mp, a, b


def solve_structured(inst: SpectrumInstance, *, mult_cap: int | None = None) -> SpectrumSolution:
    """Exact minimum of the spectrum problem over both stationary families.

    ``k_max`` and ``l_max`` are caps: unused variables sit at zero.
    """
    s3, rho = inst.s3, inst.rho
    if s3 > 0 and rho < rho_min(s3) - 1e-12:
        raise InfeasibleError(f"rho={rho!r} is below rho_min(s3)={rho_min(s3)!r}")
    if mult_cap is None:
        mult_cap = max(_mult_cap(rho), inst.k_max + 2 * inst.l_max)
    best = None

    def consider(sol):
        nonlocal best
        if sol.violations(s3):
            return
        if best is None or sol.value < best.value - 1e-15:
            best = sol

    for vals, mults in _real_family(s3, rho, inst.k_max, inst.l_max, mult_cap):
        got = _realise(vals, mults, rho, inst.k_max, inst.l_max)
        if got is None:
            continue
        reals, pairs = got
        value = rho**4 + sum(v**4 * mu for v, mu in zip(vals, mults))
        consider(SpectrumSolution(value=float(value), rho=rho, reals=tuple(reals),
                                  pairs=tuple(pairs), case_tag="real-values"))
    for m, mp, a, b in _complex_family(s3, rho, inst.k_max, inst.l_max):
        value = m * rho**4 + 2 * mp * (a**4 - 6 * a * a * b * b + b**4)
        consider(SpectrumSolution(value=float(value), rho=rho, reals=(rho,) * (m - 1),
                                  pairs=((a, b),) * mp, case_tag="complex-pair"))
    if best is None:
        raise InfeasibleError(f"no feasible candidate for s3={s3!r}, rho={rho!r}, "
                              f"k_max={inst.k_max}, l_max={inst.l_max}")
    return best


class NumericFailure(RuntimeError):
    pass


def solve_numeric(inst: SpectrumInstance, k: int, l: int, seed: int = 0,
                  restarts: int = 64) -> SpectrumSolution:
    """Best SLSQP local minimum over random starts, with exactly ``k`` reals and ``l`` pairs."""
    s3, rho = inst.s3, inst.rho
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError("need k, l >= 0 with k + l >= 1")
    rng = np.random.default_rng(seed)

    def split(x):
        return x[:k], x[k:k + l], x[k + l:]

    def objective(x):
        r, a, b = split(x)
        return rho**4 + np.sum(r**4) + 2 * np.sum(a**4 - 6 * a**2 * b**2 + b**4)

    def grad(x):
        r, a, b = split(x)
        return np.concatenate([4 * r**3, 2 * (4 * a**3 - 12 * a * b**2),
                               2 * (4 * b**3 - 12 * a**2 * b)])

    cons = [
        {"type": "eq",
         "fun": lambda x: np.array([rho + x[:k].sum() + 2 * x[k:k + l].sum() - 0.5]),
         "jac": lambda x: np.concatenate([np.ones(k), 2 * np.ones(l), np.zeros(l)])[None, :]},
        {"type": "eq",
         "fun": lambda x: np.array([rho**3 + np.sum(split(x)[0] ** 3)
                                    + 2 * np.sum(split(x)[1] ** 3 - 3 * split(x)[1] * split(x)[2] ** 2) - s3]),
         "jac": lambda x: np.concatenate([3 * split(x)[0] ** 2,
                                          2 * (3 * split(x)[1] ** 2 - 3 * split(x)[2] ** 2),
                                          -12 * split(x)[1] * split(x)[2]])[None, :]},
    ]
    box = [(0.0, rho)] * k + [(0.0, 0.5)] * l + [(None, None)] * l
    best = None
    failures = 0
    for _ in range(restarts):
        x0 = np.concatenate([rng.uniform(0, rho, k), rng.uniform(0, 0.5, l) / max(l, 1),
                             rng.uniform(-0.5, 0.5, l)])
        with warnings.catch_warnings():
            # SLSQP may step slightly outside the box; it clips, and so do we below
            warnings.filterwarnings("ignore", "Values in x were outside bounds")
            res = optimize.minimize(objective, x0, jac=grad, method="SLSQP", bounds=box,
                                    constraints=cons, options={"ftol": 1e-15, "maxiter": 200})
        x = res.x.copy()
        x[:k + l] = np.clip(x[:k + l], 0.0, [rho] * k + [0.5] * l)
        r, a, b = split(x)
        sol = SpectrumSolution(value=float(objective(x)), rho=rho,
                               reals=tuple(float(v) for v in r),
                               pairs=tuple((float(u), float(w)) for u, w in zip(a, b)),
                               case_tag="numeric")
        if sol.violations(s3, tol=1e-8):
            failures += 1
            continue
        if best is None or sol.value < best.value:
            best = sol
    if best is None:
        raise NumericFailure(f"none of {restarts} starts reached a feasible point "
                             f"(s3={s3!r}, rho={rho!r}, k={k}, l={l})")
    return best


def min_over_rho(s3: float, *, k_max: int = 4, l_max: int = 4, grid: int = 2000):
    """Minimise the structured optimum over ``rho`` in ``[rho_min(s3), 1/2]``.

    Returns ``(value, rho)``.
    """
    lo = rho_min(s3)
    rhos = np.linspace(lo, 0.5, grid)
    vals = np.full(grid, np.inf)
    for i, r in enumerate(rhos):
        try:
            vals[i] = solve_structured(SpectrumInstance(s3, float(r), k_max, l_max)).value
        except InfeasibleError:
            pass
    i = int(np.argmin(vals))
    if not np.isfinite(vals[i]):
        raise InfeasibleError(f"no feasible rho for s3={s3!r}")
    best_val, best_rho = float(vals[i]), float(rhos[i])

    def f(r):
        try:
            return solve_structured(SpectrumInstance(s3, float(r), k_max, l_max)).value
        except InfeasibleError:
            return math.inf

    a, b = rhos[max(i - 1, 0)], rhos[min(i + 1, grid - 1)]
    if b > a:
        res = optimize.minimize_scalar(f, bounds=(a, b), method="bounded",
                                       options={"xatol": 1e-12})
        if res.fun < best_val:
            best_val, best_rho = float(res.fun), float(res.x)
    return best_val, best_rho
