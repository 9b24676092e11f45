"""Self-checks run by ``tourncycles verify``.

Each suite returns a :class:`SuiteResult`; ``passed`` is False as soon as any
check fails, and ``worst`` holds the instance (TRN text or parameters) that
came closest to, or went furthest past, its tolerance.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import bounds, count, gen, spectral, spopt
from .core import to_matrix, write_trn

SUITES = (
    "small-exhaustive", "equality-family", "spectral-identities", "bridge-identities",
    "identity-t4", "optimizer-crosscheck", "region-consistency",
)


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    checks: list = field(default_factory=list)
    worst: dict | None = None

    def add(self, name: str, ok: bool, **detail):
        self.checks.append({"name": name, "ok": bool(ok), **detail})
        if not ok:
            self.passed = False

    def to_dict(self) -> dict:
        return asdict(self)


def small_exhaustive(max_n: int = 6, threads: int = 1, **_) -> SuiteResult:
    res = SuiteResult("small-exhaustive", True)
    worst = None
    for n in range(3, max_n + 1):
        s = count.enumerate_all(n, threads=threads, allow_large=n > count.ENUM_MAX_N)
        ok = s.min_gap is None or s.min_gap >= -1e-10
        res.add(f"n={n}", ok, visited=s.visited, eligible=s.eligible, min_gap=s.min_gap)
        if s.min_gap is not None and (worst is None or s.min_gap < worst["min_gap"]):
            worst = {"n": n, "min_gap": s.min_gap, "trn": s.argmin_trn,
                     "sigma3": s.argmin_sigma3, "sigma4": s.argmin_sigma4}
    res.worst = worst
    return res


def equality_family(seed: int = 0, count_: int = 100, sizes=(20, 100, 500), **_) -> SuiteResult:
    res = SuiteResult("equality-family", True)
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    for i in range(count_):
        n = sizes[i % len(sizes)]
        z = rng.uniform(0.0, 0.5, n)
        A = gen.matrix_potential(z)
        s3, s4 = count.sigma(A, 3), count.sigma(A, 4)
        gap = abs(s4 - bounds.g(s3))
        fit = spectral.extremality_test(A, tol=1e-9)
        zerr = np.inf if fit is None else float(np.max(np.abs(fit - (z - z.min()))))
        ok = s3 >= 1 / 32 - 1e-10 and gap <= 1e-9 and zerr <= 1e-9
        if not ok or gap > worst_gap:
            worst_gap = max(worst_gap, gap)
            res.worst = {"index": i, "n": n, "sigma3": s3, "gap": gap, "z_error": zerr}
        if not ok:
            res.add(f"matrix {i}", False, n=n, sigma3=s3, gap=gap, z_error=zerr)
    res.add("all potential matrices extremal", res.passed, count=count_, max_gap=worst_gap)
    return res


def spectral_identities(seed: int = 0, count_: int = 50, sizes=(51, 100, 301), **_) -> SuiteResult:
    res = SuiteResult("spectral-identities", True)
    worst = 0.0
    for i in range(count_):
        n = sizes[i % len(sizes)]
        t = gen.gen_uniform(n, seed + i)
        A = to_matrix(t)
        p = spectral.skew_decompose(A)
        e3 = abs(spectral.reconstruct_sigma(p, 3) - count.sigma(A, 3))
        e4 = abs(spectral.reconstruct_sigma(p, 4) - count.sigma(A, 4))
        ec = abs(p.cos2_total() - 1.0)
        cs = p.quartic() - p.weighted() ** 2
        ok = e3 <= 1e-8 and e4 <= 1e-8 and ec <= 1e-8 and cs >= -1e-8
        err = max(e3, e4, ec)
        if not ok or err > worst:
            worst = max(worst, err)
            res.worst = {"n": n, "seed": seed + i, "err3": e3, "err4": e4,
                         "cos2_err": ec, "cauchy_schwarz_slack": cs}
            if not ok:
                res.worst["trn"] = write_trn(t).decode()
                res.add(f"tournament seed={seed + i}", False, **{k: v for k, v in res.worst.items() if k != "trn"})
    res.add("reconstruction, cos^2 sum and Cauchy-Schwarz", res.passed, count=count_, max_err=worst)
    return res


def bridge_gaps_batch(adj: np.ndarray):
    """Largest deviation of both bridge identities over a stack of tournaments.

    Left sides use float matrix powers of ``M + I/2``; right sides the
    integer counts.
    """
    n = adj.shape[-1]
    A = adj.astype(float) + 0.5 * np.eye(n)
    A2 = A @ A
    s3 = np.einsum("bij,bji->b", A2, A) / n**3
    s4 = np.einsum("bij,bji->b", A2, A2) / n**4
    h3, h4 = count.batch_homs(adj)
    t3, t4 = h3 / n**3, h4 / n**4
    g3 = np.abs(s3 - (t3 + 1 / (8 * n**2)))
    g4 = np.abs(s4 - (t4 + 2 * t3 / n + 1 / (16 * n**3)))
    return float(g3.max()), float(g4.max())


def bridge_identities(max_n: int = 6, seed: int = 0, count_: int = 50, **_) -> SuiteResult:
    res = SuiteResult("bridge-identities", True)
    for n in range(1, max_n + 1):
        total = 1 << (n * (n - 1) // 2)
        e3 = e4 = 0.0
        for lo in range(0, total, 1 << 14):
            a, b = bridge_gaps_batch(count.adjacency_batch(n, lo, min(total, lo + (1 << 14))))
            e3, e4 = max(e3, a), max(e4, b)
        res.add(f"all n={n}", e3 <= 1e-10 and e4 <= 1e-10, err3=e3, err4=e4)
    rng = np.random.default_rng(seed)
    for i in range(count_):
        n = int(rng.integers(8, 200))
        t = gen.gen_uniform(n, seed + i)
        A = to_matrix(t)
        rep = count.density_report(t)
        e3 = abs(count.sigma(A, 3) - (rep.t3 + 1 / (8 * n**2)))
        e4 = abs(count.sigma(A, 4) - (rep.t4 + 2 * rep.t3 / n + 1 / (16 * n**3)))
        if e3 > 1e-10 or e4 > 1e-10:
            res.add(f"random n={n} seed={seed + i}", False, err3=e3, err4=e4)
            res.worst = {"n": n, "seed": seed + i, "trn": write_trn(t).decode()}
    res.add("random tournaments", res.passed, count=count_)
    return res


def identity_t4(seed: int = 0, sizes=(100, 200, 400), **_) -> SuiteResult:
    res = SuiteResult("identity-t4", True)
    resid = {n: count.density_report(gen.gen_uniform(n, seed + n)).identity_residual for n in sizes}
    C = max(abs(r) * n for n, r in resid.items())
    res.add("fitted constant C <= 10", C <= 10, C=C, residuals={str(k): v for k, v in resid.items()})
    if 200 in resid and 400 in resid:
        ratio = abs(resid[400]) / abs(resid[200])
        res.add("residual(400) <= 0.6 residual(200)", ratio <= 0.6, ratio=ratio)
    return res


def optimizer_crosscheck(seed: int = 0, count_: int = 50, restarts: int = 24, **_) -> SuiteResult:
    res = SuiteResult("optimizer-crosscheck", True)
    rng = np.random.default_rng(seed)
    done = 0
    worst = 0.0
    while done < count_:
        s3 = float(rng.uniform(1 / 72, 1 / 8))
        rho = float(rng.uniform(spopt.rho_min(s3), 0.5))
        k, l = int(rng.integers(0, 4)), int(rng.integers(1, 3))
        inst = spopt.SpectrumInstance(s3, rho, k, l)
        try:
            st = spopt.solve_structured(inst)
        except spopt.InfeasibleError:
            continue
        nu = spopt.solve_numeric(inst, k, l, seed=seed + done, restarts=restarts)
        diff = abs(nu.value - st.value)
        below_g = st.value < bounds.g(s3) - 1e-9
        if diff > worst:
            worst = diff
            res.worst = {"s3": s3, "rho": rho, "k": k, "l": l,
                         "structured": st.value, "numeric": nu.value}
        if diff > 1e-6 or below_g:
            res.add(f"instance {done}", False, s3=s3, rho=rho, k=k, l=l,
                    structured=st.value, numeric=nu.value)
        done += 1
    res.add("structured == numeric within 1e-6 and >= g", res.passed, count=count_, max_diff=worst)
    return res


def region_consistency(grid: int = 100_001, **_) -> SuiteResult:
    res = SuiteResult("region-consistency", True)
    ds = np.linspace(0.0, 0.125, grid)
    gs = bounds.g_many(ds)
    lm = 12 * ds**2 / (1 + 16 * ds)
    up = 2 * ds / 3
    low_slack = float(np.min(gs - lm))
    up_slack = float(np.min(up - gs))
    res.add("lm_lower <= g", low_slack >= -1e-12, min_slack=low_slack)
    res.add("g <= upper", up_slack >= -1e-12, min_slack=up_slack)
    touch = ds[np.abs(gs - lm) <= 1e-9]
    far = [float(d) for d in touch if min(abs(d - c) for c in (0.0, 1 / 32, 1 / 8)) > 1e-4]
    res.add("lower envelope touches g only near 0, 1/32, 1/8", not far, stray=far[:5])
    return res


RUNNERS = {
    "small-exhaustive": small_exhaustive,
    "equality-family": equality_family,
    "spectral-identities": spectral_identities,
    "bridge-identities": bridge_identities,
    "identity-t4": identity_t4,
    "optimizer-crosscheck": optimizer_crosscheck,
    "region-consistency": region_consistency,
}


def run(suite: str, **kw) -> SuiteResult:
    try:
        runner = RUNNERS[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}") from None
    return runner(**kw)
