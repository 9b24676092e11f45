"""Acceptance checks, one per criterion.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for a
PASS/FAIL line per criterion.
"""
import sys
import time

import numpy as np
import pytest

from tourncycles import bounds, count, gen, spectral, spopt, verify
from tourncycles.core import to_matrix


def report(num, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    print(line)
    return ok


def criterion_1():
    parts = []
    ok = True
    for n in (6, 7):
        t0 = time.perf_counter()
        s = count.enumerate_all(n, allow_large=True)
        good = s.min_gap >= -1e-10
        ok &= good
        parts.append(f"n={n} visited={s.visited} eligible={s.eligible} "
                     f"min(s4-g(s3))={s.min_gap:.3e} [{time.perf_counter() - t0:.1f}s]")
    return ok, "; ".join(parts)


def criterion_2():
    rng = np.random.default_rng(2024)
    sizes = (20, 100, 500)
    worst_gap = worst_z = 0.0
    low = np.inf
    for i in range(100):
        n = sizes[i % 3]
        z = rng.uniform(0, 0.5, n)
        A = gen.matrix_potential(z)
        s3, s4 = count.sigma(A, 3), count.sigma(A, 4)
        low = min(low, s3)
        worst_gap = max(worst_gap, abs(s4 - bounds.g(s3)))
        fit = spectral.extremality_test(A, tol=1e-9)
        worst_z = np.inf if fit is None else max(worst_z, float(np.max(np.abs(fit - (z - z.min())))))
    ok = low >= 1 / 32 - 1e-10 and worst_gap <= 1e-9 and worst_z <= 1e-9
    return ok, f"min s3={low:.6f} (>= 1/32), max |s4-g(s3)|={worst_gap:.2e}, max z error={worst_z:.2e}"


def criterion_3():
    sizes = (51, 100, 301)
    e_sig = e_cos = 0.0
    cs = np.inf
    for i in range(50):
        n = sizes[i % 3]
        A = to_matrix(gen.gen_uniform(n, 1000 + i))
        p = spectral.skew_decompose(A)
        for l in (3, 4):
            e_sig = max(e_sig, abs(spectral.reconstruct_sigma(p, l) - count.sigma(A, l)))
        e_cos = max(e_cos, abs(p.cos2_total() - 1))
        cs = min(cs, p.quartic() - p.weighted() ** 2)
    ok = e_sig <= 1e-8 and e_cos <= 1e-8 and cs >= -1e-8
    return ok, f"max sigma err={e_sig:.2e}, max |sum cos^2 - 1|={e_cos:.2e}, min CS slack={cs:.2e}"


def criterion_4():
    e3 = e4 = 0.0
    for n in range(1, 7):
        total = 1 << (n * (n - 1) // 2)
        for lo in range(0, total, 1 << 14):
            a, b = verify.bridge_gaps_batch(count.adjacency_batch(n, lo, min(total, lo + (1 << 14))))
            e3, e4 = max(e3, a), max(e4, b)
    r3 = r4 = 0.0
    rng = np.random.default_rng(4)
    for i in range(50):
        n = int(rng.integers(8, 300))
        t = gen.gen_uniform(n, 4000 + i)
        A = to_matrix(t)
        r = count.density_report(t)
        r3 = max(r3, abs(count.sigma(A, 3) - (r.t3 + 1 / (8 * n**2))))
        r4 = max(r4, abs(count.sigma(A, 4) - (r.t4 + 2 * r.t3 / n + 1 / (16 * n**3))))
    ok = max(e3, e4, r3, r4) <= 1e-10
    return ok, (f"exhaustive n<=6 max err ({e3:.1e}, {e4:.1e}); "
                f"50 random max err ({r3:.1e}, {r4:.1e})")


def criterion_5():
    out = []
    ok = True
    for z, (a, b) in ((1 / 2, (1 / 32, 1 / 128)), (1 / 3, (1 / 72, 1 / 432))):
        r = count.density_report(gen.gen_blowup(gen.BlowupParams(z, 3000, 5)))
        good = abs(r.t3 - a) <= 0.005 and abs(r.t4 - b) <= 0.005
        ok &= good
        out.append(f"blowup z={z:.3f}: (t3,t4)=({r.t3:.5f},{r.t4:.5f})")
    worst = 0.0
    for xi in (0.1, 0.2, 0.3, 0.4, 0.5):
        r = count.density_report(gen.gen_circular(xi, 1001))
        worst = max(worst, abs(r.t4 - 2 * r.t3 / 3))
    ok &= worst <= 0.01
    out.append(f"circular max |t4-2t3/3|={worst:.2e}")
    return ok, "; ".join(out)


def criterion_6():
    v = spopt.solve_structured(spopt.SpectrumInstance(1 / 72, 1 / 6)).value
    ok1 = abs(v - 1 / 432) <= 1e-9
    low = np.inf
    for s3 in np.linspace(1 / 72, 1 / 8, 40):
        val, _ = spopt.min_over_rho(float(s3))
        low = min(low, val - bounds.g(float(s3)))
    ok2 = low >= -1e-8
    res = verify.optimizer_crosscheck(seed=6, count_=50, restarts=24)
    diff = res.checks[-1]["max_diff"]
    ok3 = res.passed
    return ok1 and ok2 and ok3, (f"structured(1/72,1/6)-1/432={v - 1 / 432:.1e}; "
                                 f"min over 40 s3 of min_over_rho-g={low:.2e}; "
                                 f"max |structured-numeric| over 50={diff:.1e}")


def criterion_7():
    res = {}
    for n in (100, 200, 400):
        res[n] = np.mean([count.density_report(gen.gen_uniform(n, 7000 + s)).identity_residual
                          for s in range(3)])
    C = max(abs(r) * n for n, r in res.items())
    ratio = abs(res[400]) / abs(res[200])
    ok = C <= 10 and ratio <= 0.6
    return ok, f"residuals {', '.join(f'n={n}: {r:+.4f}' for n, r in res.items())}; C={C:.2f}; ratio={ratio:.3f}"


def criterion_8():
    r = verify.region_consistency(grid=100_001)
    lo, up, touch = r.checks
    return r.passed, (f"min(g-lm)={lo['min_slack']:.1e}, min(upper-g)={up['min_slack']:.1e}, "
                      f"stray touch points={len(touch['stray'])}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("num", range(1, 9))
def test_criterion(num):
    ok, detail = CRITERIA[num - 1]()
    assert report(num, ok, detail), detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        ok, detail = fn()
        results.append(report(i, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]"))
    sys.exit(0 if all(results) else 1)
