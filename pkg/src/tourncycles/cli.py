"""Command line interface: ``tourncycles <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 a verification
suite failed.  Data goes to stdout or ``--out``; progress goes to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import bounds, count, gen, spectral, spopt, verify
from .core import TournamentMatrix, load_trn, read_trn, to_matrix, write_trn

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3
THREADS_ENV = "TOURNCYCLES_THREADS"


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % x


def _dump(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_vector(path) -> np.ndarray:
    with open(path) as fh:
        return np.array([float(tok) for tok in fh.read().split()])


def _read_kernel(path) -> TournamentMatrix:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw.startswith(b"TRN"):
        return to_matrix(read_trn(raw))
    return TournamentMatrix(np.loadtxt(io.StringIO(raw.decode())))


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"--{missing[0].replace('_', '-')} is required for family {args.family}")


def cmd_gen(args) -> int:
    fam = args.family
    echo = {"family": fam}
    if fam == "transitive":
        _require(args, "n")
        t = gen.gen_transitive(args.n)
    elif fam == "circular":
        _require(args, "n", "xi")
        t = gen.gen_circular(args.xi, args.n)
        echo["xi"] = args.xi
    else:
        if args.seed is None:
            raise ValueError(f"--seed is required for family {fam}")
        echo["seed"] = args.seed
        if fam == "uniform":
            _require(args, "n")
            t = gen.gen_uniform(args.n, args.seed)
        elif fam == "blowup":
            _require(args, "n", "z")
            params = gen.BlowupParams(args.z, args.n, args.seed)
            echo.update(z=args.z, part_sizes=params.part_sizes)
            t = gen.gen_blowup(params)
        elif fam == "potential":
            _require(args, "z_file")
            p = _read_vector(args.z_file)
            if args.n is not None and args.n != p.size:
                raise ValueError(f"--n {args.n} does not match {p.size} potentials in {args.z_file}")
            t = gen.gen_potential(p, args.seed)
        elif fam == "wrandom":
            _require(args, "n", "matrix_file")
            A = _read_kernel(args.matrix_file)
            echo["classes"] = A.n
            t = gen.gen_wrandom(A, args.n, args.seed)
        elif fam == "mixed":
            _require(args, "n", "z", "k", "i", "i2")
            probe = gen.mixed_part_sizes(args.k, args.z, args.i, args.n)
            need = probe[args.i - 1] + probe[args.i2 - 1] if 1 <= args.i2 <= args.k + 1 else 0
            p = _read_vector(args.p_file) if args.p_file else np.zeros(need)
            params = gen.MixedParams(args.k, args.z, args.i, args.i2, tuple(p), args.n, args.seed)
            echo.update(k=args.k, z=args.z, i=args.i, i2=args.i2, part_sizes=params.part_sizes)
            t = gen.gen_mixed(params)
        else:
            raise ValueError(f"unknown family {fam!r}")
    echo["n"] = t.n
    data = write_trn(t)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        echo["out"] = args.out
        _dump(echo)
    else:
        sys.stdout.write(data.decode())
        sys.stderr.write(json.dumps(echo) + "\n")
    return EXIT_OK


def cmd_count(args) -> int:
    rep = count.density_report(load_trn(args.input))
    if args.format == "json":
        _dump(json.loads(rep.to_json()), args.out)
    else:
        lines = [f"{k} {_fmt(v)}" for k, v in json.loads(rep.to_json()).items()]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_spectral(args) -> int:
    A = to_matrix(load_trn(args.input))
    dec = spectral.decompose(A)
    prof = dec.profile
    spec = spectral.eigs_normalized(A)
    s3, s4 = count.sigma(A, 3), count.sigma(A, 4)
    out = {
        "profile": prof.to_dict(),
        "spectrum": spec.to_dict(),
        "checks": {
            "residual": dec.residual,
            "cos2_total": prof.cos2_total(),
            "sigma3": s3,
            "sigma3_reconstructed": spectral.reconstruct_sigma(prof, 3),
            "sigma4": s4,
            "sigma4_reconstructed": spectral.reconstruct_sigma(prof, 4),
            "cauchy_schwarz_slack": prof.quartic() - prof.weighted() ** 2,
            "potential": None if (z := spectral.extremality_test(A)) is None else z.tolist(),
        },
    }
    _dump(out, args.out)
    return EXIT_OK


def bound_row(d: float) -> dict:
    if d <= 0:
        z, k = 0.0, 0
    else:
        pt = bounds.invert_z(d)
        z, k = pt.z, pt.k
    return {"d": d, "z": z, "k": k, "g": bounds.g(d),
            "lm_lower": bounds.lower_envelope_lm(d), "upper": bounds.upper_envelope(d)}


def cmd_bound(args) -> int:
    _dump(bound_row(args.d))
    return EXIT_OK


def region_rows(grid: int, sample_n: int | None = None, seed: int = 0):
    if grid < 2:
        raise ValueError("grid must be at least 2")
    for d in np.linspace(0.0, 0.125, grid):
        row = bound_row(float(d))
        if sample_n:
            if row["z"] > 0:
                t = gen.gen_blowup(gen.BlowupParams(row["z"], sample_n, seed))
            else:
                t = gen.gen_transitive(sample_n)
            row["emp_t3"] = count.cycle_homs(t, 3) / sample_n**3
            row["emp_t4"] = count.cycle_homs(t, 4) / sample_n**4
            row["sample_n"] = sample_n
            row["seed"] = seed
        yield row


def cmd_region(args) -> int:
    cols = ["d", "g", "lm_lower", "upper", "z", "k"]
    if args.sample_n:
        cols += ["emp_t3", "emp_t4", "sample_n", "seed"]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for i, row in enumerate(region_rows(args.grid, args.sample_n, args.seed)):
            w.writerow([_fmt(row[c]) for c in cols])
            if args.sample_n and i % 16 == 0:
                print(f"region: row {i + 1}/{args.grid}", file=sys.stderr)
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def _optimize_one(s3, rho, args) -> dict:
    if rho is None and not args.sweep:
        rho = spopt.rho_min(s3)
    if args.sweep or rho is None:
        value, rho_best = spopt.min_over_rho(s3, k_max=args.k_max, l_max=args.l_max, grid=args.grid)
        sol = spopt.solve_structured(spopt.SpectrumInstance(s3, rho_best, args.k_max, args.l_max))
        out = sol.to_dict()
        out.update(value=value, sweep=True)
    else:
        out = spopt.solve_structured(spopt.SpectrumInstance(s3, rho, args.k_max, args.l_max)).to_dict()
    out["s3"] = s3
    out["g"] = bounds.g(s3)
    return out


def cmd_optimize(args) -> int:
    if args.batch:
        results = []
        with open(args.batch, newline="") as fh:
            for row in csv.DictReader(fh):
                s3 = float(row["s3"])
                rho = float(row["rho"]) if row.get("rho") not in (None, "") else None
                try:
                    results.append(_optimize_one(s3, rho, args))
                except spopt.InfeasibleError as exc:
                    results.append({"s3": s3, "rho": rho, "infeasible": str(exc)})
        _dump(results, args.out)
        return EXIT_OK
    if args.s3 is None:
        raise ValueError("--s3 or --batch is required")
    _dump(_optimize_one(args.s3, args.rho, args), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    kw = {"seed": args.seed, "threads": args.threads}
    if args.max_n is not None:
        kw["max_n"] = args.max_n
    res = verify.run(args.suite, **kw)
    _dump(res.to_dict(), args.out)
    return EXIT_OK if res.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    default_threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    p = argparse.ArgumentParser(prog="tourncycles", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=default_threads,
                   help=f"worker cap (default from ${THREADS_ENV}, else 1)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a tournament as TRN")
    g.add_argument("--family", required=True,
                   choices=["transitive", "uniform", "blowup", "circular", "potential", "mixed", "wrandom"])
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--z", type=float, help="part size (blowup, mixed)")
    g.add_argument("--xi", type=float, help="circular family parameter in [0, 1/2]")
    g.add_argument("--z-file", help="whitespace-separated potentials (potential)")
    g.add_argument("--p-file", help="potentials for the two merged parts (mixed)")
    g.add_argument("--k", type=int)
    g.add_argument("--i", type=int)
    g.add_argument("--i2", type=int)
    g.add_argument("--matrix-file", help="tournament matrix as text or TRN (wrandom)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("count", help="densities of a TRN tournament")
    c.add_argument("input")
    c.add_argument("--format", choices=["json", "text"], default="json")
    c.add_argument("--out")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("spectral", help="block profile and normalised spectrum")
    s.add_argument("input")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectral)

    b = sub.add_parser("bound", help="g and the envelopes at one density")
    b.add_argument("--d", type=float, required=True)
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("region", help="CSV of g and envelopes over [0, 1/8]")
    r.add_argument("--grid", type=int, default=129)
    r.add_argument("--sample-n", type=int, default=None,
                   help="append densities of sampled blow-ups of this order")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_region)

    o = sub.add_parser("optimize", help="solve the spectrum problem")
    o.add_argument("--s3", type=float)
    o.add_argument("--rho", type=float)
    o.add_argument("--sweep", action="store_true", help="minimise over rho as well")
    o.add_argument("--k-max", type=int, default=4)
    o.add_argument("--l-max", type=int, default=4)
    o.add_argument("--grid", type=int, default=2000)
    o.add_argument("--batch", help="CSV with columns s3[,rho]")
    o.add_argument("--out")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="run a self-check suite")
    v.add_argument("--suite", required=True, choices=verify.SUITES)
    v.add_argument("--max-n", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (spectral.NumericalError, spopt.NumericFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
