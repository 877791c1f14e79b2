"""Command-line surface: table exports and the cross-validation suite.

Every subcommand emits machine-readable CSV or JSON, never plots; with
no flags beyond the subcommand the defaults reproduce the acceptance
parameter sets.  Output is deterministic: identical invocations produce
byte-identical files.
"""

import argparse
import io
import math
import sys
from fractions import Fraction

import numpy as np

from . import classical, factorization, sturm_liouville, verification
from .hermite import (
    NORM_GENERATING,
    NORM_RODRIGUES,
    generating_coeffs,
    proportionality,
    rodrigues,
    series_solution,
)
from .output import dumps_json, write_csv
from .params import PhysicalParams, classify
from .spectrum import (
    bound_count,
    continuous_curve,
    energies,
    energy,
    ladder_energies,
)
from .wavefunctions import gram_matrix, norm_constant, wavefunction

# acceptance parameter sets, used as subcommand defaults
SPECTRUM_LAMBDAS = (0.8, 0.4, 0.3)
GRAM_LAMBDAS = (-0.3, -0.1, 0.1, 0.3)
SL_LAMBDAS = (-0.3, -0.1, 0.0, 0.15, 0.3)
CLASSICAL_LAMBDAS = (0.5, -0.5, 0.1, -0.1)
POTENTIAL_LAMBDAS = (-2.0, -1.0, 1.0, 2.0)


def parse_deformation(text: str, exact: bool = False):
    """'3/10' is exact; '0.3' is exact when requested, else a float."""
    s = text.strip()
    if "/" in s:
        return Fraction(s)
    if exact:
        return Fraction(s)
    return float(s)


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument(
        "--lambda",
        dest="lam",
        action="append",
        metavar="VALUE",
        help="deformation parameter; repeatable; accepts 0.3 or 3/10",
    )
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--tol", type=float, help="tolerance override")
    p.add_argument("--seed", type=int, help="reserved; accepted and unused")
    p.add_argument("--quiet", action="store_true", help="suppress notes")


def _emit(args, header, rows, json_obj):
    text = (
        dumps_json(json_obj, indent=2)
        if args.format == "json"
        else _csv_text(header, rows)
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        if not args.quiet:
            print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()


def _lambdas(args, default, exact=False):
    if not args.lam:
        return list(default)
    return [parse_deformation(s, exact=exact) for s in args.lam]


# -- subcommands ---------------------------------------------------------------


def cmd_spectrum(args) -> int:
    lams = _lambdas(args, SPECTRUM_LAMBDAS)
    if args.figure3:
        lams = [0.30, 0.15]
    if args.figure4:
        lams = [0.30, -0.30, 0.0]
    rows = []
    for lam in lams:
        dp = classify(lam)
        m_max = args.mmax
        if m_max is None:
            m_max = dp.n_max if dp.n_max is not None else 8
        table = energies(lam, m_max, include_unbound=True)
        for m, e, spacing, bound in table.rows():
            rows.append((float(lam), "level", float(m), e, spacing, bound))
        if args.figure3 or args.figure4:
            top = (1.0 / lam * 1.6) if lam > 0 else (m_max + 0.5)
            grid = np.linspace(0.0, top, args.curve_points)
            for m, e in continuous_curve(lam, grid):
                rows.append((float(lam), "curve", m, e, None, None))
    header = ["lambda", "kind", "m", "e", "spacing", "bound"]
    json_obj = [
        dict(zip(("lambda", "kind", "m", "e", "spacing", "bound"), r))
        for r in rows
    ]
    _emit(args, header, rows, json_obj)
    return 0


def cmd_potential(args) -> int:
    lams = _lambdas(args, POTENTIAL_LAMBDAS)
    alpha = args.alpha
    rows = []
    for lam in lams:
        lam = float(lam)
        if lam < 0:
            edge = 1.0 / math.sqrt(-lam)
            xs = np.linspace(-edge, edge, args.points + 2)[1:-1]
        else:
            xs = np.linspace(-args.xmax, args.xmax, args.points)
        for x in xs:
            v = 0.5 * alpha * alpha * x * x / (1.0 + lam * x * x)
            rows.append((lam, "sample", float(x), float(v)))
        if lam > 0:
            rows.append((lam, "asymptote", None, alpha * alpha / (2.0 * lam)))
    header = ["lambda", "kind", "x", "value"]
    json_obj = [dict(zip(header, r)) for r in rows]
    _emit(args, header, rows, json_obj)
    return 0


def cmd_polys(args) -> int:
    lam_list = _lambdas(args, [None], exact=True)
    lam = lam_list[0] if lam_list != [None] else None
    n_max = args.nmax
    if args.normalization == NORM_RODRIGUES:
        if lam is None or lam == 0:
            print(
                "the derivative route needs a fixed nonzero rational "
                "deformation (--lambda)",
                file=sys.stderr,
            )
            return 1
        polys = [rodrigues(n, lam) for n in range(n_max + 1)]
    elif args.normalization == "series":
        polys = [
            series_solution(n, Fraction(lam) if lam is not None else None)
            for n in range(n_max + 1)
        ]
    else:
        polys = generating_coeffs(
            n_max, Fraction(lam) if lam is not None else None
        )
    dicts = [p.to_json_dict() for p in polys]
    if args.ratios:
        if lam is None or lam == 0:
            print(
                "ratio table needs a fixed nonzero rational deformation",
                file=sys.stderr,
            )
            return 1
        gen = generating_coeffs(n_max, Fraction(lam))
        for n, d in enumerate(dicts):
            c = proportionality(polys[n], gen[n])
            d["ratio_to_generating"] = str(c)
    rows = []
    for d in dicts:
        for k, c in enumerate(d["coeffs"]):
            rows.append(
                (d["n"], d["normalization"], d["lambda"], k, c)
                + ((d["ratio_to_generating"],) if args.ratios else ())
            )
    header = ["n", "normalization", "lambda", "power", "coefficient"] + (
        ["ratio_to_generating"] if args.ratios else []
    )
    _emit(args, header, rows, dicts)
    return 0


def cmd_wavefn(args) -> int:
    lam_list = _lambdas(args, [0.3])
    lam = lam_list[0]
    dp = classify(lam)
    ms = args.m if args.m else list(
        range((dp.n_max if dp.n_max is not None else 3) + 1)
    )
    ws = [wavefunction(m, lam) for m in ms]
    if dp.half_width is not None:
        lo = -0.999 * dp.half_width
        hi = 0.999 * dp.half_width
    else:
        lo, hi = -args.ymax, args.ymax
    if args.ymin is not None:
        lo = args.ymin
    ys = np.linspace(lo, hi, args.points)
    cols = [w(ys) for w in ws]
    if args.normalized:
        cols = [c * norm_constant(w) for w, c in zip(ws, cols)]
    rows = [
        (float(y),) + tuple(float(c[i]) for c in cols)
        for i, y in enumerate(ys)
    ]
    header = ["y"] + [f"psi_{m}" for m in ms]
    json_obj = {
        "lambda": float(lam),
        "m": list(ms),
        "normalized": bool(args.normalized),
        "samples": [dict(zip(header, r)) for r in rows],
    }
    _emit(args, header, rows, json_obj)
    return 0


def cmd_gram(args) -> int:
    lams = _lambdas(args, GRAM_LAMBDAS)
    tol = args.tol or 1e-10
    rows = []
    report = []
    for lam in lams:
        g = gram_matrix(float(lam), max_index=args.mmax, rtol=tol)
        n = g.shape[0]
        worst = 0.0
        for i in range(n):
            for j in range(n):
                rows.append((float(lam), i, j, float(g[i, j])))
                if i != j:
                    worst = max(worst, abs(float(g[i, j])))
        report.append(
            {
                "lambda": float(lam),
                "size": n,
                "max_offdiagonal": worst,
                "matrix": [[float(v) for v in row] for row in g],
            }
        )
    _emit(args, ["lambda", "i", "j", "overlap"], rows, report)
    return 0


def cmd_sl(args) -> int:
    lams = _lambdas(args, SL_LAMBDAS)
    tol = args.tol or 1e-6
    rows = []
    report = []
    for lam in lams:
        lam = float(lam)
        k = args.k
        if k is None:
            k = bound_count(lam) if lam > 0 else 7
        vals, levels = sturm_liouville.refine(lam, k, tol=tol)
        exact = [float(energy(lam, m)) for m in range(k)]
        for lv in levels:
            for m in range(k):
                rows.append(
                    (
                        lam,
                        lv.n,
                        m,
                        float(lv.raw[m]),
                        float(lv.extrapolated[m]),
                        lv.error_estimate,
                    )
                )
        report.append(
            {
                "lambda": lam,
                "levels": k,
                "eigenvalues": [float(v) for v in vals],
                "closed_form": exact,
                "max_abs_error": max(
                    abs(v - e) for v, e in zip(vals, exact)
                ),
                "grids": [
                    {"n": lv.n, "error_estimate": lv.error_estimate}
                    for lv in levels
                ],
            }
        )
    header = ["lambda", "grid", "m", "raw", "extrapolated", "error_estimate"]
    _emit(args, header, rows, report)
    return 0


def cmd_ladder(args) -> int:
    lam_list = _lambdas(args, ["3/10"], exact=True)
    lam = Fraction(lam_list[0])
    dp = classify(lam)
    n_max = args.nmax
    if n_max is None:
        n_max = dp.n_max if dp.n_max is not None else 8
    p = PhysicalParams(m=Fraction(1), alpha=Fraction(1), hbar=Fraction(1), lam=lam)
    chain = ladder_energies(p, n_max)
    gen = generating_coeffs(n_max, lam)
    rows = []
    for n in range(n_max + 1):
        e_closed = energy(lam, n)
        st = factorization.build_state(n, lam)
        ratio = proportionality(st.poly, gen[n])
        rows.append(
            (
                n,
                float(chain[n]),
                float(e_closed),
                chain[n] + Fraction(1, 2) == e_closed,
                str(ratio),
            )
        )
    header = ["n", "chain_energy", "full_energy", "exact_match", "poly_ratio"]
    json_obj = [
        {
            "n": r[0],
            "chain_energy": r[1],
            "full_energy": r[2],
            "exact_match": r[3],
            "poly_ratio": r[4],
        }
        for r in rows
    ]
    _emit(args, header, rows, json_obj)
    return 0


def cmd_classical(args) -> int:
    lams = _lambdas(args, CLASSICAL_LAMBDAS)
    periods = args.periods
    if periods is None:
        periods = 100 if args.probe else 3
    rows = []
    if args.probe:
        report = []
        for lam in lams:
            for amp in args.amplitude:
                probe = classical.measure_period(
                    args.alpha, float(lam), amp,
                    n_periods=periods,
                    steps_per_period=args.steps_per_period,
                )
                expected = classical.OrbitParams.from_amplitude(
                    amp, args.alpha, float(lam)
                ).period
                rows.append(
                    (
                        float(lam),
                        amp,
                        probe.period,
                        expected,
                        abs(probe.period - expected) / expected,
                        probe.max_rel_energy_drift,
                    )
                )
        header = [
            "lambda", "amplitude", "measured_period", "law_period",
            "rel_period_error", "max_rel_energy_drift",
        ]
        report = [dict(zip(header, r)) for r in rows]
        _emit(args, header, rows, report)
        return 0
    lam = float(lams[0])
    orbit = classical.OrbitParams.from_amplitude(args.amplitude[0], args.alpha, lam)
    h = orbit.period / args.steps_per_period
    traj = classical.integrate(
        classical.ClassicalState(args.amplitude[0], 0.0),
        args.alpha,
        lam,
        periods * orbit.period,
        h,
        sample_every=args.sample_every,
    )
    rows = list(zip(traj.t, traj.x, traj.v, traj.e))
    header = ["t", "x", "v", "E"]
    json_obj = [dict(zip(header, r)) for r in rows]
    _emit(args, header, rows, json_obj)
    return 0


def cmd_verify(args) -> int:
    groups = [g for g in verification.ALL_CHECKS if getattr(args, g, False)]
    lam_override = (
        [float(parse_deformation(s)) for s in args.lam] if args.lam else None
    )
    results = []
    for name in groups or verification.ALL_CHECKS:
        if name == "sl" and lam_override:
            results.extend(
                verification.check_sl_crossval(
                    tol=args.tol or 1e-6, lams=lam_override
                )
            )
        elif name == "gram" and lam_override:
            results.extend(
                verification.check_gram(
                    tol=args.tol or 1e-8, lams=lam_override
                )
            )
        else:
            results.extend(verification.run_checks([name]))
    records = [r.to_dict() for r in results]
    ok = all(r.passed for r in results)
    text = dumps_json(records, indent=2)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        n_pass = sum(r.passed for r in results)
        print(f"{n_pass}/{len(results)} checks passed", file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambda-osc",
        description=(
            "Exactly solvable structures of the deformed quantum nonlinear "
            "oscillator: polynomial tables, spectra, orthogonality, ladder "
            "operators, an independent eigensolver, and the classical law."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="closed-form energy levels")
    _common_flags(p)
    p.add_argument("--mmax", type=int, help="highest index (default: bound range)")
    p.add_argument("--figure3", action="store_true",
                   help="curves plus bound points at 0.30 and 0.15")
    p.add_argument("--figure4", action="store_true",
                   help="curves at +-0.30 plus the linear oscillator")
    p.add_argument("--curve-points", type=int, default=201)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("potential", help="potential samples")
    _common_flags(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--xmax", type=float, default=5.0)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("polys", help="deformed polynomial tables")
    _common_flags(p)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument(
        "--normalization",
        choices=(NORM_GENERATING, "series", NORM_RODRIGUES),
        default=NORM_GENERATING,
    )
    p.add_argument("--ratios", action="store_true",
                   help="include proportionality constants to the generating route")
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("wavefn", help="eigenfunction samples")
    _common_flags(p)
    p.add_argument("--m", type=int, action="append")
    p.add_argument("--ymin", type=float)
    p.add_argument("--ymax", type=float, default=5.0)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_wavefn)

    p = sub.add_parser("gram", help="normalized overlap matrices")
    _common_flags(p)
    p.add_argument("--mmax", type=int, default=8)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("sl", help="finite-difference eigensolver tables")
    _common_flags(p)
    p.add_argument("--k", type=int, help="number of levels (default: bound count)")
    p.set_defaults(func=cmd_sl)

    p = sub.add_parser("ladder", help="shape-invariance chain energies")
    _common_flags(p)
    p.add_argument("--nmax", type=int)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("classical", help="trajectories and the period law")
    _common_flags(p)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, action="append",
                   default=None)
    p.add_argument("--periods", type=int,
                   help="default: 3 for trajectories, 100 for --probe")
    p.add_argument("--steps-per-period", type=int, default=10_000)
    p.add_argument("--sample-every", type=int, default=10)
    p.add_argument("--probe", action="store_true",
                   help="emit period/drift measurements instead of a trajectory")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    _common_flags(p)
    for name in verification.ALL_CHECKS:
        p.add_argument(f"--{name}", action="store_true",
                       help=f"run only the {name} checks (combinable)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "amplitude", None) is None and args.command == "classical":
        args.amplitude = [0.5, 1.0] if args.probe else [1.0]
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
