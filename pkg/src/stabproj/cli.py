"""Command-line interface: ``stabproj analyze|poles|synth``.

Exit codes: 0 analysis completed, 1 error, 2 unstable verdict with
``--fail-on-unstable``.
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import StabprojError
from .io import parse_csv, write_csv, write_curves
from .pipeline import AnalysisConfig, project
from .report import Report
from .synth import (appendix_fun, eval_frf, period_doubling_system, random_mixed_system,
                    random_system)

EXIT_OK, EXIT_ERROR, EXIT_UNSTABLE = 0, 1, 2


def _analysis_args(p):
    p.add_argument("inputs", nargs="+", type=Path,
                   help="FRF CSV files (freq_hz,re_ohm,im_ohm); each is analyzed separately")
    p.add_argument("--fmin", type=float, default=None,
                   help="lower band edge in Hz; selects the bandpass filter")
    p.add_argument("--fmax", type=float, default=None,
                   help="upper band edge in Hz (default: highest input frequency)")
    p.add_argument("--filter-order", type=int, default=10)
    p.add_argument("--ripple-db", type=float, default=0.1)
    p.add_argument("--atten-db", type=float, default=100.0)
    p.add_argument("--alpha", type=float, default=None,
                   help="Moebius scaling in rad/s (default: maps fmax to exp(j pi/4))")
    p.add_argument("--nfft", type=int, default=None, help="FFT size (power of two)")
    p.add_argument("--interp", choices=("linear", "pade"), default="linear")
    p.add_argument("--threshold-db", type=float, default=20.0)
    p.add_argument("--max-order", type=int, default=20)
    p.add_argument("--report", type=Path, default=None, help="write the JSON report here")
    p.add_argument("--curves", type=Path, default=None,
                   help="write plot curves here; with several inputs the input name is appended")
    p.add_argument("--fail-on-unstable", action="store_true",
                   help="exit with status 2 when any input is unstable")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stabproj",
        description="Stability check of sampled frequency responses by stable/unstable projection.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="project and report a stability verdict")
    _analysis_args(pa)
    pa.add_argument("--poles", action="store_true", help="also estimate unstable poles")

    pp = sub.add_parser("poles", help="analyze and list the estimated unstable poles")
    _analysis_args(pp)

    ps = sub.add_parser("synth", help="write a synthetic FRF fixture as CSV")
    ps.add_argument("output", type=Path)
    ps.add_argument("--kind", choices=("random", "mixed", "appendix", "period-doubling"),
                    default="random")
    ps.add_argument("--order", type=int, default=None,
                    help="number of poles (random: 202, mixed: 10)")
    ps.add_argument("--fmin", type=float, default=None, help="lowest resonance / sample frequency")
    ps.add_argument("--fmax", type=float, default=None, help="highest sample frequency")
    ps.add_argument("--points", type=int, default=None, help="number of samples")
    ps.add_argument("--f0", type=float, default=None,
                    help="planted unstable pair frequency in Hz (random)")
    ps.add_argument("--sigma", type=float, default=None,
                    help="planted growth rate in rad/s (random)")
    ps.add_argument("--stable", action="store_true", help="plant no unstable pair (random)")
    ps.add_argument("--delay", type=float, default=0.0, help="time delay in s")
    ps.add_argument("--seed", type=int, default=0)
    return parser


def _config(args, inputs):
    f_max = args.fmax
    if f_max is None:
        f_max = max(float(frf.freqs[-1]) for frf in inputs)
    return AnalysisConfig(
        f_max=f_max, f_min=args.fmin, filter_order=args.filter_order,
        ripple_db=args.ripple_db, atten_db=args.atten_db, alpha=args.alpha,
        n_fft=args.nfft, interp=args.interp, threshold_db=args.threshold_db,
        extract_poles=args.command == "poles" or getattr(args, "poles", False),
        max_order=args.max_order,
    )


def _curves_path(base, label, several):
    if not several:
        return base
    return base.with_name(f"{base.stem}_{label}{base.suffix or '.csv'}")


def _print_entry(entry, show_poles, out):
    print(f"{entry.label} (b={entry.b}): {entry.verdict}, margin {entry.margin_db:.1f} dB "
          f"at {entry.peak_frequency_hz:.6g} Hz, error floor {entry.error_floor_db:.1f} dB",
          file=out)
    if not show_poles:
        return
    if entry.pole_error:
        print(f"  poles: {entry.pole_error}", file=out)
    elif not entry.poles:
        print("  no unstable poles above the noise level", file=out)
    for p in entry.poles:
        flag = "" if p.reliable else "  (unreliable)"
        print(f"  lambda = {p.lam.real:.6g} {p.lam.imag:+.6g}j rad/s"
              f"  ({p.frequency_hz:.6g} Hz){flag}", file=out)


def run_analysis(args, out=None):
    out = sys.stdout if out is None else out
    inputs = [parse_csv(path) for path in args.inputs]
    config = _config(args, inputs)
    results = [project(frf, config) for frf in inputs]
    report = Report.from_results(config, results)
    if args.report:
        report.write(args.report)
    if args.curves:
        for res in results:
            write_curves(res, _curves_path(args.curves, res.label, len(results) > 1))
    for entry in report.entries:
        _print_entry(entry, config.extract_poles, out)
    if args.fail_on_unstable and report.verdict == "unstable":
        return EXIT_UNSTABLE
    return EXIT_OK


def run_synth(args, out=None):
    out = sys.stdout if out is None else out
    kind = args.kind
    if kind == "appendix":
        lo = 0.0 if args.fmin is None else args.fmin
        hi = 1.0 if args.fmax is None else args.fmax
        omega = np.linspace(lo, hi, args.points or 1000)
        write_csv(appendix_fun(omega), args.output,
                  comment="order-15 stable test function; freq_hz is omega/(2 pi), "
                          "normalized units")
        return EXIT_OK
    if kind == "period-doubling":
        sysm = period_doubling_system()
        lo = 1e3 if args.fmin is None else args.fmin
        hi = 2e6 if args.fmax is None else args.fmax
        f = np.linspace(lo, hi, args.points or 2000) + 1.0
    elif kind == "mixed":
        hi = 1e9 if args.fmax is None else args.fmax
        sysm = random_mixed_system(args.order or 10, hi, seed=args.seed)
        f = np.linspace(0, hi, args.points or 5000)
    else:
        hi = 5e9 if args.fmax is None else args.fmax
        lo = hi / 50 if args.fmin is None else args.fmin
        if args.stable:
            sysm = random_system(args.order or 202, (lo, hi), seed=args.seed, delay=args.delay)
        else:
            f0 = hi / 5 if args.f0 is None else args.f0
            sigma = 2 * np.pi * f0 / 100 if args.sigma is None else args.sigma
            sysm = random_system(args.order or 202, (lo, hi), 1, (f0, sigma), seed=args.seed,
                                 delay=args.delay)
        f = np.linspace(0, hi, args.points or 5000)
    if args.delay and kind != "random":
        sysm = sysm.with_delay(args.delay)
    write_csv(eval_frf(sysm, f), args.output, comment=f"synthetic {kind} system, seed {args.seed}")
    print(f"wrote {f.size} samples to {args.output}", file=out)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "synth":
            return run_synth(args)
        return run_analysis(args)
    except (StabprojError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
