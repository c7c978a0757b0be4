"""Command-line front end: ``analyze``, ``frame``, ``verify`` and ``sample``.

Exit status: 0 success, 1 usage, 2 inadmissible mesh, 3 verification
failure, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .frame import (
    FrameError,
    construct_frame,
    sample_framelet,
    sample_scaling,
    verify_frame,
)
from .gramian import InadmissibleMesh
from .io import DocumentError, atomic_write, document_from_construction, read_document, samples_csv, serialize
from .mesh import MeshConfig, ToleranceSet, mesh_point
from .subdivision import build_subdivision_operator, finite_section, spectral_check

EXIT_OK, EXIT_USAGE, EXIT_INADMISSIBLE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3, 4
MAX_LEVEL = 12

# known admissible ratios h_right / h_left, used to make the diagnostic concrete
ADMISSIBLE_INTERVALS = {2: "(2/7, 7/2)"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_mesh_args(p, tol_help):
    p.add_argument("-n", type=int, required=True, help="order of the 2n-point scheme")
    p.add_argument("--h-left", type=float, default=1.0, help="mesh step on the negative axis")
    p.add_argument("--h-right", type=float, default=1.0, help="mesh step on the positive axis")
    p.add_argument("--tol", type=float, default=None, help=tol_help)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddframes", description="Tight frames for 2n-point interpolatory subdivision on a mesh with two step sizes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="spectral convergence check of the finite section")
    _add_mesh_args(p, "radius around 1 for counting unit eigenvalues (default 1e-8)")
    p.add_argument("--levels", type=int, default=12, help="cascade levels in the decay table")

    p = sub.add_parser("frame", help="construct, verify and write the filter bank")
    _add_mesh_args(p, "verification tolerance (default 1e-10)")
    p.add_argument("-o", "--output", help="output document (default: standard output)")
    p.add_argument("--levels", type=int, default=6, help="finest level of the energy check")
    p.add_argument("--columns", type=int, default=None,
                   help="number of moment columns kept in the recovery projector (default n)")

    p = sub.add_parser("verify", help="recompute all residuals for a stored document")
    p.add_argument("document")
    p.add_argument("--tol", type=float, default=None, help="verification tolerance (default 1e-10)")
    p.add_argument("--levels", type=int, default=6, help="finest level of the energy check")

    p = sub.add_parser("sample", help="sample a scaling function or irregular framelet")
    _add_mesh_args(p, "verification tolerance (unused here)")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--scaling", type=int, metavar="K", help="index of the scaling function")
    target.add_argument("--framelet", type=int, metavar="C", help="irregular framelet column")
    p.add_argument("--level", type=int, default=None,
                   help="dyadic sampling level (default 0 for scaling, 1 for framelets)")
    p.add_argument("--columns", type=int, default=None, help="moment columns, as for frame")
    p.add_argument("-o", "--output", help="CSV output (default: standard output)")
    p.add_argument("--plot", metavar="PNG", help="also render the samples to this image file")
    return parser


def _config(args, verify_tol=True) -> MeshConfig:
    try:
        tol = ToleranceSet()
        if args.tol is not None:
            tol = replace(tol, verify=args.tol) if verify_tol else replace(tol, spectral=args.tol)
        return MeshConfig(args.n, args.h_left, args.h_right, tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text, path):
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)


def _inadmissible(cfg, exc):
    msg = f"inadmissible mesh: {exc}"
    interval = ADMISSIBLE_INTERVALS.get(cfg.n)
    if interval:
        msg += f"; for n={cfg.n} the ratio h_right/h_left must lie in {interval}"
    print(msg, file=sys.stderr)
    return EXIT_INADMISSIBLE


def cmd_analyze(args) -> int:
    cfg = _config(args, verify_tol=False)
    if args.levels < 1:
        raise UsageError("--levels must be >= 1")
    section = finite_section(build_subdivision_operator(cfg))
    report = spectral_check(section, tol=cfg.tol.spectral, levels=args.levels)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.spectral_ok else EXIT_VERIFY


def _report_table(report, stream):
    for line in report.lines():
        print(line, file=stream)
    print("verification: " + ("all pass" if report.passed else "FAILED: " + ", ".join(report.failures())),
          file=stream)


def cmd_frame(args) -> int:
    cfg = _config(args)
    if args.levels < 3:
        raise UsageError("--levels must be >= 3")
    if args.columns is not None and not 1 <= args.columns <= cfg.n:
        raise UsageError(f"--columns must lie in 1..{cfg.n}")
    try:
        fc = construct_frame(cfg, n_moments=args.columns)
    except InadmissibleMesh as exc:
        return _inadmissible(cfg, exc)
    except FrameError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    report = verify_frame(fc, levels=args.levels)
    _emit(serialize(document_from_construction(fc, report)), args.output)
    _report_table(report, sys.stderr if not args.output else sys.stdout)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_verify(args) -> int:
    try:
        doc = read_document(args.document)
    except OSError as exc:
        print(f"cannot read {args.document}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except DocumentError as exc:
        print(f"parse error in {args.document}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        tol = ToleranceSet() if args.tol is None else replace(ToleranceSet(), verify=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = MeshConfig(doc.n, doc.h_left, doc.h_right, tol)
    try:
        fc = construct_frame(cfg, n_moments=doc.moments, q_irr=doc.q_irr)
    except InadmissibleMesh as exc:
        return _inadmissible(cfg, exc)
    except FrameError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    report = verify_frame(fc, levels=args.levels)
    fresh = {"p": fc.regular.p, "d": fc.regular.d, "q1": fc.regular.q1, "q2": fc.regular.q2}
    worst = 0.0
    for name, f in doc.regular.items():
        g = fresh[name]
        lo = min(f.offset, g.offset)
        hi = max(f.offset + len(f), g.offset + len(g))
        worst = max(worst, max(abs(f[k] - g[k]) for k in range(lo, hi)))
    report.add("stored_filters", worst, tol.verify)
    _report_table(report, sys.stdout)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_sample(args) -> int:
    cfg = _config(args)
    level = args.level if args.level is not None else (0 if args.scaling is not None else 1)
    if not 0 <= level <= MAX_LEVEL:
        raise UsageError(f"--level must lie in 0..{MAX_LEVEL}")
    try:
        fc = construct_frame(cfg, n_moments=args.columns)
    except InadmissibleMesh as exc:
        return _inadmissible(cfg, exc)
    except FrameError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    try:
        if args.scaling is not None:
            x, y = sample_scaling(fc, args.scaling, level)
            title = f"scaling function k={args.scaling}"
        else:
            x, y = sample_framelet(fc, args.framelet, level)
            title = f"irregular framelet column {args.framelet}"
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(samples_csv(x, y), args.output)
    if args.plot:
        from .plotting import PlottingUnavailable, plot_samples

        ks = np.arange(-len(x), len(x) + 1)
        knots = mesh_point(cfg, ks)
        knots = knots[(knots >= x.min()) & (knots <= x.max())]
        try:
            plot_samples(x, y, args.plot,
                         title=f"{title}, n={cfg.n}, h=({cfg.h_left:g}, {cfg.h_right:g}), level {level}",
                         knots=knots)
        except PlottingUnavailable as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "frame": cmd_frame, "verify": cmd_verify, "sample": cmd_sample}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ddframes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ddframes: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
