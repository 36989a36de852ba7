"""``tadpole`` command line: solve, mass-curve, critical, profile, spectrum, asymptotics, verify."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from ..errors import DomainError, TadpoleError
from . import commands, verify
from .commands import EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY
from .config import FORMATS, RunConfig, build_config
from .output import write_json

__all__ = ["main", "build_parser", "RunConfig"]


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="flat key=value file")
    g.add_argument("--quad-tol", type=float, dest="quad_tol")
    g.add_argument("--root-tol", type=float, dest="root_tol")
    g.add_argument("--grid-n", type=int, dest="grid_n")
    g.add_argument("--L-trunc-factor", type=float, dest="L_trunc_factor")
    g.add_argument("--output-dir", dest="output_dir")
    g.add_argument("--format", choices=FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tadpole", description="Standing waves of the quintic NLS on the tadpole graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one wave, by frequency or vertex height")
    p.add_argument("--omega", type=float)
    p.add_argument("--u0", type=float)
    _common(p)

    _common(sub.add_parser("mass-curve", help="mu(omega) over the default sweep"))
    _common(sub.add_parser("critical", help="omega1 and omega0"))

    p = sub.add_parser("profile", help="sampled profile and phase-plane data")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=int, help="ring intervals (default grid_n)")
    _common(p)

    p = sub.add_parser("spectrum", help="scattering coefficients of the linear tadpole")
    p.add_argument("--k-max", type=float, default=10.0)
    p.add_argument("--n-k", type=int)
    _common(p)

    _common(sub.add_parser("asymptotics", help="expansions against the solver"))

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--only", nargs="*", default=(), metavar="ID")
    _common(p)
    return parser


def _run_verify(cfg: RunConfig, only: Sequence[str]) -> int:
    unknown = set(only) - {c[0] for c in verify.CHECKS}
    if unknown:
        raise DomainError(f"unknown invariant id(s): {', '.join(sorted(unknown))}")
    results = verify.run_checks(cfg, tuple(only))
    text = verify.format_text(results)
    d = commands.out_dir(cfg)
    (d / "verify.txt").write_text("\n".join(f"# {k} = {v}" for k, v in cfg.header_items()) + "\n" + text)
    write_json(d / "verify.json", cfg, "verify", {"invariants": verify.as_records(results)})
    if not only or "nondegeneracy" in only:
        try:
            from ..linearized import scan
            commands.write_nondegeneracy(cfg, scan(verify.EPS_GRID))
        except TadpoleError:
            pass
    sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    keys = ("quad_tol", "root_tol", "grid_n", "L_trunc_factor", "output_dir", "format")
    try:
        cfg = build_config(args.config, {k: getattr(args, k) for k in keys})
        if args.command == "solve":
            return commands.cmd_solve(cfg, args.omega, args.u0)
        if args.command == "mass-curve":
            return commands.cmd_mass_curve(cfg)
        if args.command == "critical":
            return commands.cmd_critical(cfg)
        if args.command == "profile":
            return commands.cmd_profile(cfg, args.omega, args.n)
        if args.command == "spectrum":
            return commands.cmd_spectrum(cfg, args.k_max, args.n_k)
        if args.command == "asymptotics":
            return commands.cmd_asymptotics(cfg)
        return _run_verify(cfg, args.only)
    except DomainError as exc:
        print(f"tadpole: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TadpoleError, ArithmeticError) as exc:
        print(f"tadpole: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"tadpole: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
