"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 invalid input. Errors are printed to
stderr as a JSON object. Every command is deterministic given its flags.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import io
from .conformal import VERIFIERS
from .ensemble import DomainError, EnsembleParams, density_at, support_radius
from .kernel_asymptotic import DeltaSample, error_table
from .kernel_exact import kernel_grid
from .sampling import BulkExitError, attach_uniform_angles, sample_moduli, spacing_check

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID = 0, 1, 2

_REAL_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")
# flags whose values may start with '-' (e.g. --bounds -0.9:0.9)
_SIGNED_VALUE_FLAGS = ("--bounds", "--z")


class UsageError(Exception):
    pass


def _real(text, original):
    if not _REAL_RE.match(text):
        raise argparse.ArgumentTypeError(f"not a complex number of the form a+bi: {original!r}")
    return float(text)


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``a``, ``bi`` (no spaces)."""
    if not text.endswith("i"):
        return complex(_real(text, text), 0.0)
    body = text[:-1]
    split = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            split = k
            break
    re_text, im_text = (body[:split], body[split:]) if split is not None else ("", body)
    re_part = _real(re_text, text) if re_text else 0.0
    if im_text in ("", "+", "-"):
        im_part = -1.0 if im_text == "-" else 1.0
    else:
        im_part = _real(im_text, text)
    return complex(re_part, im_part)


def parse_bounds(text: str):
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bounds must look like lo:hi, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError("bounds must satisfy lo < hi")
    return lo, hi


def _list_of(kind):
    def parse(text):
        items = [t for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError("list must not be empty")
        try:
            return [kind(t) for t in items]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _params(args) -> EnsembleParams:
    return EnsembleParams(args.alpha, args.n)


def cmd_kernel_grid(args):
    params = _params(args)
    steps = args.steps
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    grid = kernel_grid(params, args.z, args.bounds, args.bounds, steps)
    io.write_kernel_grid_csv(args.out, grid)
    peak_idx, peak_w, peak_v = grid.peak()
    nearest = grid.nearest_index(args.z)
    print(io.dump_json({
        "command": "kernel-grid",
        "alpha": params.alpha,
        "n": params.n,
        "z": args.z,
        "csv": str(args.out),
        "rows": grid.steps_re * grid.steps_im,
        "peak_w": peak_w,
        "peak_abs": abs(peak_v),
        "peak_index": list(peak_idx),
        "nearest_index_to_z": list(nearest),
        "peak_at_nearest_node": tuple(peak_idx) == tuple(nearest),
        "half_max_width": grid.half_max_width(),
    }))
    return EXIT_OK


def cmd_error_table(args):
    sample = DeltaSample(n_radii=args.radii, n_angles=args.angles)
    rows = error_table(args.alphas, args.ns, sample)
    sidecar = io.write_error_table(args.out, rows)
    decreasing = {}
    for a in args.alphas:
        seq = [r.r_sup for r in rows if r.alpha == float(a)]
        decreasing[str(a)] = all(x > y for x, y in zip(seq, seq[1:]))
    print(io.dump_json({
        "command": "error-table",
        "csv": str(args.out),
        "sidecar": str(sidecar),
        "rows": [{"alpha": r.alpha, "n": r.n, "r_sup": r.r_sup} for r in rows],
        "strictly_decreasing_in_n": decreasing,
    }))
    return EXIT_OK


def cmd_verify(args):
    params = _params(args)
    names = ["phi", "u", "g"] if args.identity == "all" else [args.identity]
    results = [VERIFIERS[name](params) for name in names]
    ok = all(r.passed for r in results)
    print(io.dump_json({
        "command": "verify",
        "alpha": params.alpha,
        "n": params.n,
        "passed": ok,
        "results": [r.to_dict() for r in results],
    }))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_spacing_check(args):
    params = _params(args)
    if args.trials < 30:
        raise UsageError("--trials must be at least 30")
    if args.s < 0:
        raise UsageError("--s must be nonnegative")
    res = spacing_check(params, args.s, args.trials, args.seed)
    ok = res.within_target() or res.within_analytic()
    payload = {
        "command": "spacing-check",
        "alpha": params.alpha,
        "n": params.n,
        "seed": args.seed,
        "s": res.s,
        "mean_count": res.mean_count,
        "std_error": res.std_error,
        "trials": res.trials,
        "target": res.target,
        "analytic_mean": res.analytic_mean,
        "within_target": res.within_target(),
        "within_analytic": res.within_analytic(),
        "passed": ok,
    }
    text = io.dump_json(payload)
    if args.out:
        io.write_json(args.out, payload)
    print(text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_sample(args):
    params = _params(args)
    sample = sample_moduli(params, args.seed)
    if args.angles:
        sample = attach_uniform_angles(sample, args.seed)
    io.write_sample_csv(args.out, sample)
    print(io.dump_json({
        "command": "sample",
        "alpha": params.alpha,
        "n": params.n,
        "seed": args.seed,
        "csv": str(args.out),
        "max_modulus": float(sample.moduli.max()),
        "support_radius": support_radius(params),
    }))
    return EXIT_OK


def cmd_density(args):
    params = EnsembleParams(args.alpha, 1)
    radius = support_radius(params)
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    r = np.linspace(0, radius, args.points)
    rho = density_at(params, r)
    payload = {"command": "density", "alpha": params.alpha, "support_radius": radius}
    if args.out:
        io.write_density_csv(args.out, r, rho)
        payload["csv"] = str(args.out)
    else:
        payload["table"] = [{"r": float(a), "density": float(b)} for a, b in zip(r, rho)]
    print(io.dump_json(payload))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="normalens", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ensemble_flags(sp, n_default=None):
        sp.add_argument("--alpha", type=float, required=True)
        if n_default is None:
            sp.add_argument("--n", type=int, required=True)
        else:
            sp.add_argument("--n", type=int, default=n_default)

    kg = sub.add_parser("kernel-grid", help="tabulate w -> K_n(z, w)/n on a grid")
    ensemble_flags(kg)
    kg.add_argument("--z", type=parse_complex, default=complex(0.3, 0.4))
    kg.add_argument("--bounds", type=parse_bounds, default=None,
                    help="lo:hi for both axes (default: the support square)")
    kg.add_argument("--steps", type=int, default=181)
    kg.add_argument("--out", default="kernel_grid.csv")
    kg.set_defaults(func=cmd_kernel_grid)

    et = sub.add_parser("error-table", help="R_n^alpha for each (alpha, n)")
    et.add_argument("--alphas", type=_list_of(float), required=True)
    et.add_argument("--ns", type=_list_of(int), required=True)
    et.add_argument("--radii", type=int, default=24)
    et.add_argument("--angles", type=int, default=48)
    et.add_argument("--out", default="error_table.csv")
    et.set_defaults(func=cmd_error_table)

    ve = sub.add_parser("verify", help="check the conformal identities")
    ve.add_argument("--identity", choices=["phi", "u", "g", "roundtrip", "all"], default="all")
    ensemble_flags(ve, n_default=50)
    ve.set_defaults(func=cmd_verify)

    sc = sub.add_parser("spacing-check", help="Monte Carlo check of <n f_n(D_g(s))> = pi s^2")
    ensemble_flags(sc)
    sc.add_argument("--s", type=float, required=True)
    sc.add_argument("--trials", type=int, default=200)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--out", default=None)
    sc.set_defaults(func=cmd_spacing_check)

    sa = sub.add_parser("sample", help="draw eigenvalue moduli")
    ensemble_flags(sa)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--angles", action="store_true", help="attach uniform angles for scatter plots")
    sa.add_argument("--out", default="sample.csv")
    sa.set_defaults(func=cmd_sample)

    de = sub.add_parser("density", help="tabulate the equilibrium density")
    de.add_argument("--alpha", type=float, required=True)
    de.add_argument("--points", type=int, default=11)
    de.add_argument("--out", default=None)
    de.set_defaults(func=cmd_density)
    return p


def _join_signed_values(argv):
    out, it = [], iter(argv)
    for arg in it:
        if arg in _SIGNED_VALUE_FLAGS:
            value = next(it, None)
            out.append(arg if value is None else f"{arg}={value}")
        else:
            out.append(arg)
    return out


def _fail(kind, message):
    sys.stderr.write(io.dump_json({"error": kind, "message": message}) + "\n")
    return EXIT_INVALID


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_signed_values(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail("invalid_arguments", str(exc))
    except BulkExitError as exc:
        return _fail("bulk_exit", str(exc))
    except (DomainError, ValueError) as exc:
        return _fail("invalid_input", str(exc))
    except OSError as exc:
        return _fail("io_error", str(exc))


if __name__ == "__main__":
    sys.exit(main())
