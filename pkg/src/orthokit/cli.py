"""Command-line front end: evaluate kernels, verify identities, enumerate
spectra, run Monte Carlo, and emit figure data.

Exit codes: 0 success, 2 domain error, 3 tolerance not met, 4 divergence.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import __version__, geom, kernels, identities, mcflow, quadrature
from .kernels import CroftonConvention, DivergenceError
from .quadrature import ToleranceError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_TOLERANCE = 3
EXIT_DIVERGENCE = 4


def _manifest(command: str, parameters: dict, seed=None) -> dict:
    return {
        "command": command,
        "parameters": {k: v for k, v in sorted(parameters.items())},
        "tool_version": __version__,
        "seed": seed,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _write_json(path: str, manifest: dict, payload: dict):
    with open(path, "w") as fh:
        json.dump({"manifest": manifest, "data": payload}, fh, indent=2)
        fh.write("\n")


def _write_csv(path: str, manifest: dict, body: str):
    with open(path, "w", newline="\n") as fh:
        fh.write("# manifest: " + json.dumps(manifest) + "\n")
        fh.write(body)


def _load_surface(path: str) -> geom.SurfaceModel:
    with open(path) as fh:
        return geom.SurfaceModel.from_json(fh.read())


def _configure_threads(args):
    threads = args.threads
    if threads is None:
        env = os.environ.get("ORTHOKIT_THREADS", "").strip()
        threads = int(env) if env else None
    if threads is not None:
        try:
            import numba
            limit = numba.config.NUMBA_NUM_THREADS
            numba.set_num_threads(min(max(1, threads), limit))
        except ImportError:
            pass


# ---------------------------------------------------------------------------
# eval

_EVAL_FUNCTIONS = {}


def _register(name):
    def deco(fn):
        _EVAL_FUNCTIONS[name] = fn
        return fn
    return deco


@_register("li2")
def _eval_li2(args):
    from .specfun import li2
    return {"value": li2(float(args[0]))}


@_register("li3")
def _eval_li3(args):
    from .specfun import li3
    return {"value": li3(float(args[0]))}


@_register("polylog")
def _eval_polylog(args):
    from .specfun import polylog
    return {"value": polylog(int(args[0]), float(args[1]))}


@_register("rogers")
def _eval_rogers(args):
    from .specfun import rogers_dilog
    return {"value": rogers_dilog(float(args[0]))}


@_register("zeta")
def _eval_zeta(args):
    from .specfun import riemann_zeta
    return {"value": riemann_zeta(int(args[0]))}


@_register("hurwitz")
def _eval_hurwitz(args):
    from .specfun import hurwitz_zeta
    return {"value": hurwitz_zeta(float(args[0]), float(args[1]))}


@_register("F_closed")
def _eval_f_closed(args):
    return {"value": kernels.F_closed(float(args[0]))}


@_register("F_k_numeric")
def _eval_fk(args):
    value, err = quadrature.F_k_numeric(float(args[0]), int(args[1]),
                                        full_output=True)
    return {"value": value, "error_estimate": err}


@_register("F_nk_numeric")
def _eval_fnk(args):
    value, err = quadrature.F_nk_numeric(int(args[0]), int(args[1]),
                                         float(args[2]), full_output=True)
    return {"value": value, "error_estimate": err}


@_register("basmajian_term")
def _eval_basmajian_term(args):
    return {"value": kernels.basmajian_term(int(args[0]), float(args[1]))}


@_register("ball_volume")
def _eval_ball_volume(args):
    return {"value": kernels.ball_volume(int(args[0]), float(args[1]))}


@_register("crofton_constant")
def _eval_crofton(args, convention=CroftonConvention.INTEGRAL_CONSISTENT):
    return {"value": kernels.crofton_constant(int(args[0]), convention)}


@_register("ideal_triangle_mgf")
def _eval_mgf(args):
    return {"value": kernels.ideal_triangle_mgf(float(args[0]))}


def cmd_eval(args) -> int:
    fn = _EVAL_FUNCTIONS.get(args.function)
    if fn is None:
        print(f"unknown function: {args.function}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.function == "crofton_constant":
        convention = (CroftonConvention.PAPER_STATED if args.convention == "paper"
                      else CroftonConvention.INTEGRAL_CONSISTENT)
        out = fn(args.args, convention)
    else:
        out = fn(args.args)
    print(json.dumps(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / spectrum / mc / figures


def cmd_verify(args) -> int:
    surface = _load_surface(args.surface)
    name = args.identity
    if name == "basmajian":
        report = identities.verify_basmajian(surface, args.l_max)
    elif name == "rogers":
        report = identities.verify_rogers(surface, args.l_max)
    elif name == "moment1":
        report = identities.verify_moment1(surface, args.l_max)
    elif name == "hitting_time":
        a_trunc = identities.average_hitting_time_report(surface, args.l_max)
        spectrum = identities._surface_spectrum(surface, args.l_max)
        a_direct = kernels.avg_hitting_time(spectrum, surface.cusp_count,
                                            abs(surface.chi_eff))
        report = identities.IdentityReport(
            "hitting_time", args.l_max, a_trunc, a_direct,
            spectrum.total_terms(),
            ((args.l_max, a_trunc),))
    else:
        print(f"unknown identity: {name}", file=sys.stderr)
        return EXIT_DOMAIN
    manifest = _manifest("verify", {"surface": args.surface, "identity": name,
                                    "l_max": args.l_max})
    base = args.output or f"{name}_report"
    _write_json(base + ".json", manifest, json.loads(report.to_json()))
    _write_csv(base + ".csv", manifest, report.trace_csv())
    print(json.dumps({"partial_sum": report.partial_sum,
                      "predicted": report.predicted,
                      "rel_error": report.rel_error}))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    surface = _load_surface(args.surface)
    spectrum = geom.enumerate_orthospectrum(surface, args.l_max)
    if args.output:
        manifest = _manifest("spectrum", {"surface": args.surface,
                                          "l_max": args.l_max})
        _write_json(args.output, manifest,
                    {"l_max": args.l_max,
                     "lengths": json.loads(spectrum.to_json())})
    print(spectrum.to_json())
    return EXIT_OK


def cmd_mc(args) -> int:
    surface = _load_surface(args.surface)
    config = mcflow.FlowConfig(surface, args.samples, seed=args.seed,
                               max_length=args.max_length)
    moments = mcflow.estimate_moments(config)
    manifest = _manifest("mc", {"surface": args.surface,
                                "samples": args.samples,
                                "max_length": args.max_length},
                         seed=args.seed)
    base = args.output or "mc_moments"
    _write_json(base + ".json", manifest, json.loads(moments.to_json()))
    _write_csv(base + "_histogram.csv", manifest, mcflow.histogram_csv(config))
    print(moments.to_json())
    return EXIT_OK


def cmd_figures(args) -> int:
    import numpy as np
    manifest = _manifest("figures", {"which": args.which})
    if args.which == "F_curve":
        lines = ["a,F_closed"]
        for a in np.linspace(0.002, 0.998, 400):
            a = float(a)
            lines.append(f"{a!r},{kernels.F_closed(a)!r}")
    else:
        lines = ["a,F_closed,F2_numeric,difference,abs_difference"]
        for a in np.arange(0.05, 0.951, 0.05):
            a = float(a)
            closed = kernels.F_closed(a)
            numeric = quadrature.F_k_numeric(a, 2)
            d = closed - numeric
            lines.append(f"{a!r},{closed!r},{numeric!r},{d!r},{abs(d)!r}")
    body = "\n".join(lines) + "\n"
    out = args.output or f"{args.which}.csv"
    _write_csv(out, manifest, body)
    print(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthokit",
        description="Orthospectrum identities for hitting-length moments "
                    "on hyperbolic surfaces with geodesic boundary.")
    parser.add_argument("--threads", type=int, default=None,
                        help="cap worker threads (or ORTHOKIT_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a single function")
    p.add_argument("function")
    p.add_argument("args", nargs="*")
    p.add_argument("--convention", choices=("paper", "integral"),
                   default="integral")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="verify an identity on a surface")
    p.add_argument("surface")
    p.add_argument("identity",
                   choices=("basmajian", "rogers", "moment1", "hitting_time"))
    p.add_argument("l_max", type=float)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="enumerate the orthospectrum")
    p.add_argument("surface")
    p.add_argument("l_max", type=float)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("mc", help="Monte Carlo moment estimation")
    p.add_argument("surface")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-length", type=float, default=200.0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("figures", help="emit figure data as CSV")
    p.add_argument("which", choices=("F_curve", "closed_vs_numeric"))
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_threads(args)
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except ToleranceError as exc:
        print(f"tolerance not met: {exc} (value={exc.value!r}, "
              f"error={exc.error!r})", file=sys.stderr)
        return EXIT_TOLERANCE
    except (ValueError, geom.GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
