"""Command-line interface: one subcommand per check family.

Reports are deterministic: the same configuration produces byte-identical
output, every float is printed with 17 significant digits (round-trippable
binary64), and checks are sorted by (name, inputs).  Exit codes: 0 when every
executed check passes, 1 when any fails, 2 for usage errors.  There are no
environment variables and no randomness anywhere; all configuration is flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import exact_series, kdv_phase, quadrature, weierstrass
from .elliptic import elliptic_e, elliptic_k
from .errors import ConsistencyError, ConvergenceError, DomainError
from .identities import (
    CheckResult,
    GridSpec,
    VerificationReport,
    eval_f,
    f_closed,
    f_via_j,
    i_closed,
    i_via_f,
    j_via_f,
    entry_4242_1_closed,
    make_check,
    run_verification,
)
from .weierstrass import j_closed, j_via_sigma


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_json_scalar(x) for x in v) + "]"
    raise TypeError(f"unsupported JSON value {v!r}")


def _check_json(c: CheckResult) -> str:
    inputs = ",".join(f"{json.dumps(k)}:{_fmt(v)}" for k, v in c.inputs)
    return (
        "{"
        f"\"check\":{json.dumps(c.name)},"
        f"\"inputs\":{{{inputs}}},"
        f"\"lhs\":{_fmt(c.lhs)},"
        f"\"rhs\":{_fmt(c.rhs)},"
        f"\"abs_err\":{_fmt(c.abs_err)},"
        f"\"rel_err\":{_fmt(c.rel_err)},"
        f"\"tol\":{_fmt(c.tol)},"
        f"\"pass\":{'true' if c.passed else 'false'},"
        f"\"note\":{json.dumps(c.note)}"
        "}"
    )


def report_to_json(command: str, report: VerificationReport) -> str:
    config = ",".join(
        f"{json.dumps(k)}:{_json_scalar(v)}" for k, v in report.config
    )
    checks = ",\n    ".join(_check_json(c) for c in report.checks)
    return (
        "{\n"
        f"  \"command\":{json.dumps(command)},\n"
        f"  \"config\":{{{config}}},\n"
        f"  \"n_pass\":{report.n_pass},\n"
        f"  \"n_fail\":{report.n_fail},\n"
        f"  \"checks\":[\n    {checks}\n  ]\n"
        "}\n"
    )


def report_to_csv(command: str, report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["check", "inputs", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "note"]
    )
    for c in report.checks:
        inputs = ";".join(f"{k}={_fmt(v)}" for k, v in c.inputs)
        writer.writerow(
            [c.name, inputs, _fmt(c.lhs), _fmt(c.rhs), _fmt(c.abs_err),
             _fmt(c.rel_err), _fmt(c.tol), "true" if c.passed else "false", c.note]
        )
    return buf.getvalue()


def report_to_text(command: str, report: VerificationReport) -> str:
    lines = [f"# {command}: {report.n_pass} pass, {report.n_fail} fail"]
    for c in report.checks:
        inputs = ", ".join(f"{k}={v:.6g}" for k, v in c.inputs)
        status = "PASS" if c.passed else "FAIL"
        line = (
            f"[{status}] {c.name} ({inputs}) lhs={_fmt(c.lhs)} rhs={_fmt(c.rhs)} "
            f"rel_err={c.rel_err:.3e} tol={c.tol:.1e}"
        )
        if c.note:
            line += f"  # {c.note}"
        lines.append(line)
    return "\n".join(lines) + "\n"


_SERIALIZERS = {"json": report_to_json, "csv": report_to_csv, "text": report_to_text}


def _emit(args, command: str, checks, config) -> int:
    report = VerificationReport.from_checks(checks, config)
    payload = _SERIALIZERS[args.format](command, report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        print(
            f"{command}: {report.n_pass} pass, {report.n_fail} fail; "
            f"report written to {args.out}"
        )
    else:
        sys.stdout.write(payload)
    figures_dir = getattr(args, "figures", None)
    if figures_dir:
        from .plots import render_report_figures

        for path in render_report_figures(report, figures_dir):
            print(f"figure written to {path}")
    return 0 if report.n_fail == 0 else 1


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ----------------------------------------------------------------------------
# subcommand bodies
# ----------------------------------------------------------------------------

def _cmd_verify_entry(args) -> int:
    if not 0.0 < args.b < args.a:
        return _usage_error("requires 0 < b < a")
    a, b = args.a, args.b
    inputs = (("a", a), ("b", b))
    quad = quadrature.integral_i_numeric(a, b, args.quad_tol)
    checks = [make_check("entry_4242_4/closed_vs_quadrature", inputs,
                         i_closed(a, b), quad.value, args.tol)]
    if a > math.sqrt(2.0) * b * 1.0001:
        checks.append(make_check("entry_4242_4/series_vs_closed", inputs,
                                 i_via_f(a, b), i_closed(a, b), args.tol))
    config = (("a", a), ("b", b), ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "verify-entry", checks, config)


def _cmd_verify_4242_1(args) -> int:
    if not 0.0 < args.b < args.a:
        return _usage_error("requires 0 < b < a")
    a, b = args.a, args.b
    quad = quadrature.integral_4242_1_numeric(a, b, args.quad_tol)
    checks = [make_check("entry_4242_1/closed_vs_quadrature",
                         (("a", a), ("b", b)),
                         entry_4242_1_closed(a, b), quad.value, args.tol)]
    config = (("a", a), ("b", b), ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "verify-4242-1", checks, config)


def _cmd_eval_k(args) -> int:
    k = args.k
    if not 0.0 <= k < 1.0:
        return _usage_error("requires modulus 0 <= k < 1")
    inputs = (("k", k),)

    def k_integrand(x, d_lo, d_hi):
        return 1.0 / math.sqrt(d_hi * (1.0 + x) * (1.0 - k * x) * (1.0 + k * x))

    def e_integrand(x, d_lo, d_hi):
        return math.sqrt((1.0 - k * x) * (1.0 + k * x) / (d_hi * (1.0 + x)))

    checks = [
        make_check("elliptic/K_agm_vs_quadrature", inputs, elliptic_k(k),
                   quadrature.tanh_sinh(k_integrand, 0.0, 1.0, args.quad_tol).value,
                   args.tol),
        make_check("elliptic/E_agm_vs_quadrature", inputs, elliptic_e(k),
                   quadrature.tanh_sinh(e_integrand, 0.0, 1.0, args.quad_tol).value,
                   args.tol),
    ]
    config = (("k", k), ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "eval-k", checks, config)


def _cmd_eval_f(args) -> int:
    x = args.x
    if x <= 0.0:
        return _usage_error("requires x > 0")
    inputs = (("x", x),)
    checks = []
    closed = f_closed(x)
    jroute = f_via_j(x, args.quad_tol)
    if x < float(exact_series.F_SERIES_RADIUS) - exact_series.EVAL_F_MARGIN:
        series = eval_f(x)
        checks.append(make_check("f_routes/series_vs_closed", inputs, series,
                                 closed, args.tol))
        checks.append(make_check("f_routes/series_vs_jroute", inputs, series,
                                 jroute, args.tol))
    checks.append(make_check("f_routes/closed_vs_jroute", inputs, closed,
                             jroute, args.tol))
    config = (("x", x), ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "eval-f", checks, config)


def _cmd_j_compare(args) -> int:
    c = args.c
    if not 0.0 < c < 1.0:
        return _usage_error("requires 0 < c < 1")
    inputs = (("c", c),)
    values = {
        "closed": j_closed(c),
        "quadrature": quadrature.integral_j_numeric(c, args.quad_tol).value,
        "sigma": j_via_sigma(c),
    }
    if c < 1.0 / math.sqrt(2.0) * 0.9995:
        values["series"] = j_via_f(c)
    names = sorted(values)
    checks = [
        make_check(f"j_routes/{first}_vs_{second}", inputs,
                   values[first], values[second], args.tol)
        for i, first in enumerate(names)
        for second in names[i + 1:]
    ]
    config = (("c", c), ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "j-compare", checks, config)


def _cmd_weierstrass(args) -> int:
    c = args.c
    if not 0.0 < c < 1.0:
        return _usage_error("requires 0 < c < 1")
    lat = weierstrass.lattice_from_c(c)
    inputs = (("c", c),)
    worst_quasi = 0.0
    for j in (1, 2):
        for alpha in (0.1, 0.23, 0.35, 0.42, 0.5):
            z = alpha * lat.omega1 + 0.31 * lat.omega2
            worst_quasi = max(
                worst_quasi, weierstrass.quasi_periodicity_residual(lat, z, j)
            )
    checks = [
        make_check("weierstrass/legendre", inputs,
                   weierstrass.legendre_residual(lat), 0.0, 1e-12),
        make_check("weierstrass/sigma_product_identity", inputs,
                   weierstrass.sigma_product_identity_residual(lat), 0.0, 1e-8),
        make_check("weierstrass/sigma_modulus_identity", inputs,
                   weierstrass.sigma_modulus_identity_residual(lat), 0.0, 1e-8),
        make_check("weierstrass/quasi_periodicity", inputs, worst_quasi, 0.0, 1e-8),
        make_check("j_routes/sigma_vs_closed", inputs, j_via_sigma(lat),
                   j_closed(c), args.tol),
    ]
    config = (("c", c), ("tol", args.tol))
    return _emit(args, "weierstrass", checks, config)


def _cmd_ode_check(args) -> int:
    if args.terms < 5:
        return _usage_error("requires --terms >= 5")
    residuals = exact_series.f_ode_residual_coeffs(args.terms)
    nonzero = sum(1 for r in residuals if r != 0)
    note = (
        f"{args.terms} residual coefficients exactly zero"
        if nonzero == 0
        else f"{nonzero} of {args.terms} residual coefficients are nonzero"
    )
    checks = [make_check("exact/fourth_order_ode", (("terms", args.terms),),
                         float(nonzero), 0.0, 0.0, note=note)]
    return _emit(args, "ode-check", checks, (("terms", args.terms),))


def _cmd_telescope_check(args) -> int:
    if args.max_n < 0:
        return _usage_error("requires --max-n >= 0")
    fails = [n for n in range(args.max_n + 1)
             if not exact_series.telescope_check(n)]
    note = (
        f"certificate exact for n=0..{args.max_n}"
        if not fails
        else f"certificate fails at n={fails[:5]}"
    )
    checks = [make_check("exact/telescoping_certificate",
                         (("n_max", args.max_n),),
                         float(len(fails)), 0.0, 0.0, note=note)]
    return _emit(args, "telescope-check", checks, (("n_max", args.max_n),))


def _cmd_stefan_check(args) -> int:
    if args.max_j < 1:
        return _usage_error("requires --max-j >= 1")
    fails = [j for j in range(1, args.max_j + 1)
             if not exact_series.harmonic_binomial_identity_check(j)]
    note = (
        f"identity exact for j=1..{args.max_j}"
        if not fails
        else f"identity fails at j={fails[:5]}"
    )
    checks = [make_check("exact/harmonic_binomial_identity",
                         (("j_max", args.max_j),),
                         float(len(fails)), 0.0, 0.0, note=note)]
    return _emit(args, "stefan-check", checks, (("j_max", args.max_j),))


def _cmd_theta0(args) -> int:
    if not 0.0 < args.a < 1.0:
        return _usage_error("requires 0 < a < 1 (then b = sqrt(2-a^2) > a)")
    if args.gamma <= 0.0:
        return _usage_error("requires gamma > 0")
    params = kdv_phase.ShockParams.from_a(args.a, args.gamma, args.kalpha)
    closed = kdv_phase.theta0_third_term_closed(params)
    quad = kdv_phase.theta0_third_term_quadrature(params, args.quad_tol)
    value = kdv_phase.theta0(params)
    checks = [
        make_check("kdv/theta0_third_term", (("a", args.a), ("gamma", args.gamma)),
                   closed, quad.value, args.tol,
                   note=f"theta0={_fmt(value)} (b={_fmt(params.b)})"),
    ]
    config = (("a", args.a), ("gamma", args.gamma), ("kalpha", args.kalpha),
              ("tol", args.tol), ("quad_tol", args.quad_tol))
    return _emit(args, "theta0", checks, config)


def _grid_spec_from_args(args) -> GridSpec:
    kwargs = {}
    if args.a_values:
        kwargs["a_values"] = tuple(float(v) for v in args.a_values.split(","))
    if args.b_values:
        kwargs["b_values"] = tuple(float(v) for v in args.b_values.split(","))
    if args.n_c:
        if args.n_c < 0:
            raise DomainError("--n-c must be >= 0")
        kwargs["n_c"] = args.n_c
    if args.c_min is not None or args.c_max is not None:
        lo = args.c_min if args.c_min is not None else 0.05
        hi = args.c_max if args.c_max is not None else 0.7
        if not 0.0 < lo <= hi < 1.0:
            raise DomainError("requires 0 < c-min <= c-max < 1")
        kwargs["c_range_full"] = (lo, hi)
    if args.tol:
        kwargs["tol_numeric"] = args.tol
    if args.quad_tol:
        kwargs["quad_tol"] = args.quad_tol
    return GridSpec(**kwargs)


def _cmd_verify_grid(args) -> int:
    from .identities import (_entry_checks, _f_route_checks, _j_route_checks,
                             _limit_checks, _log_moment_checks, _theta0_checks,
                             _weierstrass_checks)

    spec = _grid_spec_from_args(args)
    checks = []
    _entry_checks(spec, checks)
    _j_route_checks(spec, checks)
    _f_route_checks(spec, checks)
    _weierstrass_checks(spec, checks)
    _log_moment_checks(spec, checks)
    _theta0_checks(spec, checks)
    _limit_checks(spec, checks)
    return _emit(args, "verify-grid", checks, spec.as_config())


def _cmd_report_all(args) -> int:
    spec = _grid_spec_from_args(args)
    report = run_verification(spec)
    return _emit(args, "report-all", list(report.checks), report.config)


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellog",
        description=(
            "Verify the Gradshteyn-Ryzhik 4.242 integral family: closed forms "
            "against tanh-sinh quadrature, series and lattice routes, exact "
            "telescoping and ODE certificates."
        ),
    )
    # parent parsers are built fresh per subcommand: argparse shares action
    # objects between parsers listed as parents, so a per-subcommand
    # set_defaults would otherwise leak into sibling subcommands
    def common() -> argparse.ArgumentParser:
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=("json", "csv", "text"),
                       default="text", help="report format (default text)")
        c.add_argument("--out", metavar="PATH", default=None,
                       help="write the report to PATH instead of stdout")
        c.add_argument("--tol", type=float, default=1e-9,
                       help="comparison tolerance (default 1e-9)")
        c.add_argument("--quad-tol", type=float, default=1e-12,
                       help="quadrature tolerance (default 1e-12)")
        return c

    def grid_common() -> argparse.ArgumentParser:
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--a-values", default=None,
                       help="comma-separated a grid (default 1.5..3.5)")
        g.add_argument("--b-values", default=None,
                       help="comma-separated b grid (default 0.2..1.0)")
        g.add_argument("--n-c", type=int, default=None,
                       help="number of c grid points (default 25)")
        g.add_argument("--c-min", type=float, default=None)
        g.add_argument("--c-max", type=float, default=None)
        g.add_argument("--figures", metavar="DIR", default=None,
                       help="render report figures as PNGs into DIR")
        return g

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-entry", parents=[common()],
                       help="entry 4.242.4 closed form vs quadrature at one (a,b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(fn=_cmd_verify_entry)

    p = sub.add_parser("verify-4242-1", parents=[common()],
                       help="entry 4.242.1 closed form vs quadrature at one (a,b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(fn=_cmd_verify_4242_1, tol=1e-10)

    p = sub.add_parser("eval-k", parents=[common()],
                       help="AGM values of K and E against their defining integrals")
    p.add_argument("--k", type=float, required=True)
    p.set_defaults(fn=_cmd_eval_k)

    p = sub.add_parser("eval-f", parents=[common()],
                       help="series, closed-form and quadrature routes to F(x)")
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(fn=_cmd_eval_f)

    p = sub.add_parser("j-compare", parents=[common()],
                       help="pairwise comparison of all routes to J(c)")
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(fn=_cmd_j_compare)

    p = sub.add_parser("weierstrass", parents=[common()],
                       help="lattice residuals (Legendre, sigma identities) at one c")
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(fn=_cmd_weierstrass)

    p = sub.add_parser("ode-check", parents=[common()],
                       help="exact fourth-order ODE residual of the F series")
    p.add_argument("--terms", type=int, default=200)
    p.set_defaults(fn=_cmd_ode_check)

    p = sub.add_parser("telescope-check", parents=[common()],
                       help="exact telescoping-certificate check")
    p.add_argument("--max-n", type=int, default=100)
    p.set_defaults(fn=_cmd_telescope_check)

    p = sub.add_parser("stefan-check", parents=[common()],
                       help="exact harmonic/central-binomial convolution identity")
    p.add_argument("--max-j", type=int, default=60)
    p.set_defaults(fn=_cmd_stefan_check)

    p = sub.add_parser("theta0", parents=[common()],
                       help="shock-phase third term, closed form vs quadrature")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--kalpha", type=float, default=0.0,
                   help="externally supplied K(alpha) summand (default 0)")
    p.set_defaults(fn=_cmd_theta0)

    p = sub.add_parser("verify-grid", parents=[common(), grid_common()],
                       help="numeric route-equality families on deterministic grids")
    p.set_defaults(fn=_cmd_verify_grid)

    p = sub.add_parser("report-all", parents=[common(), grid_common()],
                       help="the complete verification battery")
    p.set_defaults(fn=_cmd_report_all)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        # bad parameters that slipped past the explicit guards: usage error
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, ConsistencyError) as exc:
        # the computation itself failed: report as a failed verification
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
