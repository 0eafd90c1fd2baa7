"""Command-line front end.

Exit codes: 0 success or pass, 1 mathematical failure, 2 usage or
validation error. Reports go to stdout (or ``--out``) as JSON by default.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import boundary, builder, gamma, kernel, measure, momenteq
from .errors import ConstructionError, HardyRepError
from .io import (
    dense_from_json,
    diagonal_from_json,
    dumps_report,
    load_gamma,
    load_json,
    load_measure,
    parse_complex,
    parse_complex_list,
    read_dense_csv,
    report_csv,
    report_table,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except HardyRepError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _gamma_source(args, prefix: str = "gamma") -> gamma.GammaSet:
    src = getattr(args, prefix, None)
    if src:
        return _parse_gamma(src)
    if getattr(args, "base", None) is not None and getattr(args, "digits", None) is not None:
        if args.max_level is None:
            raise _UsageError("--max-level is required with --base/--digits")
        return gamma.generate_digit_set(args.base, args.digits, args.max_level)
    raise _UsageError(f"--{prefix} (or --base/--digits/--max-level) is required")


def _parse_gamma(src: str) -> gamma.GammaSet:
    """``g4:L``, ``g3:L``, ``g4p:L``, ``elements:0,1,4``, a JSON file or inline JSON."""
    head, _, tail = src.partition(":")
    shorthands = {"g4": gamma.gamma4, "g3": gamma.gamma3, "g4p": gamma.gamma4_prime}
    if head in shorthands and tail:
        return shorthands[head](int(tail))
    if head == "elements":
        return gamma.gamma_from_elements(_int_list(tail))
    return load_gamma(src)


def _parse_matrix(src: str) -> kernel.CoeffMatrix:
    """Coefficient matrix by name: szego, k3, k4, bergman, gamma:F, diag:F, dense:F."""
    if src == "szego":
        return kernel.szego_diagonal()
    if src == "bergman":
        return kernel.bergman_diagonal()
    if src in ("k3", "k4"):
        return kernel.gamma_diagonal(gamma.generate_digit_set(int(src[1]), (0, 1), 0))
    kind, _, path = src.partition(":")
    if not path:
        raise _UsageError(f"unknown matrix/kernel {src!r}")
    if kind == "gamma":
        return kernel.gamma_diagonal(_parse_gamma(path))
    if kind == "diag":
        return diagonal_from_json(load_json(path))
    if kind == "dense":
        if path.endswith(".csv"):
            return read_dense_csv(path)
        return dense_from_json(load_json(path))
    raise _UsageError(f"unknown matrix/kernel {src!r}")


def _points(args, per_sample: int = 1) -> list[complex]:
    n = getattr(args, "random", None)
    if n:
        n *= per_sample
        rng = np.random.default_rng(args.seed)
        r = args.radius * np.sqrt(rng.uniform(size=n))
        t = rng.uniform(size=n)
        return list(r * np.exp(2j * np.pi * t))
    return []


# -- gamma -----------------------------------------------------------------


def cmd_gamma_gen(args):
    g = gamma.generate_digit_set(args.base, args.digits, args.max_level)
    return gamma.gamma_to_dict(g), EXIT_OK


def cmd_gamma_diff(args):
    g = _gamma_source(args)
    d = gamma.difference_set(g, args.bound)
    return {"bound": args.bound, "differences": d.tolist(), "count": int(d.size)}, EXIT_OK


def cmd_gamma_coverage(args):
    g = _gamma_source(args)
    missing = gamma.check_coverage(g, args.bound)
    return {"bound": args.bound, "complete": missing is None, "firstMissing": missing}, EXIT_OK


def cmd_gamma_disjoint(args):
    a = _parse_gamma(args.set)
    g = _gamma_source(args)
    inter = gamma.check_disjoint_difference(a, g, args.bound)
    return {"bound": args.bound, "intersection": inter}, EXIT_OK


# -- measure ---------------------------------------------------------------


def cmd_measure_fourier(args):
    mu = load_measure(args.measure)
    ks = args.k or [0]
    vals, errs = measure.fourier_coefficients(mu, np.asarray(ks))
    rows = [{"k": int(k), "value": complex(v), "error": float(e)} for k, v, e in zip(ks, vals, errs)]
    return {"measure": measure.measure_to_dict(mu), "coefficients": rows}, EXIT_OK


def cmd_measure_validate(args):
    mu = load_measure(args.measure)
    problems = measure.validate(mu)
    report = {
        "measure": measure.measure_to_dict(mu),
        "ok": not problems,
        "violations": problems,
        "boundedMomentMatrix": measure.moment_matrix_bounded(mu),
    }
    return report, EXIT_OK if not problems else EXIT_FAIL


# -- kernel ----------------------------------------------------------------


def _kernel_eval(name: str, w: complex, z: complex, tol: float) -> kernel.KernelValue:
    if name in ("k3", "k4"):
        return kernel.eval_product(int(name[1]), w, z, tol)
    return kernel.eval_series(_parse_matrix(name), w, z, tol)


def cmd_kernel_eval(args):
    kv = _kernel_eval(args.kernel, args.w, args.z, args.tol)
    return {"kernel": args.kernel, "w": args.w, "z": args.z, "value": kv.value, "tailBound": kv.tail_bound}, EXIT_OK


def cmd_kernel_gram(args):
    pts = list(args.points or []) + _points(args)
    if not pts:
        raise _UsageError("give --points or --random")
    G = kernel.gram_at_points(lambda w, z: _kernel_eval(args.kernel, w, z, 1e-14).value, pts)
    res = kernel.psd_check(G, args.tol)
    report = {"kernel": args.kernel, "points": pts, "minEigenvalue": res.min_eigenvalue, "pass": res.passed}
    if args.show_matrix:
        report["gram"] = G
    return report, EXIT_OK if res.passed else EXIT_FAIL


# -- check -----------------------------------------------------------------


def _report_exit(d: dict):
    return d, EXIT_OK if d.get("pass") else EXIT_FAIL


def cmd_check_cmc(args):
    C = _parse_matrix(args.matrix)
    mu = load_measure(args.measure)
    M = momenteq.build_moment_matrix(mu, args.size)
    rep = momenteq.cmc_residual(C, M, args.norm, args.tol)
    return _report_exit(rep.to_dict())


def cmd_check_projection(args):
    C = _parse_matrix(args.matrix)
    rep = momenteq.projection_residual(C, args.norm, args.size, args.tol if args.tol is not None else 1e-10)
    return _report_exit(rep.to_dict())


def cmd_check_vanishing(args):
    mu = load_measure(args.measure)
    g = _gamma_source(args)
    tol = args.tol if args.tol is not None else momenteq.default_tol(mu)
    res = momenteq.fourier_vanishing_check(mu, g, args.bound, tol)
    return _report_exit(
        {"maxAbs": res.max_abs, "worstOffset": res.worst_offset, "pass": res.passed, "bound": args.bound, "tol": tol}
    )


def cmd_check_reproduce(args):
    C = _parse_matrix(args.matrix)
    mu = load_measure(args.measure)
    tol = args.tol if args.tol is not None else momenteq.default_tol(mu)
    if args.w is not None and args.z is not None:
        pairs = [(args.w, args.z)]
    else:
        pts = _points(args, per_sample=2)
        if not pts:
            raise _UsageError("give --w and --z, or --random")
        pairs = list(zip(pts[0::2], pts[1::2]))
    rows = []
    for w, z in pairs:
        if args.route == "quadrature":
            r = boundary.reproduce_residual_quadrature(C, mu, w, z, args.size, args.nodes)
        else:
            r = boundary.reproduce_residual_fourier(C, mu, w, z, args.size)
        rows.append({"w": w, "z": z, "residual": r})
    worst = max(row["residual"] for row in rows)
    report = {
        "route": args.route,
        "N": args.size,
        "residual": worst,
        "tol": tol,
        "pass": worst <= tol,
        "samples": rows,
        "tailNote": momenteq.WINDOW_NOTE,
    }
    return _report_exit(report)


def cmd_check_norms(args):
    mu = load_measure(args.measure)
    freqs = args.freqs if args.freqs else list(_gamma_source(args).elements)
    if args.coeffs:
        a = np.asarray(args.coeffs, dtype=complex)
    else:
        rng = np.random.default_rng(args.seed)
        a = rng.standard_normal(len(freqs)) + 1j * rng.standard_normal(len(freqs))
    if len(a) != len(freqs):
        raise _UsageError("--coeffs must match the number of frequencies")
    tol = args.tol if args.tol is not None else momenteq.default_tol(mu)
    r = boundary.norm_preservation_residual(freqs, a, mu)
    return _report_exit({"residual": r, "tol": tol, "pass": r <= tol, "frequencies": list(freqs)})


def cmd_check_transpose(args):
    C = _parse_matrix(args.matrix)
    mu = load_measure(args.measure)
    tol = args.tol if args.tol is not None else 1e-9
    rep = boundary.transpose_identity_residual(C, mu, args.size, args.norm, tol)
    return _report_exit(rep.to_dict())


# -- build -----------------------------------------------------------------


def cmd_build_measure(args):
    g = _gamma_source(args)
    try:
        mu = builder.build_ac_representing_measure(g, args.freq_bound, args.mass_budget, args.decay)
    except ConstructionError as exc:
        return {"pass": False, "error": str(exc)}, EXIT_FAIL
    return measure.measure_to_dict(mu), EXIT_OK


def cmd_build_certify(args):
    mu = load_measure(args.measure)
    g = _gamma_source(args)
    cert = builder.certify(mu, g, args.window, args.tol)
    return _report_exit(cert.to_dict())


# -- parser ----------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=None, help="pass/fail tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for random sampling (echoed in reports)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    return p


def _gamma_opts(p):
    p.add_argument("--gamma", help="gamma JSON file/inline JSON, or g4:L, g3:L, g4p:L, elements:0,1,...")
    p.add_argument("--base", type=int)
    p.add_argument("--digits", type=_int_list)
    p.add_argument("--max-level", type=int, dest="max_level")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hardyrep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("gamma", help="digit sets and difference sets").add_subparsers(dest="action", required=True)
    p = leaf(g, "gen", cmd_gamma_gen)
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--digits", type=_int_list, required=True)
    p.add_argument("--max-level", type=int, dest="max_level", required=True)
    for name, func in (("diff", cmd_gamma_diff), ("coverage", cmd_gamma_coverage)):
        p = leaf(g, name, func)
        _gamma_opts(p)
        p.add_argument("--bound", type=int, required=True)
    p = leaf(g, "disjoint", cmd_gamma_disjoint)
    p.add_argument("--set", required=True, help="the set A tested against the differences")
    _gamma_opts(p)
    p.add_argument("--bound", type=int, required=True)

    m = groups.add_parser("measure", help="Fourier oracle and validation").add_subparsers(dest="action", required=True)
    p = leaf(m, "fourier", cmd_measure_fourier)
    p.add_argument("--measure", required=True)
    p.add_argument("--k", type=int, action="append")
    p = leaf(m, "validate", cmd_measure_validate)
    p.add_argument("--measure", required=True)

    k = groups.add_parser("kernel", help="kernel evaluation and Gram matrices").add_subparsers(dest="action", required=True)
    p = leaf(k, "eval", cmd_kernel_eval)
    p.add_argument("--kernel", required=True)
    p.add_argument("--w", type=_complex_arg, required=True)
    p.add_argument("--z", type=_complex_arg, required=True)
    p.set_defaults(tol=1e-12)
    p = leaf(k, "gram", cmd_kernel_gram)
    p.add_argument("--kernel", required=True)
    p.add_argument("--points", type=parse_complex_list)
    p.add_argument("--random", type=int, help="number of seeded random points")
    p.add_argument("--radius", type=float, default=0.9)
    p.add_argument("--show-matrix", action="store_true", dest="show_matrix")
    p.set_defaults(tol=1e-10)

    c = groups.add_parser("check", help="C = CMC and related identities").add_subparsers(dest="action", required=True)
    p = leaf(c, "cmc", cmd_check_cmc)
    p.add_argument("--matrix", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--norm", choices=("max", "frobenius"), default="max")
    p = leaf(c, "projection", cmd_check_projection)
    p.add_argument("--matrix", required=True)
    p.add_argument("--size", type=int)
    p.add_argument("--norm", choices=("max", "frobenius"), default="max")
    p = leaf(c, "vanishing", cmd_check_vanishing)
    p.add_argument("--measure", required=True)
    _gamma_opts(p)
    p.add_argument("--bound", type=int, required=True)
    p = leaf(c, "reproduce", cmd_check_reproduce)
    p.add_argument("--matrix", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--w", type=_complex_arg)
    p.add_argument("--z", type=_complex_arg)
    p.add_argument("--random", type=int, help="number of seeded random points (paired up)")
    p.add_argument("--radius", type=float, default=0.8)
    p.add_argument("--route", choices=("fourier", "quadrature"), default="fourier")
    p.add_argument("--nodes", type=int, default=None, help="quadrature nodes Q")
    p = leaf(c, "norms", cmd_check_norms)
    p.add_argument("--measure", required=True)
    p.add_argument("--freqs", type=_int_list)
    _gamma_opts(p)
    p.add_argument("--coeffs", type=parse_complex_list)
    p = leaf(c, "transpose", cmd_check_transpose)
    p.add_argument("--matrix", required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--norm", choices=("max", "frobenius"), default="max")

    b = groups.add_parser("build", help="construct and certify representing measures").add_subparsers(
        dest="action", required=True
    )
    p = leaf(b, "measure", cmd_build_measure)
    _gamma_opts(p)
    p.add_argument("--freq-bound", type=int, dest="freq_bound", default=100)
    p.add_argument("--mass-budget", type=float, dest="mass_budget", default=0.5)
    p.add_argument("--decay", type=float, default=0.5)
    p = leaf(b, "certify", cmd_build_certify)
    p.add_argument("--measure", required=True)
    _gamma_opts(p)
    p.add_argument("--window", type=int, default=64)
    return parser


def _render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return report_csv(report)
    if fmt == "table":
        return report_table(report)
    return dumps_report(report) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = args.func(args)
    except (HardyRepError, _UsageError, OSError, KeyError, ValueError) as exc:
        print(f"hardyrep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = dict(report)
    report["seed"] = args.seed
    text = _render(report, args.format)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
