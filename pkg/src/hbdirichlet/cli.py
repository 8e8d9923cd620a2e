"""Command-line front end: ``hbdirichlet <subcommand> [flags]``.

Reports go to standard output as JSON with sorted keys.  Exit codes:
0 success, 1 structured error, 2 a certificate that fails, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import certify as cert
from .dirichlet import (
    NORM_CONVENTION,
    QuadratureSpec,
    cauchy_norm_dmu,
    cauchy_norm_hb,
    dirichlet_mu,
    dirichlet_mu_area,
    dmu_norm_sq,
    hardy_norm_sq,
    rk_hb_norm_sq,
)
from .errors import HbDirichletError, ValidationError
from .fejer import TrigPolynomial, factor, factorization_residual
from .functions import AnalyticFunction, OuterFromSamples, cauchy_kernel, from_descriptor
from .grids import UnitCircleGrid, is_power_of_two
from .measures import AtomicMeasure, poisson, potential, sandwich_bounds, sandwich_check
from .outer import DEFAULT_G, LogModulusProfile, outer_from_log_modulus
from .pairs import (
    PythagoreanPair,
    costara_ransford_pair,
    exponential_pair,
    mate_pair,
    polynomial_type_pair,
    sarason_pair,
)

EXIT_OK, EXIT_ERROR, EXIT_FAILS, EXIT_USAGE = 0, 1, 2, 64
GRID_ENV = "HBDIRICHLET_GRID_SIZE"
THEOREM_FLAGS = {"A": "A_embedding", "B": "B_reverse", "C": "C_equality", "D": "D_polytype",
                 "continuous": "continuous_criterion", "clark": "clark", "corona": "corona"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as "-1,0" or "-.5" through as arguments rather than flags
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ----------------------------------------------------------------------
# flag parsing


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"complex scalar must be 're,im', got {text!r}")


def parse_complex_list(text: str) -> list[complex]:
    text = text.strip()
    if text.startswith("roots_of_unity:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad roots_of_unity count in {text!r}") from None
        if n < 1:
            raise UsageError("roots_of_unity needs N >= 1")
        return list(np.exp(2j * np.pi * np.arange(n) / n))
    return [parse_complex(p) for p in text.split(";") if p.strip()]


def parse_measure(text: str, masses: str | None = None) -> AtomicMeasure:
    text = text.strip()
    if text.startswith("{"):
        try:
            return AtomicMeasure.from_descriptor(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"measure JSON is malformed: {exc}") from None
    if text.startswith("atoms:"):
        text = text[len("atoms:"):]
    atoms = parse_complex_list(text)
    if not atoms:
        raise UsageError("measure needs at least one atom")
    if masses:
        try:
            m = [float(x) for x in masses.split(",")]
        except ValueError:
            raise UsageError(f"masses must be comma-separated reals, got {masses!r}") from None
    else:
        m = [1.0] * len(atoms)
    return AtomicMeasure(np.array(atoms), np.array(m))


def parse_function(text: str) -> AnalyticFunction:
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return from_descriptor(json.loads(text))
    except json.JSONDecodeError as exc:
        raise UsageError(f"function descriptor is not valid JSON: {exc}") from None


def default_grid_size() -> tuple[int, bool]:
    raw = os.environ.get(GRID_ENV)
    if raw is None:
        return DEFAULT_G, False
    try:
        g = int(raw)
    except ValueError:
        raise UsageError(f"{GRID_ENV} must be an integer, got {raw!r}") from None
    return g, True


def _grid_size(args) -> int:
    g = args.grid_size
    if not is_power_of_two(g) or g < 16:
        raise UsageError(f"grid size must be a power of two >= 16, got {g}")
    return g


def _grid_echo(args) -> dict:
    env = os.environ.get(GRID_ENV)
    return {"grid_size": args.grid_size, "grid_size_env": {"variable": GRID_ENV, "value": env} if env else None}


# ----------------------------------------------------------------------
# output helpers


def _clean(obj):
    return cert._jsonable(obj)


def emit_json(obj, out) -> None:
    out.write(json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False))
    out.write("\n")


def profile_csv(data: np.ndarray) -> str:
    data = np.asarray(data, dtype=float)
    header = ["theta", "value"] if data.shape[1] == 2 else ["re", "im", "value"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in data:
        w.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def write_profiles(profiles: dict, outdir, stem: str) -> list[str]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in sorted(profiles):
        path = outdir / f"{stem}_{name}.csv"
        path.write_text(profile_csv(profiles[name]))
        paths.append(str(path))
    return paths


def write_figures(profiles: dict, outdir, stem: str) -> list[str]:
    from .plotting import render_profiles

    return [str(p) for p in render_profiles(profiles, outdir, stem)]


def _describe_function(f: AnalyticFunction) -> dict:
    if isinstance(f, OuterFromSamples):
        head = f.coeffs[:16]
        return {
            "type": "outer_samples",
            "G": int(f.log_modulus.size),
            "value_at_zero": f.value_at_zero(),
            "log_taylor_head": [[c.real, c.imag] for c in head],
            "boundary_zeros": [[z.real, z.imag, m] for z, m in f.boundary_zeros],
        }
    try:
        return f.to_descriptor()
    except ValidationError:
        return {"type": f.kind}


# ----------------------------------------------------------------------
# pairs from flags


def build_pair(args) -> PythagoreanPair:
    kind = args.pair
    g = _grid_size(args)
    if kind == "sarason":
        return sarason_pair(parse_complex(args.zeta))
    if kind == "costara-ransford":
        return costara_ransford_pair(np.array(parse_complex_list(_need(args.atoms, "--atoms"))))
    if kind == "poly-type":
        atoms = parse_complex_list(_need(args.atoms, "--atoms"))
        mults = [int(m) for m in _need(args.mults, "--mults").split(",")]
        return polynomial_type_pair(np.array(atoms), mults)
    if kind == "exponential":
        return exponential_pair(_need(args.n, "--n"), g)
    if kind == "custom":
        b = parse_function(_need(args.b, "--b"))
        if args.a:
            return PythagoreanPair(b, parse_function(args.a), name="custom")
        return mate_pair(b, g)
    raise UsageError(f"unknown pair {kind!r}")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _config(args) -> cert.CertifyConfig:
    return cert.CertifyConfig(
        spectrum_tol=args.spectrum_tol,
        disk_radii=args.radii,
        disk_angles=args.angles,
        clark_tol=args.clark_tol,
    )


# ----------------------------------------------------------------------
# subcommands


def cmd_mate(args, out) -> int:
    g = _grid_size(args)
    if args.profile:
        profile = LogModulusProfile.from_csv(args.profile)
        a = outer_from_log_modulus(profile)
        report = {"a": _describe_function(a), "meta": a.meta, "source": "profile"}
        theta = profile.grid.theta
        prof = np.column_stack([theta, np.abs(a.boundary_values(theta))])
    else:
        pair = mate_pair(parse_function(_need(args.b, "--b or --profile")), g)
        report = {"a": _describe_function(pair.a), "pair": pair.describe(), "source": "b"}
        theta = UnitCircleGrid(g).theta
        prof = np.column_stack([theta, np.abs(pair.a.boundary_values(theta))])
    if args.at:
        pts = [parse_complex(p) for p in args.at]
        f = a if args.profile else pair.a
        report["values"] = [{"z": z, "a": complex(f.eval(z))} for z in pts]
    report["grid"] = _grid_echo(args)
    profiles = {"modulus": prof}
    return _finish(report, profiles, args, out, "mate")


def cmd_factor(args, out) -> int:
    if args.json:
        omega = TrigPolynomial.from_descriptor(json.loads(args.json))
    else:
        coeffs = [parse_complex(c) for c in _need(args.coeffs, "--coeffs or --json").split(";") if c.strip()]
        if args.n is not None and len(coeffs) != 2 * args.n + 1:
            raise UsageError(f"expected {2 * args.n + 1} coefficients for n={args.n}, got {len(coeffs)}")
        omega = TrigPolynomial(np.array(coeffs))
    p = factor(omega)
    res = factorization_residual(omega, p)
    roots = p.roots()
    emit_json({"p": p.to_descriptor(), "residual": res, "omega": omega.to_descriptor(),
               "min_root_modulus": float(np.min(np.abs(roots))) if roots.size else None,
               "normalization": "lowest nonzero coefficient positive real"}, out)
    return EXIT_OK


def cmd_potential(args, out) -> int:
    mu = parse_measure(args.mu, args.masses)
    rows = []
    for text in _need(args.z, "--z"):
        z = parse_complex(text)
        row = {"z": z, "potential": float(potential(mu, z))}
        if abs(z) < 1:
            row["poisson"] = float(poisson(mu, z))
        if np.isfinite(row["potential"]):
            lo, hi = sandwich_bounds(mu, z)
            row["sandwich"] = {"lower": float(lo), "upper": float(hi), "holds": bool(sandwich_check(mu, z))}
        rows.append(row)
    emit_json({"measure": mu.to_descriptor(), "values": rows}, out)
    return EXIT_OK


def _quadrature(args) -> QuadratureSpec:
    size = args.boundary_size or 8192
    return QuadratureSpec(boundary_size=size, area_radii=args.radii, area_angles=args.angles,
                          exclusion_radius=args.exclusion)


def cmd_dnorm(args, out) -> int:
    f = parse_function(_need(args.f, "--f"))
    mu = parse_measure(args.mu, args.masses)
    q = _quadrature(args)
    if args.form == "area":
        d = dirichlet_mu_area(f, mu, q)
    else:
        d = dirichlet_mu(f, mu, q)
    h = hardy_norm_sq(f, q.boundary_size)
    value = h + d if np.isfinite(d) else float("inf")
    if args.seminorm:
        value = d
    emit_json({"value": value, "form": args.form, "dirichlet": d, "hardy": h,
               "quantity": "D_mu" if args.seminorm else "norm_squared",
               "norm_convention": NORM_CONVENTION, "grid": q.describe()}, out)
    return EXIT_OK


def cmd_kernel_norms(args, out) -> int:
    mu = parse_measure(args.mu, args.masses)
    w = parse_complex(_need(args.w, "--w"))
    report = {
        "w": w,
        "norm_convention": NORM_CONVENTION,
        "dmu": {"value": cauchy_norm_dmu(mu, w), "form": "closed_form", "grid": {}},
    }
    if args.quadrature:
        q = _quadrature(args)
        report["dmu_quadrature"] = {"value": dmu_norm_sq(cauchy_kernel(w), mu, q), "form": "boundary", "grid": q.describe()}
    if args.pair:
        pair = build_pair(args)
        report["hb"] = {"value": cauchy_norm_hb(pair, w), "form": "closed_form", "grid": {}}
        report["rk_hb"] = {"value": rk_hb_norm_sq(pair, w), "form": "closed_form", "grid": {}}
        report["pair"] = pair.name
    emit_json(report, out)
    return EXIT_OK


def _certify_report(args) -> cert.CertificationReport:
    theorem = THEOREM_FLAGS[args.theorem]
    cfg = _config(args)
    pair = build_pair(args)
    if theorem == "clark":
        lam = parse_complex(_need(args.lam, "--lam"))
        atoms = np.array(parse_complex_list(args.check_atoms)) if args.check_atoms else None
        mults = [int(m) for m in args.check_mults.split(",")] if args.check_mults else None
        return cert.clark_ac_check(pair, lam, atoms, mults, G=args.grid_size, cfg=cfg)
    if theorem == "corona":
        return cert.corona_report(pair.b, pair.a, cfg=cfg)
    if theorem == "D_polytype":
        atoms = parse_complex_list(_need(args.check_atoms or args.atoms, "--check-atoms"))
        mults = [int(m) for m in _need(args.check_mults or args.mults, "--check-mults").split(",")]
        return cert.check_polynomial_type(pair, np.array(atoms), mults, cfg)
    mu = parse_measure(_need(args.mu, "--mu"), args.masses)
    if theorem == "continuous_criterion":
        return cert.continuous_b_criterion(pair.b, mu.atoms, cfg.ratio_size, cfg)
    fn = {"A_embedding": cert.check_embedding_hb_to_dmu, "B_reverse": cert.check_embedding_dmu_to_hb,
          "C_equality": cert.check_equality}[theorem]
    return fn(pair, mu, cfg)


def cmd_certify(args, out) -> int:
    report = _certify_report(args)
    payload = report.to_dict()
    payload["grid_meta"]["cli"] = _grid_echo(args)
    extra = {}
    if args.csv:
        extra["csv_files"] = write_profiles(report.profiles, args.csv, report.theorem)
    if args.figures:
        extra["figure_files"] = write_figures(report.profiles, args.figures, report.theorem)
    if extra:
        payload["extras"].update(extra)
    if args.format == "csv":
        name = _first_profile(report.profiles)
        out.write(profile_csv(report.profiles[name]))
    else:
        emit_json(payload, out)
    return EXIT_FAILS if report.verdict == cert.FAILS else EXIT_OK


def _first_profile(profiles: dict) -> str:
    if not profiles:
        raise UsageError("this report has no evidence profile to print as CSV")
    return sorted(profiles)[0]


def cmd_clark(args, out) -> int:
    args.theorem = "clark"
    return cmd_certify(args, out)


def cmd_example(args, out) -> int:
    name = args.name
    args.pair = name
    pair = build_pair(args)
    desc = pair.describe()
    for side in ("b", "a"):
        desc[side] = _describe_function(getattr(pair, side))
    desc["values_at_zero"] = {"b": complex(pair.b.eval(0.0)), "a": complex(pair.a.eval(0.0))}
    emit_json(desc, out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .acceptance import CRITERIA, run_criterion

    wanted = sorted(CRITERIA)
    if args.criteria:
        try:
            wanted = [int(x) for x in args.criteria.split(",")]
        except ValueError:
            raise UsageError("--criteria takes comma-separated criterion numbers") from None
        unknown = [k for k in wanted if k not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    results = [run_criterion(k, args.seed) for k in wanted]
    for r in results:
        print(r.line(), file=sys.stderr)
    payload = {"criteria": [r.to_dict() for r in results], "passed": all(r.passed for r in results), "seed": args.seed}
    if not args.timings:
        for c in payload["criteria"]:
            c.pop("seconds")
    emit_json(payload, out)
    return EXIT_OK if payload["passed"] else EXIT_FAILS


def _finish(report: dict, profiles: dict, args, out, stem: str) -> int:
    if args.csv:
        report["csv_files"] = write_profiles(profiles, args.csv, stem)
    if args.figures:
        report["figure_files"] = write_figures(profiles, args.figures, stem)
    if args.format == "csv":
        out.write(profile_csv(profiles[_first_profile(profiles)]))
    else:
        emit_json(report, out)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, grid_default: int) -> None:
    p.add_argument("--grid-size", "-G", type=int, default=grid_default, help=f"boundary grid size (env {GRID_ENV})")
    p.add_argument("--radii", type=int, default=64, help="disk grid radii count")
    p.add_argument("--angles", type=int, default=512, help="disk grid angles per radius")
    p.add_argument("--spectrum-tol", type=float, default=1e-4)
    p.add_argument("--clark-tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=None)


def _pair_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--pair", choices=("sarason", "costara-ransford", "poly-type", "exponential", "custom"),
                   required=required)
    p.add_argument("--zeta", default="1,0", help="Sarason point as re,im")
    p.add_argument("--atoms", help="atoms as 're,im;re,im' or roots_of_unity:N")
    p.add_argument("--mults", help="multiplicities, comma separated")
    p.add_argument("--n", type=int, help="exponent N for the exponential pair")
    p.add_argument("--b", help="function descriptor JSON for b (prefix @ to read a file)")
    p.add_argument("--a", help="function descriptor JSON for the mate a")


def _evidence_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--csv", metavar="DIR", help="write evidence profiles as CSV files into DIR")
    p.add_argument("--figures", metavar="DIR", help="render evidence profiles as PNG files into DIR")


def build_parser() -> argparse.ArgumentParser:
    grid_default, _ = default_grid_size()
    parser = _Parser(prog="hbdirichlet", description="Pythagorean pairs, D_mu norms and H(b) certificates.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("mate", help="outer mate of b, or outer function of a log-modulus CSV profile")
    _common(p, grid_default)
    p.add_argument("--b", help="function descriptor JSON (prefix @ for a file)")
    p.add_argument("--profile", help="CSV with header theta,value on a uniform grid")
    p.add_argument("--at", action="append", help="evaluate the mate at re,im (repeatable)")
    _evidence_flags(p)
    p.set_defaults(func=cmd_mate)

    p = sub.add_parser("factor", help="Fejer-Riesz factorization")
    _common(p, grid_default)
    p.add_argument("--coeffs", help="c_{-n}..c_n as 're,im;re,im;...'")
    p.add_argument("--n", type=int)
    p.add_argument("--json", help='{"n": .., "coeffs": [[re, im], ...]}')
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("potential", help="potential and Poisson integral of an atomic measure")
    _common(p, grid_default)
    p.add_argument("--mu", required=True)
    p.add_argument("--masses")
    p.add_argument("--z", action="append", help="evaluation point re,im (repeatable)")
    p.set_defaults(func=cmd_potential)

    for name, func in (("dnorm", cmd_dnorm), ("kernel-norms", cmd_kernel_norms)):
        p = sub.add_parser(name)
        _common(p, grid_default)
        p.add_argument("--mu", required=True)
        p.add_argument("--masses")
        p.add_argument("--boundary-size", type=int, default=None)
        p.add_argument("--exclusion", type=float, default=0.0)
        if name == "dnorm":
            p.add_argument("--f", required=True, help="function descriptor JSON")
            p.add_argument("--form", choices=("boundary", "area"), default="boundary")
            p.add_argument("--seminorm", action="store_true", help="report D_mu(f) alone")
        else:
            p.add_argument("--w", required=True)
            p.add_argument("--quadrature", action="store_true", help="also evaluate the norm by quadrature")
            _pair_flags(p, required=False)
        p.set_defaults(func=func)

    p = sub.add_parser("certify", help="run a certifier and emit a CertificationReport")
    _common(p, grid_default)
    p.add_argument("--theorem", required=True, choices=tuple(THEOREM_FLAGS))
    _pair_flags(p)
    p.add_argument("--mu")
    p.add_argument("--masses")
    p.add_argument("--lam", help="Clark parameter re,im")
    p.add_argument("--check-atoms", help="atoms for --theorem D (defaults to --atoms)")
    p.add_argument("--check-mults", help="multiplicities for --theorem D (defaults to --mults)")
    _evidence_flags(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("clark", help="Clark measure absolute-continuity check")
    _common(p, grid_default)
    _pair_flags(p)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu")
    p.add_argument("--masses")
    p.add_argument("--check-atoms")
    p.add_argument("--check-mults")
    _evidence_flags(p)
    p.set_defaults(func=cmd_clark)

    p = sub.add_parser("example", help="gallery pairs")
    _common(p, grid_default)
    p.add_argument("name", choices=("sarason", "costara-ransford", "poly-type", "exponential"))
    p.add_argument("--zeta", default="1,0")
    p.add_argument("--atoms")
    p.add_argument("--mults")
    p.add_argument("--n", type=int)
    p.add_argument("--b")
    p.add_argument("--a")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    _common(p, grid_default)
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,3,7")
    p.add_argument("--timings", action="store_true", help="include wall-clock seconds (breaks byte-identity)")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except HbDirichletError as exc:
        emit_json({"error": exc.to_dict()}, out)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        emit_json({"error": {"kind": type(exc).__name__, "message": str(exc)}}, out)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
