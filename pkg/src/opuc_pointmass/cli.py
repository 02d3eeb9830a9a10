"""Command-line entry point: ``opuc-pointmass <command> ...``.

Commands
--------
insert          coefficients of dnu by the closed-form update
simon           the same through Simon's formula
decay           (n, |alpha_n(dnu)|) rows
oracle-compare  per-degree differences between every available route
verify          run the invariant suites

Exit codes: 0 ok, 2 parameter error, 3 parse error, 4 insufficient data,
5 verification failure, 6 oracle degeneracy. Failures print exactly one
line ``opuc-pointmass: error=<kind>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import (
    InsufficientDataError,
    OPUCError,
    OracleDegeneracyError,
    ParameterError,
    ParseError,
    ResolutionError,
)
from .insertion import PointMassSpec, insert_point_mass, insert_point_mass_simon, perturbed_monic_value
from .measures import catalog, load_measure, moments, moments_from_alphas
from .oracle import ORACLE_MAX_DEGREE, alphas_from_moments, moments_of_nu, verblunsky_via_determinant
from .szego import verblunsky_sequence
from .verification import SUITES, run_suites

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_PARSE = 3
EXIT_INSUFFICIENT = 4
EXIT_VERIFY = 5
EXIT_DEGENERATE = 6

OUTPUT_DIR_ENV = "OPUC_POINTMASS_OUTPUT_DIR"
SCHEMA_VERSION = 1
PROG = "opuc-pointmass"


class VerificationFailure(OPUCError):
    pass


def _exit_code(exc: Exception) -> tuple[int, str]:
    if isinstance(exc, ParseError):
        return EXIT_PARSE, "parse"
    if isinstance(exc, (InsufficientDataError, ResolutionError)):
        return EXIT_INSUFFICIENT, "insufficient-data"
    if isinstance(exc, OracleDegeneracyError):
        return EXIT_DEGENERATE, "oracle-degeneracy"
    if isinstance(exc, VerificationFailure):
        return EXIT_VERIFY, "verification"
    return EXIT_PARAMETER, "parameter"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParameterError(message)


# ---------------------------------------------------------------- input


def read_alpha_file(path) -> np.ndarray:
    """Coefficients from a text file (``re,im`` per line) or JSON.

    JSON may be a list of ``[re, im]`` pairs or an object with an
    ``alphas`` field holding such a list (the ``insert`` JSON output).
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    try:
        if stripped.startswith(("[", "{")):
            data = json.loads(text)
            if isinstance(data, dict):
                data = data["alphas"]
            pairs = [(float(re), float(im)) for re, im in data]
        else:
            pairs = []
            for line in text.splitlines():
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                re, im = line.split(",")
                pairs.append((float(re), float(im)))
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(f"{path}: malformed coefficient data ({exc})") from exc
    arr = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    return verblunsky_sequence(arr)


def _parse_complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise ParameterError(f"cannot read coefficient {text!r}") from exc
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(*parts)
    raise ParameterError(f"coefficient must be 're' or 're,im', got {text!r}")


def _load_source(args, count: int):
    """Return (alphas with at least ``count`` entries if possible, moments callable or None)."""
    if args.alphas is not None:
        return read_alpha_file(args.alphas), None
    if args.catalog is not None:
        params = {}
        if args.coefficient is not None:
            params["a"] = _parse_complex(args.coefficient)
        if args.atom:
            params["atoms"] = [(t, w) for t, w in args.atom]
        entry = catalog(args.catalog, **params)
        return entry.alphas(count), entry.moments
    spec = load_measure(args.measure)
    return alphas_from_moments(moments(spec, count), count).alphas, lambda k: moments(spec, k)


def _mass(args) -> PointMassSpec:
    omega = math.radians(args.omega_degrees) if args.omega_degrees is not None else args.omega
    return PointMassSpec(omega, args.gamma)


def _require_count(alphas: np.ndarray, n_max: int) -> None:
    if n_max < 0:
        raise ParameterError(f"--n-max must be non-negative, got {n_max}")
    if alphas.size < n_max + 1:
        raise InsufficientDataError(
            f"degree {n_max} needs {n_max + 1} coefficients of dmu, source provides {alphas.size}"
        )


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def _emit(args, command: str, header: list[str], rows: list[list], extra: dict) -> str:
    if args.format == "json":
        doc = {"schema": f"{PROG}/{command}/{SCHEMA_VERSION}", **extra}
        doc["columns"] = header
        doc["rows"] = [[None if v is None else (int(v) if i == 0 else float(v)) for i, v in enumerate(r)] for r in rows]
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"#schema={PROG}/{command}/{SCHEMA_VERSION}\n")
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join([str(int(r[0]))] + [_fmt(v) for v in r[1:]]) + "\n")
    for key, value in extra.items():
        if key == "alphas":
            continue
        buf.write(f"#{key}={value!r}\n" if isinstance(value, float) else f"#{key}={value}\n")
    return buf.getvalue()


def _write(args, text: str) -> None:
    if args.output is None:
        sys.stdout.write(text)
        return
    path = Path(args.output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _pairs(z: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in z]


# ---------------------------------------------------------------- commands


def _run_insert(args, command: str) -> int:
    alphas, _ = _load_source(args, args.n_max + 1)
    _require_count(alphas, args.n_max)
    mass = _mass(args)
    route = insert_point_mass_simon if command == "simon" else insert_point_mass
    res = route(alphas, mass, args.n_max)
    if command == "decay":
        header = ["n", "abs"]
        rows = [[n, abs(a)] for n, a in enumerate(res.alphas)]
        extra = {"omega": mass.omega, "gamma": mass.gamma, "n_max": args.n_max}
    else:
        header = ["n", "re", "im", "abs", "kernel"]
        rows = [[n, a.real, a.imag, abs(a), k] for n, (a, k) in enumerate(zip(res.alphas, res.kernel))]
        extra = {"omega": mass.omega, "gamma": mass.gamma, "n_max": args.n_max, "alphas": _pairs(res.alphas)}
    _write(args, _emit(args, command, header, rows, extra))
    return EXIT_OK


def _moment_route(moment_fn, mass: PointMassSpec, count: int) -> np.ndarray:
    """alpha_n(dnu) from moments of dnu, for as many degrees as stay well conditioned."""
    out = np.zeros(0, dtype=np.complex128)
    try:
        c = moments_of_nu(moment_fn(count), mass)
        out = alphas_from_moments(c, count).alphas
    except OracleDegeneracyError:
        for k in range(count - 1, 0, -1):
            try:
                out = alphas_from_moments(moments_of_nu(moment_fn(k), mass), k).alphas
                break
            except OracleDegeneracyError:
                continue
    return out


def _run_compare(args) -> int:
    alphas, moment_fn = _load_source(args, args.n_max + 1)
    _require_count(alphas, args.n_max)
    n_max = args.n_max
    mass = _mass(args)
    fast = insert_point_mass(alphas, mass, n_max).alphas
    simon = insert_point_mass_simon(alphas, mass, n_max).alphas
    if moment_fn is None:
        def moment_fn(k, a=alphas):
            return moments_from_alphas(a, k)
    depth = min(n_max + 1, ORACLE_MAX_DEGREE)
    via_moments = _moment_route(moment_fn, mass, depth)

    header = ["n", "re", "im", "d_simon", "d_geronimus", "d_determinant", "d_moments"]
    rows = []
    worst = 0.0
    for n, a in enumerate(fast):
        d_s = abs(a - simon[n])
        d_g = abs(a + np.conj(perturbed_monic_value(alphas, mass, n + 1, 0.0)))
        d_d = abs(a - verblunsky_via_determinant(alphas, mass, n + 1)) if n + 1 <= ORACLE_MAX_DEGREE else None
        d_m = abs(a - via_moments[n]) if n < via_moments.size else None
        diffs = [d for d in (d_s, d_g, d_d, d_m) if d is not None]
        worst = max(worst, *diffs)
        rows.append([n, a.real, a.imag, d_s, d_g, d_d, d_m])
    extra = {
        "omega": mass.omega,
        "gamma": mass.gamma,
        "n_max": n_max,
        "max_difference": float(worst),
        "tolerance": args.tolerance,
    }
    _write(args, _emit(args, "oracle-compare", header, rows, extra))
    if worst > args.tolerance:
        raise VerificationFailure(f"max path difference {worst:.3e} exceeds {args.tolerance:.1e}")
    return EXIT_OK


def _run_verify(args) -> int:
    names = args.suite or list(SUITES)
    for name in names:
        if name not in SUITES:
            raise ParameterError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    results = run_suites(names, seed=args.seed)
    header = ["suite", "passed", "max_error", "tolerance", "cases"]
    if args.format == "json":
        doc = {
            "schema": f"{PROG}/verify/{SCHEMA_VERSION}",
            "seed": args.seed,
            "results": [
                {"suite": n, "name": r.name, "passed": r.passed, "max_error": r.max_error,
                 "tolerance": r.tolerance, "cases": r.cases}
                for n, r in zip(names, results)
            ],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"#schema={PROG}/verify/{SCHEMA_VERSION}", ",".join(header)]
        lines += [f"{n},{int(r.passed)},{_fmt(r.max_error)},{_fmt(r.tolerance)},{r.cases}" for n, r in zip(names, results)]
        text = "\n".join(lines) + "\n"
    _write(args, text)
    for r in results:
        print(r.line(), file=sys.stderr)
    failed = [n for n, r in zip(names, results) if not r.passed]
    if failed:
        raise VerificationFailure(f"failed suites: {', '.join(failed)}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Verblunsky coefficients after inserting a point mass.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_opts(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help=f"output file (relative paths resolve against ${OUTPUT_DIR_ENV})")

    for name, help_text in (
        ("insert", "closed-form update"),
        ("simon", "Simon's formula"),
        ("decay", "moduli of the updated coefficients"),
        ("oracle-compare", "differences between all routes"),
    ):
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--alphas", help="coefficient file: 're,im' per line, or JSON pairs")
        src.add_argument("--catalog", help="lebesgue | single-coefficient | constant-coefficient | atomic")
        src.add_argument("--measure", help="measure file with 'atoms' and/or 'ac_grid'")
        p.add_argument("--coefficient", help="catalog parameter a, as 're' or 're,im'")
        p.add_argument("--atom", nargs=2, type=float, action="append", metavar=("THETA", "WEIGHT"))
        ang = p.add_mutually_exclusive_group(required=True)
        ang.add_argument("--omega", type=float, help="atom angle in radians")
        ang.add_argument("--omega-degrees", type=float, help="atom angle in degrees")
        p.add_argument("--gamma", type=float, required=True, help="atom weight in (0, 1)")
        p.add_argument("--n-max", type=int, required=True, help="highest output degree")
        if name == "oracle-compare":
            p.add_argument("--tolerance", type=float, default=1e-8)
        output_opts(p)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", action="append", help=f"suite name (repeatable): {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    output_opts(p)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("insert", "simon", "decay"):
            return _run_insert(args, args.command)
        if args.command == "oracle-compare":
            return _run_compare(args)
        return _run_verify(args)
    except (OPUCError, ValueError) as exc:
        code, kind = _exit_code(exc)
        message = " ".join(str(exc).split())
        print(f"{PROG}: error={kind}: {message}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
