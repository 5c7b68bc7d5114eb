"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 domain violation or bad
arguments, 3 tolerance failure.
"""

import csv
import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from .expmap import AsymmetricBlockError, Generator, exp_sp4, lie_matrix
from .linalg import max_abs_diff
from .oracle import exp_series, fuzz_expmap, symplectic_residual
from .squeeze import (
    SqueezeParamError,
    SqueezeParams,
    circular_trajectory,
    correlation_matrix,
    squeeze_matrix,
    transform_trajectory,
)

EXIT_IO = 1
EXIT_DOMAIN = 2
EXIT_TOLERANCE = 3
DEFAULT_TOL = 1e-9


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        _fail(EXIT_IO, f"{path} is not valid JSON: {exc}")


def _matrix(value, n, what):
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        _fail(EXIT_IO, f"{what} is not a numeric array")
    if arr.shape != (n, n) or not np.all(np.isfinite(arr)):
        _fail(EXIT_IO, f"{what} must be a finite {n}x{n} array")
    return arr


def load_generator(path, lenient=False):
    """Read a generator file ``{"a": [[..]], "b": [[..]], "c": [[..]]}``."""
    doc = _read_json(path)
    if not isinstance(doc, dict) or not {"a", "b", "c"} <= doc.keys():
        _fail(EXIT_IO, f"{path} must be an object with keys 'a', 'b', 'c'")
    a, b, c = (_matrix(doc[k], 2, f"'{k}'") for k in "abc")
    try:
        return Generator(a, b, c, lenient=lenient)
    except AsymmetricBlockError as exc:
        _fail(EXIT_DOMAIN, f"{exc} (use --lenient to symmetrize)")


def load_matrix4(path):
    """Read a 4x4 matrix, either a bare array or ``{"matrix": ...}``."""
    doc = _read_json(path)
    if isinstance(doc, dict):
        key = next((k for k in ("matrix", "closed") if k in doc), None)
        if key is None:
            _fail(EXIT_IO, f"{path} has no 'matrix' entry")
        doc = doc[key]
    return _matrix(doc, 4, "matrix")


def _emit(obj):
    click.echo(json.dumps(obj))


@click.group()
def main():
    """Closed-form exponential map for Sp(4, R) and the classical squeeze matrix."""


@main.command("exp")
@click.option("--input", "input_path", required=True, help="Generator JSON file.")
@click.option("--method", type=click.Choice(["closed", "series", "both"]), default="closed", show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True,
              help="Allowed closed/series deviation with --method both.")
@click.option("--lenient", is_flag=True, help="Symmetrize a and c instead of rejecting them.")
def cmd_exp(input_path, method, tol, lenient):
    """Exponentiate the Lie-algebra element given by (a, b, c)."""
    g = load_generator(input_path, lenient)
    if method == "closed":
        _emit(exp_sp4(g).tolist())
    elif method == "series":
        _emit(exp_series(lie_matrix(g)).tolist())
    else:
        closed = exp_sp4(g)
        series = exp_series(lie_matrix(g))
        dev = max_abs_diff(closed, series)
        _emit({"closed": closed.tolist(), "series": series.tolist(), "max_abs_diff": dev})
        if dev > tol:
            _fail(EXIT_TOLERANCE, f"closed/series deviation {dev:.3e} exceeds {tol:.3e}")


@main.command("verify")
@click.option("--input", "input_path", required=True, help="4x4 matrix JSON file.")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def cmd_verify(input_path, tol):
    """Report ||M Omega M^T - Omega|| for a 4x4 matrix."""
    M = load_matrix4(input_path)
    res = symplectic_residual(M)
    _emit({"residual": res, "tol": tol, "symplectic": res <= tol})
    if res > tol:
        sys.exit(EXIT_TOLERANCE)


def _squeeze_params(r, phi, l1, l2, hbar):
    try:
        return SqueezeParams(r, phi, l1, l2, hbar)
    except SqueezeParamError as exc:
        _fail(EXIT_DOMAIN, str(exc))


_squeeze_options = [
    click.option("--r", "r", type=float, required=True, help="Squeeze magnitude (>= 0)."),
    click.option("--phi", type=float, required=True, help="Squeeze angle in radians."),
    click.option("--l1", type=float, default=1.0, show_default=True),
    click.option("--l2", type=float, default=1.0, show_default=True),
    click.option("--hbar", type=float, default=1.0, show_default=True),
]


def squeeze_options(f):
    for opt in reversed(_squeeze_options):
        f = opt(f)
    return f


@main.command("squeeze")
@squeeze_options
@click.option("--compare-v2", is_flag=True,
              help="Also report ||4 V(r/2) - M_s(r, pi/2)|| at unit lengths.")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def cmd_squeeze(r, phi, l1, l2, hbar, compare_v2, tol):
    """Print the classical squeeze matrix M_s(r, phi)."""
    p = _squeeze_params(r, phi, l1, l2, hbar)
    ms = squeeze_matrix(p)
    if not compare_v2:
        _emit(ms.tolist())
        return
    ref = squeeze_matrix(SqueezeParams(r, math.pi / 2))
    res = max_abs_diff(4.0 * correlation_matrix(r / 2.0), ref)
    _emit({"matrix": ms.tolist(), "factor_two_residual": res})
    if res > tol:
        sys.exit(EXIT_TOLERANCE)


def orig_path(out):
    """Companion file for the untransformed circle: ``x.csv -> x.orig.csv``."""
    out = Path(out)
    stem = out.name[:-4] if out.name.endswith(".csv") else out.name
    return out.with_name(stem + ".orig.csv")


def write_trajectory_csv(path, traj):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "q1", "p1", "q2", "p2"])
        for row in traj.samples:
            w.writerow([repr(float(v)) for v in row])


def read_trajectory_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows[0] != ["t", "q1", "p1", "q2", "p2"]:
        raise ValueError(f"unexpected header {rows[0]}")
    return np.array([[float(v) for v in row] for row in rows[1:]])


@main.command("trajectory")
@squeeze_options
@click.option("--q1", type=float, required=True)
@click.option("--p1", type=float, required=True)
@click.option("--q2", type=float, required=True)
@click.option("--p2", type=float, required=True)
@click.option("--t0", type=float, default=0.0, show_default=True)
@click.option("--t1", type=float, default=2 * math.pi, show_default=True)
@click.option("--steps", type=click.IntRange(min=2), default=256, show_default=True)
@click.option("--out", required=True, help="CSV path for the transformed trajectory.")
def cmd_trajectory(r, phi, l1, l2, hbar, q1, p1, q2, p2, t0, t1, steps, out):
    """Write a circular trajectory and its image under M_s as CSV."""
    p = _squeeze_params(r, phi, l1, l2, hbar)
    if not t1 > t0:
        _fail(EXIT_DOMAIN, "t1 must exceed t0")
    circle = circular_trajectory((q1, q2), (p1, p2), t0, t1, steps)
    image = transform_trajectory(circle, squeeze_matrix(p))
    try:
        write_trajectory_csv(out, image)
        write_trajectory_csv(orig_path(out), circle)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {exc.filename}: {exc.strerror}")
    click.echo(f"wrote {len(image)} samples to {out} and {orig_path(out)}", err=True)


@main.command("fuzz")
@click.option("--seed", type=int, required=True)
@click.option("--count", type=click.IntRange(min=1), required=True)
@click.option("--norm-cap", type=click.FloatRange(min=0.0), default=3.0, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def cmd_fuzz(seed, count, norm_cap, tol):
    """Compare the closed form with the series exponential on random generators."""
    report = fuzz_expmap(seed, count, norm_cap)
    click.echo(report.to_text(), nl=False)
    if report.max_dev > tol:
        sys.exit(EXIT_TOLERANCE)


if __name__ == "__main__":
    main()
