"""Command-line front end.

    channelspin state    --p1 x,y,z --p2 x,y,z [--format csv|json]
    channelspin sweep    --p LO,HI --theta LO,HI --steps NP[,NT] [--debug] --out FILE
    channelspin figure   {1,2,3,4} --out FILE
    channelspin majorana --p P --theta T --out FILE

Angles are radians unless ``--degrees`` is given. ``theta`` is half the
angle between beam and target polarization. ``state`` exits with 0 for a
separable state and 3 for an entangled one; bad input gives exit code 2 and
I/O failures exit code 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from channelspin import channel_state as cs
from channelspin import entanglement as ent
from channelspin import majorana as mj
from channelspin.errors import ChannelSpinError

EXIT_OK = 0
EXIT_IO = 1
EXIT_INPUT = 2
EXIT_ENTANGLED = 3

SWEEP_FIELDS = (
    "p", "theta", "Cxx", "Cyy", "Czz", "cov_min_eig", "ppt_min_eig",
    "lambda1", "lambda2", "lambda3", "entangled",
)
FIGURE_FIELDS = {
    1: ("p", "theta", "Cxx"),
    2: ("p", "Cxx", "Cyy", "Czz"),
    3: ("theta_deg", "Cxx_p0.5", "Cxx_p0.7", "Cxx_p0.9"),
    4: (
        "p", "interval", "theta_lo", "theta_hi", "theta_lo_deg", "theta_hi_deg",
        "p1_lo_x", "p1_lo_z", "p1_hi_x", "p1_hi_z",
    ),
}
FIG3_PS = (0.5, 0.7, 0.9)
FIG4_PS = (0.7, 0.9)
FIG4_RESOLUTION = 1000


@dataclass(frozen=True)
class SweepSpec:
    p_range: tuple
    theta_range: tuple
    tol: float = ent.DEFAULT_TOL

    def __post_init__(self):
        for name, (lo, hi, steps) in (("p", self.p_range), ("theta", self.theta_range)):
            if not lo <= hi:
                raise ChannelSpinError(f"{name} range has lo > hi")
            if steps < 2:
                raise ChannelSpinError(f"{name} range needs at least 2 steps")
        if not (0.0 <= self.p_range[0] and self.p_range[1] <= 1.0):
            raise ChannelSpinError("p range must lie in [0, 1]")
        if not (0.0 <= self.theta_range[0] and self.theta_range[1] <= math.pi / 2 + 1e-12):
            raise ChannelSpinError("theta range must lie in [0, pi/2]")
        if not self.tol > 0:
            raise ChannelSpinError("tol must be positive")

    def grid(self):
        ps = np.linspace(*self.p_range[:2], self.p_range[2])
        ts = np.linspace(*self.theta_range[:2], self.theta_range[2])
        for p in ps:
            for t in ts:
                yield float(p), float(t)


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------

def fmt(x) -> str:
    """12 significant digits, no negative zero, locale independent."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    s = f"{float(x):.12g}"
    return "0" if s in ("-0", "0") else s


def write_csv(rows, fields, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([fmt(row[f]) for f in fields])


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _csv_text(rows, fields) -> str:
    buf = io.StringIO()
    write_csv(rows, fields, buf)
    return buf.getvalue()


def _cplx(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix(m) -> dict:
    m = np.asarray(m)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def _point(pt: mj.BlochPoint) -> dict:
    return {"alpha": pt.alpha, "beta": pt.beta, "cartesian": list(pt.cartesian)}


# --------------------------------------------------------------------------
# records
# --------------------------------------------------------------------------

def sweep_record(p: float, theta: float, tol: float = ent.DEFAULT_TOL) -> dict:
    cfg = cs.ChannelConfig.from_slf(p, theta)
    rho1 = cs.channel_density(cfg)
    v = ent.state_verdict(ent.symmetric_embedding(rho1), tol)
    lambdas = mj.numerical_eigen(rho1).lambdas
    cxx, cyy, czz = v.diagonals
    return {
        "p": p, "theta": theta, "Cxx": cxx, "Cyy": cyy, "Czz": czz,
        "cov_min_eig": v.cov_min_eig, "ppt_min_eig": v.ppt_min_eig,
        "lambda1": lambdas[0], "lambda2": lambdas[1], "lambda3": lambdas[2],
        "entangled": v.entangled,
    }


def sweep_rows(spec: SweepSpec) -> list[dict]:
    return [sweep_record(p, t, spec.tol) for p, t in spec.grid()]


def validate_record(row: dict, tol: float = 1e-10) -> None:
    """Re-check a sweep record against the closed forms; raises on mismatch."""
    p, theta = row["p"], row["theta"]
    problems = []
    closed = ent.canonical_diagonals(p, theta)
    got = (row["Cxx"], row["Cyy"], row["Czz"])
    if max(abs(a - b) for a, b in zip(closed, got)) > tol:
        problems.append("covariance diagonals differ from closed form")
    lambdas = np.array([row["lambda1"], row["lambda2"], row["lambda3"]])
    if abs(lambdas.sum() - 1) > tol:
        problems.append("eigenvalues do not sum to 1")
    if np.max(np.abs(lambdas - mj.channel_eigen_closed_form(p, theta).lambdas)) > tol:
        problems.append("eigenvalues differ from closed form")
    if abs(row["cov_min_eig"]) > 1e-8 and abs(row["ppt_min_eig"]) > 1e-8:
        if (row["cov_min_eig"] < 0) != (row["ppt_min_eig"] < 0):
            problems.append("covariance and PPT criteria disagree")
    if problems:
        raise ChannelSpinError(f"record p={p}, theta={theta} failed validation: " + "; ".join(problems))


def validate_sample(rows: list[dict], stride: int = 7) -> None:
    for row in rows[::stride] + rows[-1:]:
        validate_record(row)


def figure_rows(which: int) -> list[dict]:
    if which == 1:
        rows = []
        for p in np.linspace(0.0, 1.0, 101):
            for t in np.linspace(0.0, math.pi, 101):
                rows.append({"p": p, "theta": t, "Cxx": ent.canonical_diagonals(p, t)[0]})
        return rows
    if which == 2:
        rows = []
        for p in np.linspace(0.0, 1.0, 201):
            cxx, cyy, czz = ent.canonical_diagonals(p, math.pi / 4)
            rows.append({"p": p, "Cxx": cxx, "Cyy": cyy, "Czz": czz})
        return rows
    if which == 3:
        rows = []
        for t in np.linspace(0.0, math.pi, 181):
            row = {"theta_deg": math.degrees(t)}
            for p in FIG3_PS:
                row[f"Cxx_p{p}"] = ent.canonical_diagonals(p, t)[0]
            rows.append(row)
        return rows
    if which == 4:
        rows = []
        for p in FIG4_PS:
            intervals = ent.entangled_theta_intervals(p, FIG4_RESOLUTION)
            for i, iv in enumerate(intervals):
                rows.append({
                    "p": p, "interval": i, "theta_lo": iv.lo, "theta_hi": iv.hi,
                    "theta_lo_deg": math.degrees(iv.lo), "theta_hi_deg": math.degrees(iv.hi),
                    "p1_lo_x": p * math.sin(iv.lo), "p1_lo_z": p * math.cos(iv.lo),
                    "p1_hi_x": p * math.sin(iv.hi), "p1_hi_z": p * math.cos(iv.hi),
                })
        return rows
    raise ChannelSpinError(f"no figure {which}; choose 1-4")


def majorana_report(p: float, theta: float) -> dict:
    cfg = cs.ChannelConfig.from_slf(p, theta)
    rho1 = cs.channel_density(cfg)
    closed = mj.channel_eigen_closed_form(p, theta)
    cons = mj.constellation(rho1)
    frame = cs.slf_frame(cfg)
    return {
        "p": p,
        "theta": theta,
        "lambdas": cons.weights,
        "constellations": [
            {"label": label, "lambda": e.weight, "points": [_point(pt) for pt in e.points]}
            for label, e in zip(closed.labels, cons.entries)
        ],
        "frame": {"x0": frame.x0.tolist(), "y0": frame.y0.tolist(), "z0": frame.z0.tolist()},
        "degenerate": {"spectrum": cons.degenerate, "frame": frame.degenerate},
    }


def state_report(cfg: cs.ChannelConfig, tol: float = ent.DEFAULT_TOL) -> dict:
    rho_c = cs.product_state(cfg)
    rho1, weight = cs.triplet_projection(rho_c)
    t_state = cs.stat_tensors_from_state(rho1)
    t_closed = cs.stat_tensors_closed_form(cfg)
    frame = cs.slf_frame(cfg)
    v = ent.state_verdict(ent.symmetric_embedding(rho1), tol)
    cons = mj.constellation(rho1)
    return {
        "p1": list(cfg.p1.components),
        "p2": list(cfg.p2.components),
        "triplet_weight": weight,
        "rho_c": _matrix(rho_c),
        "rho1": _matrix(rho1),
        "stat_tensors": {f"{k},{q}": _cplx(t_state[(k, q)]) for k, q in t_state.keys()},
        "stat_tensors_closed_form": {f"{k},{q}": _cplx(t_closed[(k, q)]) for k, q in t_closed.keys()},
        "frame": {
            "x0": frame.x0.tolist(), "y0": frame.y0.tolist(), "z0": frame.z0.tolist(),
            "degenerate": frame.degenerate,
        },
        "covariance": v.covariance.tolist(),
        "verdict": {
            "cov_min_eig": v.cov_min_eig,
            "ppt_min_eig": v.ppt_min_eig,
            "entangled": v.entangled,
            "criterion_agreement": v.criterion_agreement,
            "boundary": v.boundary,
        },
        "eigen": {
            "lambdas": cons.weights,
            "vectors": [_matrix(e.state) for e in cons.entries],
        },
        "constellation": {
            "degenerate": cons.degenerate,
            "entries": [
                {"lambda": e.weight, "points": [_point(pt) for pt in e.points]}
                for e in cons.entries
            ],
        },
    }


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, val in obj.items():
            yield from _flatten(val, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, val in enumerate(obj):
            yield from _flatten(val, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("key", "value"))
    for key, val in _flatten(report):
        writer.writerow((key, fmt(val)))
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _vec3(text: str) -> list[float]:
    return _floats(text, 3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="channelspin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=float, default=ent.DEFAULT_TOL, help="entanglement tolerance")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--degrees", action="store_true", help="theta inputs are in degrees")

    sp = sub.add_parser("state", help="full report for one beam/target configuration")
    sp.add_argument("--p1", type=_vec3, required=True, metavar="X,Y,Z")
    sp.add_argument("--p2", type=_vec3, required=True, metavar="X,Y,Z")
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    common(sp)

    sp = sub.add_parser("sweep", help="(p, theta) grid as CSV")
    sp.add_argument("--p", default="0,1", metavar="LO,HI")
    sp.add_argument("--theta", default=None, metavar="LO,HI", help="default 0,pi/2")
    sp.add_argument("--steps", default="11", metavar="N[,M]")
    sp.add_argument("--debug", action="store_true", help="re-validate a sample of records")
    common(sp)

    sp = sub.add_parser("figure", help="data behind figures 1-4")
    sp.add_argument("which", type=int, choices=(1, 2, 3, 4))
    common(sp)

    sp = sub.add_parser("majorana", help="constellation JSON at one (p, theta)")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--theta", type=float, required=True)
    common(sp)
    return parser


def _angle(x: float, degrees: bool) -> float:
    return math.radians(x) if degrees else x


def run(args) -> int:
    if args.command == "state":
        cfg = cs.ChannelConfig(tuple(args.p1), tuple(args.p2))
        report = state_report(cfg, args.tol)
        text = dumps(report) if args.format == "json" else report_csv(report)
        _emit(text, args.out)
        return EXIT_ENTANGLED if report["verdict"]["entangled"] else EXIT_OK

    if args.command == "sweep":
        p_lo, p_hi = _floats(args.p, 2)
        if args.theta is None:
            t_lo, t_hi = 0.0, math.pi / 2
        else:
            t_lo, t_hi = (_angle(t, args.degrees) for t in _floats(args.theta, 2))
        steps = [int(s) for s in args.steps.split(",")]
        np_, nt = (steps[0], steps[0]) if len(steps) == 1 else steps[:2]
        spec = SweepSpec((p_lo, p_hi, np_), (t_lo, t_hi, nt), args.tol)
        rows = sweep_rows(spec)
        if args.debug:
            validate_sample(rows)
        _emit(_csv_text(rows, SWEEP_FIELDS), args.out)
        return EXIT_OK

    if args.command == "figure":
        _emit(_csv_text(figure_rows(args.which), FIGURE_FIELDS[args.which]), args.out)
        return EXIT_OK

    if args.command == "majorana":
        _emit(dumps(majorana_report(args.p, _angle(args.theta, args.degrees))), args.out)
        return EXIT_OK

    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return run(args)
    except ValueError as exc:
        print(f"channelspin: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"channelspin: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
