"""Command-line interface: ``projinv {invariants,project,verify,signature}``.

Exit codes: 0 success, 1 identity failure, 2 parse/usage error,
3 dimension or group mismatch.  CSV numbers use 17 significant digits;
JSON uses the shortest repr that round-trips to the same double.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import planeinv, spaceinv
from .curvemodel import curve_from_dict, eval_jet, parse_curve, resolve_curve
from .errors import (
    AllPointsSingular,
    DimensionMismatch,
    ExpressionSyntaxError,
    GroupMismatch,
    InsufficientRegularSamples,
    SingularPointError,
    UnknownIdentifier,
)
from .projection import (
    central,
    project,
    projection_from_json,
    space_to_graph,
    to_graph,
)
from .signature import Signature, SignatureGroup, compare, sample_signature
from .verify import MASTER_SEED, IdentityCheck, builtin_corpus, check_identity

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_window(text):
    """``"a:b:n"`` -> ``(a, b, n)``; n samples with both endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"window must be a:b:n, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from None
    if n < 1 or (n > 1 and not a < b):
        raise UsageError(f"window needs a < b and n >= 1, got {text!r}")
    return a, b, n


def _samples(window):
    a, b, n = window
    return np.linspace(a, b, n)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def _py(v):
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, dict):
        return {k: _py(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_py(x) for x in v]
    return v


def _csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _emit(text, out=None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(doc):
    return json.dumps(_py(doc), indent=1)


# -- invariants --------------------------------------------------------------


def _plane_graph(jet):
    return to_graph(jet, upright_frame=True)


def _sa2(jet):
    e = planeinv.equi_affine(_plane_graph(jet))
    return {"mu": e["mu"].require, "mu_chi": e["mu_chi"].require}


def _a2(jet):
    def both():
        nu, rho = planeinv.affine_jets(_plane_graph(jet))
        return nu, planeinv.invariant_derivative(nu, rho)

    return {"nu": lambda: both()[0], "nu_rho": lambda: both()[1]}


def _pgl3(jet):
    def parts():
        eta, xi, *_ = planeinv.projective_jets(_plane_graph(jet))
        return eta, xi

    return {
        "eta": lambda: parts()[0],
        "eta_xi": lambda: planeinv.invariant_derivative(*parts()),
        "dxi": lambda: parts()[1].density_jet,
    }


def _sl3(jet):
    ce = spaceinv.centro_equi_affine(jet)
    return {"kappa": lambda: ce.kappa, "tau": lambda: ce.tau, "ds": lambda: ce.ds}


def _gl3(jet):
    ci = spaceinv.centro_affine(jet)
    names = ("kappa_hat", "tau_hat", "alpha_hat", "beta_hat", "eta_hat", "zeta_hat1", "dsigma")
    return {n: (lambda n=n: ci.require(n)) for n in names}


def _h(jet):
    g = space_to_graph(jet)
    return {
        "nu_hat": lambda: spaceinv.parallel_invariants(g, check=False).nu_hat,
        "iota_hat_z4": lambda: spaceinv.iota_hat_z4(g),
    }


GROUPS = {
    "sa2": (2, ("mu", "mu_chi"), _sa2),
    "a2": (2, ("nu", "nu_rho"), _a2),
    "pgl3": (2, ("eta", "eta_xi", "dxi"), _pgl3),
    "sl3": (3, ("kappa", "tau", "ds"), _sl3),
    "gl3": (3, ("kappa_hat", "tau_hat", "alpha_hat", "beta_hat", "eta_hat", "zeta_hat1", "dsigma"), _gl3),
    "h": (3, ("nu_hat", "iota_hat_z4"), _h),
}


def invariant_records(curve, group, ts, order=None):
    dim, cols, fn = GROUPS[group]
    if curve.dimension != dim:
        raise DimensionMismatch(
            f"group {group} needs a {dim}-d curve, got a {curve.dimension}-d curve"
        )
    rows = []
    for t in ts:
        row = {"t": float(t)}
        reasons = []
        try:
            getters = fn(eval_jet(curve, float(t), order))
        except SingularPointError as exc:
            getters = {}
            reasons.append(f"{type(exc).__name__}: {exc}")
        for c in cols:
            if c not in getters:
                row[c] = None
                continue
            try:
                row[c] = float(getters[c]().value)
            except SingularPointError as exc:
                row[c] = None
                reasons.append(f"{c}: {type(exc).__name__}: {exc}")
        row["valid"] = all(row[c] is not None for c in cols)
        row["reason"] = "; ".join(reasons)
        rows.append(row)
    return cols, rows


def cmd_invariants(args):
    curve = resolve_curve(args.curve)
    window = parse_window(args.window)
    cols, rows = invariant_records(curve, args.group, _samples(window), args.order)
    if args.format == "csv":
        _emit(_csv(["t", *cols, "valid", "reason"], rows), args.out)
    else:
        doc = {
            "command": "invariants",
            "curve": curve.label,
            "group": args.group,
            "window": list(window),
            "columns": list(cols),
            "records": rows,
        }
        _emit(_dump(doc), args.out)
    return EXIT_OK


# -- project -----------------------------------------------------------------


def project_records(curve, proj, ts, depth, emit, order=None):
    if curve.dimension != 3:
        raise DimensionMismatch("only space curves can be projected")
    rows = []
    for t in ts:
        row = {"t": float(t), "valid": True, "reason": ""}
        try:
            img = project(proj, eval_jet(curve, float(t), order))
        except SingularPointError as exc:
            row.update(valid=False, reason=f"{type(exc).__name__}: {exc}")
            rows.append(row)
            continue
        if emit in ("image", "both"):
            row["X"], row["Y"] = float(img.X.value), float(img.Y.value)
        if emit in ("graphjet", "both"):
            try:
                g = to_graph(img, depth)
                for k, y in enumerate(g.Y):
                    row[f"Y{k}"] = float(y.value)
            except SingularPointError as exc:
                row.update(valid=False, reason=f"{type(exc).__name__}: {exc}")
        rows.append(row)
    return rows


def cmd_project(args):
    curve = resolve_curve(args.curve)
    proj = _load_projection(args.projection)
    window = parse_window(args.window)
    rows = project_records(curve, proj, _samples(window), args.depth, args.emit, args.order)
    cols = ["t", "valid", "reason"]
    if args.emit in ("image", "both"):
        cols += ["X", "Y"]
    if args.emit in ("graphjet", "both"):
        cols += [f"Y{k}" for k in range(args.depth + 1)]
    if args.format == "csv":
        _emit(_csv(cols, rows), args.out)
    else:
        doc = {
            "command": "project",
            "curve": curve.label,
            "projection": proj.to_dict(),
            "window": list(window),
            "records": rows,
        }
        _emit(_dump(doc), args.out)
    return EXIT_OK


def _load_projection(text):
    if text is None:
        return central()
    p = Path(text)
    if p.suffix == ".json" and p.exists():
        text = p.read_text()
    return projection_from_json(text)


# -- verify ------------------------------------------------------------------


def _load_corpus(spec, seed):
    if spec == "builtin":
        return builtin_corpus(seed)
    doc = json.loads(Path(spec).read_text())
    if isinstance(doc, dict) and "curves" in doc:
        doc = doc["curves"]
    if isinstance(doc, dict):
        doc = [doc]
    curves = []
    for item in doc:
        curves.append(parse_curve(item) if isinstance(item, str) else curve_from_dict(item))
    return curves


def _suite(text):
    if text == "all":
        return list(IdentityCheck)
    try:
        return [IdentityCheck(s.strip().upper()) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"unknown check in --suite: {exc}") from None


def _tolerances(items):
    out = {}
    for item in items or []:
        name, _, val = item.partition("=")
        try:
            out[name.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--tol expects component=value, got {item!r}") from None
    return out


def cmd_verify(args):
    checks = _suite(args.suite)
    curves = _load_corpus(args.corpus, args.seed)
    tols = _tolerances(args.tol)
    results = []
    for check in checks:
        own = {k: v for k, v in tols.items() if k in check.tolerances}
        for curve in curves:
            if curve.dimension != 3:
                raise DimensionMismatch(f"{curve.label}: identity checks need space curves")
            try:
                rep = check_identity(curve, check, order=args.order, tolerances=own, seed=args.seed)
            except AllPointsSingular as exc:
                results.append(
                    {"check": check.value, "curve": curve.label, "verdict": "skip", "reason": str(exc)}
                )
                continue
            results.append(rep.to_dict())
    summary = {v: sum(r["verdict"] == v for r in results) for v in ("pass", "fail", "skip")}
    if args.format == "csv":
        rows = []
        for r in results:
            for p in r.get("points", [{"t": None, "status": "skip", "reason": r.get("reason")}]):
                rows.append({"check": r["check"], "curve": r["curve"], **p})
        text = _csv(["check", "curve", "t", "status", "residual", "reason"], rows)
    else:
        text = _dump({"command": "verify", "seed": args.seed, "summary": summary, "results": results})
    _emit(text, args.out)
    return EXIT_FAIL if summary["fail"] else EXIT_OK


# -- signature ---------------------------------------------------------------

_SIG_GROUPS = {
    "pgl3": SignatureGroup.PGL3_plane,
    "gl3": SignatureGroup.GL3_space,
    "a2": SignatureGroup.A2_plane,
    "sa2": SignatureGroup.SA2_plane,
}


def _sig_group(text):
    if text.lower() in _SIG_GROUPS:
        return _SIG_GROUPS[text.lower()]
    try:
        return SignatureGroup(text)
    except ValueError:
        raise UsageError(f"unknown signature group {text!r}") from None


def _signature_of(source, group, window, projection, order):
    p = Path(source)
    if p.suffix == ".json" and p.exists():
        doc = json.loads(p.read_text())
        if "points" in doc:
            return Signature.from_dict(doc)
    curve = resolve_curve(source)
    proj = None
    if projection is not None or (curve.dimension == 3 and group.dimension == 2):
        proj = _load_projection(projection)
    a, b, n = window
    return sample_signature(curve, group, (a, b), n, order, proj)


def cmd_signature(args):
    group = _sig_group(args.group)
    window = parse_window(args.window)
    sig = _signature_of(args.curve, group, window, args.projection, args.order)
    if args.compare:
        other = _signature_of(args.compare, group, window, args.projection, args.order)
        res = compare(sig, other, args.tol)
        _emit(_dump({"command": "signature", **res.to_dict(), "tol": args.tol}), args.out)
        return EXIT_OK
    _emit(sig.to_csv() if args.format == "csv" else sig.to_json(), args.out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="projinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window="0.2:1.5:10"):
        sp.add_argument("--curve", required=True, help="builtin name, JSON file or text like 't, t^2, t^3'")
        sp.add_argument("--window", default=window, help="a:b:n (n samples, endpoints included)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--order", type=int, default=None, help="jet order (default 10 or $PROJINV_JET_ORDER)")
        sp.add_argument("--out", default=None, help="write to a file instead of stdout")

    sp = sub.add_parser("invariants", help="invariant values along a curve")
    common(sp)
    sp.add_argument("--group", required=True, type=str.lower, choices=sorted(GROUPS))
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("project", help="project a space curve")
    common(sp)
    sp.add_argument("--projection", default=None, help='JSON, e.g. \'{"parallel": {"b": [0, 0]}}\'')
    sp.add_argument("--emit", choices=("image", "graphjet", "both"), default="image")
    sp.add_argument("--depth", type=int, default=7, help="graph jet Y0..Ydepth")
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("verify", help="run identity checks")
    sp.add_argument("--suite", default="all", help="all or comma-separated check ids")
    sp.add_argument("--corpus", default="builtin", help="builtin or a JSON file of curves")
    sp.add_argument("--seed", type=int, default=MASTER_SEED)
    sp.add_argument("--tol", action="append", help="override a tolerance, component=value")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("signature", help="sample or compare signature curves")
    common(sp, window="0.2:1.5:200")
    sp.add_argument("--group", required=True, help="pgl3, gl3, a2 or sa2")
    sp.add_argument("--projection", default=None, help="projection for space curves with plane groups")
    sp.add_argument("--compare", default=None, help="curve or signature JSON to compare against")
    sp.add_argument("--tol", type=float, default=1e-4)
    sp.set_defaults(func=cmd_signature)
    return p


def _join_negative_values(argv):
    # let "--window -0.5:0.5:11" through argparse
    out = list(argv)
    for i, a in enumerate(out[:-1]):
        if a in ("--window", "--curve", "--compare") and out[i + 1].startswith("-"):
            out[i : i + 2] = [f"{a}={out[i + 1]}", ""]
    return [a for a in out if a != ""]


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DimensionMismatch, GroupMismatch) as exc:
        print(f"projinv: error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (
        ExpressionSyntaxError,
        UnknownIdentifier,
        UsageError,
        InsufficientRegularSamples,
        json.JSONDecodeError,
        OSError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"projinv: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
