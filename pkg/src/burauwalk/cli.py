"""Command-line front end.

Exit status is 0 on success, 1 on domain errors (pole, non-positive
diagram, missing move pattern, irregular chain) and 2 on usage or input
errors.  Failures write only to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

import numpy as np

from . import diagram as dg
from . import engine, finitetype, markov, moves
from .errors import BurauError, DiagramError, DomainError, TangleSyntaxError
from .matrices import render_number_grid
from .ratfun import parse_t0

FLOAT_FMT = ".12g"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input handling

def _read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args, prefix="", singular=False):
    braid = getattr(args, f"{prefix}braid")
    path = getattr(args, f"{prefix}file")
    if (braid is None) == (path is None):
        flag = f"--{prefix.replace('_', '-')}"
        raise UsageError(f"give exactly one of {flag}braid or {flag}file")
    if braid is not None:
        if args.n is None:
            raise UsageError("--braid needs -n/--strands")
        d = dg.parse_braid(braid, args.n)
        if singular:
            return dg.make_singular(d, _ids(getattr(args, "double", None)))
        return d
    text = _read_file(path)
    if singular:
        s = dg.parse_singular_tangle(text)
        extra = _ids(getattr(args, "double", None))
        return dg.make_singular(s.diagram, s.double | extra) if extra else s
    return dg.parse_tangle(text)


def _ids(text):
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad crossing id list {text!r}") from None


def _t(text):
    try:
        return parse_t0(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# rendering

def _json_num(x):
    if isinstance(x, Fraction):
        return str(x)
    return float(format(float(x), FLOAT_FMT))


def _float_grid(M):
    return render_number_grid([[float(x) for x in r] for r in np.asarray(M)])


def _float_list(v):
    return "[" + ", ".join(format(float(x), FLOAT_FMT) for x in v) + "]"


def _json_grid(M):
    return [[_json_num(x) for x in r] for r in M]


def render_report(result, as_json=False):
    """Deterministic text or JSON rendering of a command's ``(text, data)`` result."""
    text, data = result
    if as_json:
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    return text


# ---------------------------------------------------------------------------
# commands

def cmd_burau(args):
    d = _load(args)
    B = engine.burau_matrix(d)
    if args.eval is not None:
        t0 = _t(args.eval)
        vals = [[float(x) for x in r] for r in B.evaluate(t0)]
        data = {"n": d.n, "t": str(t0), "values": _json_grid(vals)}
        text = render_number_grid(vals)
    else:
        data = B.to_dict()
        text = B.to_text()
    return text, data


def cmd_series(args):
    d = _load(args)
    S = engine.series_burau(d, args.K)
    return S.to_text(), S.to_dict()


def _tangle_result(d):
    text = dg.render_tangle(d)
    return text, {"tangle": text}


def cmd_compose(args):
    return _tangle_result(dg.compose(_load(args), _load(args, "then_")))


def cmd_power(args):
    if args.N < 1:
        raise UsageError("--N must be >= 1")
    return _tangle_result(dg.power(_load(args), args.N))


def cmd_mirror(args):
    return _tangle_result(dg.mirror_vertical(_load(args)))


def cmd_move(args):
    d = _load(args)
    kind = args.kind
    if kind == "r1-insert":
        m = moves.R1Insert(args.strand, args.pos, args.sign, args.over_first)
    elif kind == "r1-delete":
        m = moves.R1Delete(args.strand, args.pos)
    elif kind == "r2-insert":
        m = moves.R2Insert(
            args.strand, args.pos, args.under_strand, args.under_pos, args.sign, not args.antiparallel
        )
    elif kind == "r2-delete":
        m = moves.R2Delete(args.strand, args.pos)
    else:
        ids = sorted(_ids(args.crossings))
        m = moves.R3Slide(tuple(ids))
    return _tangle_result(moves.apply_move(d, m))


def cmd_vassiliev(args):
    s = _load(args, singular=True)
    v = finitetype.vassiliev_value(s, args.K)
    text = f"double points: {v.double_point_count}\n" + v.matrix.to_text()
    return text, dict(v.matrix.to_dict(), double_points=v.double_point_count)


def cmd_bk(args):
    s = _load(args, singular=True)
    M = finitetype.bk_coefficient(s, args.k)
    return render_number_grid(M), {"k": args.k, "coefficient": _json_grid(M)}


def cmd_markov(args):
    d = _load(args)
    t0 = _t(args.t)
    sm = markov.evaluate_stochastic(d, t0)
    P = sm.matrix
    N = markov.persistence_exponent(d)
    u = entropy = None
    if N is not None and 0 < t0 < 1:
        u = markov.stationary(d, t0, tol=args.tol).u
    H = markov.row_entropies(P)
    if not H.any():
        entropy = 0.0
    elif u is not None:
        entropy = float(u @ H)
    sums = P.sum(axis=1)
    lines = [
        f"t = {t0}",
        "stochastic matrix:",
        _float_grid(P).rstrip("\n"),
        f"row sums: {_float_list(sums)}",
        f"persistence exponent N: {N if N is not None else 'none'}",
        f"stationary u: {_float_list(u) if u is not None else 'undefined'}",
        "entropy rate (bits): "
        + (format(entropy, FLOAT_FMT) if entropy is not None else "undefined"),
    ]
    data = {
        "matrix": _json_grid(P),
        "u": None if u is None else [_json_num(x) for x in u],
        "entropy": None if entropy is None else _json_num(entropy),
        "N": N,
        "diagnostics": {
            "t": str(t0),
            "row_sum_max_error": _json_num(float(np.abs(sums - 1).max())),
            "provenance": sm.provenance,
        },
    }
    return "\n".join(lines) + "\n", data


def cmd_simulate(args):
    d = _load(args)
    est = markov.simulate_walks(d, _t(args.t), args.trials, args.seed)
    text = (
        f"t = {est.t_value}, trials per source = {est.trials}, seed = {est.seed}\n"
        "counts:\n" + render_number_grid(est.counts.tolist())
        + "frequencies:\n" + _float_grid(est.frequencies)
    )
    data = {
        "t": str(est.t_value),
        "trials": est.trials,
        "seed": est.seed,
        "counts": est.counts.tolist(),
        "frequencies": _json_grid(est.frequencies),
    }
    return text, data


def cmd_stationary(args):
    d = _load(args)
    st = markov.stationary(d, _t(args.t), tol=args.tol)
    text = (
        f"u: {_float_list(st.u)}\n"
        f"iterations: {st.iterations}\n"
        f"residual: {format(st.residual, '.3e')}\n"
        f"limit gap: {format(st.limit_gap, '.3e')}\n"
    )
    data = {
        "u": [_json_num(x) for x in st.u],
        "iterations": st.iterations,
        "residual": st.residual,
        "limit_gap": st.limit_gap,
    }
    return text, data


def cmd_entropy(args):
    d = _load(args)
    H = markov.entropy_rate(d, _t(args.t))
    return format(H, FLOAT_FMT) + "\n", {"entropy": _json_num(H)}


def cmd_persistence(args):
    d = _load(args)
    r = markov.persistence_check(d, _t(args.t), args.nmax)
    lines = [
        f"regular: {'yes' if r.regular else 'no'}",
        f"persistence exponent N: {r.exponent if r.exponent is not None else 'none'}",
        f"all states persistent: {'yes' if r.all_persistent else 'no'}",
        f"partial sums up to n = {r.n_max}:",
        _float_grid(r.partial_sums).rstrip("\n"),
        "slopes:",
        _float_grid(r.slopes).rstrip("\n"),
        f"P^{r.n_max}:",
        _float_grid(r.limit).rstrip("\n"),
    ]
    if r.u is not None:
        lines.append(f"stationary u: {_float_list(r.u)}")
    if r.never_visited:
        lines.append("never reached: " + " ".join(f"({i},{j})" for i, j in r.never_visited))
    data = {
        "regular": r.regular,
        "N": r.exponent,
        "all_persistent": r.all_persistent,
        "n_max": r.n_max,
        "partial_sums": _json_grid(r.partial_sums),
        "slopes": _json_grid(r.slopes),
        "limit": _json_grid(r.limit),
        "u": None if r.u is None else [_json_num(x) for x in r.u],
        "never_reached": [list(p) for p in r.never_visited],
    }
    return "\n".join(lines) + "\n", data


def cmd_validate(args):
    d = dg.parse_tangle(_read_file(args.file))
    text = (
        f"valid: strands {d.n}, crossings {d.crossing_count}, "
        f"permutation {list(d.permutation)}\n"
    )
    data = {
        "valid": True,
        "strands": d.n,
        "crossings": d.crossing_count,
        "permutation": list(d.permutation),
    }
    return text, data


# ---------------------------------------------------------------------------
# parser

def _add_input(p, prefix=""):
    dash = prefix.replace("_", "-")
    p.add_argument(f"--{dash}braid", dest=f"{prefix}braid", metavar="WORD")
    p.add_argument(f"--{dash}file", dest=f"{prefix}file", metavar="PATH")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="burauwalk", description="Burau matrices of string links via random walks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text, singular=False):
        p = sub.add_parser(name, help=help_text)
        _add_input(p)
        p.add_argument("-n", "--strands", dest="n", type=int)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if singular:
            p.add_argument("--double", metavar="IDS", help="comma-separated crossing ids")
        p.set_defaults(fn=fn)
        return p

    p = command("burau", cmd_burau, "exact Burau matrix")
    p.add_argument("--eval", metavar="T0", help="print numeric values at t = T0")
    p = command("series", cmd_series, "h-expansion by walk enumeration")
    p.add_argument("--K", type=int, default=4, help="keep terms up to h^K")
    p = command("compose", cmd_compose, "stack a second diagram on top")
    _add_input(p, "then_")
    p = command("power", cmd_power, "N-fold stack")
    p.add_argument("--N", type=int, required=True)
    command("mirror", cmd_mirror, "left-right mirror image")
    p = command("move", cmd_move, "apply a Reidemeister move")
    p.add_argument(
        "--kind", required=True, choices=["r1-insert", "r1-delete", "r2-insert", "r2-delete", "r3"]
    )
    p.add_argument("--strand", type=int, default=1, help="strand (by source) carrying the site")
    p.add_argument("--pos", type=int, default=0, help="encounter index of the site")
    p.add_argument("--sign", type=lambda s: {"+": 1, "-": -1}[s], default=1, help="+ or -")
    p.add_argument("--over-first", dest="over_first", action="store_const", const=True)
    p.add_argument("--under-first", dest="over_first", action="store_const", const=False)
    p.add_argument("--under-strand", type=int, default=1)
    p.add_argument("--under-pos", type=int, default=0)
    p.add_argument("--antiparallel", action="store_true")
    p.add_argument("--crossings", metavar="IDS", help="three crossing ids for r3")
    p = command("vassiliev", cmd_vassiliev, "alternating resolution sum", singular=True)
    p.add_argument("--K", type=int, default=None, help="series mode, terms up to h^K")
    p = command("bk", cmd_bk, "coefficient of h^k", singular=True)
    p.add_argument("--k", type=int, required=True)
    for name, fn, help_text in [
        ("markov", cmd_markov, "stochastic matrix and chain summary"),
        ("simulate", cmd_simulate, "Monte Carlo walks"),
        ("stationary", cmd_stationary, "stationary distribution"),
        ("entropy", cmd_entropy, "entropy rate in bits"),
        ("persistence", cmd_persistence, "persistence diagnostics"),
    ]:
        p = command(name, fn, help_text)
        p.add_argument("--t", required=True, metavar="T0")
        p.add_argument("--trials", type=int, default=100_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-13)
        p.add_argument("--nmax", type=int, default=200)
    p = sub.add_parser("validate", help="check a tangle file")
    p.add_argument("--file", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_validate)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
    except (UsageError, TangleSyntaxError, DiagramError) as exc:
        print(f"burauwalk {args.command}: error: {exc}", file=stderr)
        return 2
    except (DomainError, BurauError, ZeroDivisionError) as exc:
        print(f"burauwalk {args.command}: error: {exc}", file=stderr)
        return 1
    stdout.write(render_report(result, args.json))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
