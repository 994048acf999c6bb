"""Command-line job runner: reads a JSON job, prints a JSON report.

Exit codes: 0 success, 1 domain error, 2 malformed input.  Errors are
reported on standard output as ``{"error": <name>, "detail": <text>}``.
"""

import argparse
import json
import sys
from fractions import Fraction

from .arith.rat import format_rat, frac_part
from .errors import HolodiffError, ParseError, RankZero
from .factorization import as_series_matrix, birkhoff_factor, factor_rational, series_det
from .lattices import DConnection, Lattice, austere_reduce_trace, singular_orbits, zero_pole_profile
from .mellin_local import RegSingModule, hom_dimension_oracle, local_mellin, local_mellin_infinity
from .parse import operator_kind, parse_operator
from .restriction import (
    FiniteLengthModule,
    classify_module,
    enlarge_middle,
    glue,
    restrict_to_orbit,
    round_trip_check,
    torsion_partition,
)
from .serialize import (
    matrix_in,
    matrix_out,
    profile_out,
    qmatrix_in,
    rat_in,
    series_in,
    series_out,
)
from .skew import DifferenceOperator, companion_connection, inverse_mellin_operator, mellin_operator

DEFAULT_ORDER = 16
DEFAULT_WINDOW = 12


def _field(job, key, required=True, default=None):
    if key not in job:
        if required:
            raise ParseError(f"missing field {key!r}")
        return default
    return job[key]


def _module(job):
    """``(conn, lattice)`` from ``A`` (+ optional ``L``) or from an operator ``op``; torsion gives ``(None, f)``."""
    if "A" in job:
        conn = DConnection(matrix_in(job["A"]))
        L = Lattice(matrix_in(job["L"])) if "L" in job else Lattice.standard(conn.rank)
        if L.rank != conn.rank:
            raise ParseError("lattice and connection ranks differ")
        return conn, L
    if "op" in job:
        Q = parse_operator(job["op"])
        if not isinstance(Q, DifferenceOperator):
            raise ParseError("module operators must use z and T")
        try:
            return companion_connection(Q)
        except RankZero:
            return None, Q.normalized().coefficient(0)
    raise ParseError("job needs a connection 'A' or an operator 'op'")


def _orbit(job, key="orbit"):
    return frac_part(rat_in(_field(job, key)))


def _cmd_analyze(job, opts):
    conn, L = _module(job)
    if conn is None:
        raise RankZero("rank-zero operator: use 'vanishing' for its torsion partition")
    prof = zero_pole_profile(conn, L)
    cls = classify_module(conn, L)
    return {
        "rank": conn.rank,
        "profile": profile_out(prof),
        "zeroes": [format_rat(a) for a in prof.zeroes],
        "poles": [format_rat(a) for a in prof.poles],
        "singular_orbits": [format_rat(p) for p in singular_orbits(conn, L)],
        "fg_over_tau": cls.fg_over_tau,
        "fg_over_tau_inv": cls.fg_over_tau_inv,
        "vector_bundle": cls.vector_bundle,
        "orbits": {format_rat(p): {"left": list(lp), "right": list(rp)}
                   for p, (lp, rp) in sorted(cls.partitions.items())},
        "witness": matrix_out(cls.witness.generators) if cls.witness is not None else None,
    }


def _cmd_austere(job, opts):
    conn, L = _module(job)
    if conn is None:
        raise RankZero("rank-zero operator has no lattice")
    p = _orbit(job)
    res = austere_reduce_trace(conn, L, p)
    return {
        "orbit": format_rat(p),
        "bound": res.bound,
        "iterations": res.iterations,
        "trace": [{"iteration": i, "profile": profile_out(prof), "lattice": matrix_out(W.generators)}
                  for i, prof, W in res.trace],
        "lattice": matrix_out(res.lattice.generators),
    }


def _triple_report(t):
    out = {
        "orbit": format_rat(t.orbit),
        "point": format_rat(t.point),
        "left": list(t.left_partition()),
        "right": list(t.right_partition()),
        "middle_torsion": list(t.torsion.partition) if t.torsion is not None else [],
        "stable_shift": t.stable_shift,
    }
    if not t.is_torsion:
        out["generators"] = {
            "left": matrix_out(t.left.global_generators()),
            "middle": matrix_out(t.middle.global_generators()),
            "right": matrix_out(t.right.global_generators()),
        }
    return out


def _cmd_restrict(job, opts):
    conn, L = _module(job)
    p = _orbit(job)
    shift = int(_field(job, "shift", False, 0))
    if conn is None:
        mod = torsion_partition(L, p)
        return {"orbit": format_rat(p), "point": format_rat(p + shift), "left": [], "right": [],
                "middle_torsion": list(mod.partition), "stable_shift": 0}
    return _triple_report(restrict_to_orbit(conn, L, p, shift))


def _vanishing_one(conn, L, p):
    if conn is None:
        parts = list(torsion_partition(L, p).partition)
        return parts, parts
    t = restrict_to_orbit(conn, L, p)
    return list(t.left_partition()), list(t.right_partition())


def _cmd_vanishing(job, opts):
    conn, L = _module(job)
    if "orbit" in job:
        p = _orbit(job)
        left, right = _vanishing_one(conn, L, p)
        out = {"orbit": format_rat(p), "left": left, "right": right}
        if "N" in job and "op" in job:
            N = FiniteLengthModule(tuple(int(k) for k in job["N"]), p)
            out["hom_dimension"] = hom_dimension_oracle(parse_operator(job["op"]), N, p, opts.window)
        return out
    if conn is None:
        raise ParseError("torsion modules need an explicit 'orbit'")
    orbits = singular_orbits(conn, L)
    report = {}
    for p in orbits:
        left, right = _vanishing_one(conn, L, p)
        report[format_rat(p)] = {"left": left, "right": right}
    return {"orbits": report}


def _cmd_glue(job, opts):
    conn, L = _module(job)
    if conn is None:
        raise RankZero("gluing needs a torsion-free module")
    p = _orbit(job)
    t = restrict_to_orbit(conn, L, p)
    _, glued = glue(conn, L, t)
    ok = round_trip_check(conn, L, p)
    big = enlarge_middle(t)
    _, L3 = glue(conn, L, big)
    return {
        "orbit": format_rat(p),
        "round_trip": ok,
        "left": list(t.left_partition()),
        "right": list(t.right_partition()),
        "glued_lattice": matrix_out(glued.generators),
        "enlarged_middle_lattice": matrix_out(L3.generators),
    }


def _cmd_factor(job, opts):
    point = rat_in(_field(job, "point", False, "0"))
    order = int(_field(job, "order", False, opts.order))
    raw = _field(job, "B")
    if not isinstance(raw, list) or not raw:
        raise ParseError("B must be a nonempty matrix")
    if all(isinstance(x, dict) and "valuation" in x for r in raw for x in r):
        B = [[series_in(x) for x in r] for r in raw]
        res = birkhoff_factor(B, order, point)
    else:
        entries = matrix_in(raw).tolist()
        B = as_series_matrix(entries, point, order)
        res = factor_rational(entries, order, point)
    detB = series_det(B, Fraction(point))
    return {
        "point": format_rat(point),
        "order": order,
        "A": [[series_out(x) for x in r] for r in res.A],
        "C": [[series_out(x) for x in r] for r in res.C],
        "exponents": list(res.exponents),
        "det_valuation": detB.valuation,
    }


def _cmd_mellin_op(job, opts):
    text = _field(job, "op")
    kind = operator_kind(text)
    direction = _field(job, "direction", False, None)
    if direction is None:
        direction = "inverse" if kind == "difference" else "forward"
    if direction == "forward":
        D = parse_operator(text, default="differential")
        if isinstance(D, DifferenceOperator):
            raise ParseError("forward transform takes a differential operator")
        return {"result": str(mellin_operator(D))}
    if direction == "inverse":
        Q = parse_operator(text, default="difference")
        if not isinstance(Q, DifferenceOperator):
            raise ParseError("inverse transform takes a difference operator")
        return {"result": str(inverse_mellin_operator(Q))}
    raise ParseError(f"unknown direction {direction!r}")


def _cmd_local_mellin(job, opts):
    C = qmatrix_in(_field(job, "C"))
    p = rat_in(_field(job, "p"))
    at = _field(job, "at", False, "zero")
    F = RegSingModule(C)
    if at == "zero":
        mod = local_mellin(F, p)
    elif at == "infinity":
        mod = local_mellin_infinity(F, p)
    else:
        raise ParseError(f"unknown location {at!r}")
    return {"partition": list(mod.partition)}


COMMANDS = {
    "analyze": _cmd_analyze,
    "austere": _cmd_austere,
    "restrict": _cmd_restrict,
    "vanishing": _cmd_vanishing,
    "glue": _cmd_glue,
    "factor": _cmd_factor,
    "mellin-op": _cmd_mellin_op,
    "local-mellin": _cmd_local_mellin,
}


def run_job(job, opts):
    """Dispatch one job dictionary; returns the report dictionary."""
    if not isinstance(job, dict):
        raise ParseError("job must be a JSON object")
    cmd = job.get("cmd")
    if cmd not in COMMANDS:
        raise ParseError(f"unknown command {cmd!r}")
    return COMMANDS[cmd](job, opts)


def _parser():
    ap = argparse.ArgumentParser(prog="holodiff", description="Local invariants of difference modules.")
    ap.add_argument("job", nargs="?", default="-", help="job file (default: standard input)")
    ap.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    ap.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="tau-exponent window")
    ap.add_argument("--json-indent", type=int, default=None, help="indentation of the JSON report")
    return ap


def _emit(obj, indent, stream):
    stream.write(json.dumps(obj, sort_keys=True, indent=indent, ensure_ascii=False))
    stream.write("\n")


def main(argv=None, stdin=None, stdout=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    opts = _parser().parse_args(argv)
    try:
        if opts.job == "-":
            text = stdin.read()
        else:
            with open(opts.job, encoding="utf-8") as fh:
                text = fh.read()
        try:
            job = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        report = run_job(job, opts)
    except ParseError as exc:
        _emit({"error": exc.code, "detail": str(exc.detail)}, opts.json_indent, stdout)
        return 2
    except OSError as exc:
        _emit({"error": "ParseError", "detail": str(exc)}, opts.json_indent, stdout)
        return 2
    except HolodiffError as exc:
        _emit({"error": exc.code, "detail": str(exc.detail)}, opts.json_indent, stdout)
        return 1
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        _emit({"error": "ParseError", "detail": str(exc)}, opts.json_indent, stdout)
        return 2
    _emit(report, opts.json_indent, stdout)
    return 0


__all__ = ["COMMANDS", "main", "run_job"]
