"""JSON-friendly encodings of rationals, polynomials, matrices, series and profiles."""

from fractions import Fraction

from .arith.laurent import LaurentTrunc
from .arith.matrix import QMatrix, RatFuncMatrix
from .arith.poly import Poly
from .arith.rat import format_rat, to_rat
from .arith.ratfunc import RatFunc
from .errors import ParseError
from .parse import parse_ratfunc


def rat_out(x):
    return format_rat(x)


def rat_in(x):
    if isinstance(x, bool) or not isinstance(x, (int, str, Fraction)):
        raise ParseError(f"not a rational number: {x!r}")
    return to_rat(x)


def poly_out(p):
    return [format_rat(c) for c in p.coefficients]


def poly_in(data):
    if not isinstance(data, list):
        raise ParseError("polynomial must be a coefficient list")
    return Poly([rat_in(c) for c in data])


def ratfunc_out(f):
    return {"num": poly_out(f.num), "den": poly_out(f.den)}


def ratfunc_in(data):
    """Accept ``"1/(z-1)"``, a number, or ``{"num": [...], "den": [...]}``."""
    if isinstance(data, dict):
        if set(data) - {"num", "den"} or "num" not in data:
            raise ParseError(f"bad rational function object {data!r}")
        den = poly_in(data.get("den", ["1"]))
        if den.is_zero():
            raise ParseError("zero denominator")
        return RatFunc(poly_in(data["num"]), den)
    if isinstance(data, bool):
        raise ParseError("booleans are not rational functions")
    if isinstance(data, int):
        return RatFunc.constant(data)
    if isinstance(data, str):
        return parse_ratfunc(data)
    raise ParseError(f"cannot read a rational function from {data!r}")


def matrix_out(M):
    return [[ratfunc_out(x) for x in r] for r in M.tolist()]


def matrix_in(data):
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix must be a nonempty list of rows")
    n = len(data[0])
    if n == 0 or any(len(r) != n for r in data):
        raise ParseError("matrix rows must be nonempty and of equal length")
    return RatFuncMatrix([[ratfunc_in(x) for x in r] for r in data])


def qmatrix_in(data):
    M = matrix_in(data)
    rows = []
    for r in M.tolist():
        row = []
        for f in r:
            if not (f.is_poly() and f.num.is_constant()):
                raise ParseError("constant matrix expected")
            row.append(f.num.lc)
        rows.append(row)
    return QMatrix(rows)


def series_out(s):
    return {
        "point": format_rat(s.point),
        "valuation": s.valuation,
        "coefficients": [format_rat(c) for c in s.coefficients],
        "precision": s.precision,
    }


def series_in(data):
    try:
        point = rat_in(data.get("point", "0"))
        raw_v = data["valuation"]
        coeffs = [rat_in(c) for c in data["coefficients"]]
        prec = data.get("precision")
        if raw_v is None:
            if coeffs:
                raise ValueError("coefficients without a valuation")
            return LaurentTrunc.zero(point, None if prec is None else int(prec))
        v = int(raw_v)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad series {data!r}") from exc
    order = None if prec is None else int(prec) - v
    return LaurentTrunc(point, v, coeffs, order)


def profile_out(profile):
    return {format_rat(a): list(e) for a, e in sorted(profile.exponents.items())}


def partition_out(mod):
    return list(mod.partition) if hasattr(mod, "partition") else list(mod)
