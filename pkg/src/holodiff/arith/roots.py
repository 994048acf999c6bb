"""Rational roots of polynomials over Q."""

from fractions import Fraction
from functools import lru_cache

import sympy

from .rat import frac_part

_Z = sympy.Symbol("z")


@lru_cache(maxsize=4096)
def _factor_key(nums):
    expr = sympy.Poly(list(reversed(nums)), _Z, domain="ZZ")
    _, factors = expr.factor_list()
    roots = {}
    irrational = False
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = Fraction(-int(b), int(a))
            roots[r] = roots.get(r, 0) + mult
        elif f.degree() > 1:
            irrational = True
    return tuple(sorted(roots.items())), irrational


def root_data(p):
    """``(dict root -> multiplicity, has_irrational_roots)`` for a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.is_constant():
        return {}, False
    roots, irr = _factor_key(tuple(p.primitive_int()))
    return dict(roots), irr


def rational_roots(p):
    return root_data(p)[0]


def roots_in_orbit(p, orbit_rep):
    """Rational roots of ``p`` congruent to ``orbit_rep`` modulo the integers, with multiplicity."""
    rep = Fraction(orbit_rep)
    return {r: m for r, m in rational_roots(p).items() if frac_part(r - rep) == 0}


def has_irrational_roots(p):
    if p.is_zero() or p.is_constant():
        return False
    return root_data(p)[1]


def collect_roots(polys):
    """Union of the rational roots of several polynomials and a flag for irrational ones."""
    roots = set()
    irrational = False
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        r, irr = root_data(p)
        roots.update(r)
        irrational = irrational or irr
    return roots, irrational
