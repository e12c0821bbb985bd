"""Fourier-Motzkin elimination over Q.

Small exact feasibility / optimization kernel used by the noise module to
decide cone questions: which lattice offsets a norm-eps cone vector can
dominate, and the minimal norm needed to dominate a given offset. Systems
here have a handful of variables (one per cone generator plus one slack),
so the classical double-description blowup is irrelevant.

A constraint is (coeffs, rhs, strict): sum(coeffs[i] * x_i) <= rhs,
with strict inequality when strict is True. Equalities are encoded as two
opposite inequalities by callers.
"""

from __future__ import annotations

from fractions import Fraction

Constraint = tuple  # (tuple[Fraction, ...], Fraction, bool)


def _combine(lo, hi):
    """Eliminate the shared variable between a lower and an upper bound."""
    (cl, dl, sl), (cu, du, su), j = lo[0], hi[0], lo[1]
    a = -cl[j]  # > 0
    b = cu[j]   # > 0
    coeffs = tuple(b * x + a * y for x, y in zip(cl, cu))
    return (coeffs, b * dl + a * du, sl or su)


def eliminate(constraints, j):
    """Project the system onto the hyperplane ignoring variable j."""
    lowers, uppers, keep = [], [], []
    for c in constraints:
        coeff = c[0][j]
        if coeff > 0:
            uppers.append(((c[0], c[1], c[2]), j))
        elif coeff < 0:
            lowers.append(((c[0], c[1], c[2]), j))
        else:
            keep.append(c)
    for lo in lowers:
        for up in uppers:
            keep.append(_combine(lo, up))
    return keep


def _normalize(constraints, nvars):
    out = []
    for coeffs, rhs, strict in constraints:
        assert len(coeffs) == nvars
        out.append((tuple(Fraction(c) for c in coeffs), Fraction(rhs), bool(strict)))
    return out


def feasible(constraints, nvars) -> bool:
    """Does the system admit a rational solution?"""
    cons = _normalize(constraints, nvars)
    for j in range(nvars):
        cons = eliminate(cons, j)
    for coeffs, rhs, strict in cons:
        if rhs < 0 or (strict and rhs == 0):
            return False
    return True


def minimize(constraints, nvars, obj) -> Fraction | None:
    """Infimum of variable `obj` over the (closed) system, or None if empty.

    Callers must pass non-strict constraints only; the feasible region is then
    closed, so a finite infimum is attained. Raises on an unbounded objective
    since no caller expects one.
    """
    cons = _normalize(constraints, nvars)
    assert all(not s for _, _, s in cons), "minimize requires non-strict constraints"
    for j in range(nvars):
        if j == obj:
            continue
        cons = eliminate(cons, j)
    lower = None
    upper = None
    for coeffs, rhs, _ in cons:
        c = coeffs[obj]
        if c > 0:
            bound = rhs / c
            upper = bound if upper is None else min(upper, bound)
        elif c < 0:
            bound = rhs / c
            lower = bound if lower is None else max(lower, bound)
        elif rhs < 0:
            return None
    if lower is not None and upper is not None and upper < lower:
        return None
    if lower is None:
        raise ValueError("objective unbounded below")
    return lower
