"""Points of the cluster X-manifold and its tropicalization.

A point is pinned to a chart (a pattern vertex) and carries the
coordinate vector seen there.  Transport walks the pattern edge by edge;
arithmetic is whatever the inputs are made of, so Fraction coordinates
stay exact end to end and floats take the fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _steps, intmat
from .errors import CompletenessError
from .patterns import ExchangePattern
from .seeds import Permutation


@dataclass(frozen=True)
class TropicalPoint:
    chart: int
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        for v in self.x:
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError("tropical coordinates must be finite")


@dataclass(frozen=True)
class PositivePoint:
    chart: int
    X: tuple

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        if any(not v > 0 for v in self.X):
            raise ValueError("positive points need strictly positive coordinates")


class LocatedCone(NamedTuple):
    vertex: int
    boundary: tuple  # per-coordinate "on the boundary" flags


def _walk(P: ExchangePattern, coords, steps, step_mutation):
    if len(coords) != P.n:
        raise ValueError(
            f"point has {len(coords)} coordinates, pattern has rank {P.n}")
    for at, edge in steps:
        eps = P.vertex(at).eps
        if edge[0] == "mu":
            coords = step_mutation(coords, eps.entries, edge[1])
        else:
            coords = _steps.apply_perm(coords, Permutation(edge[1]))
    return coords


def tropical_transport(L: TropicalPoint, P: ExchangePattern,
                       target: int) -> TropicalPoint:
    """Piecewise-linear transport of tropical coordinates to another chart."""
    steps = P.route(L.chart, target)
    return TropicalPoint(target, _walk(P, L.x, steps, _steps.trop_mutation))


def positive_transport(g: PositivePoint, P: ExchangePattern,
                       target: int) -> PositivePoint:
    """Positive-real transport (exact when coordinates are Fractions)."""
    steps = P.route(g.chart, target)
    return PositivePoint(target, _walk(P, g.X, steps, _steps.pos_mutation))


def log_transport(logX, P: ExchangePattern, src: int, target: int):
    """positive_transport conjugated by log, overflow-safe (floats)."""
    steps = P.route(src, target)
    return _walk(P, tuple(map(float, logX)), steps, _steps.log_mutation)


def scale(L: TropicalPoint, t) -> TropicalPoint:
    """The R_{>0}-action on tropical points (commutes with transport)."""
    if not t > 0:
        raise ValueError("scaling factor must be positive")
    return TropicalPoint(L.chart, tuple(v * t for v in L.x))


def locate_cone(L: TropicalPoint, P: ExchangePattern,
                tol: float = 1e-9) -> LocatedCone:
    """Smallest vertex id whose closed cone contains L (within tol).

    Membership is tested in base-chart coordinates: L is in the cone of v
    iff C^s_{v->v0}^{-1} x^(v0)(L) is componentwise non-negative, and that
    vector is exactly x^(v)(L).  Exact for int/Fraction coordinates.
    """
    x0 = tropical_transport(L, P, P.base).x
    for v in P.vertices:
        lam = intmat.matvec(P.cone_matrix_inv(v.id), x0)
        if all(c >= -tol for c in lam):
            return LocatedCone(v.id, tuple(abs(c) <= tol for c in lam))
    raise CompletenessError(
        f"no cone of pattern {P.type_tag!r} contains {x0} (tol={tol})")


def _pow(base, e):
    # int ** negative int floats in Python; route through Fraction instead
    if e >= 0 or isinstance(base, float):
        return base ** e
    return Fraction(base) ** e


def separation_eval(P: ExchangePattern, vid: int, X0):
    """X-coordinates at chart vid from base-chart values X0, through the
    separation formula X_i = prod_j X0_j^{c_ij} * F_j(X0)^{eps_ij}."""
    if any(not x > 0 for x in X0):
        raise ValueError("separation formula needs positive coordinates")
    v = P.vertex(vid)
    f_vals = [f.eval(X0) for f in v.Fs]
    out = []
    for i in range(P.n):
        val = 1
        for j, x in enumerate(X0):
            c = v.C[i][j]
            if c:
                val = val * _pow(x, c)
        for j, fv in enumerate(f_vals):
            e = v.eps.entries[i][j]
            if e:
                val = val * _pow(fv, e)
        out.append(val)
    return tuple(out)
