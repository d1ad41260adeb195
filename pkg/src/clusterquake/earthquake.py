"""The cluster earthquake map and everything the theorems say about it.

quake(P, g0, L) rescales the chart-v X-coordinates of g0 by exp of the
tropical coordinates of L, where v is a cone of the fan containing L;
the gluing lemma makes the choice of v immaterial on shared faces.  The
other operations are the inverse map, the one-sided derivative at t=0+,
the shear (u-) coordinates, the two asymptotic limits, and the cluster
reduction onto a face of the base cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import intmat
from .errors import HomeomorphismError, PreconditionError
from .patterns import ExchangePattern, enumerate_pattern
from .points import (
    LocatedCone,
    PositivePoint,
    TropicalPoint,
    locate_cone,
    log_transport,
    positive_transport,
    scale,
    tropical_transport,
)
from .seeds import ExchangeMatrix, Permutation
from . import _steps


@dataclass(frozen=True)
class EarthquakeResult:
    g: PositivePoint
    cone_vertex: int


@dataclass(frozen=True)
class TangentVector:
    base: PositivePoint
    chart: int
    delta: tuple  # components in d/d log X_i of the chart


def quake_multiplier(P: ExchangePattern, g0: PositivePoint, vid: int,
                     multipliers) -> PositivePoint:
    """Rescale the chart-vid coordinates of g0 componentwise and come back.

    This is the arithmetic core of quake: exact when g0 and the
    multipliers are rational, which the identity tests rely on.
    """
    gv = positive_transport(g0, P, vid)
    rescaled = PositivePoint(vid, tuple(m * x for m, x in zip(multipliers, gv.X)))
    return positive_transport(rescaled, P, g0.chart)


def quake(P: ExchangePattern, g0: PositivePoint, L: TropicalPoint,
          tol: float = 1e-9) -> EarthquakeResult:
    v = locate_cone(L, P, tol).vertex
    xv = tropical_transport(L, P, v).x
    g = quake_multiplier(P, g0, v, tuple(math.exp(float(c)) for c in xv))
    return EarthquakeResult(g, v)


def quake_log(P: ExchangePattern, log_g0, L: TropicalPoint,
              tol: float = 1e-9):
    """Base-chart log-coordinates of quake, safe for huge tropical points.

    log_g0 are base-chart log-coordinates of the starting point; returns
    (log-coordinates of the image in the base chart, cone vertex).
    """
    v = locate_cone(L, P, tol).vertex
    xv = tropical_transport(L, P, v).x
    log_gv = log_transport(log_g0, P, P.base, v)
    log_ev = tuple(float(a) + b for a, b in zip(xv, log_gv))
    return log_transport(log_ev, P, v, P.base), v


def inverse_quake(P: ExchangePattern, g0: PositivePoint, g: PositivePoint,
                  tol: float = 1e-9) -> TropicalPoint:
    """The tropical point L with quake(P, g0, L) = g (finite type only)."""
    for v in P.vertices:
        gv = positive_transport(g, P, v.id)
        g0v = positive_transport(g0, P, v.id)
        x = tuple(math.log(float(a) / float(b)) for a, b in zip(gv.X, g0v.X))
        if all(c >= -tol for c in x):
            return tropical_transport(TropicalPoint(v.id, x), P, P.base)
    raise HomeomorphismError(
        "no chart realizes the inverse earthquake image; the fan is "
        "probably not complete (non-finite-type input?)")


def u_coords(P: ExchangePattern, g: PositivePoint, L: TropicalPoint,
             v0: int | None = None):
    """Shear coordinates log(X^(v0)(quake(g, L)) / X^(v0)(g))."""
    if v0 is None:
        v0 = P.base
    log_g_base = log_transport(tuple(math.log(float(x)) for x in g.X),
                               P, g.chart, P.base)
    log_e_base, _ = quake_log(P, log_g_base, L)
    log_e = log_transport(log_e_base, P, P.base, v0)
    log_g = log_transport(log_g_base, P, P.base, v0)
    return tuple(a - b for a, b in zip(log_e, log_g))


def dquake(P: ExchangePattern, g: PositivePoint, L: TropicalPoint,
           method: str = "analytic", fd_step: float = 1e-4) -> TangentVector:
    """One-sided derivative d/dt|_{t=0+} of log X(quake(g, tL)) in g's chart.

    The analytic path evaluates the tropical coordinates of L in its cone
    and pushes them through the log-coordinate Jacobian of each edge map;
    finite_difference is a Richardson-extrapolated one-sided difference,
    kept as an independent oracle.
    """
    if method == "finite_difference":
        h = fd_step
        d1 = [c / h for c in u_coords(P, g, scale(L, h), g.chart)]
        d2 = [c / (h / 2) for c in u_coords(P, g, scale(L, h / 2), g.chart)]
        delta = tuple(2 * b - a for a, b in zip(d1, d2))
        return TangentVector(g, g.chart, delta)
    if method != "analytic":
        raise ValueError(f"unknown dquake method {method!r}")

    v = locate_cone(L, P).vertex
    delta = tuple(float(c) for c in tropical_transport(L, P, v).x)
    log_at = log_transport(tuple(math.log(float(x)) for x in g.X),
                           P, g.chart, v)
    for at, edge in P.route(v, g.chart):
        eps = P.vertex(at).eps
        if edge[0] == "mu":
            jac = _steps.jac_mutation(log_at, eps.entries, edge[1])
            delta = intmat.matvec(jac, delta)
            log_at = _steps.log_mutation(log_at, eps.entries, edge[1])
        else:
            sigma = Permutation(edge[1])
            delta = _steps.apply_perm(delta, sigma)
            log_at = _steps.apply_perm(log_at, sigma)
    return TangentVector(g, g.chart, delta)


def limit_L(P: ExchangePattern, g0: PositivePoint, v: int, k: int, t: float):
    """Large-lamination limit along the k-th ray of cone v.

    estimate = log X^(v0)(quake(g0, t * L^(v)_k)) / t, computed in log
    space; target = column k of C^{-s}_{v->v0} (equivalently of
    C^s_{v->v0} + eps^(v0) F^s_{v->v0}), which the estimate approaches
    as t grows.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    ray = TropicalPoint(P.base, P.ray(v, k))
    log_g0 = log_transport(tuple(math.log(float(x)) for x in g0.X),
                           P, g0.chart, P.base)
    log_e, _ = quake_log(P, log_g0, scale(ray, t))
    estimate = tuple(c / t for c in log_e)
    opp = P.opposite()
    c_minus = opp.based_matrices(P.opposite_vertex(v)).C
    target = intmat.column(c_minus, k)
    return estimate, target


def limit_g(P: ExchangePattern, g: PositivePoint, v: int):
    """Shear-coordinate matrix of the cone rays at g, with its limit.

    Column k is u_coords(g, L^(v)_k); as g runs to infinity in the
    positive direction the matrix converges to C^s_{v->v0}.
    """
    n = P.n
    cols = [u_coords(P, g, TropicalPoint(P.base, P.ray(v, k)))
            for k in range(n)]
    u_matrix = tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))
    return u_matrix, P.cone_matrix(v)


def in_plus_region(P: ExchangePattern, vid: int, g0: PositivePoint,
                   g: PositivePoint, margin: float = 0.0) -> bool:
    """Whether g is in the region D+_(vid)(g0): X^(v)(g) >= X^(v)(g0),
    strictly by `margin` when margin > 0."""
    gv = positive_transport(g, P, vid)
    g0v = positive_transport(g0, P, vid)
    return all(a >= b * math.exp(margin) if margin > 0 else a >= b
               for a, b in zip(gv.X, g0v.X))


def _restrict(matrix, J):
    return tuple(tuple(matrix[i][j] for j in J) for i in J)


def cluster_reduce(P: ExchangePattern, v0: int, J, g0: PositivePoint,
                   L: TropicalPoint, tol: float = 1e-9) -> float:
    """Residual of the cluster-reduction square for the face of the base
    cone cut out by the directions J.

    Both ways around the square are evaluated: project the earthquake
    image of (g0, L) to the J-coordinates, and apply the rank-|J|
    earthquake of the restricted seed to the projected data.  L must lie
    in the star of the face (a cone reachable by J-mutations only).
    """
    J = sorted(set(J))
    if not J:
        raise PreconditionError("J must be a non-empty set of directions")
    if any(j < 0 or j >= P.n for j in J):
        raise PreconditionError("J contains out-of-range directions")

    if v0 == P.base:
        P0 = P
        g0_0 = positive_transport(g0, P, P.base)
        L0 = tropical_transport(L, P, P.base)
    else:
        P0 = enumerate_pattern(P.vertex(v0).eps, cap=P.cap,
                               include_permutations=P.include_permutations,
                               type_tag=f"{P.type_tag}@v{v0}")
        g0_0 = PositivePoint(0, positive_transport(g0, P, v0).X)
        L0 = TropicalPoint(0, tropical_transport(L, P, v0).x)

    # the star of the face: cones of vertices reachable by J-mutations
    star, queue = {P0.base}, [P0.base]
    while queue:
        w = queue.pop()
        for k in J:
            nxt = P0.mut_edges[(w, k)]
            if nxt not in star:
                star.add(nxt)
                queue.append(nxt)
    in_star = False
    for w in sorted(star):
        xw = tropical_transport(L0, P0, w).x
        if all(c >= -tol for c in xw):
            in_star = True
            break
    if not in_star:
        raise PreconditionError(
            "L lies outside the star of the face fixed by J")

    image = quake(P0, g0_0, L0).g.X
    reduced_seed = ExchangeMatrix.make(_restrict(P0.eps0.entries, J))
    PJ = enumerate_pattern(reduced_seed, cap=P.cap,
                           include_permutations=P.include_permutations,
                           type_tag=f"{P.type_tag}|J")
    gJ = PositivePoint(0, tuple(g0_0.X[j] for j in J))
    LJ = TropicalPoint(0, tuple(L0.x[j] for j in J))
    image_j = quake(PJ, gJ, LJ).g.X
    return max(abs(float(image[j]) - float(b))
               for j, b in zip(J, image_j))
