"""Horocycle flow on tuples of upper-half-plane coordinates.

A central charge packages log X (real part) and tropical coordinates
(imaginary part) of a pair (g, L) in the chart whose cone contains L.
The horocycle flow z -> Re z + t Im z + i Im z is conjugate to the
earthquake flow under this lift, and the wall-crossing glue map is the
chart change on the locus where one coordinate is real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundaryError, GluingDomainError
from .patterns import ExchangePattern
from .points import PositivePoint, TropicalPoint, locate_cone, \
    positive_transport, scale, tropical_transport
from .earthquake import quake


@dataclass(frozen=True)
class CentralCharge:
    chart: int
    z: tuple  # complex entries, Im >= 0, none equal to 0

    def __post_init__(self):
        zs = tuple(complex(c) for c in self.z)
        object.__setattr__(self, "z", zs)
        for i, c in enumerate(zs):
            if c.imag < -1e-12:
                raise ValueError(
                    f"entry {i} of a central charge lies below the real axis")
            if c == 0:
                raise ValueError(f"entry {i} of a central charge is zero")


def glue(Z: CentralCharge, P: ExchangePattern, k: int,
         tol: float = 1e-9) -> CentralCharge:
    """Cross the k-th wall: defined only where z_k is real and nonzero.

    An involution (crossing back from the adjacent chart returns the
    input), and the identity on the geometric data: both charts describe
    the same pair (g, L) with L on the shared cone face.
    """
    z = Z.z
    if abs(z[k].imag) > tol:
        raise GluingDomainError(
            f"glue direction {k} needs a real coordinate there, got {z[k]}")
    if abs(z[k].real) <= tol:
        raise GluingDomainError(f"glue direction {k} hit the puncture z_{k}=0")
    eps = P.vertex(Z.chart).eps.entries
    s = 1 if z[k].real > 0 else -1
    zk = z[k].real
    out = list(z)
    out[k] = complex(-zk, 0.0)
    for i in range(len(z)):
        if i != k:
            out[i] = z[i] + max(0, -s * eps[i][k]) * zk
    return CentralCharge(P.mut_edges[(Z.chart, k)], tuple(out))


def horocycle_flow(Z: CentralCharge, t: float) -> CentralCharge:
    return CentralCharge(
        Z.chart,
        tuple(complex(c.real + t * c.imag, c.imag) for c in Z.z))


def lift(P: ExchangePattern, g: PositivePoint, L: TropicalPoint,
         tol: float = 1e-9) -> CentralCharge:
    """Central charge of (g, L): log X^(v)(g) + i x^(v)(L), v = cone of L.

    L must be interior to its cone; on a wall the imaginary part of some
    coordinate vanishes and the lift is ambiguous between charts.
    """
    located = locate_cone(L, P, tol)
    if any(located.boundary):
        walls = [i for i, b in enumerate(located.boundary) if b]
        raise BoundaryError(
            f"tropical point lies on wall(s) {walls} of cone "
            f"{located.vertex}; the lift needs an interior point")
    v = located.vertex
    gv = positive_transport(g, P, v)
    xv = tropical_transport(L, P, v)
    return CentralCharge(
        v, tuple(complex(math.log(float(a)), float(b))
                 for a, b in zip(gv.X, xv.x)))


def conjugacy_residual(P: ExchangePattern, g: PositivePoint,
                       L: TropicalPoint, t: float,
                       tol: float = 1e-9) -> float:
    """max_i |lift(quake(g, tL), L)_i - horocycle_flow(lift(g, L), t)_i|."""
    moved = quake(P, g, scale(L, t), tol).g
    lhs = lift(P, moved, L, tol)
    rhs = horocycle_flow(lift(P, g, L, tol), t)
    if lhs.chart != rhs.chart:
        raise AssertionError("lift landed in different charts")
    return max(abs(a - b) for a, b in zip(lhs.z, rhs.z))
