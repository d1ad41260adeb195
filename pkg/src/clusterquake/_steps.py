"""Single-edge coordinate transformations.

These are the building blocks shared by the pattern enumerator and the
point-transport code: one mutation step (or one relabeling step) applied
to tropical coordinates, positive coordinates, log-positive coordinates
and log-coordinate tangent vectors.  Each function takes the exchange
matrix of the chart the step starts from.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _sgn(x):
    return (x > 0) - (x < 0)


def trop_mutation(x, eps, k):
    """Tropical cluster transformation x -> x' along mutation k.

    x'_k = -x_k,  x'_i = x_i - eps_ik * min(0, -sgn(eps_ik) * x_k).
    Exact for int/Fraction inputs.
    """
    out = list(x)
    xk = x[k]
    out[k] = -xk
    for i, row in enumerate(eps):
        if i == k:
            continue
        e = row[k]
        if e:
            out[i] = x[i] - e * min(0, -_sgn(e) * xk)
    return tuple(out)


def pos_mutation(X, eps, k):
    """Positive-real cluster transformation along mutation k.

    X'_k = 1/X_k,  X'_i = X_i * (1 + X_k^{-sgn eps_ik})^{-eps_ik}.
    Exact for int and Fraction inputs (ints are promoted to Fraction so
    that negative powers stay rational).
    """
    out = list(X)
    Xk = X[k]
    if not isinstance(Xk, float):
        Xk = Fraction(Xk)
    out[k] = 1 / Xk
    for i, row in enumerate(eps):
        if i == k:
            continue
        e = row[k]
        if e:
            s = _sgn(e)
            out[i] = X[i] * (1 + Xk ** (-s)) ** (-e)
    return tuple(out)


def _softplus(t):
    # log(1 + e^t) without overflow
    if t > 0:
        return t + math.log1p(math.exp(-t))
    return math.log1p(math.exp(t))


def log_mutation(u, eps, k):
    """pos_mutation conjugated by log: u = log X componentwise."""
    out = list(u)
    uk = u[k]
    out[k] = -uk
    for i, row in enumerate(eps):
        if i == k:
            continue
        e = row[k]
        if e:
            s = _sgn(e)
            out[i] = u[i] - e * _softplus(-s * uk)
    return tuple(out)


def jac_mutation(u, eps, k):
    """Jacobian of log_mutation at log-coordinates u (row-major tuples).

    d log X'_k / d log X_k = -1;  d log X'_i / d log X_i = 1;
    d log X'_i / d log X_k = |eps_ik| * sigma(-sgn(eps_ik) * u_k)
    with sigma the logistic function; all other entries vanish.
    """
    n = len(u)
    rows = []
    for i in range(n):
        row = [0.0] * n
        if i == k:
            row[k] = -1.0
        else:
            row[i] = 1.0
            e = eps[i][k]
            if e:
                s = _sgn(e)
                row[k] = abs(e) / (1.0 + math.exp(s * u[k]))
        rows.append(tuple(row))
    return tuple(rows)


def apply_perm(vec, sigma):
    """Relabeled coordinates: out_i = vec[sigma^{-1}(i)]."""
    inv = sigma.inverse()
    return tuple(vec[inv(i)] for i in range(len(vec)))


def perm_matrix(sigma):
    n = len(sigma)
    inv = sigma.inverse()
    return tuple(
        tuple(1.0 if j == inv(i) else 0.0 for j in range(n)) for i in range(n)
    )
