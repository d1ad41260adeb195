"""Sparse integer polynomials in y_0..y_{n-1} and the F-polynomial recursion.

Terms are stored as a map {exponent tuple: coefficient}; zero coefficients
are never kept.  Division is exact leading-term elimination from the low
end (graded-lex, smallest first), which terminates because every
F-polynomial produced by the recursion has constant term 1.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InternalConsistencyError


def _grlex_key(exp):
    return (sum(exp), exp)


class FPolynomial:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        clean = {}
        for exp, coef in terms.items():
            if coef:
                clean[tuple(exp)] = int(coef)
        self.terms = clean
        self._hash = None

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, nvars, value=1):
        return cls(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars, j):
        exp = tuple(1 if i == j else 0 for i in range(nvars))
        return cls(nvars, {exp: 1})

    @classmethod
    def monomial(cls, nvars, exps, coef=1):
        return cls(nvars, {tuple(exps): coef})

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for exp, coef in other.terms.items():
            c = out.get(exp, 0) + coef
            if c:
                out[exp] = c
            else:
                out.pop(exp, None)
        return FPolynomial(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for exp, coef in other.terms.items():
            c = out.get(exp, 0) - coef
            if c:
                out[exp] = c
            else:
                out.pop(exp, None)
        return FPolynomial(self.nvars, out)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(exp, 0) + c1 * c2
                if c:
                    out[exp] = c
                else:
                    del out[exp]
        return FPolynomial(self.nvars, out)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = FPolynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exact_div(self, divisor):
        """self / divisor with remainder required to vanish."""
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        d_exp = min(divisor.terms, key=_grlex_key)
        d_coef = divisor.terms[d_exp]
        rem = dict(self.terms)
        quo = {}
        while rem:
            exp = min(rem, key=_grlex_key)
            coef = rem[exp]
            q_exp = tuple(a - b for a, b in zip(exp, d_exp))
            if min(q_exp) < 0 or coef % d_coef:
                raise InternalConsistencyError(
                    "inexact polynomial division (wrong C or eps supplied?)")
            q_coef = coef // d_coef
            quo[q_exp] = q_coef
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(q_exp, e2))
                c = rem.get(e, 0) - q_coef * c2
                if c:
                    rem[e] = c
                else:
                    rem.pop(e, None)
        return FPolynomial(self.nvars, quo)

    # -- queries ---------------------------------------------------------

    def eval(self, ys):
        """Evaluate at positive numbers (exactly when they are Fractions)."""
        if len(ys) != self.nvars:
            raise ValueError("wrong number of values")
        if any(y <= 0 for y in ys):
            raise ValueError("F-polynomials are evaluated at positive points")
        total = 0
        for exp, coef in self.terms.items():
            term = coef
            for y, e in zip(ys, exp):
                if e:
                    term = term * y ** e
            total += term
        return total

    def eval_log(self, log_ys):
        """log F(y) from log y, via a max-shifted log-sum-exp."""
        import math

        if not self.terms:
            return float("-inf")
        logs = []
        for exp, coef in self.terms.items():
            if coef <= 0:
                raise InternalConsistencyError(
                    "log evaluation needs positive coefficients")
            logs.append(math.log(coef) + sum(
                e * l for e, l in zip(exp, log_ys) if e))
        m = max(logs)
        return m + math.log(sum(math.exp(x - m) for x in logs))

    def max_degrees(self):
        """Componentwise maximal exponent over all terms (row of the F-matrix)."""
        degs = [0] * self.nvars
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e > degs[i]:
                    degs[i] = e
        return tuple(degs)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_one(self):
        return self.terms == {(0,) * self.nvars: 1}

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FPolynomial) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash",
                               hash(frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, key=_grlex_key):
            coef = self.terms[exp]
            mono = "*".join(
                f"y{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp) if e)
            if mono:
                bits.append(f"{coef}*{mono}" if coef != 1 else mono)
            else:
                bits.append(str(coef))
        return " + ".join(bits)

    def to_json(self):
        records = [{"exp": list(exp), "coef": self.terms[exp]}
                   for exp in sorted(self.terms, key=_grlex_key)]
        return json.dumps(records)

    @classmethod
    def from_json(cls, data, nvars=None):
        """Accepts the JSON text or the already-decoded record list."""
        records = json.loads(data) if isinstance(data, (str, bytes)) else data
        if nvars is None:
            if not records:
                raise ValueError("cannot infer variable count")
            nvars = len(records[0]["exp"])
        return cls(nvars, {tuple(r["exp"]): r["coef"] for r in records})


def poly_eval(f: FPolynomial, ys):
    return f.eval(ys)


def mutate_F(fs, c_matrix, eps, k):
    """One mutation step of the F-polynomial tuple in direction k.

    c_matrix is the C-matrix at the current vertex (rows = c-vectors) and
    eps its exchange matrix.  Only entry k changes:

        F_k' * F_k = prod_j y_j^[c_kj]+ * prod_l F_l^[eps_kl]+
                   + prod_j y_j^[-c_kj]+ * prod_l F_l^[-eps_kl]+

    The division is required to be exact.
    """
    n = len(fs)
    if not 0 <= k < n:
        raise IndexError(f"direction {k} out of range for rank {n}")
    c_row = c_matrix[k]
    e_row = eps.entries[k]
    pos = FPolynomial.monomial(n, tuple(max(0, x) for x in c_row))
    neg = FPolynomial.monomial(n, tuple(max(0, -x) for x in c_row))
    for l in range(n):
        if e_row[l] > 0:
            pos = pos * fs[l] ** e_row[l]
        elif e_row[l] < 0:
            neg = neg * fs[l] ** (-e_row[l])
    new_fk = (pos + neg).exact_div(fs[k])
    if new_fk.constant_term() != 1:
        raise InternalConsistencyError("F-polynomial lost its constant term 1")
    return tuple(new_fk if i == k else fs[i] for i in range(n))


def f_matrix(fs):
    """Matrix of maximal degrees: row i lists the top exponent of each
    variable in F_i."""
    return tuple(f.max_degrees() for f in fs)
