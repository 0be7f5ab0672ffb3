"""Fitting linear recurrences with polynomial coefficients to period series.

A recurrence of order r and coefficient degree d is a relation

    q_0(k) c_k + q_1(k) c_{k-1} + ... + q_r(k) c_{k-r} = 0   for k >= r

with each q_j an integer polynomial.  Fitting is a graded exact nullspace
search over (r, d); the tail of the input is held back from the fit and
used to screen spurious solutions.  A fitted recurrence converts to a
differential operator in D = t d/dt annihilating the generating series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .linalg import nullspace

# -- dense univariate polynomials in k, ascending coefficients ---------------


def _poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return tuple(p)


def _poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_add(p, q):
    n = max(len(p), len(q))
    return _poly_trim([(p[i] if i < len(p) else 0) +
                       (q[i] if i < len(q) else 0) for i in range(n)])


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_shift(p, s):
    """The polynomial p(k + s)."""
    out = ()
    power = (1,)
    base = (s, 1)
    for c in p:
        out = _poly_add(out, _poly_mul((c,), power))
        power = _poly_mul(power, base)
    return out


def _poly_str(p, var):
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            v = var if i == 1 else f"{var}^{i}"
            body = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialRecurrence:
    """Normalized relation sum_j q_j(k) c_{k-j} = 0 valid for k >= order.

    Coefficients are integer tuples (ascending powers of k) with overall
    content 1 and the leading coefficient of q_0 positive.  The first
    ``order`` series terms are kept so the boundary behaviour of the
    matching differential operator can be decided later.
    """

    order: int
    degree: int
    coefficients: tuple  # q_0 .. q_order
    initial_terms: tuple

    def check(self, k, terms):
        """Value of the relation at index k against the given terms."""
        return sum(_poly_eval(q, k) * terms[k - j]
                   for j, q in enumerate(self.coefficients) if k - j >= 0)

    def to_string(self):
        parts = [f"({_poly_str(q, 'k')})*c[k-{j}]" if j else
                 f"({_poly_str(q, 'k')})*c[k]"
                 for j, q in enumerate(self.coefficients) if q]
        return " + ".join(parts) + " = 0"


def _normalize(qs):
    denom = 1
    for q in qs:
        for c in q:
            denom = lcm(denom, Fraction(c).denominator)
    ints = [[int(Fraction(c) * denom) for c in q] for q in qs]
    content = 0
    for q in ints:
        for c in q:
            content = gcd(content, c)
    if content > 1:
        ints = [[c // content for c in q] for q in ints]
    lead = next((q[-1] for q in [_poly_trim(ints[0])] if q), 0)
    if lead < 0 or (lead == 0 and any(
            _poly_trim(q) and _poly_trim(q)[-1] < 0 for q in ints)):
        ints = [[-c for c in q] for q in ints]
    return tuple(_poly_trim(q) for q in ints)


def fit_recurrence(terms, r_max=6, d_max=8):
    """Smallest recurrence fitting the series, or None.

    The search is graded by order + degree (ties to the smaller order).
    The last r_max + 5 terms never enter the linear system; a candidate is
    accepted only when it checks against every supplied term.
    """
    terms = list(terms)
    n = len(terms)
    holdout = r_max + 5
    for total in range(1, r_max + d_max + 1):
        for r in range(1, min(r_max, total) + 1):
            d = total - r
            if d > d_max:
                continue
            fit_top = n - holdout
            if fit_top <= r:
                continue
            rows = []
            for k in range(r, fit_top):
                row = []
                for j in range(r + 1):
                    c = terms[k - j]
                    for e in range(d + 1):
                        row.append(Fraction(c * k ** e))
                rows.append(row)
            if len(rows) < (r + 1) * (d + 1):
                continue
            for vec in nullspace(rows):
                qs = [tuple(vec[j * (d + 1):(j + 1) * (d + 1)])
                      for j in range(r + 1)]
                if not _poly_trim(qs[0]):
                    continue
                rec = PolynomialRecurrence(r, d, _normalize(qs),
                                           tuple(terms[:r]))
                ok, _ = verify_recurrence(rec, terms)
                if ok:
                    return rec
    return None


def verify_recurrence(rec, terms):
    """Check the relation at every index it covers.

    Returns (True, None) or (False, first failing index).
    """
    for k in range(rec.order, len(terms)):
        if rec.check(k, terms) != 0:
            return False, k
    return True, None


# ---------------------------------------------------------------------------
# differential operators


@dataclass(frozen=True)
class DifferentialOperator:
    """Operator sum_j t^j p_j(D) with D = t d/dt, p_j integer polynomials."""

    coefficients: tuple  # p_0 .. p_m, ascending coefficient tuples

    def apply_to_series(self, terms):
        """Coefficients of the image of sum c_k t^k, same length as input."""
        out = []
        for k in range(len(terms)):
            out.append(sum(_poly_eval(p, k - j) * terms[k - j]
                           for j, p in enumerate(self.coefficients)
                           if j <= k))
        return out

    def annihilates(self, terms):
        return all(v == 0 for v in self.apply_to_series(terms))

    def to_string(self):
        parts = []
        for j, p in enumerate(self.coefficients):
            if not p:
                continue
            body = _poly_str(p, "D")
            if j == 0:
                parts.append(body if len(p) == 1 or "+" not in body and
                             not body.count("- ") else f"({body})")
            else:
                t = "t" if j == 1 else f"t^{j}"
                parts.append(f"{t}*({body})")
        return " + ".join(parts) if parts else "0"

    def to_recurrence(self, initial_terms=()):
        """The recurrence satisfied by any series the operator annihilates."""
        qs = [_poly_shift(p, -j) for j, p in enumerate(self.coefficients)]
        r = len(qs) - 1
        d = max((len(q) - 1 for q in qs if q), default=0)
        return PolynomialRecurrence(r, d, _normalize(qs),
                                    tuple(initial_terms[:r]))


def to_differential_operator(rec):
    """Differential operator annihilating every series obeying the
    recurrence with the stored initial terms.

    The raw operator sum_j t^j q_j(D + j) enforces the relation only from
    index ``order`` on; for each earlier index where the truncated relation
    misses zero, the whole relation is multiplied by (k - k0), which
    annihilates that coefficient without disturbing the rest.
    """
    qs = [list(q) for q in rec.coefficients]
    if len(rec.initial_terms) < rec.order:
        raise ValueError("recurrence is missing its initial terms")
    for k0 in range(rec.order):
        residue = sum(_poly_eval(qs[j], k0) * rec.initial_terms[k0 - j]
                      for j in range(k0 + 1))
        if residue != 0:
            qs = [list(_poly_mul(tuple(q), (-k0, 1))) for q in qs]
    ps = [_poly_shift(_poly_trim(q), j) for j, q in enumerate(qs)]
    while ps and not ps[-1]:
        ps.pop()
    return DifferentialOperator(tuple(ps))
