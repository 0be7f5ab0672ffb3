"""Classical period sequences of Laurent polynomials.

The classical period of f is the power series whose k-th coefficient is the
constant term of f^k.  We keep a running power of f and extract constant
terms as we go, so requesting more terms of the same polynomial reuses
earlier work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .laurent import LaurentPolynomial, ZeroPolynomialError, parse_polynomial


@dataclass(frozen=True)
class PeriodSequence:
    """The first ``len(coefficients)`` classical period coefficients."""

    coefficients: tuple

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def to_json_dict(self):
        return {"terms": [str(c) for c in self.coefficients]}


class PeriodCalculator:
    """Streams constant terms of successive powers of a fixed polynomial."""

    def __init__(self, f):
        if not isinstance(f, LaurentPolynomial):
            raise TypeError("expected a LaurentPolynomial")
        if f.is_zero():
            raise ZeroPolynomialError("classical period of 0 is undefined")
        self.f = f
        self._power = LaurentPolynomial.one(f.rank)
        self._coeffs = [self._power.constant_term()]

    def coefficient(self, k):
        while len(self._coeffs) <= k:
            self._power = self._power * self.f
            self._coeffs.append(self._power.constant_term())
        return self._coeffs[k]

    def prefix(self, n_terms):
        if n_terms < 0:
            raise ValueError("n_terms must be >= 0")
        if n_terms:
            self.coefficient(n_terms - 1)
        return PeriodSequence(tuple(self._coeffs[:n_terms]))


def classical_period(f, n_terms):
    """First ``n_terms`` coefficients of the classical period of f."""
    return PeriodCalculator(f).prefix(n_terms)


def periods_agree(f, g, n_terms):
    """Compare two period sequences termwise.

    Either argument may be a LaurentPolynomial or a PeriodSequence covering
    at least ``n_terms`` terms.  Returns (True, None) on agreement, else
    (False, first_mismatch_index).
    """
    a = _as_prefix(f, n_terms)
    b = _as_prefix(g, n_terms)
    for k in range(n_terms):
        if a[k] != b[k]:
            return False, k
    return True, None


def _as_prefix(obj, n_terms):
    if isinstance(obj, PeriodSequence):
        if len(obj) < n_terms:
            raise ValueError(f"sequence has only {len(obj)} terms, "
                             f"need {n_terms}")
        return obj.coefficients
    if isinstance(obj, LaurentPolynomial):
        return classical_period(obj, n_terms).coefficients
    raise TypeError("expected LaurentPolynomial or PeriodSequence")


# ---------------------------------------------------------------------------
# reference series


def _projective_plane(k):
    # nonzero only in degrees divisible by 3
    if k % 3:
        return 0
    m = k // 3
    return factorial(3 * m) // factorial(m) ** 3


def _quadric_surface_product(k):
    if k % 2:
        return 0
    return comb(k, k // 2) ** 2


def _cubic_threefold(k):
    if k % 2:
        return 0
    m = k // 2
    return factorial(2 * m) * factorial(3 * m) // factorial(m) ** 5


_DEL_PEZZO_4_GENERATOR = ("2*x + x*y + 2*y + y*x^-1 + 2*x^-1 + "
                          "x^-1*y^-1 + 2*y^-1 + x*y^-1")
_del_pezzo_4_calc = None


def _del_pezzo_4(k):
    # no simple closed form is on record; generated from a standard
    # degree-4 del Pezzo model
    global _del_pezzo_4_calc
    if _del_pezzo_4_calc is None:
        _del_pezzo_4_calc = PeriodCalculator(
            parse_polynomial(_DEL_PEZZO_4_GENERATOR))
    return _del_pezzo_4_calc.coefficient(k)


KNOWN_SERIES = {
    "projective-plane": _projective_plane,
    "quadric-surface-product": _quadric_surface_product,
    "cubic-threefold": _cubic_threefold,
    "del-pezzo-4": _del_pezzo_4,
}


def known_series(tag, n_terms):
    """Reference period sequence for a named Fano variety."""
    try:
        gen = KNOWN_SERIES[tag]
    except KeyError:
        raise KeyError(f"unknown series tag {tag!r}; "
                       f"available: {sorted(KNOWN_SERIES)}") from None
    return PeriodSequence(tuple(gen(k) for k in range(n_terms)))
