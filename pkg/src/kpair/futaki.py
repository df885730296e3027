"""Expansion coefficients and Futaki invariants of polarized degenerations.

For a one-parameter degeneration of an n-fold with a divisor, the dimension
and total-weight sequences of the variety and of the divisor expand as

    d_k  = a0 k^n     + a1 k^(n-1)   + ...
    w_k  = b0 k^(n+1) + b1 k^n       + ...
    dt_k = a0_t k^(n-1) + a1_t k^(n-2) + ...
    wt_k = b0_t k^n   + b1_t k^(n-1) + ...

The pair invariant with angle parameter beta is

    Fut(beta) = 2 (a1 b0 - a0 b1) / a0 + (1 - beta) (b0_t - (a0_t / a0) b0),

and beta = 1 recovers the classical invariant.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatchError
from .exact import interpolate

STABLE = "stable"
SEMISTABLE_BOUNDARY = "semistable-boundary"
UNSTABLE = "unstable"


@dataclass(frozen=True)
class ExpansionCoefficients:
    """The eight leading coefficients; tilded quantities carry the _t suffix.

    a1_t and b1_t are retained so fits can certify degree bounds on the tilded
    sequences, but no invariant below reads them.
    """

    a0: Fraction
    a1: Fraction
    b0: Fraction
    b1: Fraction
    a0_t: Fraction
    a1_t: Fraction
    b0_t: Fraction
    b1_t: Fraction

    def scaled(self, t) -> "ExpansionCoefficients":
        t = Fraction(t)
        return ExpansionCoefficients(*(t * v for v in self.as_tuple()))

    def as_tuple(self):
        return (self.a0, self.a1, self.b0, self.b1,
                self.a0_t, self.a1_t, self.b0_t, self.b1_t)


@dataclass(frozen=True)
class FutakiClassification:
    label: str


def fit_from_sequences(n: int,
                       ks: Sequence[int],
                       d: Sequence,
                       w: Sequence,
                       d_t: Sequence,
                       w_t: Sequence) -> ExpansionCoefficients:
    """Interpolate the four sampled sequences exactly and read off coefficients.

    The samples must lie in the exactly-polynomial regime of degrees
    (n, n+1, n-1, n); a higher interpolated degree means the caller sampled
    outside that regime and raises DegreeMismatchError.
    """
    if n < 1:
        raise ValueError(f"fit_from_sequences requires n >= 1, got {n}")
    lists = {"d": d, "w": w, "d_t": d_t, "w_t": w_t}
    for name, seq in lists.items():
        if len(seq) != len(ks):
            raise ValueError(f"sequence {name} has length {len(seq)} != len(ks)={len(ks)}")
    if len(ks) < n + 2:
        raise ValueError(f"need at least n+2={n + 2} samples, got {len(ks)}")
    if any(ks[i] >= ks[i + 1] for i in range(len(ks) - 1)):
        raise ValueError("ks must be strictly increasing")

    bounds = {"d": n, "w": n + 1, "d_t": n - 1, "w_t": n}
    polys = {}
    for name, seq in lists.items():
        poly = interpolate(list(zip(ks, seq)))
        if poly.degree > bounds[name]:
            raise DegreeMismatchError(
                f"sequence {name} interpolates to degree {poly.degree} > {bounds[name]}; "
                "samples are outside the polynomial regime")
        polys[name] = poly

    coeffs = ExpansionCoefficients(
        a0=polys["d"].coefficient(n),
        a1=polys["d"].coefficient(n - 1),
        b0=polys["w"].coefficient(n + 1),
        b1=polys["w"].coefficient(n),
        a0_t=polys["d_t"].coefficient(n - 1),
        a1_t=polys["d_t"].coefficient(n - 2),
        b0_t=polys["w_t"].coefficient(n),
        b1_t=polys["w_t"].coefficient(n - 1),
    )
    if coeffs.a0 <= 0:
        raise DegreeMismatchError(
            f"dimension sequence has leading coefficient {coeffs.a0}; "
            f"expected a positive degree-{n} leading term")
    return coeffs


def futaki_pair(c: ExpansionCoefficients, beta) -> Fraction:
    """Pair Futaki invariant at angle parameter beta, exactly."""
    if c.a0 == 0:
        raise ValueError("futaki_pair requires a0 != 0")
    beta = Fraction(beta)
    classical = 2 * (c.a1 * c.b0 - c.a0 * c.b1) / c.a0
    return classical + (1 - beta) * (c.b0_t - (c.a0_t / c.a0) * c.b0)


def futaki_classical(c: ExpansionCoefficients) -> Fraction:
    """Classical Futaki invariant 2 (a1 b0 - a0 b1) / a0, exactly."""
    if c.a0 == 0:
        raise ValueError("futaki_classical requires a0 != 0")
    return 2 * (c.a1 * c.b0 - c.a0 * c.b1) / c.a0


def lambda_to_beta(lam) -> Fraction:
    """Angle parameter beta = (3*lambda - 2) / lambda."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda_to_beta requires lambda != 0")
    return (3 * lam - 2) / lam


def beta_to_lambda(beta) -> Fraction:
    """Inverse map lambda = 2 / (3 - beta)."""
    beta = Fraction(beta)
    if beta == 3:
        raise ValueError("beta_to_lambda requires beta != 3")
    return Fraction(2) / (3 - beta)


def classify(fut) -> FutakiClassification:
    """Sign-based stability label for a single Futaki value."""
    fut = Fraction(fut)
    if fut > 0:
        return FutakiClassification(STABLE)
    if fut == 0:
        return FutakiClassification(SEMISTABLE_BOUNDARY)
    return FutakiClassification(UNSTABLE)
