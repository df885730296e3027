"""Exact rational arithmetic primitives.

Everything here is computed over `fractions.Fraction` with no rounding:
binomial coefficients, Newton-form polynomial interpolation, the Beta-type
integrals

    beta_integral(p, q) = integral_0^inf x^p (1+x)^(-p-q-2) dx
                        = p! q! / (p+q+1)!,

and the combinatorial weight-sum defect used to certify fiber-integral
identities.  These serve as oracles for the floating-point modules.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Tuple


class ExactPolynomial:
    """Dense univariate polynomial with Fraction coefficients, index = power.

    Trailing zero coefficients are stripped; the zero polynomial has an empty
    coefficient list and degree -1.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactPolynomial) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        if not self.coefficients:
            return "ExactPolynomial(0)"
        terms = " + ".join(
            f"({c})x^{i}" if i else f"({c})" for i, c in enumerate(self.coefficients) if c
        )
        return f"ExactPolynomial({terms})"


def binomial(m: int, r: int) -> Fraction:
    """C(m, r) with the combinatorial convention: 0 for r > m >= 0 and for m < 0."""
    if r < 0:
        raise ValueError(f"binomial requires r >= 0, got r={r}")
    if m < 0 or m < r:
        return Fraction(0)
    return Fraction(math.comb(m, r))


def interpolate(samples: Sequence[Tuple]) -> ExactPolynomial:
    """Unique polynomial of degree <= len(samples)-1 through the given (x, y) pairs.

    Uses Newton divided differences in exact rational arithmetic.
    """
    if len(samples) == 0:
        raise ValueError("interpolate requires at least one sample")
    xs = [Fraction(x) for x, _ in samples]
    ys = [Fraction(y) for _, y in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation x-values must be pairwise distinct")

    dd = ys[:]
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])

    # Horner assembly of sum_i dd[i] prod_{j<i} (x - x_j).
    coeffs = [dd[-1]]
    for i in range(len(xs) - 2, -1, -1):
        coeffs = [Fraction(0)] + coeffs
        for j in range(len(coeffs) - 1):
            coeffs[j] -= xs[i] * coeffs[j + 1]
        coeffs[0] += dd[i]
    return ExactPolynomial(coeffs)


def beta_integral(p: int, q: int) -> Fraction:
    """integral_0^inf x^p (1+x)^(-p-q-2) dx = p! q! / (p+q+1)!, exactly."""
    if p < 0 or q < 0:
        raise ValueError(f"beta_integral requires p, q >= 0, got ({p}, {q})")
    return Fraction(math.factorial(p) * math.factorial(q), math.factorial(p + q + 1))


def weight_sum_identity_defect(n: int, j: int) -> Fraction:
    """Defect of the split fiber-weight sum against n*j^(n-1).

    Returns sum_{i=0}^{n-1} [ (i+1)/(n+1) j^i (j-1)^(n-1-i)
                              + (n-i)/(n+1) (j+1)^i j^(n-1-i) ]  -  n j^(n-1).

    As a function of j this is a polynomial of degree <= n-3 (in particular it
    vanishes identically for n <= 2).
    """
    if n < 1:
        raise ValueError(f"weight_sum_identity_defect requires n >= 1, got {n}")
    if j < 1:
        raise ValueError(f"weight_sum_identity_defect requires j >= 1, got {j}")
    jf = Fraction(j)
    total = Fraction(0)
    for i in range(n):
        total += Fraction(i + 1, n + 1) * jf**i * (jf - 1) ** (n - 1 - i)
        total += Fraction(n - i, n + 1) * (jf + 1) ** i * jf ** (n - 1 - i)
    return total - n * jf ** (n - 1)
