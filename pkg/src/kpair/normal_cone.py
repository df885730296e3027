"""Deformation to the normal cone of a divisor, as exact sequence bookkeeping.

A HilbertModel records dim H^0(X, L^k) and dim H^0(D, L^j) for an n-fold X
with divisor D, linked by the restriction sequence
dim_D(j) = dim_X(j) - dim_X(j-1).  Twisting down by c times the exceptional
divisor splits the degree-k sections of the degenerate fiber as one copy of
H^0(X, L^((1-c)k)) plus the blocks H^0(D, L^(k-i)) carrying weight -(ck-i)
for i = 0..ck-1.  From that decomposition we generate the exact dimension and
weight sequences and the closed-form expansion coefficients:

    a1 = n a0 / 2,
    b0 = ((1 - (1-c)^(n+1)) / (n+1) - c) a0,      b1 = -n c a0 / 2,
    a0_t = n a0,                                   b0_t = -n c a0,

and the pair Futaki value  n beta (1 - (1-c)^(n+1)) / (n+1) * a0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .errors import InternalInconsistencyError
from .futaki import ExpansionCoefficients


@dataclass(frozen=True)
class HilbertModel:
    """Exact dimension tables for (X, D, L) with dim X = n.

    dim_X(k) must agree with a degree-n polynomial of leading coefficient a0
    for all k >= 1, and dim_D(j) = dim_X(j) - dim_X(j-1) for all j >= 1.
    """

    n: int
    dim_X: Callable[[int], int]
    dim_D: Callable[[int], int]
    a0: Fraction
    name: str = ""


@dataclass(frozen=True)
class NormalConeConfig:
    """A Hilbert model together with the twist parameter c in (0, 1)."""

    model: HilbertModel
    c: Fraction

    def __post_init__(self):
        c = self.c
        if not isinstance(c, (Fraction, int)):
            raise TypeError("c must be an exact Fraction (floats lose exactness)")
        object.__setattr__(self, "c", Fraction(c))
        if not (0 < self.c < 1):
            raise ValueError(f"c must lie in (0, 1), got {self.c}")


def hilbert_pn_anticanonical(n: int) -> HilbertModel:
    """Projective n-space with a smooth degree-(n+1) divisor, L the anticanonical class.

    dim_X(k) = C(k(n+1)+n, n), so a0 = (n+1)^n / n!.
    """
    if n < 1:
        raise ValueError(f"hilbert_pn_anticanonical requires n >= 1, got {n}")

    def dim_X(k: int) -> int:
        if k < 0:
            raise ValueError("dim_X needs k >= 0")
        return math.comb(k * (n + 1) + n, n)

    def dim_D(j: int) -> int:
        if j < 1:
            raise ValueError("dim_D needs j >= 1")
        return dim_X(j) - dim_X(j - 1)

    a0 = Fraction((n + 1) ** n, math.factorial(n))
    return HilbertModel(n=n, dim_X=dim_X, dim_D=dim_D, a0=a0, name=f"P{n}-anticanonical")


def sample_ks(c: Fraction, n: int, count: int | None = None) -> List[int]:
    """Admissible multiplier values: k = q (M + j) with q = denominator(c).

    M = max(2, ceil(1/(1-c))) guarantees ck integral, (1-c)k >= 1 and
    k - i >= 1 throughout the weight sum; count defaults to n+3 so fits can
    certify their degree bounds.
    """
    c = Fraction(c)
    if not (0 < c < 1):
        raise ValueError(f"c must lie in (0, 1), got {c}")
    if count is None:
        count = n + 3
    q = c.denominator
    M = max(2, math.ceil(1 / (1 - c)))
    return [q * (M + j) for j in range(count)]


def weight_sequences(config: NormalConeConfig,
                     ks: Sequence[int]) -> Tuple[List[Fraction], List[Fraction], List[Fraction], List[Fraction]]:
    """Exact (d, w, d_t, w_t) sequences of the degenerate fiber at each k.

    d(k) is assembled from the block decomposition and must reproduce
    dim_X(k); a mismatch means the model violates the restriction sequence
    and raises InternalInconsistencyError.
    """
    model, c = config.model, config.c
    d: List[Fraction] = []
    w: List[Fraction] = []
    d_t: List[Fraction] = []
    w_t: List[Fraction] = []
    for k in ks:
        ck = c * k
        if ck.denominator != 1:
            raise ValueError(f"c*k must be an integer; c={c}, k={k}")
        ck = int(ck)
        if (1 - c) * k < 1:
            raise ValueError(f"(1-c)k must be >= 1; c={c}, k={k}")
        base = int((1 - c) * k)
        dims = [model.dim_D(k - i) for i in range(ck)]  # k-i >= (1-c)k+1 >= 1
        dk = Fraction(model.dim_X(base)) + sum(Fraction(v) for v in dims)
        if dk != model.dim_X(k):
            raise InternalInconsistencyError(
                f"flatness violated at k={k}: block sum {dk} != dim_X(k) = {model.dim_X(k)}")
        wk = -sum(Fraction(ck - i) * dims[i] for i in range(ck))
        d.append(dk)
        w.append(wk)
        d_t.append(Fraction(model.dim_D(k)))
        w_t.append(Fraction(-ck * model.dim_D(k)))
    return d, w, d_t, w_t


def closed_form_coefficients(n: int, c, a0) -> ExpansionCoefficients:
    """Closed-form expansion coefficients of the normal-cone degeneration.

    a1_t and b1_t have no closed form here and are left as zero placeholders;
    comparisons against fitted coefficients must skip them.
    """
    if n < 1:
        raise ValueError(f"closed_form_coefficients requires n >= 1, got {n}")
    c = Fraction(c)
    a0 = Fraction(a0)
    if not (0 < c < 1):
        raise ValueError(f"c must lie in (0, 1), got {c}")
    if a0 <= 0:
        raise ValueError(f"a0 must be positive, got {a0}")
    b0 = ((1 - (1 - c) ** (n + 1)) / Fraction(n + 1) - c) * a0
    return ExpansionCoefficients(
        a0=a0,
        a1=Fraction(n) * a0 / 2,
        b0=b0,
        b1=-Fraction(n) * c * a0 / 2,
        a0_t=Fraction(n) * a0,
        a1_t=Fraction(0),
        b0_t=-Fraction(n) * c * a0,
        b1_t=Fraction(0),
    )


def futaki_normal_cone(n: int, c, beta, a0) -> Fraction:
    """n * beta * (1 - (1-c)^(n+1)) / (n+1) * a0, exactly."""
    if n < 1:
        raise ValueError(f"futaki_normal_cone requires n >= 1, got {n}")
    c = Fraction(c)
    if not (0 < c < 1):
        raise ValueError(f"c must lie in (0, 1), got {c}")
    beta = Fraction(beta)
    a0 = Fraction(a0)
    return Fraction(n) * beta * (1 - (1 - c) ** (n + 1)) / Fraction(n + 1) * a0
