"""Fubini-Study geometry of cycles in complex projective space.

Conventions
-----------
The Fubini-Study form is normalized so a projective line has volume 1
(omega = (i / 2 pi) ddbar log |z|^2).  A cycle is a multiplicity-weighted
union of parametrized rational curves and points; curve components are
integrated over two affine charts |t| <= 1 and the inverted chart, in polar
coordinates with tensor Gauss-Legendre (radial) x trapezoid (angular) rules,
refined until successive estimates agree to half the requested tolerance.

A Hermitian form G enters by rewriting every coordinate vector in a
G-orthonormal frame (upper Cholesky factor applied on the left); the center
of mass and Chow weights returned are expressed in that frame.  The center
of mass is

    mu(V) = integral_V (z z*/|z|^2) dmu_FS - (Vol(V) / (N+1)) Id,

the pair version weights the two cycles by lambda and 1 - lambda, and the
Chow weight of a generator A is CH(V, A) = -Tr(mu(V) A).

The lemma31/lemma32 coefficient oracles return the exact rational pushforward
coefficients of the fiberwise Fubini-Study powers of a two-block ruled
embedding; they are assembled from Beta integrals, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .errors import QuadratureAccuracyError, VerificationError
from .exact import beta_integral, binomial

DEFAULT_TOL = 1e-10
_HERMITIAN_TOL = 1e-12
_MAX_REFINEMENTS = 5

# ---------------------------------------------------------------------------
# linear-algebra carriers


class HermitianMatrix:
    """Thin wrapper around an (N+1) x (N+1) complex Hermitian ndarray."""

    __slots__ = ("m",)

    def __init__(self, entries) -> None:
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > _HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian to componentwise 1e-12")
        self.m = 0.5 * (m + m.conj().T)

    @classmethod
    def identity(cls, size: int) -> "HermitianMatrix":
        return cls(np.eye(size))

    @classmethod
    def diagonal(cls, entries) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(entries, dtype=float)))

    @property
    def size(self) -> int:
        return self.m.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.m).real)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.m))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.m)))

    def traceless_part(self) -> "HermitianMatrix":
        n = self.size
        return HermitianMatrix(self.m - (np.trace(self.m).real / n) * np.eye(n))

    def __repr__(self) -> str:
        return f"HermitianMatrix(size={self.size}, frobenius={self.frobenius():.6g})"


class HermitianForm:
    """Positive definite Hermitian form on the coordinate vector space."""

    __slots__ = ("gram", "_frame")

    def __init__(self, gram: HermitianMatrix) -> None:
        if not isinstance(gram, HermitianMatrix):
            gram = HermitianMatrix(gram)
        eigs = np.linalg.eigvalsh(gram.m)
        if eigs[0] <= 1e-10:
            raise ValueError(f"form is not positive definite: min eigenvalue {eigs[0]:.3e}")
        self.gram = gram
        # Upper-triangular R with R^H R = G; |R z| is the G-norm of z.
        self._frame = np.linalg.cholesky(gram.m).conj().T

    @classmethod
    def identity(cls, size: int) -> "HermitianForm":
        return cls(HermitianMatrix.identity(size))

    @property
    def size(self) -> int:
        return self.gram.size

    def frame(self) -> np.ndarray:
        """Matrix R mapping coordinates to a G-orthonormal frame (R^H R = G)."""
        return self._frame

    def condition_number(self) -> float:
        eigs = np.linalg.eigvalsh(self.gram.m)
        return float(eigs[-1] / eigs[0])

    def __repr__(self) -> str:
        return f"HermitianForm(size={self.size}, cond={self.condition_number():.6g})"


class ProjectivePoint:
    """A point of CP^N held as a unit coordinate vector."""

    __slots__ = ("v",)

    def __init__(self, coordinates) -> None:
        v = np.asarray(coordinates, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm < 1e-3:
            raise ValueError("coordinate vector is zero or too close to zero")
        self.v = v / norm

    @property
    def ambient_dim(self) -> int:
        return self.v.shape[0] - 1

    @classmethod
    def coordinate(cls, index: int, ambient_dim: int) -> "ProjectivePoint":
        v = np.zeros(ambient_dim + 1, dtype=complex)
        v[index] = 1.0
        return cls(v)

    def __repr__(self) -> str:
        return f"ProjectivePoint(N={self.ambient_dim})"


class RationalCurveChart:
    """Parametrized rational curve t -> [sum_m C[:, m] t^m] of degree d >= 1.

    The coefficient matrix C is (N+1) x (d+1).  Validity requires the map to
    be nonvanishing on C and to have a nonvanishing limit direction at
    infinity: the first and last columns must be nonzero and the vector is
    sampled on circles in both charts.
    """

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs) -> None:
        C = np.asarray(coeffs, dtype=complex)
        if C.ndim != 2 or C.shape[1] < 2:
            raise ValueError(f"coefficient matrix must be (N+1) x (d+1) with d >= 1, got {C.shape}")
        scale = np.max(np.abs(C))
        if scale == 0:
            raise ValueError("coefficient matrix is zero")
        if np.linalg.norm(C[:, 0]) <= 1e-12 * scale:
            raise ValueError("curve vanishes at t = 0 (first coefficient column is zero)")
        if np.linalg.norm(C[:, -1]) <= 1e-12 * scale:
            raise ValueError("curve has no limit direction at infinity (last column is zero)")
        self.coeffs = C
        self.degree = C.shape[1] - 1
        for M in (C, C[:, ::-1]):
            ts = _validation_nodes()
            Z = M @ _power_stack(ts, self.degree)
            if np.min(np.linalg.norm(Z, axis=0)) <= 1e-9 * scale:
                raise ValueError("curve map (nearly) vanishes at a sampled parameter")

    @property
    def ambient_dim(self) -> int:
        return self.coeffs.shape[0] - 1

    def reversed_chart(self) -> "RationalCurveChart":
        """Chart swap t -> 1/t; columns reversed."""
        return RationalCurveChart(self.coeffs[:, ::-1])

    def transformed(self, matrix: np.ndarray) -> "RationalCurveChart":
        return RationalCurveChart(np.asarray(matrix, dtype=complex) @ self.coeffs)

    def evaluate(self, ts) -> np.ndarray:
        """Coordinate vectors at the given parameters, shape (N+1, len(ts))."""
        ts = np.asarray(ts, dtype=complex).reshape(-1)
        return self.coeffs @ _power_stack(ts, self.degree)

    def __repr__(self) -> str:
        return f"RationalCurveChart(degree={self.degree}, N={self.ambient_dim})"


@dataclass
class ProjectiveCycle:
    """Weighted union of rational curves and points in a common CP^N."""

    curves: List[Tuple[RationalCurveChart, int]] = field(default_factory=list)
    points: List[Tuple[ProjectivePoint, int]] = field(default_factory=list)
    ambient_dim: int = 0

    def __post_init__(self):
        for chart, mult in self.curves:
            if chart.ambient_dim != self.ambient_dim:
                raise ValueError("curve component lives in a different ambient space")
            if mult < 1:
                raise ValueError("multiplicities must be positive integers")
        for point, mult in self.points:
            if point.ambient_dim != self.ambient_dim:
                raise ValueError("point component lives in a different ambient space")
            if mult < 1:
                raise ValueError("multiplicities must be positive integers")

    def degree_weight(self) -> int:
        """Sum of multiplicity * degree over curves plus point multiplicities."""
        return (sum(m * c.degree for c, m in self.curves)
                + sum(m for _, m in self.points))

    def transformed(self, matrix: np.ndarray) -> "ProjectiveCycle":
        matrix = np.asarray(matrix, dtype=complex)
        return ProjectiveCycle(
            curves=[(c.transformed(matrix), m) for c, m in self.curves],
            points=[(ProjectivePoint(matrix @ p.v), m) for p, m in self.points],
            ambient_dim=self.ambient_dim,
        )


# ---------------------------------------------------------------------------
# quadrature rules

_RULE_CACHE: Dict[Tuple[int, int], Tuple[np.ndarray, np.ndarray]] = {}


def _disk_rule(n_radial: int, n_angular: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for integral over the unit disk of f(t) dA(t)."""
    key = (n_radial, n_angular)
    cached = _RULE_CACHE.get(key)
    if cached is not None:
        return cached
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    r = 0.5 * (x + 1.0)
    wr = 0.5 * wx
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    wt = 2.0 * np.pi / n_angular
    ts = (r[:, None] * np.exp(1j * theta)[None, :]).reshape(-1)
    ws = (wr * r)[:, None].repeat(n_angular, axis=1).reshape(-1) * wt
    _RULE_CACHE[key] = (ts, ws)
    return ts, ws


def _power_stack(ts: np.ndarray, degree: int) -> np.ndarray:
    """Rows t^0 .. t^degree, shape (degree+1, len(ts))."""
    out = np.empty((degree + 1, ts.shape[0]), dtype=complex)
    out[0] = 1.0
    for m in range(1, degree + 1):
        out[m] = out[m - 1] * ts
    return out


def _validation_nodes() -> np.ndarray:
    radii = np.array([0.2, 0.5, 0.8, 1.0])
    theta = 2.0 * np.pi * np.arange(12) / 12
    return (radii[:, None] * np.exp(1j * theta)[None, :]).reshape(-1)


def _chart_vol_moment(C: np.ndarray, ts: np.ndarray, ws: np.ndarray) -> Tuple[float, np.ndarray]:
    """Volume and raw moment integral of one affine chart over the unit disk."""
    degree = C.shape[1] - 1
    powers = _power_stack(ts, degree)
    Z = C @ powers
    dpowers = np.zeros_like(powers)
    if degree >= 1:
        dpowers[1:] = powers[:-1] * np.arange(1, degree + 1)[:, None]
    Zp = C @ dpowers
    n2 = np.einsum("ip,ip->p", Z, Z.conj()).real
    np2 = np.einsum("ip,ip->p", Zp, Zp.conj()).real
    ip = np.einsum("ip,ip->p", Zp, Z.conj())
    density = (n2 * np2 - np.abs(ip) ** 2) / (np.pi * n2 * n2)
    w = ws * density
    vol = float(np.sum(w))
    moment = (Z * (w / n2)) @ Z.conj().T
    return vol, moment


def _curve_vol_moment(chart: RationalCurveChart, tol: float) -> Tuple[float, np.ndarray]:
    """Two-chart integral of (1, z z*/|z|^2) over the curve, with refinement."""
    d = chart.degree
    n_rad = 24 + 6 * d
    n_ang = max(24, 4 * d + 8)
    rev = chart.reversed_chart()
    prev = None
    for _ in range(_MAX_REFINEMENTS + 1):
        ts, ws = _disk_rule(n_rad, n_ang)
        v1, m1 = _chart_vol_moment(chart.coeffs, ts, ws)
        v2, m2 = _chart_vol_moment(rev.coeffs, ts, ws)
        value = (v1 + v2, m1 + m2)
        if prev is not None:
            diff = abs(value[0] - prev[0]) + float(np.linalg.norm(value[1] - prev[1]))
            if diff < tol / 2:
                return value
        prev = value
        n_rad *= 2
        n_ang *= 2
    raise QuadratureAccuracyError(
        f"curve quadrature did not reach tol={tol:.3e} within {_MAX_REFINEMENTS} refinements",
        achieved=diff, estimate=prev)


def _cycle_vol_moment(cycle: ProjectiveCycle, G: HermitianForm,
                      tol: float) -> Tuple[float, np.ndarray]:
    """Volume and raw moment of a cycle in the G-orthonormal frame."""
    if G.size != cycle.ambient_dim + 1:
        raise ValueError("Hermitian form size does not match the ambient space")
    R = G.frame()
    size = G.size
    vol = 0.0
    moment = np.zeros((size, size), dtype=complex)
    for chart, mult in cycle.curves:
        v, m = _curve_vol_moment(chart.transformed(R), tol)
        vol += mult * v
        moment += mult * m
    for point, mult in cycle.points:
        u = R @ point.v
        u = u / np.linalg.norm(u)
        vol += mult
        moment += mult * np.outer(u, u.conj())
    return vol, moment


# ---------------------------------------------------------------------------
# public integral operations


def hamiltonian(A: HermitianMatrix, z: ProjectivePoint) -> float:
    """H_A(z) = z* A z / |z|^2 for a unit representative z."""
    if A.size != z.ambient_dim + 1:
        raise ValueError("generator size does not match the point's ambient space")
    value = complex(z.v.conj() @ (A.m @ z.v))
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        raise ValueError(f"Hamiltonian has imaginary residue {value.imag:.3e}")
    return float(value.real)


def fs_volume(cycle: ProjectiveCycle, G: HermitianForm | None = None,
              tol: float = DEFAULT_TOL) -> float:
    """Fubini-Study volume: quadrature over curves plus point multiplicities."""
    G = G or HermitianForm.identity(cycle.ambient_dim + 1)
    vol, _ = _cycle_vol_moment(cycle, G, tol)
    return vol


def center_of_mass(cycle: ProjectiveCycle, G: HermitianForm | None = None,
                   tol: float = DEFAULT_TOL) -> HermitianMatrix:
    """Traceless center of mass of the cycle, in the G-orthonormal frame."""
    G = G or HermitianForm.identity(cycle.ambient_dim + 1)
    vol, moment = _cycle_vol_moment(cycle, G, tol)
    n = G.size
    mu = moment - (vol / n) * np.eye(n)
    return HermitianMatrix(0.5 * (mu + mu.conj().T))


def pair_center_of_mass(V: ProjectiveCycle, W: ProjectiveCycle, lam,
                        G: HermitianForm | None = None,
                        tol: float = DEFAULT_TOL) -> HermitianMatrix:
    """lambda-weighted center of mass of the pair (V, W)."""
    lam = Fraction(lam)
    if not (0 <= lam <= 1):
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    if V.ambient_dim != W.ambient_dim:
        raise ValueError("pair cycles must share an ambient space")
    G = G or HermitianForm.identity(V.ambient_dim + 1)
    lam_f = float(lam)
    vol_v, mom_v = _cycle_vol_moment(V, G, tol)
    vol_w, mom_w = _cycle_vol_moment(W, G, tol)
    n = G.size
    mu = (lam_f * mom_v + (1.0 - lam_f) * mom_w
          - ((lam_f * vol_v + (1.0 - lam_f) * vol_w) / n) * np.eye(n))
    return HermitianMatrix(0.5 * (mu + mu.conj().T))


def chow_weight(V: ProjectiveCycle, A: HermitianMatrix,
                G: HermitianForm | None = None, tol: float = DEFAULT_TOL) -> float:
    """CH(V, A) = -Tr(mu(V) A); A is read in the same frame as mu."""
    mu = center_of_mass(V, G, tol)
    if mu.size != A.size:
        raise ValueError("generator size does not match the ambient space")
    return -float(np.trace(mu.m @ A.m).real)


def pair_chow_weight(V: ProjectiveCycle, W: ProjectiveCycle, A: HermitianMatrix,
                     lam, G: HermitianForm | None = None,
                     tol: float = DEFAULT_TOL) -> float:
    """CH(V, W, A, lambda) = -Tr(mu(V, W, lambda) A)."""
    mu = pair_center_of_mass(V, W, lam, G, tol)
    if mu.size != A.size:
        raise ValueError("generator size does not match the ambient space")
    return -float(np.trace(mu.m @ A.m).real)


# ---------------------------------------------------------------------------
# fiber-integral coefficient oracles

def lemma31_coefficients(n: int) -> List[Fraction]:
    """Pushforward coefficients of omega_FS^n along the ruling; all equal 1.

    Entry i is n * C(n-1, i) * beta_integral(i, n-1-i), the fiber integral
    multiplying omega_2^i ^ omega_1^(n-1-i).
    """
    if n < 1:
        raise ValueError(f"lemma31_coefficients requires n >= 1, got {n}")
    return [Fraction(n) * binomial(n - 1, i) * beta_integral(i, n - 1 - i)
            for i in range(n)]


def lemma32_coefficients(n: int) -> List[Tuple[Fraction, Fraction]]:
    """Fiber integrals of the two block densities |t|^2/(1+|t|^2) and 1/(1+|t|^2).

    Entry i is the pair ((i+1)/(n+1), (n-i)/(n+1)), assembled from Beta
    integrals:

        first  = n C(n-1, i) beta_integral(i+1, n-1-i)
        second = n C(n-1, i) beta_integral(i,   n-i)
    """
    if n < 1:
        raise ValueError(f"lemma32_coefficients requires n >= 1, got {n}")
    out = []
    for i in range(n):
        first = Fraction(n) * binomial(n - 1, i) * beta_integral(i + 1, n - 1 - i)
        second = Fraction(n) * binomial(n - 1, i) * beta_integral(i, n - i)
        out.append((first, second))
    return out


@dataclass
class Lemma32Report:
    n: int
    tol: float
    max_abs_deviation: float
    worst: Tuple[int, int]  # (i, side)
    deviations: List[Tuple[int, float, float]]  # (i, dev_first, dev_second)

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation < self.tol


def _halfline_integral(f: Callable[[np.ndarray], np.ndarray], tol: float) -> float:
    """integral_0^inf f(x) dx via [0,1] plus the inverted chart, refined GL."""
    n = 48
    prev = None
    for _ in range(_MAX_REFINEMENTS + 1):
        x, w = np.polynomial.legendre.leggauss(n)
        u = 0.5 * (x + 1.0)
        wu = 0.5 * w
        value = float(np.sum(wu * f(u)) + np.sum(wu * f(1.0 / u) / u**2))
        if prev is not None and abs(value - prev) < tol / 2:
            return value
        prev = value
        n *= 2
    raise QuadratureAccuracyError(
        f"half-line quadrature did not reach tol={tol:.3e}",
        achieved=abs(value - prev), estimate=value)


def quadrature_check_lemma32(n: int, tol: float) -> Lemma32Report:
    """Compare numerical fiber integrals against the exact lemma32 coefficients.

    Integrates n C(n-1, i) x^r (1+x)^(-n-2) with r = i+1 and r = i over the
    radial fiber coordinate and reports the worst absolute deviation.  Raises
    VerificationError if the deviation reaches tol.
    """
    if n < 1:
        raise ValueError(f"quadrature_check_lemma32 requires n >= 1, got {n}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    exact = lemma32_coefficients(n)
    deviations = []
    worst = (0, 0)
    worst_dev = -1.0
    for i in range(n):
        factor = float(n * binomial(n - 1, i))
        devs = []
        for side, r in enumerate((i + 1, i)):
            numeric = _halfline_integral(
                lambda x, r=r: factor * x**r * (1.0 + x) ** (-(n + 2)), min(tol, 1e-10))
            dev = abs(numeric - float(exact[i][side]))
            devs.append(dev)
            if dev > worst_dev:
                worst_dev = dev
                worst = (i, side)
        deviations.append((i, devs[0], devs[1]))
    report = Lemma32Report(n=n, tol=tol, max_abs_deviation=worst_dev,
                           worst=worst, deviations=deviations)
    if not report.passed:
        raise VerificationError(
            f"fiber quadrature deviation {worst_dev:.3e} >= tol at (n={n}, i={worst[0]})",
            report=report)
    return report


# ---------------------------------------------------------------------------
# serialization

def _complex_pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def cycle_to_json(cycle: ProjectiveCycle) -> dict:
    """JSON document for a cycle; matrices row-major as [re, im] pairs."""
    return {
        "ambient_dim": cycle.ambient_dim,
        "curves": [
            {
                "degree": chart.degree,
                "coeffs": [[_complex_pair(z) for z in row] for row in chart.coeffs],
                "mult": mult,
            }
            for chart, mult in cycle.curves
        ],
        "points": [
            {"coords": [_complex_pair(z) for z in point.v], "mult": mult}
            for point, mult in cycle.points
        ],
    }


def cycle_from_json(doc: dict) -> ProjectiveCycle:
    curves = []
    for entry in doc.get("curves", []):
        coeffs = np.array([[complex(re, im) for re, im in row] for row in entry["coeffs"]])
        chart = RationalCurveChart(coeffs)
        if chart.degree != entry["degree"]:
            raise ValueError(f"declared degree {entry['degree']} != matrix degree {chart.degree}")
        curves.append((chart, int(entry.get("mult", 1))))
    points = []
    for entry in doc.get("points", []):
        v = np.array([complex(re, im) for re, im in entry["coords"]])
        points.append((ProjectivePoint(v), int(entry.get("mult", 1))))
    return ProjectiveCycle(curves=curves, points=points,
                           ambient_dim=int(doc["ambient_dim"]))


def matrix_to_json(A: HermitianMatrix) -> dict:
    return {"entries": [[_complex_pair(z) for z in row] for row in A.m]}


def matrix_from_json(doc: dict) -> HermitianMatrix:
    m = np.array([[complex(re, im) for re, im in row] for row in doc["entries"]])
    return HermitianMatrix(m)
