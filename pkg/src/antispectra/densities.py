"""Closed-form limiting densities, the moment generating function, and
series/PDE cross-checks in exact arithmetic."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .combinatorics import (SigmaTable, double_factorial, moment_pte_pte,
                            schroeder_numbers, sigma_table)

#: Edge of the support of the two-GOE limiting density.
SUPPORT_GOE_GOE = math.sqrt((11 + 5 * math.sqrt(5)) / 2)

#: Offset below which the density formula is 0/0; see density_goe_goe.
_ZERO_OFFSET = 1e-6


@dataclass
class DensityCurve:
    """A density tabulated on an ascending grid."""

    x: np.ndarray
    density: np.ndarray
    support: tuple

    def write_csv(self, f):
        f.write("x,density\n")
        for xi, di in zip(self.x, self.density):
            f.write(f"{xi:.17g},{di:.17g}\n")


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series with exact integer coefficients."""

    coefficients: tuple
    order: int

    def as_dict(self):
        return {"order": self.order,
                "coefficients": [str(c) for c in self.coefficients]}


def density_goe_goe(x):
    """Limiting spectral density of the anticommutator of two GOEs.

    Vanishes outside |x| <= sqrt((11+5*sqrt(5))/2) ~ 3.33019.  The
    formula is indeterminate at the origin, so inputs inside a 1e-6
    window are evaluated at the window edge (the function changes by
    O(1e-12) across it).  Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    ax = np.maximum(np.abs(x), _ZERO_OFFSET)
    x2 = ax * ax
    # Inner square root argument hits zero exactly at the support edge;
    # clamp below it so rounding cannot go negative.
    inner = np.maximum(x2 * (1 + 11 * x2 - x2 * x2) / 27, 0.0)
    h = np.cbrt((18 * x2 + 1) / 27 + np.sqrt(inner))
    dens = -(np.sqrt(3) / (2 * np.pi * ax)) * ((3 * x2 + 1) / (9 * h) - h)
    dens = np.where(np.abs(x) <= SUPPORT_GOE_GOE, dens, 0.0)
    return float(dens) if scalar else dens


def _chi1_pdf(t):
    # chi^2 with one degree of freedom
    return np.exp(-t / 2) / np.sqrt(2 * np.pi * t)


def density_pte_pte(x):
    """Limiting spectral density for two palindromic Toeplitz factors.

    The law is the difference of two iid chi^2_1 variables; the density
    is their convolution, computed by adaptive quadrature with the
    1/sqrt endpoint singularity handled by an algebraic weight.  The
    origin is a (log-)singular point and is rejected; integrate across
    it instead.
    """
    if x == 0:
        raise ValueError("singular point: density diverges at x = 0")
    ax = abs(x)
    # after u = t - ax the integrand is u^(-1/2) * smooth
    upper = max(40.0, 8 * ax)

    def smooth(u):
        return np.exp(-(2 * u + ax) / 2) / (2 * np.pi * np.sqrt(u + ax))

    val, _ = integrate.quad(smooth, 0, upper, weight="alg", wvar=(-0.5, 0),
                            epsabs=1e-12, epsrel=1e-10, limit=200)
    return val


def mgf_pte_pte(z):
    """Moment generating function (1 - 4 z^2)^(-1/2) on |z| < 1/2."""
    if abs(z) >= 0.5:
        raise ValueError(f"out of domain: need |z| < 1/2, got {z}")
    return 1.0 / math.sqrt(1 - 4 * z * z)


def mgf_pte_pte_series(z, terms=20):
    """Partial sum of the moment series sum_m M_2m z^(2m) / (2m)!.

    Converges on |z| < 1/2 (ratio test against the closed form); the
    truncation keeps moment orders up through 2*terms.
    """
    if abs(z) >= 0.5:
        raise ValueError(f"out of domain: need |z| < 1/2, got {z}")
    total = 1.0
    for m in range(1, terms + 1):
        total += moment_pte_pte(m) * z ** (2 * m) / math.factorial(2 * m)
    return total


def schroeder_series(order):
    """Series solution of F = 1 + z (F^2 + F^3) with F(0) = 1.

    Coefficient m is the 2m-th limiting moment of the two-GOE
    anticommutator; the first few are 1, 2, 10, 66, 498.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > 30:
        raise ValueError(f"order {order} beyond supported truncation 30")
    return PowerSeries(coefficients=tuple(schroeder_numbers(order)), order=order)


@dataclass(frozen=True)
class PdeResidualReport:
    """Outcome of the coefficientwise functional-equation check."""

    n_max: int
    s_max: int
    max_residual: Fraction

    @property
    def ok(self):
        return self.max_residual == 0


def check_sigma_pde(n_max, s_max, table=None):
    """Verify the generating function F(z,w) = sum sigma_{n,s} z^n w^s / s!
    solves F = (1-2w)^(-1/2) + z (dF/dw(z,0) F + F(z,0) dF/dw).

    Everything is exact rational arithmetic, so the expected residual is
    exactly 0; any nonzero residual means the table and the functional
    equation disagree.
    """
    if table is None:
        table = sigma_table(n_max, s_max + 1)
    if table.n_max < n_max or table.s_max < s_max + 1:
        raise ValueError("table too shallow for the requested check")
    sig = table.value
    residual = Fraction(0)
    for n in range(0, n_max + 1):
        for s in range(0, s_max + 1):
            lhs = Fraction(sig(n, s), math.factorial(s))
            if n == 0:
                rhs = Fraction(double_factorial(2 * s - 1), math.factorial(s))
            else:
                acc = Fraction(0)
                for k in range(1, n + 1):
                    acc += sig(k - 1, 1) * Fraction(sig(n - k, s), math.factorial(s))
                    acc += sig(k - 1, 0) * Fraction(sig(n - k, s + 1), math.factorial(s))
                rhs = acc
            residual = max(residual, abs(lhs - rhs))
    return PdeResidualReport(n_max=n_max, s_max=s_max, max_residual=residual)


def tabulate_density(pair, grid):
    """Evaluate a named limiting density on a grid, as a DensityCurve.

    For the palindromic pair a grid point at exactly 0 is nudged to the
    neighbouring average to step over the singularity.
    """
    grid = np.asarray(grid, dtype=float)
    if pair == "goe-goe":
        return DensityCurve(x=grid, density=density_goe_goe(grid),
                            support=(-SUPPORT_GOE_GOE, SUPPORT_GOE_GOE))
    if pair == "pte-pte":
        vals = np.array([density_pte_pte(x) if x != 0 else
                         (density_pte_pte(-1e-4) + density_pte_pte(1e-4)) / 2
                         for x in grid])
        return DensityCurve(x=grid, density=vals,
                            support=(-np.inf, np.inf))
    raise ValueError(f"no closed-form density for pair {pair!r}")
