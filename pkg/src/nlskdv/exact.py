"""Closed-form decoupled ground states.

With the coupling switched off, each equation has an explicit sech-power
ground state at every mass.  These profiles seed the constrained solver
and serve as oracles for multipliers, residuals, and traveling waves.
The width parameter is found by root-finding on the grid-quadrature mass
rather than an analytic mass formula, so the construction is valid for
every admissible nonlinearity power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import UnattainedInfimumError, ValidationError
from .functionals import PhysParams
from .grid import Grid1D, RealField

_LAM_LO = 1e-12
_LAM_HI = 1e12


def _sech_pow(arg: np.ndarray, r: float) -> np.ndarray:
    """sech(arg)**r, evaluated in log form so huge arguments underflow to 0."""
    a = np.abs(arg)
    return np.exp(r * (np.log(2.0) - a - np.log1p(np.exp(-2.0 * a))))


@dataclass(frozen=True)
class SechProfile:
    """Profile A * sech(sqrt(lam) * x / r)**r.

    r is the exponent 2/p (or 2/q), so the argument scale sqrt(lam)/r
    equals sqrt(lam) * p / 2 for the corresponding nonlinearity power.
    """

    amplitude: float
    exponent: float
    lam: float

    def __post_init__(self):
        if self.amplitude <= 0 or self.exponent <= 0 or self.lam <= 0:
            raise ValidationError("sech profile parameters must be positive")

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        arg = np.sqrt(self.lam) * x / self.exponent
        return self.amplitude * _sech_pow(arg, self.exponent)

    def sample(self, grid: Grid1D) -> RealField:
        return RealField(grid, self.evaluate(grid.x))

    @staticmethod
    def fit(grid: Grid1D, values: np.ndarray, exponent: float) -> "SechProfile":
        """Recover (amplitude, lam) from sampled values of this family."""
        amp = float(np.max(values))
        center = int(np.argmax(values))
        # use a sample partway down the profile for a well-conditioned arccosh
        target = amp * 0.5
        idx = center + int(np.argmax(values[center:] < target))
        xoff = grid.x[idx] - grid.x[center]
        ratio = (values[idx] / amp) ** (1.0 / exponent)
        b = np.arccosh(1.0 / ratio) / xoff
        lam = float((b * exponent) ** 2)
        return SechProfile(amplitude=amp, exponent=exponent, lam=lam)


def _grid_mass(lam: float, power: float, beta: float, grid: Grid1D) -> float:
    amp = (lam / beta) ** (1.0 / power)
    vals = amp * _sech_pow(np.sqrt(lam) * power * grid.x / 2.0, 2.0 / power)
    return float(grid.dx * np.sum(vals ** 2))


def lambda_for_mass(target: float, power_p: float, beta: float,
                    grid: Grid1D) -> float:
    """Width parameter lam such that the sampled profile has squared norm target.

    The grid mass is strictly increasing in lam for powers below 4, so a
    bracketed bisection-secant hybrid on log(lam) converges safely.
    """
    if not (target > 0):
        raise ValidationError(f"target mass must be positive, got {target}")
    if not (beta > 0):
        raise ValidationError(f"beta must be positive, got {beta}")
    if not (0 < power_p < 4):
        raise ValidationError(f"power must lie in (0, 4), got {power_p}")

    def f(loglam):
        return _grid_mass(np.exp(loglam), power_p, beta, grid) - target

    lo, hi = np.log(_LAM_LO), np.log(_LAM_HI)
    flo, fhi = f(lo), f(hi)
    if not (flo < 0 < fhi):
        raise ValidationError(
            f"target mass {target} not bracketable on [{_LAM_LO}, {_LAM_HI}]")
    loglam = brentq(f, lo, hi, xtol=1e-14, rtol=8.9e-16)
    return float(np.exp(loglam))


def kdv_profile(t_mass: float, prm: PhysParams, grid: Grid1D) -> SechProfile:
    """Ground-state profile of the decoupled long-wave action at mass t."""
    p = prm.p_float
    lam = lambda_for_mass(t_mass, p, prm.beta2, grid)
    return SechProfile(amplitude=(lam / prm.beta2) ** (1.0 / p),
                       exponent=2.0 / p, lam=lam)


def kdv_ground(t_mass: float, prm: PhysParams, grid: Grid1D) -> RealField:
    """Sampled long-wave ground state with grid mass t_mass."""
    return kdv_profile(t_mass, prm, grid).sample(grid)


def nls_profile(s_mass: float, prm: PhysParams, grid: Grid1D) -> SechProfile:
    """Ground-state profile of the decoupled short-wave action at mass s.

    Requires beta1 > 0; with beta1 = 0 the infimum is zero and no
    profile attains it.
    """
    if prm.beta1 == 0.0:
        raise UnattainedInfimumError(
            "decoupled short-wave ground state needs a focusing "
            "self-interaction (beta1 > 0); the infimum is 0 and unattained")
    q = prm.q
    lam = lambda_for_mass(s_mass, q, prm.beta1, grid)
    return SechProfile(amplitude=(lam / prm.beta1) ** (1.0 / q),
                       exponent=2.0 / q, lam=lam)


def nls_ground(s_mass: float, prm: PhysParams, grid: Grid1D) -> RealField:
    """Sampled short-wave ground state (positive representative)."""
    return nls_profile(s_mass, prm, grid).sample(grid)
