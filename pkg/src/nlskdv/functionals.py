"""Conserved functionals of the coupled NLS-KdV flow and their parameters.

The energy E, momentum-type functional G, and mass H are the quantities
the time integrator must preserve; the two single-equation actions J and
J~ drive the decoupled ground-state oracles.  All values are plain box
quadratures with no renormalization folded in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .grid import ComplexField, RealField, deriv_values, same_grid


def parse_odd_denominator(p) -> Fraction:
    """Coerce p to a Fraction and require an odd denominator.

    Floats are rejected (binary floats have power-of-two denominators);
    pass ints, Fractions, or strings like "3/5".
    """
    if isinstance(p, float):
        raise ValidationError(
            "p must be an int, Fraction, or 'num/den' string so the odd "
            f"denominator is exact; got float {p}")
    try:
        frac = Fraction(p)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse p={p!r} as a rational") from exc
    if frac.denominator % 2 == 0:
        raise ValidationError(
            f"p must have an odd denominator, got {frac}")
    if frac <= 0:
        raise ValidationError(f"p must be positive, got {frac}")
    return frac


def signed_power(values: np.ndarray, power: Fraction) -> np.ndarray:
    """Real rational power v**(a/b) with odd b, defined for negative v.

    Truth table for v < 0 (b odd, so the real b-th root exists):
        a even -> +|v|**(a/b)     e.g. (-8)**(2/3) = +4
        a odd  -> -|v|**(a/b)     e.g. (-8)**(1/3) = -2
    For v >= 0 this is the ordinary power.
    """
    power = Fraction(power)
    if power.denominator % 2 == 0:
        raise ValidationError(
            f"power {power} has an even denominator; sign is undefined")
    mag = np.abs(values) ** float(power)
    if power.numerator % 2 == 0:
        return mag
    return np.sign(values) * mag


@dataclass(frozen=True)
class PhysParams:
    """Physical constants of the coupled system.

    alpha is the coupling strength, tau1 and tau2 the self-interaction
    strengths, q the short-wave nonlinearity power and p the long-wave
    one (a positive rational with odd denominator so v**p makes sense
    for v < 0).  beta1 and beta2 are the derived energy coefficients.
    """

    alpha: float
    tau1: float
    tau2: float
    p: Fraction
    q: float
    beta1: float = field(init=False)
    beta2: float = field(init=False)

    def __post_init__(self):
        p = parse_odd_denominator(self.p)
        object.__setattr__(self, "p", p)
        if not (self.alpha >= 0):
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")
        if not (self.tau1 >= 0):
            raise ValidationError(f"tau1 must be >= 0, got {self.tau1}")
        if not (self.tau2 > 0):
            raise ValidationError(f"tau2 must be > 0, got {self.tau2}")
        if not (1 <= self.q < 4):
            raise ValidationError(f"q must lie in [1, 4), got {self.q}")
        if not (Fraction(1) <= p < Fraction(4)):
            raise ValidationError(f"p must lie in [1, 4), got {p}")
        pf = float(p)
        object.__setattr__(self, "beta1", 2.0 * self.tau1 / (self.q + 2.0))
        object.__setattr__(self, "beta2",
                           2.0 * self.tau2 / ((pf + 1.0) * (pf + 2.0)))

    @property
    def p_float(self) -> float:
        return float(self.p)

    def stability_regime(self) -> bool:
        """True when the long-wave power sits in the proven stability range."""
        return self.p < Fraction(4, 3)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "tau1": self.tau1, "tau2": self.tau2,
            "p": f"{self.p.numerator}/{self.p.denominator}", "q": self.q,
            "beta1": self.beta1, "beta2": self.beta2,
        }


@dataclass(frozen=True)
class ConservedTriple:
    """Snapshot of the three conserved quantities."""

    E: float
    G: float
    H: float

    def to_json(self) -> str:
        return json.dumps({"E": self.E, "G": self.G, "H": self.H},
                          sort_keys=True)


def energy_values(u: np.ndarray, v: np.ndarray, prm: PhysParams,
                  grid) -> float:
    """Energy quadrature on raw sample arrays (u may be real or complex)."""
    ux = deriv_values(u, grid)
    vx = deriv_values(v, grid)
    au = np.abs(u)
    integrand = (np.abs(ux) ** 2 + vx ** 2
                 - prm.beta1 * au ** (prm.q + 2.0)
                 - prm.beta2 * signed_power(v, prm.p + 2)
                 - prm.alpha * au ** 2 * v)
    return float(grid.dx * np.sum(integrand))


def energy(u: ComplexField, v: RealField, prm: PhysParams) -> float:
    """E(u, v): kinetic terms minus the three potential terms."""
    g = same_grid(u, v)
    return energy_values(u.values, v.values, prm, g)


def charge(u: ComplexField) -> float:
    """H(u) = int |u|^2 dx."""
    return float(u.grid.dx * np.sum(np.abs(u.values) ** 2))


def momentum(u: ComplexField, v: RealField) -> float:
    """G(u, v) = int v^2 dx + Im int u conj(u_x) dx."""
    g = same_grid(u, v)
    ux = deriv_values(u.values, g)
    im_part = float(np.imag(g.dx * np.sum(u.values * np.conj(ux))))
    return float(g.dx * np.sum(v.values ** 2)) + im_part


def kdv_action(gfield: RealField, prm: PhysParams) -> float:
    """J(g) = int (g_x^2 - beta2 g^(p+2)) dx, the long-wave action."""
    grid = gfield.grid
    gx = deriv_values(gfield.values, grid)
    integrand = gx ** 2 - prm.beta2 * signed_power(gfield.values, prm.p + 2)
    return float(grid.dx * np.sum(integrand))


def nls_action(f: ComplexField, prm: PhysParams) -> float:
    """J~(f) = int (|f_x|^2 - beta1 |f|^(q+2)) dx, the short-wave action."""
    grid = f.grid
    fx = deriv_values(f.values, grid)
    integrand = np.abs(fx) ** 2 - prm.beta1 * np.abs(f.values) ** (prm.q + 2.0)
    return float(grid.dx * np.sum(integrand))


def conserved_triple(u: ComplexField, v: RealField,
                     prm: PhysParams) -> ConservedTriple:
    return ConservedTriple(E=energy(u, v, prm), G=momentum(u, v),
                           H=charge(u))
