"""Weierstrass p-function, theta function and related auxiliaries on the
lattice Z + tau*Z (primitive periods 1 and tau, Im tau > 0).

Conventions
-----------
Half periods are omega_1 = 1/2, omega_2 = -(1+tau)/2, omega_3 = tau/2 and
e_n = wp(omega_n).  wp is evaluated through the sine series

    wp(u) = -pi^2/3 + sum_n pi^2/sin^2(pi(u + n tau)) - sum_{n>=1} 2 pi^2/sin^2(pi n tau),

which converges spectrally for Im tau > 0 once u is reduced to the
fundamental cell.  The slow double lattice sum survives only as a test
oracle (tests/test_elliptic.py).

The theta function is theta(u) = sum_n exp(pi i tau n^2 + 2 pi i n u); its
u- and tau-derivatives are term-wise.  f(u) = (wp(u)-e1)/(e2-e1) and its
tau-derivative f_tau are the building blocks of the sixth Painleve
transformation; f_tau is computed analytically from the logarithmic theta
derivative (4 pi^2 f_tau/f' identity), with finite differences kept as a
cross-check in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import BadContext, HalfPeriodSingularity, PoleAt

PI = math.pi
TWO_PI_I = 2j * PI

POLE_TOL = 1e-12
# 1/sin^2 underflows to 0 well before |Im z| reaches this; guards overflow.
_IM_OVERFLOW = 300.0

DEFAULT_LATTICE_ORDER = 24
DEFAULT_THETA_ORDER = 16


@dataclass
class EllipticContext:
    """Modular parameter plus truncation orders for the series evaluations.

    The half-period values (e1, e2, e3) are cached on first use.  The cache
    is write-once/read-many: concurrent writers recompute the same triple,
    so the benign race is harmless.
    """

    tau: complex
    lattice_order: int = DEFAULT_LATTICE_ORDER
    theta_order: int = DEFAULT_THETA_ORDER
    cached_e: tuple[complex, complex, complex] | None = field(default=None, compare=False)

    def __post_init__(self):
        self.tau = complex(self.tau)
        if not (self.tau.imag > 0):
            raise BadContext(f"Im tau must be positive, got tau={self.tau}")
        if self.lattice_order < 1 or self.theta_order < 1:
            raise BadContext("truncation orders must be >= 1")
        if self.cached_e is not None:
            e1, e2, e3 = self.cached_e
            scale = max(1.0, abs(e1), abs(e2), abs(e3))
            if abs(e1 + e2 + e3) >= 1e-10 * scale:
                raise BadContext("cached e1+e2+e3 violates the trace identity")

    @property
    def half_periods(self) -> tuple[complex, complex, complex, complex]:
        """(omega_0, omega_1, omega_2, omega_3) = (0, 1/2, -(1+tau)/2, tau/2)."""
        return 0j, 0.5 + 0j, -(1 + self.tau) / 2, self.tau / 2


def reduce_to_cell(u: complex, tau: complex) -> complex:
    """Reduce u modulo Z + tau*Z to the cell centred at the origin.

    Returns a + b*tau with a, b in [-1/2, 1/2), which keeps every term of
    the sine series uniformly away from its poles.
    """
    u = complex(u)
    b = u.imag / tau.imag
    a = u.real - b * tau.real
    a -= math.floor(a + 0.5)
    b -= math.floor(b + 0.5)
    return complex(a + b * tau.real, b * tau.imag)


def _inv_sin2(z: complex) -> complex:
    if abs(z.imag) > _IM_OVERFLOW:
        return 0j
    s = cmath.sin(z)
    return 1.0 / (s * s)


def _inv_sin3_cos(z: complex) -> complex:
    if abs(z.imag) > _IM_OVERFLOW:
        return 0j
    s = cmath.sin(z)
    return cmath.cos(z) / (s * s * s)


def _check_pole(u_red: complex) -> None:
    if abs(u_red) <= POLE_TOL:
        raise PoleAt(u_red)


def weierstrass_p(u: complex, ctx: EllipticContext) -> complex:
    """wp(u | 1, tau) from the sine series truncated at |n| <= lattice_order."""
    tau = ctx.tau
    u = reduce_to_cell(u, tau)
    _check_pole(u)
    n_max = ctx.lattice_order
    total = -PI * PI / 3 + PI * PI * _inv_sin2(PI * u)
    for n in range(1, n_max + 1):
        total += PI * PI * (_inv_sin2(PI * (u + n * tau)) + _inv_sin2(PI * (u - n * tau)))
        total -= 2 * PI * PI * _inv_sin2(PI * n * tau)
    return total


def weierstrass_p_prime(u: complex, ctx: EllipticContext) -> complex:
    """wp'(u), term-wise derivative of the sine series."""
    tau = ctx.tau
    u = reduce_to_cell(u, tau)
    _check_pole(u)
    n_max = ctx.lattice_order
    total = -2 * PI**3 * _inv_sin3_cos(PI * u)
    for n in range(1, n_max + 1):
        total += -2 * PI**3 * (
            _inv_sin3_cos(PI * (u + n * tau)) + _inv_sin3_cos(PI * (u - n * tau))
        )
    return total


def half_period_values(ctx: EllipticContext) -> tuple[complex, complex, complex]:
    """(e1, e2, e3) = wp at the three half periods; cached on the context."""
    if ctx.cached_e is None:
        _, w1, w2, w3 = ctx.half_periods
        ctx.cached_e = (
            weierstrass_p(w1, ctx),
            weierstrass_p(w2, ctx),
            weierstrass_p(w3, ctx),
        )
    return ctx.cached_e


def shifted_p(u: complex, n: int, ctx: EllipticContext) -> complex:
    """wp(u + omega_n) for n in 0..3 (omega_0 = 0)."""
    if n not in (0, 1, 2, 3):
        raise ValueError(f"half-period index must be 0..3, got {n}")
    omega = ctx.half_periods[n]
    return weierstrass_p(u + omega, ctx)


def theta(u: complex, ctx: EllipticContext) -> complex:
    """theta(u) = sum_n exp(pi i tau n^2 + 2 pi i n u), |n| <= theta_order."""
    tau, m = ctx.tau, ctx.theta_order
    total = 1 + 0j
    for n in range(1, m + 1):
        base = 1j * PI * tau * n * n
        total += cmath.exp(base + TWO_PI_I * n * u) + cmath.exp(base - TWO_PI_I * n * u)
    return total


def theta_du(u: complex, ctx: EllipticContext) -> complex:
    """d theta/du by term-wise differentiation."""
    tau, m = ctx.tau, ctx.theta_order
    total = 0j
    for n in range(1, m + 1):
        base = 1j * PI * tau * n * n
        w = TWO_PI_I * n
        total += w * (cmath.exp(base + TWO_PI_I * n * u) - cmath.exp(base - TWO_PI_I * n * u))
    return total


def theta_du2(u: complex, ctx: EllipticContext) -> complex:
    """d^2 theta/du^2 by term-wise differentiation."""
    tau, m = ctx.tau, ctx.theta_order
    total = 0j
    for n in range(1, m + 1):
        base = 1j * PI * tau * n * n
        w = TWO_PI_I * n
        total += w * w * (cmath.exp(base + TWO_PI_I * n * u) + cmath.exp(base - TWO_PI_I * n * u))
    return total


def theta_dtau(u: complex, ctx: EllipticContext) -> complex:
    """d theta/dtau by term-wise differentiation (= theta''/(4 pi i))."""
    tau, m = ctx.tau, ctx.theta_order
    total = 0j
    for n in range(1, m + 1):
        base = 1j * PI * tau * n * n
        w = 1j * PI * n * n
        total += w * (cmath.exp(base + TWO_PI_I * n * u) + cmath.exp(base - TWO_PI_I * n * u))
    return total


def f_and_derivatives(u: complex, ctx: EllipticContext) -> tuple[complex, complex, complex]:
    """f(u) = (wp(u)-e1)/(e2-e1), its u-derivative, and its tau-derivative.

    f_tau is computed analytically via the logarithmic theta derivative,

        f_tau(u) = f'(u) * theta'(u + 1/2) / (2 pi i * theta(u + 1/2)),

    which is exact (not a finite difference) and valid away from the half
    periods, where wp'(u) = 0 makes the quotient f_tau/f' singular.
    """
    e1, e2, _ = half_period_values(ctx)
    pp = weierstrass_p_prime(u, ctx)
    if abs(pp) < 1e-12:
        raise HalfPeriodSingularity(f"wp'({u}) ~ 0; u is a half period")
    f_val = (weierstrass_p(u, ctx) - e1) / (e2 - e1)
    f_u = pp / (e2 - e1)
    shifted = u + 0.5
    f_tau = f_u * theta_du(shifted, ctx) / (TWO_PI_I * theta(shifted, ctx))
    return f_val, f_u, f_tau


def asymptotic_p(u: complex, n: int, tau: complex) -> complex:
    """Large-Im-tau approximation to wp(u + omega_n), leading order.

    n = 0: pi^2/sin^2(pi u) - pi^2/3
    n = 1: pi^2/cos^2(pi u) - pi^2/3
    n = 2: -pi^2/3 + 8 pi^2 cos(2 pi u) e^{pi i tau}
    n = 3: -pi^2/3 - 8 pi^2 cos(2 pi u) e^{pi i tau}

    Used by the verification suite only.
    """
    if not (complex(tau).imag > 0):
        raise BadContext(f"Im tau must be positive, got {tau}")
    u = complex(u)
    if n == 0:
        return PI * PI / cmath.sin(PI * u) ** 2 - PI * PI / 3
    if n == 1:
        return PI * PI / cmath.cos(PI * u) ** 2 - PI * PI / 3
    q1 = cmath.exp(1j * PI * tau)
    if n == 2:
        return -PI * PI / 3 + 8 * PI * PI * cmath.cos(2 * PI * u) * q1
    if n == 3:
        return -PI * PI / 3 - 8 * PI * PI * cmath.cos(2 * PI * u) * q1
    raise ValueError(f"half-period index must be 0..3, got {n}")


def asymptotic_p23_sum(u: complex, tau: complex) -> complex:
    """wp(u+omega_2) + wp(u+omega_3) through order e^{2 pi i tau}.

    The e^{pi i tau} terms of the two shifts cancel; the surviving
    correction is (16 - 32 cos(4 pi u)) pi^2 e^{2 pi i tau}.
    """
    if not (complex(tau).imag > 0):
        raise BadContext(f"Im tau must be positive, got {tau}")
    q2 = cmath.exp(2j * PI * tau)
    return -2 * PI * PI / 3 + (16 * PI * PI - 32 * PI * PI * cmath.cos(4 * PI * u)) * q2
