"""Bilateral q-series, theta functions with rational characteristics and
the Hesse-type cubic through which they embed the elliptic curve."""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import config
from .errors import NonconvergentDomain, PreconditionViolation, ToleranceUnreachable

TWO_PI_I = 2j * math.pi
_SQRT3_2 = math.sqrt(3.0) / 2.0

# exact cube roots of unity and related phases, never formed as fractional powers
OMEGA = complex(-0.5, _SQRT3_2)  # e^{2 i pi/3}
OMEGA_BAR = complex(-0.5, -_SQRT3_2)  # e^{-2 i pi/3}
I_UNIT = 1j  # e^{i pi/2}

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ThetaCharacteristic:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))


@dataclass(frozen=True)
class SeriesResult:
    """A truncated bilateral sum with its error bookkeeping.

    ``tail_bound`` bounds the omitted terms; ``rounding_bound`` estimates the
    floating point error of the retained ones.
    """

    value: complex
    terms_used: int
    tail_bound: float
    rounding_bound: float = 0.0
    max_term: float = 0.0


def _tail(ra, rb, rc, n_start):
    """Bound for sum_{m >= n_start} exp(ra m^2 + rb m + rc) with ra < 0."""
    log_ratio = ra * (2 * n_start + 1) + rb
    if log_ratio >= 0.0:
        return math.inf
    first = ra * n_start * n_start + rb * n_start + rc
    if first > 700.0:
        return math.inf
    return math.exp(first) / -math.expm1(log_ratio)


def _tail_pair(ra, rb, rc, half_width):
    return _tail(ra, rb, rc, half_width + 1) + _tail(ra, -rb, rc, half_width + 1)


def _terms_double(quad, lin, const, alternating, half_width):
    n = np.arange(-half_width, half_width + 1, dtype=float)
    expo = complex(quad) * n * n + complex(lin) * n + complex(const)
    if np.max(expo.real) > 700.0:
        raise ToleranceUnreachable("series terms overflow double precision")
    terms = np.exp(expo)
    if alternating:
        terms[(np.arange(-half_width, half_width + 1) % 2) == 1] *= -1.0
    mags = np.abs(terms)
    value = complex(terms.sum())
    rounding = 4.0 * float(_EPS) * float(np.sum(mags * (1.0 + np.abs(expo))))
    return value, rounding, float(mags.max())


def _terms_extended(quad, lin, const, alternating, half_width, dps):
    with mpmath.workdps(dps):
        q, l, c = mpmath.mpc(quad), mpmath.mpc(lin), mpmath.mpc(const)
        total = mpmath.mpc(0)
        max_term = 0.0
        for n in range(-half_width, half_width + 1):
            t = mpmath.exp(q * n * n + l * n + c)
            if alternating and n % 2:
                t = -t
            total += t
            max_term = max(max_term, float(abs(t)))
        rounding = 10.0 ** (-(dps - 4)) * max_term * (2 * half_width + 1)
        return total, rounding, max_term


def bilateral_sum(quad, lin, const=0.0, *, tol, alternating=False, half_width=None, raw=False):
    """Sum of (+-1)^n exp(quad n^2 + lin n + const) over n in Z.

    The window [-N, N] grows geometrically until the analytic tail bound is
    below tol * max(1, |value|).  ``half_width`` fixes N instead.  With
    ``raw`` the value is returned at working precision (an mpc in extended
    mode) as the first element of a tuple.
    """
    if not tol > 0:
        raise PreconditionViolation("tol must be positive")
    settings = config.current()
    ra, rb, rc = float(mpmath.re(quad)), float(mpmath.re(lin)), float(mpmath.re(const))
    if not ra < 0.0:
        raise NonconvergentDomain("quadratic coefficient must have negative real part")

    def evaluate(width):
        if 2 * width + 1 > settings.max_terms:
            raise ToleranceUnreachable(
                f"window of {2 * width + 1} terms exceeds cap {settings.max_terms}"
            )
        if settings.extended:
            return _terms_extended(quad, lin, const, alternating, width, settings.dps)
        return _terms_double(quad, lin, const, alternating, width)

    if half_width is None:
        vertex = abs(rb / (2.0 * ra))
        width = max(settings.min_half_width, int(math.ceil(vertex)) + 2)
        while True:
            tail = _tail_pair(ra, rb, rc, width)
            if tail < math.inf:
                value, rounding, max_term = evaluate(width)
                if tail <= tol * max(1.0, abs(complex(value))):
                    break
            width *= 2
            if 2 * width + 1 > settings.max_terms:
                raise ToleranceUnreachable(
                    f"tolerance {tol} needs more than {settings.max_terms} terms"
                )
        if settings.window_factor > 1:
            width *= settings.window_factor
            value, rounding, max_term = evaluate(width)
    else:
        width = int(half_width)
        value, rounding, max_term = evaluate(width)
    tail = _tail_pair(ra, rb, rc, width)
    native = value
    value = complex(value)
    if not (cmath.isfinite(value) and math.isfinite(tail)):
        raise ToleranceUnreachable("non-finite series value")
    if settings.extended:
        rounding += _EPS * abs(value)
    result = SeriesResult(value, 2 * width + 1, tail, rounding, max_term)
    return (native, result) if raw else result


def _check_tau(tau):
    if not complex(tau).imag > 0:
        raise NonconvergentDomain("Im(tau) must be positive")


def _theta_coefficients(char, z, tau, extended):
    if extended:
        a = mpmath.mpf(char.a.numerator) / char.a.denominator
        b = mpmath.mpf(char.b.numerator) / char.b.denominator
        pi_i = mpmath.mpc(0, mpmath.pi)
    else:
        a, b, pi_i = float(char.a), float(char.b), 1j * math.pi
    quad = pi_i * tau
    lin = 2 * pi_i * tau * a + 2 * pi_i * (z + b)
    const = pi_i * tau * a * a + 2 * pi_i * a * (z + b)
    return quad, lin, const


def theta(char, z, tau, tol=1e-10, *, half_width=None):
    """theta_{a,b}(z, tau) = sum_n exp(pi i (n+a)^2 tau + 2 pi i (n+a)(z+b))."""
    _check_tau(tau)
    if config.current().extended:
        with mpmath.workdps(config.current().dps):
            coeffs = _theta_coefficients(char, mpmath.mpc(z), mpmath.mpc(tau), True)
    else:
        coeffs = _theta_coefficients(char, complex(z), complex(tau), False)
    return bilateral_sum(*coeffs, tol=tol, half_width=half_width)


THETA_00 = ThetaCharacteristic(0, 0)


def quasi_period_check(z, tau, u, v):
    """Relative residual of theta(z+u tau+v) = exp(-pi i u^2 tau - 2 pi i u z) theta(z).

    Both sides are evaluated in extended precision: the factor grows like
    exp(pi u^2 Im tau), so a double precision left side would carry an
    absolute error far larger than the residual being measured.
    """
    _check_tau(tau)
    dps = config.current().dps + int((math.pi * u * u * complex(tau).imag
                                      + 2 * math.pi * abs(u * complex(z).imag)) / math.log(10)) + 5
    tol = 10.0 ** -(dps - 5)
    with config.series_settings(extended=True, dps=dps), mpmath.workdps(dps):
        zz, tt = mpmath.mpc(z), mpmath.mpc(tau)
        shifted = zz + u * tt + v
        lhs, _ = bilateral_sum(*_theta_coefficients(THETA_00, shifted, tt, True), tol=tol, raw=True)
        base, _ = bilateral_sum(*_theta_coefficients(THETA_00, zz, tt, True), tol=tol, raw=True)
        factor = mpmath.exp(-mpmath.pi * 1j * u * u * tt - 2 * mpmath.pi * 1j * u * zz)
        residual = abs(lhs - factor * base) / max(1, abs(base))
        return float(residual)


CHAR_PLUS = ThetaCharacteristic(Fraction(1, 6), Fraction(1, 2))
CHAR_ZERO = ThetaCharacteristic(Fraction(1, 2), Fraction(1, 2))
CHAR_MINUS = ThetaCharacteristic(Fraction(5, 6), Fraction(1, 2))


def vtheta_triple(z, tau, tol=1e-10):
    """The embedding coordinates (v+, v0, v-) of the point z of C / (Z + tau Z)."""
    _check_tau(tau)
    z3, t3 = 3 * complex(z), 3 * complex(tau)
    if config.current().extended:
        z3, t3 = 3 * mpmath.mpc(z), 3 * mpmath.mpc(tau)
    plus = OMEGA_BAR * theta(CHAR_PLUS, z3, t3, tol).value
    zero = theta(CHAR_ZERO, z3, t3, tol).value
    minus = OMEGA * theta(CHAR_MINUS, z3, t3, tol).value
    return plus, zero, minus


def cubic_form(coeffs, point):
    """(A^3+B^3+C^3) XYZ - ABC (X^3+Y^3+Z^3)."""
    a, b, c = coeffs
    x, y, z = point
    return (a ** 3 + b ** 3 + c ** 3) * x * y * z - a * b * c * (x ** 3 + y ** 3 + z ** 3)


def cubic_residual(coeffs, point):
    """|cubic_form| divided by the largest magnitude among its six monomials."""
    a, b, c = (complex(t) for t in coeffs)
    x, y, z = (complex(t) for t in point)
    monomials = [a ** 3 * x * y * z, b ** 3 * x * y * z, c ** 3 * x * y * z,
                 a * b * c * x ** 3, a * b * c * y ** 3, a * b * c * z ** 3]
    scale = max(abs(m) for m in monomials)
    if scale == 0.0:
        return 0.0
    return abs(cubic_form((a, b, c), (x, y, z))) / scale


def lattice_coordinates(x, tau):
    """Real (m, n) with x = m + n tau."""
    x, tau = complex(x), complex(tau)
    n = x.imag / tau.imag
    return x.real - n * tau.real, n


def lattice_distance(x, tau):
    """Distance in (1, tau) coordinates from x to the nearest lattice point,
    together with that lattice point as an integer pair."""
    m, n = lattice_coordinates(x, tau)
    mi, ni = round(m), round(n)
    return math.hypot(m - mi, n - ni), (int(mi), int(ni))


def reduce_mod_lattice(x, tau):
    """Representative of x modulo Z + tau Z with coordinates in [0, 1)."""
    m, n = lattice_coordinates(x, tau)
    return (m - math.floor(m)) + (n - math.floor(n)) * complex(tau)


def exp2pii(x):
    """exp(2 pi i x) for a complex pairing x."""
    return cmath.exp(TWO_PI_I * complex(x))
