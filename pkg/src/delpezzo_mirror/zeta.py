"""The alternating q-series zeta_+, zeta_-, zeta_0, their transformation
laws, and the degeneration factor."""
import cmath
from dataclasses import dataclass

from .errors import NonconvergentDomain, PreconditionViolation
from .qtheta import bilateral_sum, lattice_distance

# exponent of q_F in the n-th term is (A n^2 + B n) / 2
EXPONENTS = {"plus": (3, 1), "minus": (3, -1), "zero": (3, -3)}
DEGENERATION_EXPONENT = (1, -1)


def exponent(kind, n):
    a, b = EXPONENTS[kind] if kind in EXPONENTS else DEGENERATION_EXPONENT
    return (a * n * n + b * n) // 2


@dataclass(frozen=True)
class ZetaTriple:
    plus: complex
    minus: complex
    zero: complex
    terms_used: int
    tail_bound: float
    rounding_bound: float = 0.0


def _check_qf(qF):
    if not abs(qF) < 1:
        raise NonconvergentDomain("|qF| must be < 1")


def _series(qX, qF, coeffs, tol, half_width=None):
    """sum_n (-1)^n qX^n qF^{(a n^2 + b n)/2} for qF != 0.

    The exponent of qF is an integer for every n, so any branch of log qF
    gives the same terms.
    """
    a, b = coeffs
    log_f, log_x = cmath.log(qF), cmath.log(qX)
    return bilateral_sum(a * log_f / 2, log_x + b * log_f / 2, 0.0,
                         tol=tol, alternating=True, half_width=half_width)


def zeta_triple(qX, qF, tol=1e-10, *, half_width=None):
    qX, qF = complex(qX), complex(qF)
    _check_qf(qF)
    if not tol > 0:
        raise PreconditionViolation("tol must be positive")
    if qX == 0:
        raise PreconditionViolation("qX must be nonzero")
    if qF == 0:
        return ZetaTriple(1.0 + 0j, 1.0 + 0j, 1.0 - qX, 2, 0.0)
    parts = {k: _series(qX, qF, EXPONENTS[k], tol, half_width) for k in EXPONENTS}
    return ZetaTriple(
        parts["plus"].value, parts["minus"].value, parts["zero"].value,
        max(p.terms_used for p in parts.values()),
        max(p.tail_bound for p in parts.values()),
        max(p.rounding_bound for p in parts.values()),
    )


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def zeta_transforms(qC, qF, tol=1e-12):
    """Relative residuals of the two transformation families.

    First three: qC -> qC qF^3.  Last three: qC -> qC qF.
    """
    qC, qF = complex(qC), complex(qF)
    if qF == 0:
        raise PreconditionViolation("qF = 0 sends the shifted argument to qX = 0")
    base = zeta_triple(qC, qF, tol)
    s3 = zeta_triple(qC * qF ** 3, qF, tol)
    s1 = zeta_triple(qC * qF, qF, tol)
    return [
        _rel(s3.plus, -base.plus / (qC * qF ** 2)),
        _rel(s3.minus, -base.minus / (qC * qF)),
        _rel(s3.zero, -base.zero / qC),
        _rel(s1.plus, -base.zero / qC),
        _rel(s1.zero, base.minus),
        _rel(s1.minus, base.plus),
    ]


def degeneration_series(qprime, qF, tol=1e-10, *, half_width=None):
    """SeriesResult of sum_n (-1)^n q'^n qF^{n(n-1)/2}."""
    qprime, qF = complex(qprime), complex(qF)
    _check_qf(qF)
    if qF == 0:
        return _const_result(1.0 - qprime)
    if qprime == 0:
        return _const_result(1.0 + 0j)
    return _series(qprime, qF, DEGENERATION_EXPONENT, tol, half_width)


def _const_result(value):
    from .qtheta import SeriesResult
    return SeriesResult(complex(value), 2, 0.0, 0.0, max(1.0, abs(value)))


def degeneration_factor(qprime, qF, tol=1e-10):
    return degeneration_series(qprime, qF, tol).value


def degeneration_normalized(qprime, qF, tol=1e-10):
    """|factor| divided by the largest term magnitude, a scale-free size."""
    r = degeneration_series(qprime, qF, tol)
    return abs(r.value) / r.max_term


@dataclass(frozen=True)
class DegeneracyReport:
    degenerate: bool
    marginal: bool
    witness: tuple
    distance: float


def is_degenerate(kc, i, j, tol=1e-8):
    """Lattice test: is (c_j - c_i)/3 in Z + tau Z?  The witness (m, n) is the
    nearest lattice point m + n tau."""
    if not (0 <= i < kc.k and 0 <= j < kc.k) or i == j:
        raise IndexError("need distinct indices 0 <= i, j < k")
    dist, witness = lattice_distance((kc.c[j] - kc.c[i]) / 3, kc.tau)
    return DegeneracyReport(dist <= tol, tol < dist < 10 * tol, witness, dist)
