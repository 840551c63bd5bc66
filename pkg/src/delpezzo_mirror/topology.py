"""Integer homology of the fibre torus, Dehn twists, and the Kaehler class
with its exponentiated pairings."""
from dataclasses import dataclass, field

from .errors import InvalidKaehlerClass, RangeError, ZeroClass
from .qtheta import exp2pii

MAX_POINTS = 9


@dataclass(frozen=True)
class H1Class:
    a: int
    b: int

    def __iter__(self):
        return iter((self.a, self.b))


@dataclass(frozen=True)
class SL2ZMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def __matmul__(self, o):
        return SL2ZMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __pow__(self, n):
        if n < 0:
            return SL2ZMatrix(self.d, -self.b, -self.c, self.a) ** (-n)
        out = SL2ZMatrix.identity()
        for _ in range(n):
            out = out @ self
        return out

    def apply(self, v):
        x, y = v
        return H1Class(self.a * x + self.b * y, self.c * x + self.d * y)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


BASE_CLASSES = (H1Class(-2, -1), H1Class(-1, 1), H1Class(1, 2))
EXTRA_CLASS = H1Class(1, 1)


def vanishing_cycle_classes(k):
    if not 0 <= k <= MAX_POINTS:
        raise RangeError(f"k must lie in [0, {MAX_POINTS}]")
    return list(BASE_CLASSES) + [EXTRA_CLASS] * k


def intersection_number(c1, c2):
    return c1.a * c2.b - c1.b * c2.a


# Dehn twist orientation: T_c(x) = x + TWIST_SIGN * <c, x> c, where <,> is
# intersection_number.  The sign is the one reproducing the three finite
# monodromies of the fibration.
TWIST_SIGN = 1


def dehn_twist_matrix(c):
    if c.a == 0 and c.b == 0:
        raise ZeroClass("cannot twist along the zero class")
    # images of the basis vectors (1,0) and (0,1) are the matrix columns
    cols = []
    for e in (H1Class(1, 0), H1Class(0, 1)):
        s = TWIST_SIGN * intersection_number(c, e)
        cols.append((e.a + s * c.a, e.b + s * c.b))
    return SL2ZMatrix(cols[0][0], cols[1][0], cols[0][1], cols[1][1])


def monodromy_relation(k=0):
    """tau_0 tau_1 tau_2 tau^9; the relation does not depend on k."""
    t0, t1, t2 = (dehn_twist_matrix(c) for c in BASE_CLASSES)
    return t0 @ t1 @ t2 @ dehn_twist_matrix(EXTRA_CLASS) ** 9


@dataclass(frozen=True)
class KaehlerClass:
    """Pairings of [B + i omega] with the fibre, [C-bar] and the [C-bar_i]."""

    k: int
    tau: complex
    cbar: complex
    c: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        object.__setattr__(self, "cbar", complex(self.cbar))
        object.__setattr__(self, "c", tuple(complex(x) for x in self.c))
        if not isinstance(self.k, int) or not 0 <= self.k <= MAX_POINTS:
            raise InvalidKaehlerClass(f"k must be an integer in [0, {MAX_POINTS}]")
        if len(self.c) != self.k:
            raise InvalidKaehlerClass("c must have exactly k entries")
        values = (self.tau, self.cbar) + self.c
        if not all(v.real == v.real and abs(v) < float("inf") for v in values):
            raise InvalidKaehlerClass("pairings must be finite")
        if not self.tau.imag > 0:
            raise InvalidKaehlerClass("Im(tau) must be positive")

    @classmethod
    def make(cls, tau, cbar, c=()):
        c = tuple(c)
        return cls(len(c), tau, cbar, c)

    def with_cbar(self, cbar):
        return KaehlerClass(self.k, self.tau, cbar, self.c)


@dataclass(frozen=True)
class QData:
    qF: complex
    qC: complex
    qi: tuple
    qtilde: tuple
    qF13: complex
    qC13: complex
    qi13: tuple


def qdata(kc):
    if not isinstance(kc, KaehlerClass) or not kc.tau.imag > 0:
        raise InvalidKaehlerClass("Im(tau) must be positive")
    qtilde = tuple(tuple(exp2pii((cj - ci) / 3) for cj in kc.c) for ci in kc.c)
    return QData(
        qF=exp2pii(kc.tau),
        qC=exp2pii(kc.cbar),
        qi=tuple(exp2pii(ci) for ci in kc.c),
        qtilde=qtilde,
        qF13=exp2pii(kc.tau / 3),
        qC13=exp2pii(kc.cbar / 3),
        qi13=tuple(exp2pii(ci / 3) for ci in kc.c),
    )
