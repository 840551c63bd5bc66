"""Structure constants of the directed Fukaya category of the fibration,
in the gauge where every free generator rescaling equals 1."""
from dataclasses import dataclass, field

from .qtheta import I_UNIT, exp2pii, vtheta_triple
from .topology import MAX_POINTS, qdata
from .errors import RangeError
from .zeta import zeta_triple

# (u, v) -> output generator of m2(u, v) for u in Hom(L0,L1), v in Hom(L1,L2)
PAIR_OUTPUT = {
    ("x0", "y1"): "zbar", ("y0", "z1"): "xbar", ("z0", "x1"): "ybar",
    ("y0", "x1"): "zbar", ("z0", "y1"): "xbar", ("x0", "z1"): "ybar",
    ("x0", "x1"): "xbar", ("y0", "y1"): "ybar", ("z0", "z1"): "zbar",
}
ALPHA_NAMES = {
    "xy": ("x0", "y1"), "yz": ("y0", "z1"), "zx": ("z0", "x1"),
    "yx": ("y0", "x1"), "zy": ("z0", "y1"), "xz": ("x0", "z1"),
    "xx": ("x0", "x1"), "yy": ("y0", "y1"), "zz": ("z0", "z1"),
}
# which of the three gauge-fixed values each constant equals
ALPHA_CLASS = {"xy": 0, "yz": 0, "zx": 0, "xx": 1, "yy": 1, "zz": 1, "yx": 2, "zy": 2, "xz": 2}


def pair_key(u, v):
    return f"{u}*{v}"


@dataclass(frozen=True)
class HomTable:
    k: int
    objects: tuple
    # (a, b) -> tuple of generator labels; dimension is the length
    generators: dict

    def dim(self, a, b):
        return len(self.generators.get((a, b), ()))


def hom_table(k):
    if not 0 <= k <= MAX_POINTS:
        raise RangeError(f"k must lie in [0, {MAX_POINTS}]")
    objects = tuple(f"L{i}" for i in range(k + 3))
    gens = {(i, i): ("id",) for i in range(k + 3)}
    gens[(0, 1)] = ("x0", "y0", "z0")
    gens[(1, 2)] = ("x1", "y1", "z1")
    gens[(0, 2)] = ("xbar", "ybar", "zbar")
    for i in range(k):
        gens[(0, 3 + i)] = (f"a{i}",)
        gens[(1, 3 + i)] = (f"b{i}", f"b'{i}")
        gens[(2, 3 + i)] = (f"c{i}",)
    return HomTable(k, objects, gens)


@dataclass(frozen=True)
class CompositionTable:
    """alpha keyed by short names ("xy", ...); beta is one triple
    (x-bar, y-bar, z-bar) per point."""

    alpha: dict = field(default_factory=dict)
    beta: tuple = ()
    gauge_s: complex = 1.0
    gauge_si: tuple = ()
    tail_bound: float = 0.0
    terms_used: int = 0

    def alpha_by_pair(self):
        return {pair_key(*ALPHA_NAMES[n]): v for n, v in self.alpha.items()}

    def alpha_vector(self):
        return [self.alpha[n] for n in ALPHA_NAMES]


def alpha_values(qC, qF, qC13, qF13, tol=1e-12):
    """The nine alphas from the q-values and the chosen cube roots."""
    zt = zeta_triple(qC, qF, tol)
    vals = (qC13 * zt.plus, qF13 / qC13 * zt.zero, -zt.minus)
    return {n: vals[ALPHA_CLASS[n]] for n in ALPHA_NAMES}, zt


def alpha_table(kc, tol=1e-12):
    q = qdata(kc)
    alpha, zt = alpha_values(q.qC, q.qF, q.qC13, q.qF13, tol)
    return CompositionTable(alpha=alpha, tail_bound=zt.tail_bound, terms_used=zt.terms_used)


def theta_gauge(kc):
    """s~ = e^{i pi/2} qF^{-1/24} qC^{1/6}, each root taken from the pairing."""
    return I_UNIT * exp2pii(-kc.tau / 24) * exp2pii(kc.cbar / 6)


def alpha_table_theta(kc, tol=1e-12):
    s = theta_gauge(kc)
    trip = vtheta_triple(kc.cbar / 3, kc.tau, tol)
    return CompositionTable(alpha={n: s * trip[ALPHA_CLASS[n]] for n in ALPHA_NAMES})


def beta_triple(qi, qi13, qF, qF13, tol=1e-12):
    zt = zeta_triple(qi, qF, tol)
    return (qi13 * zt.plus, qF13 / qi13 * zt.zero, -zt.minus), zt


def beta_table(kc, tol=1e-12):
    q = qdata(kc)
    betas, tail, terms = [], 0.0, 0
    for i in range(kc.k):
        b, zt = beta_triple(q.qi[i], q.qi13[i], q.qF, q.qF13, tol)
        betas.append(b)
        tail, terms = max(tail, zt.tail_bound), max(terms, zt.terms_used)
    return CompositionTable(beta=tuple(betas), gauge_si=(1.0,) * kc.k,
                            tail_bound=tail, terms_used=terms)


def full_table(kc, tol=1e-12):
    a, b = alpha_table(kc, tol), beta_table(kc, tol)
    return CompositionTable(alpha=a.alpha, beta=b.beta, gauge_si=b.gauge_si,
                            tail_bound=max(a.tail_bound, b.tail_bound),
                            terms_used=max(a.terms_used, b.terms_used))


@dataclass(frozen=True)
class RatioResidual:
    name: str
    residual: float
    skipped: bool = False
    note: str = ""


SKIP_TOL = 1e-8


def _prod(xs):
    out = 1.0 + 0j
    for x in xs:
        out *= x
    return out


class _Tiny:
    """Which structure constants and series values are negligible, each
    measured against the largest member of its own family."""

    def __init__(self):
        self._flags = {}

    def family(self, values):
        values = list(values)
        scale = max(abs(v) for v in values)
        for v in values:
            self._flags[id(v)] = abs(v) <= SKIP_TOL * scale

    def __call__(self, x):
        return self._flags.get(id(x), False)


def _ratio(name, num, den, rhs_num, rhs_den, watch, tiny):
    """Residual of prod(num)/prod(den) = rhs_num/prod(rhs_den).  The identity
    is skipped when a watched denominator factor is negligible; q-values are
    exponentials and never are."""
    if any(tiny(x) for x in watch):
        return RatioResidual(name, 0.0, True, "near-zero denominator")
    lhs = _prod(num) / _prod(den)
    rhs = rhs_num / _prod(rhs_den)
    return RatioResidual(name, abs(lhs - rhs) / max(1.0, abs(rhs)))


def ratio_report(kc, tol=1e-12):
    q = qdata(kc)
    table = full_table(kc, tol)
    A = dict(table.alpha)
    z = zeta_triple(q.qC, q.qF, tol)
    zi = [zeta_triple(qi, q.qF, tol) for qi in q.qi]
    tiny = _Tiny()
    zp, zm, z0 = z.plus, z.minus, z.zero
    tiny.family([zp, zm, z0])
    # one object per distinct alpha value so that the flags are per value
    a_vals = [A["xy"], A["xx"], A["yx"]]
    tiny.family(a_vals)
    for n, cls in ALPHA_CLASS.items():
        A[n] = a_vals[cls]
    betas = [tuple(b) for b in table.beta]
    for b in betas:
        tiny.family(b)
    for t in zi:
        tiny.family([t.plus, t.minus, t.zero])
    qC, qF = q.qC, q.qF

    out = [
        _ratio("m2p2", [A["xy"], A["yz"], A["zx"]], [A["yx"], A["zy"], A["xz"]],
               -qC * zp ** 3, [zm ** 3], [A["yx"], zm], tiny),
        _ratio("m2p2f", [A["xx"], A["yy"], A["zz"]], [A["yx"], A["zy"], A["xz"]],
               -qF * z0 ** 3, [qC, zm ** 3], [A["yx"], zm], tiny),
    ]
    for i in range(kc.k):
        bx, by, bz = betas[i]
        ip, im, i0 = zi[i].plus, zi[i].minus, zi[i].zero
        qi = q.qi[i]
        pre = f"m2beta[{i}]"
        out += [
            _ratio(pre + ".1", [bz, bz, A["xy"], A["zz"]], [bx, by, A["zy"], A["xz"]],
                   im ** 2 * zp * z0, [zm ** 2, ip, i0], [bx, by, A["zy"], zm, ip, i0], tiny),
            _ratio(pre + ".2", [bx, bx, A["yz"], A["xx"]], [by, bz, A["xz"], A["yx"]],
                   -qi * ip ** 2 * zp * z0, [zm ** 2, i0, im], [by, bz, A["xz"], zm, i0, im], tiny),
            _ratio(pre + ".3", [by, by, A["zx"], A["yy"]], [bz, bx, A["yx"], A["zy"]],
                   -qF * i0 ** 2 * zp * z0, [qi, zm ** 2, im, ip], [bz, bx, A["yx"], zm, im, ip], tiny),
        ]
        pre = f"cor[{i}]"
        out += [
            _ratio(pre + ".1", [bz ** 3, A["xy"], A["yx"], A["zz"]], [bx ** 3, A["yz"], A["zy"], A["xx"]],
                   -im ** 3, [qi, ip ** 3], [bx, A["yz"], A["zy"], A["xx"], ip], tiny),
            _ratio(pre + ".2", [bx ** 3, A["yz"], A["zy"], A["xx"]], [by ** 3, A["zx"], A["xz"], A["yy"]],
                   qi ** 2 * ip ** 3, [qF, i0 ** 3], [by, A["zx"], A["xz"], A["yy"], i0], tiny),
            _ratio(pre + ".3", [by ** 3, A["zx"], A["xz"], A["yy"]], [bz ** 3, A["xy"], A["yx"], A["zz"]],
                   -qF * i0 ** 3, [qi, im ** 3], [bz, A["xy"], A["yx"], A["zz"], im], tiny),
        ]
    for i in range(kc.k):
        for j in range(i + 1, kc.k):
            bi, bj = betas[i], betas[j]
            zi_, zj_ = zi[i], zi[j]
            qt = q.qtilde[i][j]
            pre = f"m2delta[{i},{j}]"
            out += [
                _ratio(pre + ".1", [bi[1], bj[2]], [bj[1], bi[2]],
                       qt * zi_.zero * zj_.minus, [zj_.zero, zi_.minus],
                       [bj[1], bi[2], zj_.zero, zi_.minus], tiny),
                _ratio(pre + ".2", [bi[2], bj[0]], [bj[2], bi[0]],
                       qt * zi_.minus * zj_.plus, [zj_.minus, zi_.plus],
                       [bj[2], bi[0], zj_.minus, zi_.plus], tiny),
                _ratio(pre + ".3", [bi[0], bj[1]], [bj[0], bi[1]],
                       zi_.plus * zj_.zero, [qt ** 2, zj_.plus, zi_.zero],
                       [bj[0], bi[1], zj_.plus, zi_.zero], tiny),
            ]
    return out
