"""Exact flat-torus model of the fibre with geodesic vanishing cycles.

Coordinates: the torus is R^2 / Z^2 with area 1.  Line ``i`` with
direction d_i is the set of p with det(d_i, p) = h_i mod 1, and its lifts
to the plane are indexed by integers m: det(d_i, p) = h_i + m.

A triangle family is given by three lines and lifts (m_i, m_j, m_k); its
n-th member moves the lift of the last line by n * step.  The lifts of
the base members are read off the reference configuration drawn in the
standard picture of the fibre and are frozen in FAMILIES; the chain
identities in verify_chain_relations are the self-check of that table.
"""
import random
from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations

from .errors import FamilyNotSupported, GenericityFailure, RangeError
from .topology import intersection_number, vanishing_cycle_classes

# offsets of the reference configuration; L_{3+i} sits at REF_H3 + t_i
REF_H = (Q(1, 2), Q(0), Q(0))
REF_H3 = Q(1, 4)


def figure_to_torus(x, y):
    """Map a point of the reference picture (hexagonal 6x6 chart) to the
    coordinates used here."""
    x, y = Q(x), Q(y)
    return ((x + y / 2) / 6, y / 6)


# labelled intersection points of the reference picture
FIGURE_POINTS = {
    "x0": (Q(3, 2), 3), "y0": (Q(9, 2), 1), "z0": (Q(9, 2), 5),
    "x1": (3, 6), "y1": (6, 4), "z1": (3, 2),
    "xbar": (6, 6), "ybar": (3, 4), "zbar": (6, 2),
    "a": (Q(21, 4), Q(3, 2)), "b": (Q(39, 8), Q(3, 4)), "c": (6, 3), "b'": (Q(51, 8), Q(15, 4)),
}

# shaded 2-chains of the reference picture, as (multiplicity, polygon) lists
FIGURE_CHAINS = {
    "C": [
        (-1, [(Q(3, 2), 3), (3, 2), (3, 4)]),
        (1, [(Q(15, 2), 3), (6, 2), (6, 4)]),
        (1, [(3, 4), (3, 6), (Q(9, 2), 5)]),
        (1, [(3, 0), (3, 2), (Q(9, 2), 1)]),
        (-1, [(6, 4), (6, 6), (Q(9, 2), 5)]),
        (-1, [(6, 0), (6, 2), (Q(9, 2), 1)]),
    ],
    "C_i": [
        (1, [(3, 0), (3, 4), (6, 6), (6, 3), (Q(21, 4), Q(3, 2))]),
        (-2, [(6, 3), (Q(21, 4), Q(3, 2)), (6, 2)]),
        (-1, [(6, 3), (Q(27, 4), Q(9, 2)), (Q(15, 2), 3), (6, 2)]),
        (-1, [(Q(21, 4), Q(3, 2)), (6, 2), (6, 0), (Q(9, 2), 0)]),
        (2, [(3, 0), (Q(21, 4), Q(3, 2)), (Q(9, 2), 0)]),
        (2, [(6, 6), (Q(27, 4), Q(9, 2)), (6, 3)]),
        (2, [(0, 6), (Q(3, 4), Q(9, 2)), (Q(3, 2), 6)]),
        (-1, [(Q(3, 2), 6), (3, 6), (3, 4), (Q(3, 2), 3), (Q(3, 4), Q(9, 2))]),
    ],
    # Delta_{i,j} with L_{3+j} half a period beyond L_{3+i}
    "Delta": [
        (1, [(Q(3, 4), Q(9, 2)), (Q(3, 2), 6), (Q(9, 2), 6), (Q(9, 4), Q(3, 2))]),
        (1, [(Q(9, 2), 0), (Q(27, 4), Q(9, 2)), (Q(33, 4), Q(3, 2)), (Q(15, 2), 0)]),
    ],
}
FIGURE_DELTA_SHIFT = Q(-1, 2)


def shoelace(pts):
    s = Q(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - y0 * x1
    return s / 2


def chain_area(name):
    """Area of a reference chain (multiplicities carry the signs), in units of the fibre area."""
    total = Q(0)
    for mult, poly in FIGURE_CHAINS[name]:
        total += mult * abs(shoelace([figure_to_torus(*p) for p in poly]))
    return total


@dataclass(frozen=True)
class Family:
    lines: tuple  # roles: 0, 1, 2 or "P" for the line of the point
    corners: tuple  # labels at (lines[0]^lines[1], lines[1]^lines[2], lines[0]^lines[2])
    base: tuple  # lifts of the three lines for n = 0
    step: int  # change of the last lift per unit of n
    chain: str  # "C" or "C_i"
    law: tuple  # phi(n) = (A n^2 + B n) / 2


FAMILIES = {
    "xy": Family((0, 1, 2), ("x0", "y1", "zbar"), (-1, -1, 0), 3, "C", (3, 1)),
    "yz": Family((0, 1, 2), ("y0", "z1", "xbar"), (0, -1, -1), 3, "C", (3, 1)),
    "zx": Family((0, 1, 2), ("z0", "x1", "ybar"), (-2, -1, 1), 3, "C", (3, 1)),
    "yx": Family((0, 1, 2), ("y0", "x1", "zbar"), (0, -1, -2), 3, "C", (3, -1)),
    "zy": Family((0, 1, 2), ("z0", "y1", "xbar"), (-2, -1, 0), 3, "C", (3, -1)),
    "xz": Family((0, 1, 2), ("x0", "z1", "ybar"), (-1, -1, -1), 3, "C", (3, -1)),
    "xx": Family((0, 1, 2), ("x0", "x1", "xbar"), (-1, -1, -2), 3, "C", (3, -3)),
    "yy": Family((0, 1, 2), ("y0", "y1", "ybar"), (0, -1, -3), 3, "C", (3, -3)),
    "zz": Family((0, 1, 2), ("z0", "z1", "zbar"), (-2, -1, -1), 3, "C", (3, -3)),
    "xbar": Family((0, 2, "P"), ("xbar", "c", "a"), (0, -1, -1), -1, "C_i", (3, 1)),
    "ybar": Family((0, 2, "P"), ("ybar", "c", "a"), (-1, -1, 0), -1, "C_i", (3, -3)),
    "zbar": Family((0, 2, "P"), ("zbar", "c", "a"), (-1, 0, 0), -1, "C_i", (3, -1)),
}
UNSUPPORTED = ("b", "b'")


def phi(family, n):
    a, b = FAMILIES[family].law
    return Q(a * n * n + b * n, 2)


@dataclass(frozen=True)
class TorusModel:
    k: int
    directions: tuple  # integer pairs, one per line
    offsets: tuple  # rational h_i, one per line
    seed: int

    def delta_h(self, i):
        ref = REF_H[i] if i < 3 else REF_H3
        return self.offsets[i] - ref

    def t(self, i):
        """Offset of L_{3+i} relative to the reference position."""
        return self.offsets[3 + i] - REF_H3


def reference_model(k=0, t=()):
    t = tuple(Q(x) for x in t) or (Q(0),) * k
    dirs = tuple((c.a, c.b) for c in vanishing_cycle_classes(k))
    return TorusModel(k, dirs, REF_H + tuple(REF_H3 + x for x in t), -1)


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def meet(model, i, mi, j, mj):
    """Intersection of lift mi of line i with lift mj of line j."""
    di, dj = model.directions[i], model.directions[j]
    a, b, c, d = -di[1], di[0], -dj[1], dj[0]
    r1, r2 = model.offsets[i] + mi, model.offsets[j] + mj
    dt = a * d - b * c
    return ((r1 * d - b * r2) / dt, (a * r2 - c * r1) / dt)


def _mod1(p):
    return (p[0] % 1, p[1] % 1)


def torus_intersections(model, i, j):
    """The distinct intersection points of lines i and j on the torus."""
    n = abs(_det(model.directions[i], model.directions[j]))
    if n == 0:
        return set()
    return {_mod1(meet(model, i, mi, j, mj)) for mi in range(n) for mj in range(n)}


def _on_line(model, l, p):
    return (_det(model.directions[l], p) - model.offsets[l]).denominator == 1


def is_generic(model):
    """No three lines through a common point."""
    lines = range(len(model.directions))
    for i, j in combinations(lines, 2):
        for p in torus_intersections(model, i, j):
            for l in lines:
                if l not in (i, j) and _on_line(model, l, p):
                    return False
    return True


MAX_ATTEMPTS = 20


def build_model(k, seed):
    """Reference configuration with small seeded rational perturbations of
    every offset, the point lines spread out along their common direction."""
    if not 0 <= k <= 8:
        raise RangeError("k must lie in [0, 8]")
    dirs = tuple((c.a, c.b) for c in vanishing_cycle_classes(k))
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(f"{seed}:{attempt}")
        dh = [Q(rng.randint(-40, 40), 1009) for _ in range(3)]
        ts = set()
        while len(ts) < k:
            ts.add(Q(rng.randint(-480, 480), 997))
        ts = sorted(ts)
        offsets = tuple(REF_H[i] + dh[i] for i in range(3)) + tuple(REF_H3 + t for t in ts)
        model = TorusModel(k, dirs, offsets, seed)
        if is_generic(model):
            return model
    raise GenericityFailure(f"no generic model for seed {seed}")


def _line_index(role, point):
    return 3 + point if role == "P" else role


def _edge_coefficient(vec, d):
    lam = vec[0] / d[0] if d[0] != 0 else vec[1] / d[1]
    assert (lam * d[0], lam * d[1]) == tuple(vec)
    return lam


@dataclass(frozen=True)
class Triangle:
    corners: tuple  # plane points at (i^j, j^k, i^k)
    area: Q
    # boundary as multiples of the line directions, counterclockwise
    boundary: dict


def triangle(model, family, n, point=0):
    fam = _family(family)
    i, j, k = (_line_index(r, point) for r in fam.lines)
    mi, mj, mk = fam.base
    mk += n * fam.step
    pij, pjk, pik = meet(model, i, mi, j, mj), meet(model, j, mj, k, mk), meet(model, i, mi, k, mk)
    s = shoelace([pij, pjk, pik])

    def sub(p, q):
        return (q[0] - p[0], q[1] - p[1])

    dirs = model.directions
    if s > 0:
        bd = {j: _edge_coefficient(sub(pij, pjk), dirs[j]),
              k: _edge_coefficient(sub(pjk, pik), dirs[k]),
              i: _edge_coefficient(sub(pik, pij), dirs[i])}
    else:
        bd = {i: _edge_coefficient(sub(pij, pik), dirs[i]),
              k: _edge_coefficient(sub(pik, pjk), dirs[k]),
              j: _edge_coefficient(sub(pjk, pij), dirs[j])}
    return Triangle((pij, pjk, pik), abs(s), bd)


def _family(family):
    if family in UNSUPPORTED:
        raise FamilyNotSupported(f"no area law is known for family {family!r}")
    try:
        return FAMILIES[family]
    except KeyError:
        raise FamilyNotSupported(f"unknown family {family!r}") from None


def enumerate_triangles(model, family, n_range, point=0):
    """[(n, area)] for n in n_range; ``point`` selects L_{3+point} for the
    per-point families."""
    _family(family)
    return [(n, triangle(model, family, n, point).area) for n in n_range]


def area_C(model):
    """Area of C, from the reference chain and the flux of the line motions."""
    return chain_area("C") + model.delta_h(0) - model.delta_h(1) + model.delta_h(2)


def area_Ci(model, i):
    return chain_area("C_i") - model.delta_h(0) + model.delta_h(2) - 3 * model.t(i)


def area_Delta(model, i, j):
    # reference chain drawn at t_j - t_i = FIGURE_DELTA_SHIFT
    return chain_area("Delta") * (model.t(j) - model.t(i)) / FIGURE_DELTA_SHIFT


def family_chain_area(model, family, point=0):
    return area_C(model) if FAMILIES[family].chain == "C" else area_Ci(model, point)


def corner_labels(model, family, point=0):
    """Torus labels of the base triangle corners (reference model only)."""
    tri = triangle(model, family, 0, point)
    inv = {_mod1(figure_to_torus(*p)): name for name, p in FIGURE_POINTS.items()}
    return tuple(inv.get(_mod1(c), "?") for c in tri.corners)


@dataclass(frozen=True)
class LawCheck:
    family: str
    point: int
    n: int
    offset: Q  # area(T_n) - area(T_0) - n * area(chain)
    expected: Q

    @property
    def ok(self):
        return self.offset == self.expected


def area_law_check(model, family, n_range, point=0):
    a0 = triangle(model, family, 0, point).area
    ch = family_chain_area(model, family, point)
    out = []
    for n, a in enumerate_triangles(model, family, n_range, point):
        out.append(LawCheck(family, point, n, a - a0 - n * ch, phi(family, n)))
    return out


def boundary_step_ok(model, family, point=0):
    """The boundary of T_{n+1} - T_n is that of the family's chain:
    -L0 + L1 - L2 for C and L0 - L2 + 3 L_{3+i} for C_i."""
    fam = FAMILIES[family]
    t0, t1 = triangle(model, family, 0, point), triangle(model, family, 1, point)
    diff = {l: t1.boundary[l] - t0.boundary[l] for l in t0.boundary}
    if fam.chain == "C":
        return diff == {0: -1, 1: 1, 2: -1}
    p = 3 + point
    return diff == {0: 1, 2: -1, p: 3}


def base_areas(model, point=0):
    return {f: triangle(model, f, 0, point).area for f in FAMILIES}


def verify_chain_relations(model):
    """Exact identities between base triangle areas.  Returns a dict
    name -> (lhs, rhs)."""
    A = base_areas(model)
    C = area_C(model)
    rel = {
        "alpha_six": (A["xy"] + A["yz"] + A["zx"] - A["yx"] - A["zy"] - A["xz"], C),
        "alpha_diagonal": (A["xx"] + A["yy"] + A["zz"] - A["yx"] - A["zy"] - A["xz"], 1 - C),
    }
    for i in range(model.k):
        B = base_areas(model, i)
        Ci = area_Ci(model, i)
        rel[f"beta[{i}].zero"] = (2 * B["zbar"] + A["xy"] + A["zz"] - B["xbar"] - B["ybar"]
                                  - A["zy"] - A["xz"], Q(0))
        rel[f"beta[{i}].C_i"] = (2 * B["xbar"] + A["yz"] + A["xx"] - B["ybar"] - B["zbar"]
                                 - A["xz"] - A["yx"], Ci)
        rel[f"beta[{i}].fibre_minus_C_i"] = (2 * B["ybar"] + A["zx"] + A["yy"] - B["zbar"]
                                             - B["xbar"] - A["yx"] - A["zy"], 1 - Ci)
    for i, j in combinations(range(model.k), 2):
        Bi, Bj = base_areas(model, i), base_areas(model, j)
        D = area_Delta(model, i, j)
        rel[f"delta[{i},{j}].1"] = (Bi["ybar"] + Bj["zbar"] - Bj["ybar"] - Bi["zbar"], D)
        rel[f"delta[{i},{j}].2"] = (Bi["zbar"] + Bj["xbar"] - Bj["zbar"] - Bi["xbar"], D)
        rel[f"delta[{i},{j}].3"] = (Bi["xbar"] + Bj["ybar"] - Bj["xbar"] - Bi["ybar"], -2 * D)
        rel[f"C_j-C_i[{i},{j}]"] = (area_Ci(model, j) - area_Ci(model, i), 3 * D)
    return rel


def intersection_counts(model):
    """{(i, j): number of torus intersection points} for i < j."""
    n = len(model.directions)
    return {(i, j): len(torus_intersections(model, i, j)) for i, j in combinations(range(n), 2)}


def expected_counts(k):
    classes = vanishing_cycle_classes(k)
    return {(i, j): abs(intersection_number(classes[i], classes[j]))
            for i, j in combinations(range(len(classes)), 2)}


def report(model, n_max=8):
    """All exact checks for one model, as plain data."""
    laws = []
    for fam in FAMILIES:
        points = range(model.k) if FAMILIES[fam].chain == "C_i" else [0]
        for p in points:
            checks = area_law_check(model, fam, range(-n_max, n_max + 1), p)
            laws.append({"family": fam, "point": p, "pass": all(c.ok for c in checks),
                         "triangles": [(c.n, triangle(model, fam, c.n, p).area) for c in checks]})
    chains = {name: {"lhs": l, "rhs": r, "pass": l == r}
              for name, (l, r) in verify_chain_relations(model).items()}
    counts = intersection_counts(model) == expected_counts(model.k)
    return {"laws": laws, "chains": chains, "intersection_counts": counts}
