"""The composition tensor of a (noncommutative) projective plane, its
determinant cubic, and the quiver algebra of the plane blown up at points."""
from dataclasses import dataclass, field

import numpy as np

from .errors import (AmbiguousKernel, DegeneratePoints, IndeterminatePoint,
                     NotOnCubic, RankTooLow, ZeroTensor)

RANK_GAP = 1e-8
# singular value ratios inside (RANK_GAP / MARGIN, RANK_GAP * MARGIN) are ambiguous
MARGIN = 100.0


@dataclass(frozen=True, eq=False)
class ProjPoint:
    """Homogeneous coordinates scaled so the largest-magnitude entry is 1."""

    coords: tuple
    flagged: bool = False

    @classmethod
    def of(cls, vec, flagged=False):
        v = np.asarray(vec, dtype=complex).reshape(3)
        k = int(np.argmax(np.abs(v)))
        if abs(v[k]) == 0.0 or not np.all(np.isfinite(v)):
            raise ValueError("a projective point needs a finite nonzero vector")
        v = v / v[k]
        v[k] = 1.0
        return cls(tuple(complex(x) for x in v), flagged)

    def array(self):
        return np.array(self.coords, dtype=complex)

    def __iter__(self):
        return iter(self.coords)


def projective_distance(u, v):
    """|u ^ v| / (|u| |v|), the sine of the angle between the lines."""
    u = np.asarray(u.coords if isinstance(u, ProjPoint) else u, dtype=complex).ravel()
    v = np.asarray(v.coords if isinstance(v, ProjPoint) else v, dtype=complex).ravel()
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0 if nu == nv else 1.0
    u, v = u / nu, v / nv
    wedge = np.outer(u, v) - np.outer(v, u)
    return float(np.linalg.norm(wedge) / np.sqrt(2.0))


def numerical_rank(m):
    """Rank by singular value gap; raises AmbiguousKernel inside the margin."""
    s = np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)
    if s[0] == 0.0:
        return 0
    ratios = s / s[0]
    for r in ratios:
        if RANK_GAP / MARGIN < r < RANK_GAP * MARGIN:
            raise AmbiguousKernel(f"singular value ratio {r:.3g} too close to the rank gap")
    return int(np.sum(ratios >= RANK_GAP))


@dataclass(frozen=True, eq=False)
class TensorMu:
    """mu[w, v, u]: W <- V (x) U in bases (xbar, ybar, zbar), (x1, y1, z1), (x0, y0, z0)."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex).reshape(3, 3, 3)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def contract_v(self, v):
        """The 3x3 matrix mu_v: U -> W."""
        return np.einsum("wvu,v->wu", self.data, _vec(v))

    def contract_u(self, u):
        """The 3x3 matrix mu_u: V -> W."""
        return np.einsum("wvu,u->wv", self.data, _vec(u))

    def scale(self):
        return float(np.max(np.abs(self.data)))


def _vec(v):
    return np.asarray(v.coords if isinstance(v, ProjPoint) else v, dtype=complex).reshape(3)


# positions (w, v, u) of a, b, c in the contracted matrix
#   [[b X, a Z, c Y], [c Z, b Y, a X], [a Y, c X, b Z]]
_ABC_PATTERN = {
    "b": [(0, 0, 0), (1, 1, 1), (2, 2, 2)],
    "a": [(0, 2, 1), (1, 0, 2), (2, 1, 0)],
    "c": [(0, 1, 2), (1, 2, 0), (2, 0, 1)],
}


def mu_from_abc(a, b, c):
    if a == 0 and b == 0 and c == 0:
        raise ZeroTensor("(a, b, c) = 0")
    arr = np.zeros((3, 3, 3), dtype=complex)
    for name, val in (("a", a), ("b", b), ("c", c)):
        for idx in _ABC_PATTERN[name]:
            arr[idx] = val
    return TensorMu(arr)


def mu_from_alpha(alpha):
    """Tensor of the Fukaya products m2(u, v) = alpha_{uv} w.

    ``alpha`` is keyed by two-letter names such as "xy"."""
    index = {"x": 0, "y": 1, "z": 2}
    out_of = {"xy": 2, "yz": 0, "zx": 1, "yx": 2, "zy": 0, "xz": 1, "xx": 0, "yy": 1, "zz": 2}
    arr = np.zeros((3, 3, 3), dtype=complex)
    for name, val in alpha.items():
        arr[out_of[name], index[name[1]], index[name[0]]] = val
    return TensorMu(arr)


def det_cubic(mu, v):
    return complex(np.linalg.det(mu.contract_v(v)))


def det_residual(mu, v):
    """|det mu_v| divided by the product of its row norms (Hadamard ratio)."""
    m = mu.contract_v(v)
    norms = np.prod(np.linalg.norm(m, axis=1))
    if norms == 0.0:
        return 0.0
    return float(abs(np.linalg.det(m)) / norms)


def cubic_coefficients(mu):
    """Coefficients of det(mu_v) in the ten cubic monomials of v, by
    interpolation on a fixed grid."""
    monos = [(i, j, k) for i in range(4) for j in range(4) for k in range(4) if i + j + k == 3]
    rng = np.random.default_rng(12345)
    pts = rng.normal(size=(20, 3)) + 1j * rng.normal(size=(20, 3))
    a = np.array([[p[0] ** i * p[1] ** j * p[2] ** k for (i, j, k) in monos] for p in pts])
    rhs = np.array([det_cubic(mu, p) for p in pts])
    coef, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    return dict(zip(monos, coef))


def is_commutative(mu, tol=1e-8):
    """det(mu_v) vanishes identically: the plane is the ordinary one."""
    coef = cubic_coefficients(mu)
    return max(abs(c) for c in coef.values()) < tol * mu.scale() ** 3


def sigma_map(a, b, c, v, tol=1e-9):
    """(a^2 XZ - bc Y^2 : c^2 YZ - ab X^2 : b^2 XY - ac Z^2)."""
    abc = np.array([a, b, c], dtype=complex)
    s = np.max(np.abs(abc))
    if s == 0:
        raise ZeroTensor("(a, b, c) = 0")
    a, b, c = abc / s
    x, y, z = ProjPoint.of(_vec(v)).coords
    img = np.array([a * a * x * z - b * c * y * y,
                    c * c * y * z - a * b * x * x,
                    b * b * x * y - a * c * z * z])
    if np.max(np.abs(img)) < 1e-12:
        raise IndeterminatePoint("sigma is undefined at this point")
    off = det_residual(mu_from_abc(a, b, c), (x, y, z)) > tol
    return ProjPoint.of(img, flagged=off)


def _best_cross(vectors):
    """Cross products of all pairs, ordered by decreasing norm."""
    out = []
    for i in range(3):
        for j in range(i + 1, 3):
            cr = np.cross(vectors[i], vectors[j])
            out.append((np.linalg.norm(cr), cr))
    out.sort(key=lambda t: -t[0])
    return out


def _rank_two(m, tol):
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0 or s[1] / s[0] < RANK_GAP:
        raise RankTooLow("contraction has rank <= 1")


def kernel_vector(mu, v, tol=1e-8):
    """Kernel of mu_v: U -> W at a point of the determinant cubic."""
    if det_residual(mu, v) > tol:
        raise NotOnCubic("mu_v is invertible at this point")
    m = mu.contract_v(v)
    _rank_two(m, tol)
    crosses = _best_cross(m)
    k1, k2 = crosses[0][1], crosses[1][1]
    if crosses[1][0] > 1e-3 * crosses[0][0] and projective_distance(k1, k2) > tol:
        raise AmbiguousKernel("row cross-products disagree")
    return ProjPoint.of(k1)


def quotient_form(mu, v, tol=1e-8):
    """Linear form on W vanishing on the image of mu_v."""
    if det_residual(mu, v) > tol:
        raise NotOnCubic("mu_v is invertible at this point")
    m = mu.contract_v(v)
    _rank_two(m, tol)
    crosses = _best_cross(m.T)
    l1, l2 = crosses[0][1], crosses[1][1]
    if crosses[1][0] > 1e-3 * crosses[0][0] and projective_distance(l1, l2) > tol:
        raise AmbiguousKernel("column cross-products disagree")
    return ProjPoint.of(l1)


def _annihilator_rows(v):
    """2x3 matrix whose rows span the forms vanishing on v."""
    _, _, vh = np.linalg.svd(np.asarray(v, dtype=complex).reshape(1, 3))
    return vh[1:].conj()


@dataclass(frozen=True, eq=False)
class QuiverAlgebra:
    """Objects F0, F1, F2, O_1..O_k with the composition maps

    * Hom(F2, O_j) (x) V -> Hom(F1, O_j) = V / <v_j>: the 2x3 matrix proj[j]
    * Hom(F2, O_j) (x) W -> Hom(F0, O_j) = W / Im mu_{v_j}: the form quotient[j]
    * Hom(F1, O_j) (x) U -> Hom(F0, O_j): the 2x3 matrix nu[j] with
      nu[j](proj[j] v, u) = quotient[j](mu(v, u)).
    """

    mu: TensorMu
    points: tuple
    proj: tuple
    quotient: tuple
    nu: tuple
    objects: tuple = field(default=())

    @property
    def k(self):
        return len(self.points)

    def hom_dim(self, a, b):
        """Dimension of Hom(a, b) for object names."""
        if a == b:
            return 1
        fixed = {("F0", "F1"): 3, ("F1", "F2"): 3, ("F0", "F2"): 3}
        if (a, b) in fixed:
            return fixed[(a, b)]
        if b.startswith("O") and a in ("F0", "F1", "F2"):
            return {"F0": 1, "F1": 2, "F2": 1}[a]
        return 0

    def dimension(self):
        return sum(self.hom_dim(a, b) for a in self.objects for b in self.objects)

    def hom_table(self):
        return {f"{a}->{b}": self.hom_dim(a, b) for a in self.objects for b in self.objects
                if self.hom_dim(a, b)}


def build_quiver(mu, points, tol=1e-8):
    pts = [p if isinstance(p, ProjPoint) else ProjPoint.of(p) for p in points]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if projective_distance(pts[i], pts[j]) <= tol:
                raise DegeneratePoints(i, j)
    proj, quot, nus = [], [], []
    for p in pts:
        ell = quotient_form(mu, p, tol).array()
        pm = _annihilator_rows(p.array())
        n = np.einsum("w,wvu->vu", ell, mu.data)
        # solve pm^T nu = n; exact because n annihilates v_j on the left
        nu, *_ = np.linalg.lstsq(pm.T, n, rcond=None)
        proj.append(pm)
        quot.append(ell)
        nus.append(nu)
    objects = ("F0", "F1", "F2") + tuple(f"O{j}" for j in range(len(pts)))
    return QuiverAlgebra(mu, tuple(pts), tuple(proj), tuple(quot), tuple(nus), objects)


def recover_points(q, tol=1e-8):
    """Kernel of Hom(F2, O_j) (x) V -> Hom(F1, O_j) for each j."""
    out = []
    for pm in q.proj:
        pm = np.asarray(pm, dtype=complex)
        if numerical_rank(pm) != 2:
            raise AmbiguousKernel("composition map does not have rank 2")
        _, _, vh = np.linalg.svd(pm)
        out.append(ProjPoint.of(vh[-1].conj()))
    return out


def nondegeneracy_sample(mu, n=200):
    """Smallest numerical rank of the bilinear form l o mu over n linear
    forms l spread over the unit sphere of C^3 (Fibonacci lattice on the
    real sphere rotated by fixed phases)."""
    ranks = []
    golden = np.pi * (3.0 - np.sqrt(5.0))
    for i in range(n):
        y = 1 - 2 * (i + 0.5) / n
        r = np.sqrt(1 - y * y)
        th = golden * i
        ell = np.array([r * np.cos(th), y, r * np.sin(th)], dtype=complex)
        ell *= np.exp(1j * np.array([0.0, 0.7 * i, 1.3 * i]))
        m = np.einsum("w,wvu->vu", ell, mu.data)
        s = np.linalg.svd(m, compute_uv=False)
        ranks.append(int(np.sum(s / s[0] >= RANK_GAP)) if s[0] else 0)
    return min(ranks)
