"""The mirror map and the certificate comparing both sides."""
import math
from dataclasses import dataclass

import numpy as np

from . import fukaya, quiver
from .errors import DegenerateClass, HMSError
from .qtheta import OMEGA, lattice_distance, reduce_mod_lattice, vtheta_triple
from .quiver import ProjPoint, projective_distance
from .zeta import degeneration_normalized, is_degenerate
from .topology import qdata


def _series_tol(tol):
    return min(1e-12, tol * 1e-3)


@dataclass(frozen=True)
class MirrorData:
    tau: complex
    z0: complex
    p: tuple
    z0_reduced: complex
    p_reduced: tuple
    # divisors of the line bundles L1 = O(3 * (-z0)) and L2 = O(3 * 0)
    L1_point: complex
    L2_point: complex
    abc: tuple
    blown_points: tuple
    commutative: bool
    degenerate_pairs: tuple
    marginal_pairs: tuple


def is_third_lattice(x, tau, tol=1e-8):
    """Is x in (1/3)(Z + tau Z)?"""
    return lattice_distance(3 * complex(x), tau)[0] <= tol


def mirror_map(kc, tol=1e-8):
    st = _series_tol(tol)
    z0 = kc.cbar / 3
    p = tuple(c / 3 for c in kc.c)
    abc = vtheta_triple(z0, kc.tau, st)
    blown = tuple(ProjPoint.of(vtheta_triple(z0 + pi, kc.tau, st)) for pi in p)
    degenerate, marginal = [], []
    for i in range(kc.k):
        for j in range(i + 1, kc.k):
            rep = is_degenerate(kc, i, j, tol)
            if rep.degenerate:
                degenerate.append((i, j))
            elif rep.marginal:
                marginal.append((i, j))
    return MirrorData(
        tau=kc.tau, z0=z0, p=p,
        z0_reduced=reduce_mod_lattice(z0, kc.tau),
        p_reduced=tuple(reduce_mod_lattice(x, kc.tau) for x in p),
        L1_point=-z0, L2_point=0j, abc=abc, blown_points=blown,
        commutative=is_third_lattice(z0, kc.tau, tol),
        degenerate_pairs=tuple(degenerate), marginal_pairs=tuple(marginal),
    )


def build_both_sides(kc, tol=1e-8):
    md = mirror_map(kc, tol)
    if md.degenerate_pairs:
        raise DegenerateClass(*md.degenerate_pairs[0])
    table = fukaya.full_table(kc, _series_tol(tol))
    mu = quiver.mu_from_abc(*md.abc)
    q = quiver.build_quiver(mu, md.blown_points, tol)
    return table, q, md


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float
    skipped: bool = False
    note: str = ""

    @property
    def passed(self):
        return self.skipped or (math.isfinite(self.residual) and self.residual <= self.tol)


@dataclass(frozen=True)
class Certificate:
    kc: object
    flags: dict
    checks: tuple
    tail_bound: float = 0.0
    terms_used: int = 0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name):
        return next(c for c in self.checks if c.name == name)


def _tensor_distance(mu1, mu2):
    return projective_distance(mu1.data.ravel(), mu2.data.ravel())


def third_lattice_matrix(w_index):
    """Linear map g with j(z + w) proportional to g j(z), for w = 1/3
    (index 0) or w = tau/3 (index 1)."""
    if w_index == 0:
        return np.diag([1.0, OMEGA, OMEGA ** 2])
    # (v+, v0, v-) -> (v0, v-, v+)
    return np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)


def _core_checks(kc, tol, skip_points=False):
    """Checks (a)-(f) and the degeneracy consistency; returns (checks, aux)."""
    st = _series_tol(tol)
    md = mirror_map(kc, tol)
    checks = []
    table = fukaya.full_table(kc, st)
    theta_table = fukaya.alpha_table_theta(kc, st)
    scale = max(abs(v) for v in table.alpha.values())
    diff = max(abs(table.alpha[n] - theta_table.alpha[n]) for n in table.alpha)
    checks.append(Check("alpha_gauge_paths", diff / scale, tol))

    mu_q = quiver.mu_from_abc(*md.abc)
    mu_f = quiver.mu_from_alpha(table.alpha)
    checks.append(Check("tensor_match", _tensor_distance(mu_f, mu_q), tol))

    for r in fukaya.ratio_report(kc, st):
        checks.append(Check(f"ratio:{r.name}", r.residual, tol, r.skipped, r.note))

    skip = bool(md.degenerate_pairs) or skip_points
    note = "degenerate class" if md.degenerate_pairs else ""
    for i in range(kc.k):
        v = md.blown_points[i]
        if skip:
            for name in ("beta_vs_quotient", "on_cubic", "sigma_translation"):
                checks.append(Check(f"{name}[{i}]", 0.0, tol, True, note))
            continue
        beta = table.beta[i]
        try:
            form = quiver.quotient_form(mu_q, v, tol)
            res = projective_distance(form, beta)
        except HMSError:
            res = math.inf
        checks.append(Check(f"beta_vs_quotient[{i}]", res, tol))
        checks.append(Check(f"on_cubic[{i}]", quiver.det_residual(mu_q, v), tol))
        jp = vtheta_triple(md.p[i], kc.tau, st)
        try:
            res = projective_distance(quiver.sigma_map(*md.abc, jp), v)
        except HMSError:
            res = math.inf
        checks.append(Check(f"sigma_translation[{i}]", res, tol))

    if skip:
        checks.append(Check("recover_points", 0.0, tol, True, note))
    else:
        try:
            q = quiver.build_quiver(mu_q, md.blown_points, tol)
            rec = quiver.recover_points(q, tol)
            res = max((projective_distance(a, b) for a, b in zip(rec, md.blown_points)), default=0.0)
        except HMSError:
            res = math.inf
        checks.append(Check("recover_points", res, tol))

    disagreements = 0
    for i in range(kc.k):
        for j in range(i + 1, kc.k):
            disagreements += is_degenerate(kc, i, j, tol).degenerate != factor_vanishes(kc, i, j, tol)
    checks.append(Check("degeneracy_consistency", float(disagreements), 0.0))
    return checks, dict(md=md, table=table)


def factor_vanishes(kc, i, j, tol=1e-8):
    """Series side of the degeneracy test, with q' = qtilde_{ij}.

    The normalized size of the factor is compared with sqrt(tol), far above
    rounding noise and far below its size at generic q'."""
    qd = qdata(kc)
    return degeneration_normalized(qd.qtilde[i][j], qd.qF, _series_tol(tol)) < math.sqrt(tol)


def _alpha_projective(t1, t2):
    return projective_distance(t1.alpha_vector(), t2.alpha_vector())


def _beta_projective(t1, t2):
    return max((projective_distance(a, b) for a, b in zip(t1.beta, t2.beta)), default=0.0)


# relabelling of alpha names under cbar -> cbar + tau: x0 -> y0, y0 -> z0, z0 -> x0
# on Hom(L0, L1) and x1 -> z1, y1 -> x1, z1 -> y1 on Hom(L1, L2)
SIGMA0 = {"x": "y", "y": "z", "z": "x"}
SIGMA1 = {"x": "z", "y": "x", "z": "y"}


def tau_shift_permutation(name):
    return SIGMA0[name[0]] + SIGMA1[name[1]]


def tau_shift_residual(kc, tol=1e-8):
    """Max relative deviation from alpha'(sigma(pair)) = lambda alpha(pair),
    lambda = -qC^{-1/3}, comparing kc with cbar -> cbar + tau."""
    st = _series_tol(tol)
    old = fukaya.alpha_table(kc, st).alpha
    new = fukaya.alpha_table(kc.with_cbar(kc.cbar + kc.tau), st).alpha
    lam = -1.0 / qdata(kc).qC13
    scale = max(abs(v) for v in new.values())
    return max(abs(new[tau_shift_permutation(n)] - lam * old[n]) for n in old) / scale


def _shift_check(name, base_checks, base_aux, kc_shift, tol):
    checks, aux = _core_checks(kc_shift, tol)
    res = max(_alpha_projective(base_aux["table"], aux["table"]),
              _beta_projective(base_aux["table"], aux["table"]))
    b = {c.name: c for c in base_checks}
    for c in checks:
        if c.name in b and not (c.skipped or b[c.name].skipped):
            res = max(res, abs(c.residual - b[c.name].residual))
            if c.passed != b[c.name].passed:
                res = math.inf
    return Check(name, res, tol)


def _third_lattice_check(kc, md, tol, w_index):
    """Translate every blown-up point by w in (1/3) lattice and re-run the
    point checks; also compare with the explicit automorphism."""
    st = _series_tol(tol)
    w = (1.0 / 3.0) if w_index == 0 else kc.tau / 3
    g = third_lattice_matrix(w_index)
    mu = quiver.mu_from_abc(*md.abc)
    res = 0.0
    for i, pi in enumerate(md.p):
        moved = ProjPoint.of(vtheta_triple(md.z0 + pi + w, kc.tau, st))
        res = max(res, projective_distance(moved, g @ md.blown_points[i].array()))
        beta = vtheta_triple(pi + w, kc.tau, st)
        try:
            res = max(res, projective_distance(quiver.quotient_form(mu, moved, tol), beta))
        except HMSError:
            return math.inf
        res = max(res, quiver.det_residual(mu, moved))
    return res


def certify(kc, tol=1e-8):
    checks, aux = _core_checks(kc, tol)
    md = aux["md"]
    degenerate = bool(md.degenerate_pairs)
    extra = []
    for label, shift in (("shift_cbar+3", 3.0), ("shift_cbar+3tau", 3 * kc.tau)):
        extra.append(_shift_check(label, checks, aux, kc.with_cbar(kc.cbar + shift), tol))
    extra.append(Check("shift_cbar+tau_permutation", tau_shift_residual(kc, tol), tol))
    for w_index, label in ((0, "third_lattice_1/3"), (1, "third_lattice_tau/3")):
        if degenerate or kc.k == 0:
            extra.append(Check(label, 0.0, tol, True, "no blown-up points" if kc.k == 0 else "degenerate class"))
        else:
            extra.append(Check(label, _third_lattice_check(kc, md, tol, w_index), tol))
    flags = {
        "commutative": md.commutative,
        "degenerate_pairs": [list(p) for p in md.degenerate_pairs],
        "marginal_pairs": [list(p) for p in md.marginal_pairs],
    }
    table = aux["table"]
    return Certificate(kc, flags, tuple(checks + extra), table.tail_bound, table.terms_used)
