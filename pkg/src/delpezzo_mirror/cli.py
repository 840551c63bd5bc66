"""Command line front end.

Exit codes: 0 success, 1 failed checks or computation errors, 2 flagged
class under --strict, 64 malformed input or arguments.
"""
import argparse
import os
import sys
from dataclasses import dataclass

from . import config, fukaya, mirror, oracle, topology
from .errors import DegenerateClass, GenericityFailure, HMSError, InvalidKaehlerClass
from .jsonio import dumps, kaehler_to_json, load_kaehler
from .zeta import degeneration_normalized, degeneration_series, is_degenerate

EXIT_OK, EXIT_FAIL, EXIT_FLAGGED, EXIT_USAGE = 0, 1, 2, 64
ORACLE_K = 3


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-8
    max_terms: int = config.DEFAULT_MAX_TERMS
    seed: int = 0
    output: str = None
    strict: bool = False
    side: str = "both"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_terms < config.MIN_MAX_TERMS:
            raise ValueError(f"term cap must be at least {config.MIN_MAX_TERMS}")


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_class(path):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidKaehlerClass(f"cannot read {path}: {exc.strerror}") from None
    return load_kaehler(text)


def certificate_json(cert):
    return {
        "input": kaehler_to_json(cert.kc),
        "flags": cert.flags,
        "checks": [{"name": c.name, "residual": c.residual, "tol": c.tol,
                    "pass": c.passed, "skipped": c.skipped} for c in cert.checks],
        "truncation": {"tail_bound": cert.tail_bound, "terms_used": cert.terms_used},
        "pass": cert.passed,
    }


def table_json(table):
    return {
        "alpha": table.alpha_by_pair(),
        "beta": [{"xbar": b[0], "ybar": b[1], "zbar": b[2]} for b in table.beta],
        "gauge": {"s": table.gauge_s, "s_i": list(table.gauge_si)},
        "truncation": {"tail_bound": table.tail_bound, "terms_used": table.terms_used},
    }


def quiver_json(q):
    return {
        "objects": list(q.objects),
        "hom_dimensions": q.hom_table(),
        "dimension": q.dimension(),
        "mu": q.mu.data,
        "points": [p.coords for p in q.points],
        "compositions": [{"F2_V_to_F1": q.proj[j], "F2_W_to_F0": q.quotient[j],
                          "F1_U_to_F0": q.nu[j]} for j in range(q.k)],
    }


def mirror_json(md):
    return {
        "tau": md.tau, "z0": md.z0, "p": list(md.p),
        "z0_reduced": md.z0_reduced, "p_reduced": list(md.p_reduced),
        "L1_divisor_point": md.L1_point, "L2_divisor_point": md.L2_point,
        "abc": list(md.abc),
        "blown_points": [p.coords for p in md.blown_points],
        "flags": {"commutative": md.commutative,
                  "degenerate_pairs": [list(p) for p in md.degenerate_pairs],
                  "marginal_pairs": [list(p) for p in md.marginal_pairs]},
    }


def _flagged(flags):
    return bool(flags["commutative"] or flags["degenerate_pairs"])


def cmd_verify(path, cfg):
    kc = _read_class(path)
    try:
        cert = mirror.certify(kc, cfg.tolerance)
    except HMSError as exc:
        _emit(dumps({"input": kaehler_to_json(kc), "error": str(exc), "pass": False}), cfg.output)
        return EXIT_FAIL
    _emit(dumps(certificate_json(cert)), cfg.output)
    if cfg.strict and _flagged(cert.flags):
        return EXIT_FLAGGED
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_tables(path, cfg):
    kc = _read_class(path)
    out = {"input": kaehler_to_json(kc)}
    code = EXIT_OK
    try:
        md = mirror.mirror_map(kc, cfg.tolerance)
        if cfg.side in ("fukaya", "both"):
            out["fukaya"] = table_json(fukaya.full_table(kc, mirror._series_tol(cfg.tolerance)))
        if cfg.side in ("quiver", "both"):
            try:
                _, q, _ = mirror.build_both_sides(kc, cfg.tolerance)
                out["quiver"] = quiver_json(q)
            except DegenerateClass as exc:
                out["quiver"] = None
                out["error"] = str(exc)
        if cfg.side == "both":
            out["mirror"] = mirror_json(md)
        if cfg.strict and (md.commutative or md.degenerate_pairs):
            code = EXIT_FLAGGED
    except HMSError as exc:
        out["error"] = str(exc)
        code = EXIT_FAIL
    _emit(dumps(out), cfg.output)
    return code


def cmd_monodromy(cfg):
    names = ("tau0", "tau1", "tau2")
    mats = {n: topology.dehn_twist_matrix(c).rows() for n, c in zip(names, topology.BASE_CLASSES)}
    t = topology.dehn_twist_matrix(topology.EXTRA_CLASS)
    t9 = t ** 9
    product = topology.monodromy_relation()
    fixed = t9.apply(topology.EXTRA_CLASS)
    out = {
        "matrices": {**mats, "tau": t.rows(), "tau^9": t9.rows()},
        "product": product.rows(),
        "relation_holds": product == topology.SL2ZMatrix.identity(),
        "fixed_vector": [1, 1],
        "fixed_vector_check": fixed == topology.EXTRA_CLASS,
    }
    _emit(dumps(out), cfg.output)
    return EXIT_OK if out["relation_holds"] and out["fixed_vector_check"] else EXIT_FAIL


def cmd_oracle(cfg, n_max=8):
    try:
        model = oracle.build_model(ORACLE_K, cfg.seed)
    except GenericityFailure as exc:
        _emit(dumps({"error": str(exc), "pass": False}), cfg.output)
        return EXIT_FAIL
    rep = oracle.report(model, n_max)
    laws = [{"family": l["family"], "point": l["point"], "pass": l["pass"],
             "triangles": [{"n": n, "area": a} for n, a in l["triangles"]]} for l in rep["laws"]]
    ok = (all(l["pass"] for l in laws) and all(c["pass"] for c in rep["chains"].values())
          and rep["intersection_counts"])
    out = {"seed": cfg.seed, "k": ORACLE_K, "offsets": list(model.offsets), "laws": laws,
           "chains": rep["chains"], "intersection_counts_match": rep["intersection_counts"],
           "pass": ok}
    _emit(dumps(out), cfg.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_degeneracy(path, cfg):
    kc = _read_class(path)
    qd = topology.qdata(kc)
    st = mirror._series_tol(cfg.tolerance)
    pairs = []
    try:
        for i in range(kc.k):
            for j in range(i + 1, kc.k):
                rep = is_degenerate(kc, i, j, cfg.tolerance)
                qt = qd.qtilde[i][j]
                pairs.append({
                    "i": i, "j": j, "degenerate": rep.degenerate, "marginal": rep.marginal,
                    "witness": list(rep.witness), "distance": rep.distance,
                    "factor": degeneration_series(qt, qd.qF, st).value,
                    "factor_normalized": degeneration_normalized(qt, qd.qF, st),
                })
    except HMSError as exc:
        _emit(dumps({"input": kaehler_to_json(kc), "error": str(exc)}), cfg.output)
        return EXIT_FAIL
    _emit(dumps({"input": kaehler_to_json(kc), "pairs": pairs}), cfg.output)
    if cfg.strict and any(p["degenerate"] for p in pairs):
        return EXIT_FLAGGED
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="Kaehler class JSON (default: stdin)")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=1e-8, help="check tolerance")
    common.add_argument("--max-terms", type=int, default=None,
                        help="series term cap (default: $HMS_MAX_TERMS or 100000)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--strict", action="store_true",
                        help="exit 2 on commutative or degenerate classes")
    common.add_argument("--side", choices=("fukaya", "quiver", "both"), default="both")
    p = argparse.ArgumentParser(prog="hms", description="Mirror symmetry checks for del Pezzo surfaces.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="certify a Kaehler class")
    sub.add_parser("tables", parents=[common], help="emit both sides' structure constants")
    sub.add_parser("monodromy", parents=[common], help="check the monodromy relation")
    sub.add_parser("oracle", parents=[common], help="exact triangle-area checks")
    sub.add_parser("degeneracy", parents=[common], help="degeneracy test for every pair")
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        if exc.code:
            return EXIT_USAGE
        raise
    max_terms = args.max_terms
    if max_terms is None:
        env = os.environ.get(config.ENV_MAX_TERMS)
        max_terms = int(env) if env and env.strip().lstrip("-").isdigit() else config.DEFAULT_MAX_TERMS
    try:
        cfg = RunConfig(args.tol, max_terms, args.seed, args.out, args.strict, args.side)
    except ValueError as exc:
        print(f"hms: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with config.series_settings(max_terms=cfg.max_terms):
            if args.command == "verify":
                return cmd_verify(args.input, cfg)
            if args.command == "tables":
                return cmd_tables(args.input, cfg)
            if args.command == "monodromy":
                return cmd_monodromy(cfg)
            if args.command == "oracle":
                return cmd_oracle(cfg)
            return cmd_degeneracy(args.input, cfg)
    except InvalidKaehlerClass as exc:
        print(f"hms: invalid Kähler class: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
