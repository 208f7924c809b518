"""Command-line front end.

Every report starts with a header naming the field, cutoff and seed.
``--format machine`` prints one JSON object (sorted keys) instead of text.
Exit codes: 0 when a verdict was computed (even a negative one), 1 for
input errors, 2 when an internal certificate fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .algebra import AlgebraError
from .functors import endo_algebra
from .homology import (DEFAULT_CUTOFF, ResolutionError, dominant_dimension, ext_dim, global_dimension,
                       min_resolution, verify_apt_equivalence, verify_ext_iso)
from .io import FormatError, format_based_algebra, load_algebra, load_indecomposables, load_module
from .linalg import DEFAULT_PRIME
from .modcat import DecompositionError, ModuleError
from .tilting import (CertificateError, NotClusterTilting, c_resolution, correspondence_roundtrip, fingerprint,
                      is_cluster_tilting, is_d_auslander, recover_ct)


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    p: Optional[int]
    cutoff: int
    seed: int
    format: str


def _dim(r) -> dict:
    return {"kind": r.kind, "value": r.value}


def _vertices(text: str, n: int) -> list[int]:
    if not text.strip():
        return []
    try:
        vs = sorted({int(x) - 1 for x in text.split(",")})
    except ValueError:
        raise CliError(f"--e expects comma-separated 1-based vertices, got {text!r}") from None
    if any(not 0 <= v < n for v in vs):
        raise CliError(f"--e vertex out of range 1..{n}")
    return vs


def _load(cfg: RunConfig, path: str):
    return load_algebra(path, cfg.p)


# ---------------------------------------------------------------------------
# subcommands; each returns (text lines, machine dict)


def cmd_ext(cfg, args):
    A = _load(cfg, args.algebra)
    M, N = load_module(args.M, A), load_module(args.N, A)
    n = ext_dim(args.i, M, N, cfg.cutoff)
    return [f"dim Ext^{args.i}({M.name}, {N.name}) = {n}"], {"i": args.i, "ext": n}


def cmd_gldim(cfg, args):
    r = global_dimension(_load(cfg, args.algebra), cfg.cutoff)
    return [f"gl.dim {r}"], {"gldim": _dim(r)}


def cmd_domdim(cfg, args):
    r = dominant_dimension(_load(cfg, args.algebra), cfg.cutoff, args.method)
    return [f"dom.dim {r}"], {"domdim": _dim(r)}


def cmd_resolve(cfg, args):
    A = _load(cfg, args.algebra)
    M = load_module(args.M, A)
    direction = {"proj": "projective", "inj": "injective"}[args.direction]
    res = min_resolution(M, direction, cfg.cutoff)
    letter = "P" if direction == "projective" else "I"
    lines = [f"{direction} resolution of {M.name} (dims {list(M.dims)})"]
    terms = []
    for i, t in enumerate(res.terms):
        mult = res.multiplicities(i)
        summ = " + ".join(f"{letter}{v + 1}" + (f"^{m}" if m > 1 else "") for v, m in enumerate(mult) if m)
        lines.append(f"  {letter}_{i}: dim {t.dim}  {summ}")
        terms.append({"dim": t.dim, "multiplicities": mult})
    if res.truncated:
        lines.append(f"  ... truncated at cutoff {cfg.cutoff}")
    return lines, {"direction": direction, "terms": terms, "truncated": res.truncated}


def cmd_check_ct(cfg, args):
    A = _load(cfg, args.algebra)
    X = load_module(args.X, A)
    crit = is_cluster_tilting(X, args.d, "criterion", cutoff=cfg.cutoff, seed=cfg.seed)
    lines = [str(crit)]
    out = {"d": args.d, "criterion": {"verdict": crit.verdict, "evidence": crit.evidence}}
    if args.indecomposables:
        inds = load_indecomposables(args.indecomposables, A)
        en = is_cluster_tilting(X, args.d, "enumerated", inds, cfg.cutoff, cfg.seed)
        lines.append(str(en))
        out["enumerated"] = {"verdict": en.verdict, "evidence": en.evidence, "indecomposables": len(inds)}
    return lines, out


def cmd_endo(cfg, args):
    A = _load(cfg, args.algebra)
    X = load_module(args.X, A)
    endo = endo_algebra(X, cfg.seed)
    G = endo.algebra
    G.name = f"End({X.name})"
    text = format_based_algebra(G)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    lines = [f"End({X.name}): dim {G.n}, {G.num_vertices} vertices",
             "summands: " + ", ".join(f"X{i + 1} dims {list(s.dims)} x{m}"
                                      for i, (s, m) in enumerate(zip(endo.summands, endo.multiplicities)))]
    lines.append(f"written to {args.out}" if args.out else text.rstrip())
    return lines, {"dim": G.n, "vertices": G.num_vertices, "out": args.out,
                   "summands": [{"dims": list(s.dims), "multiplicity": m}
                                for s, m in zip(endo.summands, endo.multiplicities)]}


def cmd_check_auslander(cfg, args):
    v = is_d_auslander(_load(cfg, args.algebra), args.d, cfg.cutoff)
    return [str(v)], {"d": args.d, "verdict": v.verdict, "gldim": _dim(v.gldim), "domdim": _dim(v.domdim)}


def cmd_recover_ct(cfg, args):
    G = _load(cfg, args.algebra)
    try:
        rec = recover_ct(G, args.d, cfg.cutoff, cfg.seed)
    except ValueError as exc:
        return [f"not recoverable: {exc}"], {"d": args.d, "recovered": False, "reason": str(exc)}
    L = rec.algebra
    parts = [s for s in rec.summands if s.dim]
    lines = [f"corner algebra: dim {L.n}, {L.num_vertices} vertices, fingerprint {fingerprint(L)}",
             f"X': {len(parts)} summands, total dim {rec.module.dim}"]
    lines += [f"  {s.name}: dims {list(s.dims)}" for s in parts]
    lines.append("certificates: " + ", ".join(f"{k}={v}" for k, v in rec.certificates.items()))
    if not rec.passed:
        raise CliError("recovered module failed its certificates: " + "; ".join(lines), 2)
    return lines, {"d": args.d, "recovered": True, "corner_dim": L.n, "corner_vertices": L.num_vertices,
                   "summands": [list(s.dims) for s in parts], "certificates": rec.certificates}


def cmd_roundtrip(cfg, args):
    A = _load(cfg, args.algebra)
    X = load_module(args.X, A)
    r = correspondence_roundtrip(X, args.d, cfg.cutoff, cfg.seed)
    lines = [str(r)] + [f"  {k}: {v}" for k, v in r.checks.items()] + [f"  note: {n}" for n in r.notes]
    return lines, {"d": args.d, "passed": r.passed, "gamma_dim": r.gamma_dim, "checks": r.checks, "notes": r.notes}


def cmd_c_resolve(cfg, args):
    A = _load(cfg, args.algebra)
    X, M = load_module(args.X, A), load_module(args.M, A)
    try:
        res = c_resolution(X, M, args.d, args.direction, cfg.seed)
    except NotClusterTilting as exc:
        w = exc.witness
        return [f"refuted: {exc}", f"  witness dims {list(w.dims)}" if w is not None else ""], \
            {"d": args.d, "refuted": True, "reason": str(exc), "witness": list(w.dims) if w is not None else None}
    lines = [f"{args.direction} C-resolution of {M.name}: length {res.length}",
             "  term dims: " + ", ".join(f"C_{i}={t}" for i, t in enumerate(res.term_dims())),
             f"  exact: {res.exact}", f"  hom-exact: {all(res.hom_exact.values())}",
             f"  in add(X): {all(res.in_add)}"]
    out = {"d": args.d, "refuted": False, "direction": args.direction, "length": res.length,
           "terms": [list(t.dims) for t in res.terms], "exact": res.exact,
           "hom_exact": all(res.hom_exact.values()), "in_add": all(res.in_add)}
    if not res.certified:
        raise CliError("C-resolution certificates failed:\n" + "\n".join(lines), 2)
    return lines, out


def cmd_verify_apt(cfg, args):
    A = _load(cfg, args.algebra)
    M = load_module(args.M, A)
    e = _vertices(args.e, A.num_vertices)
    r = verify_apt_equivalence(A, e, M, args.d)
    lines = [f"e = {[v + 1 for v in e]}, d = {args.d}",
             f"  (i)   minimal resolution starts with {args.d} terms in add(Ae): {r.in_pk}",
             f"  (ii)  Ext vanishes against simples of A/AeA: {r.ext_simples}",
             f"  (iii) Ext vanishes against injectives of A/AeA: {r.ext_injectives}",
             f"  agree: {r.agree}"]
    lines += [f"  witness Ext^{i}(M, {name}) = {x}" for i, name, x in r.witnesses]
    return lines, {"d": args.d, "e": [v + 1 for v in e], "pk": r.in_pk, "simples": r.ext_simples,
                   "injectives": r.ext_injectives, "agree": r.agree}


def cmd_verify_extiso(cfg, args):
    A = _load(cfg, args.algebra)
    X, Y = load_module(args.X, A), load_module(args.Y, A)
    e = _vertices(args.e, A.num_vertices)
    r = verify_ext_iso(A, e, X, Y, args.d)
    lines = [f"e = {[v + 1 for v in e]}, d = {args.d}, hypothesis met: {r.hypothesis_met}"]
    lines += [f"  Ext^{i}: {a} vs {b}" for i, (a, b) in enumerate(r.table)]
    lines.append(f"  status: {r.status}")
    return lines, {"d": args.d, "e": [v + 1 for v in e], "hypothesis_met": r.hypothesis_met,
                   "table": [list(t) for t in r.table], "status": r.status}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help=f"field modulus (default {DEFAULT_PRIME})")
    common.add_argument("--cutoff", type=int, default=argparse.SUPPRESS,
                        help=f"resolution cutoff (default {DEFAULT_CUTOFF})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for decompositions (default 0)")
    common.add_argument("--format", choices=["text", "machine"], default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="auslander", parents=[common],
                                 description="Homological algebra of quiver algebras over F_p.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, *pos, d=False, help=""):
        s = sub.add_parser(name, parents=[common], help=help)
        if d:
            s.add_argument("--d", type=int, required=True)
        for p in pos:
            s.add_argument(p)
        s.set_defaults(fn=fn)
        return s

    s = add("ext", cmd_ext, "algebra", "M", "N", help="dimension of Ext^i(M, N)")
    s.add_argument("--i", type=int, required=True)
    add("gldim", cmd_gldim, "algebra", help="global dimension")
    s = add("domdim", cmd_domdim, "algebra", help="dominant dimension")
    s.add_argument("--method", choices=["projective", "injective"], default="projective")
    s = add("resolve", cmd_resolve, "algebra", "M", help="minimal resolution")
    s.add_argument("--direction", choices=["proj", "inj"], default="proj")
    s = add("check-ct", cmd_check_ct, "algebra", "X", d=True, help="d-cluster-tilting test")
    s.add_argument("--indecomposables", help="directory of .mod files listing every indecomposable")
    s = add("endo", cmd_endo, "algebra", "X", help="endomorphism algebra as a based algebra")
    s.add_argument("--out")
    add("check-auslander", cmd_check_auslander, "algebra", d=True, help="d-Auslander test")
    add("recover-ct", cmd_recover_ct, "algebra", d=True, help="cluster-tilting module of a d-Auslander algebra")
    add("roundtrip", cmd_roundtrip, "algebra", "X", d=True, help="forward and backward correspondence")
    s = add("c-resolve", cmd_c_resolve, "algebra", "X", "M", d=True, help="add(X)-resolution of M")
    s.add_argument("--direction", choices=["right", "left"], default="right")
    s = add("verify-apt", cmd_verify_apt, "algebra", "M", d=True, help="resolution class versus Ext vanishing")
    s.add_argument("--e", required=True, help="comma-separated 1-based vertices")
    s = add("verify-extiso", cmd_verify_extiso, "algebra", "X", "Y", d=True, help="Ext before and after the corner")
    s.add_argument("--e", required=True, help="comma-separated 1-based vertices")
    return ap


def _config(args) -> RunConfig:
    cfg = RunConfig(getattr(args, "p", None), getattr(args, "cutoff", DEFAULT_CUTOFF), getattr(args, "seed", 0),
                    getattr(args, "format", "text"))
    if cfg.cutoff < 1:
        raise CliError("--cutoff must be at least 1")
    if getattr(args, "d", 1) < 1:
        raise CliError("--d must be at least 1")
    return cfg


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        cfg = _config(args)
        lines, data = args.fn(cfg, args)
        code = 0
    except CliError as exc:
        lines, data, code = [f"error: {exc}"], {"error": str(exc)}, exc.code
    except (CertificateError, ResolutionError, DecompositionError) as exc:
        lines, data, code = [f"certificate failure: {exc}"], {"error": str(exc)}, 2
    except (FormatError, FileNotFoundError, ModuleError, AlgebraError, ValueError) as exc:
        lines, data, code = [f"error: {exc}"], {"error": str(exc)}, 1
    head = {"p": getattr(args, "p", DEFAULT_PRIME), "cutoff": getattr(args, "cutoff", DEFAULT_CUTOFF),
            "seed": getattr(args, "seed", 0)}
    if fmt == "machine":
        data = {"command": args.command, "config": head, "exit_code": code, **data}
        print(json.dumps(data, sort_keys=True, default=_json_default))
    else:
        print(f"# auslander {args.command}  p={head['p']} cutoff={head['cutoff']} seed={head['seed']}")
        for line in lines:
            if line:
                print(line)
    return code


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serializable: {type(o)}")


def main_entry():  # console script
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
