"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 the memory guard stopped the
run, 3 malformed input (bad files, unknown names, out-of-range options).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .acceptance import DEFAULT_SEED, dumps, report as acceptance_report, run_acceptance, run_criteria
from .bimodule import load_bimodule, regular_bimodule, verify_hopf_bimodule
from .cup import CochainMismatch, CochainSpace, cup, cup_is_derivation_check
from .extensions import yoneda_degree10_check
from .guard import ResourceGuardError, get_limit, set_limit
from .hopf import HopfFormatError, load_algebra, verify_hopf
from .theories import ENGINES, MAX_BOUND, EngineError, compute, report as engine_report
from .xalgebra import bimodule_to_xmodule, verify_x, verify_xmodule, x_of, xmodule_to_bimodule

EXIT_OK, EXIT_VERIFY, EXIT_GUARD, EXIT_INPUT = 0, 1, 2, 3

# default characteristic when --field is not given
DEFAULT_FIELDS = {"sweedler": 5, "H4": 5, "h4": 5, "S3": 7, "kS3": 7}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors are malformed input and exit with code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def default_field(algebra: str) -> int | None:
    if algebra.endswith(".json"):
        return None
    base = algebra[5:] if algebra.startswith("dual:") else algebra
    if base.startswith("taft:"):
        return 7
    return DEFAULT_FIELDS.get(base, 2)


def _add_common(sp: argparse.ArgumentParser, bimodules: str = "") -> None:
    sp.add_argument("--algebra", default="kZ2", help="built-in name (kZ2, kZ3, kZn:k, S3, sweedler, taft:n:q, dual:NAME) or JSON path")
    sp.add_argument("--field", type=int, default=None, help="characteristic p, or 0 for the rationals")
    for name in bimodules:
        sp.add_argument(f"--{name}", default="regular", help=f"bimodule {name}: regular, regular2, x, rtensor:k, ltensor:k, bar:q, cobar:p or JSON path")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--max-dim", type=int, default=None, help="memory guard on ambient dimensions (default from HOPFCOH_MAX_DIM or 500000)")
    sp.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    sp.add_argument("--out", default=None, help="also write the JSON report to this path")
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hopfcoh", description="Cohomology of Hopf bimodules over finite-dimensional Hopf algebras.")
    ap.add_argument("--version", action="version", version=f"hopfcoh {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify-hopf", help="check the Hopf algebra axioms")
    _add_common(sp)
    sp = sub.add_parser("verify-bimodule", help="check the Hopf bimodule axioms and the X-module round trip")
    _add_common(sp, "M")
    sp = sub.add_parser("build-x", help="build the algebra X and check unit and associativity")
    _add_common(sp)
    sp.add_argument("--samples", type=int, default=1000, help="random basis triples when X is not tabulated")
    sp = sub.add_parser("cohomology", help="dimensions of H^n(M, N) for n = 0..bound")
    _add_common(sp, "MN")
    sp.add_argument("--engine", choices=ENGINES, default="a4")
    sp.add_argument("--bound", type=int, default=2)
    sp = sub.add_parser("cup-demo", help="cup products of cohomology classes of A with itself")
    _add_common(sp)
    sp.add_argument("--bound", type=int, default=2, help="largest total degree of a product")
    sp.add_argument("--samples", type=int, default=20, help="random pairs for the derivation identity")
    sp = sub.add_parser("yoneda-check", help="pushout of E(f) along g against E(f u g) for basis pairs")
    _add_common(sp, "MLN")
    sp = sub.add_parser("acceptance", help="run the acceptance criteria")
    _add_common(sp)
    sp.add_argument("--only", type=int, nargs="+", default=None, help="criterion numbers 1..13 to run (skips the determinism rerun)")
    return ap


def _jobspec(args) -> dict:
    keep = ("command", "algebra", "field", "M", "N", "L", "engine", "bound", "seed", "samples", "only")
    spec = {k: getattr(args, k) for k in keep if getattr(args, k, None) is not None}
    spec["max_dim"] = get_limit()
    return spec


def _load(args):
    field = args.field if args.field is not None else default_field(args.algebra)
    h = load_algebra(args.algebra, field)
    args.field = h.field.p
    return h


# -- commands -------------------------------------------------------------------------------


def cmd_verify_hopf(args):
    h = _load(args)
    bad = verify_hopf(h)
    rep = {"algebra": args.algebra, "dim": h.dim, "violations": bad, "ok": not bad}
    lines = [f"{args.algebra} over F{h.field.p}, dim {h.dim}: " + ("Hopf algebra axioms hold" if not bad else "FAILED")]
    lines += [f"  violation: {v}" for v in bad]
    return rep, lines, not bad


def cmd_verify_bimodule(args):
    h = _load(args)
    M = load_bimodule(args.M, h)
    bad = verify_hopf_bimodule(M)
    round_trip = None
    if not bad:
        V = bimodule_to_xmodule(M)
        bad += [f"X-module: {v}" for v in verify_xmodule(V, seed=args.seed)]
        back = xmodule_to_bimodule(V)
        round_trip = all(getattr(back, k) == getattr(M, k) for k in ("actL", "actR", "coactL", "coactR"))
        if not round_trip:
            bad.append("round trip through X-modules changed the structure maps")
    rep = {"algebra": args.algebra, "M": args.M, "dim": M.dim, "violations": bad, "round_trip": round_trip,
           "ok": not bad}
    lines = [f"{args.M} over {args.algebra}/F{h.field.p}, dim {M.dim}: " + ("Hopf bimodule axioms hold" if not bad else "FAILED")]
    lines += [f"  violation: {v}" for v in bad]
    return rep, lines, not bad


def cmd_build_x(args):
    h = _load(args)
    x = x_of(h)
    bad = verify_x(x, args.samples, args.seed)
    mode = "exhaustive" if x._mult is not None else f"{args.samples} sampled triples"
    rep = {"algebra": args.algebra, "dim_A": h.dim, "dim_X": x.dim, "check": mode, "violations": bad, "ok": not bad}
    lines = [f"X over {args.algebra}/F{h.field.p}: dim {x.dim} (= {h.dim}^4)",
             f"  unit and associativity ({mode}): " + ("ok" if not bad else "FAILED")]
    lines += [f"  violation: {v}" for v in bad]
    return rep, lines, not bad


def cmd_cohomology(args):
    if not 0 <= args.bound <= MAX_BOUND:
        raise UsageError(f"--bound must be in 0..{MAX_BOUND}, got {args.bound}")
    h = _load(args)
    M, N = load_bimodule(args.M, h), load_bimodule(args.N, h)
    res = compute(args.engine, M, N, args.bound, args.jobs)
    rep = engine_report(res, args.algebra, args.M, args.N, timings=args.timings)
    lines = [f"engine {args.engine}, {args.algebra} over F{h.field.p}, M = {args.M}, N = {args.N}",
             "   n  dim H^n"]
    lines += [f"  {n:2d}  {d}" for n, d in enumerate(res.dims)]
    if args.timings:
        lines.append(f"  build {res.timings['build']:.3f} s, rank {res.timings['rank']:.3f} s")
    return rep, lines, True


def cmd_cup_demo(args):
    if not 1 <= args.bound <= MAX_BOUND:
        raise UsageError(f"--bound must be in 1..{MAX_BOUND}, got {args.bound}")
    h = _load(args)
    A = regular_bimodule(h)
    S = CochainSpace(A, A, args.bound + 1)
    reps = {k: S.cohomology_representatives(k) for k in range(args.bound + 1)}
    products = []
    for p in range(1, args.bound + 1):
        for q in range(1, args.bound + 1 - p):
            for i, f in enumerate(reps[p]):
                for j, g in enumerate(reps[q]):
                    nonzero = not S.is_coboundary(cup(f, g))
                    products.append({"left": [p, i], "right": [q, j], "nonzero": nonzero})
    rng = np.random.default_rng(args.seed)
    ok = 0
    for _ in range(args.samples):
        p, q = (int(v) for v in rng.integers(0, args.bound, size=2))
        if p + q > args.bound:
            q = args.bound - p
        ok += cup_is_derivation_check(S.random(p, rng), S.random(q, rng))
    passed = ok == args.samples
    rep = {"algebra": args.algebra, "bound": args.bound,
           "cohomology_dims": [len(reps[k]) for k in range(args.bound + 1)],
           "products": products, "derivation_identity": f"{ok}/{args.samples}", "ok": passed}
    lines = [f"{args.algebra} over F{h.field.p}, M = N = A",
             "  dim H^n: " + " ".join(str(len(reps[k])) for k in range(args.bound + 1))]
    for e in products:
        (p, i), (q, j) = e["left"], e["right"]
        lines.append(f"  [{p}.{i}] u [{q}.{j}] = {'nonzero' if e['nonzero'] else 'zero'} in H^{p + q}")
    lines.append(f"  derivation identity: {ok}/{args.samples}")
    return rep, lines, passed


def cmd_yoneda_check(args):
    h = _load(args)
    M, L, N = (load_bimodule(s, h) for s in (args.M, args.L, args.N))
    Z1 = CochainSpace(M, L, 2).cocycle_basis(1)
    Z0 = CochainSpace(L, N, 1).cocycle_basis(0)
    verdicts = [yoneda_degree10_check(f, g) for f in Z1 for g in Z0]
    true = sum(v is True for v in verdicts)
    undecided = sum(v is None for v in verdicts)
    passed = true == len(verdicts)
    rep = {"algebra": args.algebra, "M": args.M, "L": args.L, "N": args.N, "pairs": len(verdicts),
           "equivalent": true, "undecided": undecided, "ok": passed}
    lines = [f"{args.algebra} over F{h.field.p}, M = {args.M}, L = {args.L}, N = {args.N}",
             f"  basis pairs (f, g): {len(verdicts)}, g.E(f) ~ E(f u g): {true}, undecided: {undecided}"]
    return rep, lines, passed


def cmd_acceptance(args):
    if args.only:
        bad = [k for k in args.only if not 1 <= k <= 13]
        if bad:
            raise UsageError(f"--only takes criterion numbers 1..13, got {bad}")
        results = run_criteria(args.seed, args.jobs, set(args.only))
    else:
        other = 1 if args.jobs != 1 else 2
        results = run_acceptance(args.seed, args.jobs, other)
    rep = acceptance_report(results, args.seed, timings=args.timings)
    lines = [r.line() + (f" ({r.seconds:.1f} s)" if args.timings else "") for r in results]
    return rep, lines, all(r.passed for r in results)


COMMANDS = {
    "verify-hopf": cmd_verify_hopf,
    "verify-bimodule": cmd_verify_bimodule,
    "build-x": cmd_build_x,
    "cohomology": cmd_cohomology,
    "cup-demo": cmd_cup_demo,
    "yoneda-check": cmd_yoneda_check,
    "acceptance": cmd_acceptance,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_dim is not None:
        if args.max_dim <= 0:
            print("hopfcoh: error: --max-dim must be positive", file=sys.stderr)
            return EXIT_INPUT
        set_limit(args.max_dim)
    if args.jobs < 1:
        print("hopfcoh: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        rep, lines, ok = COMMANDS[args.command](args)
    except ResourceGuardError as exc:
        print(f"hopfcoh: memory guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (HopfFormatError, EngineError, CochainMismatch, UsageError, json.JSONDecodeError) as exc:
        print(f"hopfcoh: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if args.max_dim is not None:
            set_limit(None)
    rep = {"jobspec": _jobspec(args), "version": __version__, **rep}
    text = dumps(rep)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"hopfcoh: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    print(text if args.json else "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
