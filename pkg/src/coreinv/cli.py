"""Command-line front end: ``coreinv {inverse,verify,fuzz,gen}``.

Every subcommand prints exactly one JSON :class:`~coreinv.fileio.Report` on
stdout; diagnostics go to stderr. Exit codes:

* 0 -- everything requested was found / holds;
* 1 -- internal disagreement between routes or a failed theorem check (a bug);
* 2 -- a legitimate negative answer (NotInvertible, a candidate failing its
  equations) and also bad input or usage.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable

from . import engine, randmat, theorems
from .category import Morphism
from .engine import InverseKind
from .errors import CoreInvError, InconsistencyError, NotSquareError
from .fileio import Report, digest, dump_matrix, matrix_from_dict, matrix_to_dict, read_matrix
from .linalg import FIELDS, Q, Mat

EXIT_OK = 0
EXIT_BUG = 1
EXIT_NEGATIVE = 2

SEED_ENV = "COREINV_SEED"

KINDS = [k.value for k in InverseKind]
SQUARE_KINDS = {InverseKind.CORE, InverseKind.DUAL_CORE, InverseKind.GROUP}


def _with_n(fn, default: int):
    return lambda phi, n: fn(phi, n=default if n is None else n)


def _ignore_n(fn):
    return lambda phi, n: fn(phi)


# kind -> route id -> callable(phi, n)
ROUTES: dict[InverseKind, dict[str, Callable]] = {
    InverseKind.CORE: {
        "kernel": _with_n(engine.core_via_kernel, 3),
        "composition": _ignore_n(engine.core_via_composition),
        "projectors": _ignore_n(engine.core_via_projectors),
        "annihilator": _with_n(engine.core_via_annihilator, 2),
    },
    InverseKind.DUAL_CORE: {
        "cokernel": _with_n(engine.dual_core_via_cokernel, 3),
        "composition": _ignore_n(engine.dual_core_via_composition),
        "projectors": _ignore_n(engine.dual_core_via_projectors),
    },
    InverseKind.GROUP: {
        "kernel": _ignore_n(engine.group_inverse),
        "powers": _ignore_n(engine.group_via_powers),
        "projectors": _ignore_n(engine.group_via_projectors),
    },
    InverseKind.MOORE_PENROSE: {
        "kernel-unit": _ignore_n(engine.mp_inverse),
        "cokernel-unit": _ignore_n(engine.mp_via_cokernel),
        "factorization": _ignore_n(engine.mp_via_factorization),
        "corollary": lambda phi, n: engine.all_four(phi).mp,
    },
    InverseKind.ONE_THREE: {"projector": _ignore_n(engine.one_three_inverse)},
    InverseKind.ONE_FOUR: {"projector": _ignore_n(engine.one_four_inverse)},
}

# routes that only make sense for endomorphisms even when the kind does not
SQUARE_ONLY_ROUTES = {(InverseKind.MOORE_PENROSE, "corollary")}

FUZZ_THEOREMS = ["kernel-core", "ring-unit", "annihilator", "bordered-group",
                 "bordered-core", "bordered-dual", "lemma13"]


def _log(msg: str):
    print(f"coreinv: {msg}", file=sys.stderr)


def _now_us() -> int:
    return time.perf_counter_ns() // 1000


def _morphism(mat: Mat) -> Morphism:
    return Morphism.of(mat, "X", "Y") if mat.rows != mat.cols else Morphism.endo(mat)


def result_to_dict(res: engine.GenInvResult) -> dict:
    if res.found:
        return {
            "status": "found",
            "route": res.route,
            "inverse": matrix_to_dict(res.chi.mat),
            "certificate": dict(res.cert.verdicts),
            "checks": dict(res.checks),
            "notes": list(res.notes),
        }
    return {
        "status": "not_invertible",
        "route": res.route,
        "reason": res.reason.value,
        "witness": matrix_to_dict(res.witness),
        "singular_matrix": matrix_to_dict(res.matrix),
        "witness_verifies": res.witness_verifies(),
    }


def _route_ok(res) -> bool:
    """A route result that is internally consistent (not a bug)."""
    return res.checks_ok if res.found else res.witness_verifies()


def _agree(results: list) -> bool:
    if all(r.found for r in results):
        return all(r.chi == results[0].chi for r in results)
    return not any(r.found for r in results)


# -- subcommands --------------------------------------------------------------


def cmd_inverse(args) -> Report:
    kind = InverseKind(args.kind)
    mat = read_matrix(args.input)
    phi = _morphism(mat)
    if kind in SQUARE_KINDS and not phi.is_endo:
        raise NotSquareError(f"{kind.value} inverse needs a square matrix, got {mat.rows}x{mat.cols}")
    table = ROUTES[kind]
    if args.route == "all":
        names = [r for r in table if phi.is_endo or (kind, r) not in SQUARE_ONLY_ROUTES]
    else:
        if args.route not in table:
            raise CoreInvError(f"unknown route {args.route!r} for kind {kind.value}; "
                               f"choose from {sorted(table)} or 'all'")
        if (kind, args.route) in SQUARE_ONLY_ROUTES and not phi.is_endo:
            raise NotSquareError(f"route {args.route!r} needs a square matrix")
        names = [args.route]

    start = _now_us()
    results = {name: table[name](phi, args.n) for name in names}
    elapsed = _now_us() - start

    ordered = list(results.values())
    agreement = _agree(ordered)
    consistent = all(_route_ok(r) for r in ordered)
    head = ordered[0]
    if not (agreement and consistent):
        code = EXIT_BUG
        _log("routes disagree or a route failed its own checks")
    else:
        code = EXIT_OK if head.found else EXIT_NEGATIVE
    result = result_to_dict(head)
    result["routes_agreed"] = len(ordered) if agreement else 0
    if args.out and head.found:
        Path(args.out).write_text(dump_matrix(head.chi.mat) + "\n")
    return Report(
        operation="inverse",
        input_digest=digest(mat),
        result=result,
        certificate=dict(head.cert.verdicts) if head.found else {},
        routes={name: result_to_dict(r) for name, r in results.items()},
        agreement=agreement,
        exit_code=code,
        timing_us=elapsed,
        extra={"kind": kind.value, "route": args.route, "n": args.n},
    )


def cmd_verify(args) -> Report:
    kind = InverseKind(args.kind)
    mat = read_matrix(args.input)
    cand = read_matrix(args.candidate)
    phi = _morphism(mat)
    chi = Morphism(phi.cod, phi.dom, cand) if cand.shape == (mat.cols, mat.rows) else Morphism.of(cand)
    start = _now_us()
    cert = engine.verify(phi, chi, kind)
    elapsed = _now_us() - start
    code = EXIT_OK if cert.ok else EXIT_NEGATIVE
    report = Report(
        operation="verify",
        input_digest=digest(mat),
        result={
            "status": "holds" if cert.ok else "fails",
            "failed": cert.failed(),
            "candidate_digest": digest(cand),
            "residuals": {eq: matrix_to_dict(r.mat) for eq, r in cert.residuals.items()},
        },
        certificate=dict(cert.verdicts),
        exit_code=code,
        timing_us=elapsed,
        extra={"kind": kind.value},
    )
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
    return report


def cmd_gen(args) -> Report:
    rank = args.dim if args.rank is None else args.rank
    start = _now_us()
    mat = randmat.gen_random(args.dim, rank, args.index, seed=args.seed, field=args.field, bound=args.bound)
    elapsed = _now_us() - start
    if args.out:
        Path(args.out).write_text(dump_matrix(mat) + "\n")
    return Report(
        operation="gen",
        input_digest=None,
        result={"status": "generated", "matrix": matrix_to_dict(mat), "digest": digest(mat)},
        exit_code=EXIT_OK,
        timing_us=elapsed,
        extra={"dim": args.dim, "rank": rank, "index": args.index, "seed": args.seed,
               "field": args.field, "bound": args.bound, "prng": "MT19937 (random.Random)"},
    )


def fuzz_instance_matrix(seed: int, i: int, dim: int, field: str = Q,
                         bound: int = randmat.DEFAULT_BOUND) -> tuple[Mat, int, str]:
    """Instance ``i`` of a fuzz batch: random rank, index 1 or >= 2 with equal odds."""
    rng = randmat.instance_rng(seed, i)
    if dim >= 2 and rng.random() < 0.5:
        index, rank = randmat.INDEX_GE2, rng.randint(1, dim - 1)
    else:
        index, rank = randmat.INDEX_ONE, rng.randint(0, dim)
    mat = randmat.gen_random(dim, rank, index, field=field, bound=bound, rng=rng)
    return mat, rank, index


def _theorem_runners(n: int | None) -> dict[str, Callable[[Morphism], list[theorems.TheoremReport]]]:
    n3 = {} if n is None else {"n": n}
    return {
        "kernel-core": lambda p: [theorems.check_core_kernel_theorem(p, **n3),
                                  theorems.check_dual_cokernel_theorem(p, **n3)],
        "ring-unit": lambda p: [theorems.check_ring_unit_core(p, **n3)],
        "annihilator": lambda p: [theorems.check_annihilator_theorem(p, **n3)],
        "bordered-group": lambda p: [theorems.check_bordered_group(p)],
        "bordered-core": lambda p: [theorems.check_bordered_core(p)],
        "bordered-dual": lambda p: [theorems.check_bordered_dual(p)],
        "lemma13": lambda p: [theorems.check_lemma13(p, **n3)],
    }


def run_fuzz_instance(job: tuple) -> dict:
    """Worker: run the selected theorems on one seeded instance (picklable)."""
    seed, i, dim, field, bound, selected, n = job
    mat, rank, index = fuzz_instance_matrix(seed, i, dim, field, bound)
    phi = Morphism.endo(mat)
    runners = _theorem_runners(n)
    outcome = {"instance": i, "rank": rank, "index": index, "theorems": {}}
    for name in selected:
        failures = []
        for rep in runners[name](phi):
            failures += [f"{rep.theorem}: {f}" for f in rep.failures()]
        outcome["theorems"][name] = failures
    outcome["matrix"] = matrix_to_dict(mat)
    return outcome


def cmd_fuzz(args) -> Report:
    selected = FUZZ_THEOREMS if args.theorem == "all" else [args.theorem]
    jobs = [(args.seed, i, args.dim, args.field, args.bound, selected, args.n) for i in range(args.count)]
    start = _now_us()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(run_fuzz_instance, jobs, chunksize=8))
    else:
        outcomes = [run_fuzz_instance(j) for j in jobs]
    elapsed = _now_us() - start
    outcomes.sort(key=lambda o: o["instance"])

    per_theorem = {name: {"pass": 0, "fail": 0} for name in selected}
    failures = []
    out_dir = Path(args.out or ".")
    for o in outcomes:
        bad = {name: f for name, f in o["theorems"].items() if f}
        for name, f in o["theorems"].items():
            per_theorem[name]["fail" if f else "pass"] += 1
        if bad:
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"coreinv-repro-{args.seed}-{o['instance']}.json"
            repro = Report(
                operation="fuzz-reproducer",
                input_digest=digest(matrix_from_dict(o["matrix"])),
                result={"failures": bad, "matrix": o["matrix"]},
                exit_code=EXIT_BUG,
                extra={"seed": args.seed, "instance": o["instance"], "dim": args.dim, "field": args.field,
                       "bound": args.bound, "rank": o["rank"], "index": o["index"], "n": args.n},
            )
            path.write_text(repro.to_json() + "\n")
            _log(f"instance {o['instance']} failed {sorted(bad)}; reproducer written to {path}")
            failures.append({"instance": o["instance"], "theorems": sorted(bad), "reproducer": str(path)})

    passed = sum(1 for o in outcomes if not any(o["theorems"].values()))
    return Report(
        operation="fuzz",
        input_digest=None,
        result={"status": "pass" if not failures else "fail", "count": args.count,
                "passed": passed, "failed": args.count - passed},
        exit_code=EXIT_OK if not failures else EXIT_BUG,
        timing_us=elapsed,
        extra={"theorem": args.theorem, "per_theorem": per_theorem, "failures": failures,
               "seed": args.seed, "dim": args.dim, "field": args.field, "bound": args.bound, "n": args.n,
               "index_counts": {
                   randmat.INDEX_ONE: sum(o["index"] == randmat.INDEX_ONE for o in outcomes),
                   randmat.INDEX_GE2: sum(o["index"] == randmat.INDEX_GE2 for o in outcomes)},
               "prng": "MT19937 (random.Random)"},
    )


# -- argument parsing ---------------------------------------------------------


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coreinv", description="Exact core, dual core, group and Moore-Penrose inverses.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inv = sub.add_parser("inverse", help="compute a generalized inverse")
    inv.add_argument("--kind", required=True, choices=KINDS)
    inv.add_argument("--route", default="all", help="route id or 'all' (default)")
    inv.add_argument("--input", required=True, help="matrix file (JSON)")
    inv.add_argument("--n", type=int, default=None, help="exponent for the kernel/cokernel/annihilator routes")
    inv.add_argument("--out", help="also write the inverse as a matrix file")
    inv.set_defaults(func=cmd_inverse)

    ver = sub.add_parser("verify", help="check a candidate against the defining equations")
    ver.add_argument("--kind", required=True, choices=KINDS)
    ver.add_argument("--input", required=True)
    ver.add_argument("--candidate", required=True)
    ver.add_argument("--out", help="also write the report to this path")
    ver.set_defaults(func=cmd_verify)

    fz = sub.add_parser("fuzz", help="check the theorems on seeded random instances")
    fz.add_argument("--theorem", default="all", choices=FUZZ_THEOREMS + ["all"])
    fz.add_argument("--dim", type=_nonnegative, default=4)
    fz.add_argument("--count", type=_positive, default=100)
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--field", choices=FIELDS, default=Q)
    fz.add_argument("--bound", type=_positive, default=randmat.DEFAULT_BOUND)
    fz.add_argument("--n", type=int, default=None)
    fz.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    fz.add_argument("--out", help="directory for reproducer files (default: current directory)")
    fz.set_defaults(func=cmd_fuzz)

    gen = sub.add_parser("gen", help="generate a random matrix of given rank and index")
    gen.add_argument("--dim", type=_nonnegative, required=True)
    gen.add_argument("--rank", type=_nonnegative, default=None, help="default: dim")
    gen.add_argument("--index", choices=[randmat.INDEX_ONE, randmat.INDEX_GE2], default=randmat.INDEX_ONE)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--field", choices=FIELDS, default=Q)
    gen.add_argument("--bound", type=_positive, default=randmat.DEFAULT_BOUND)
    gen.add_argument("--out", help="also write the matrix file here")
    gen.set_defaults(func=cmd_gen)
    return p


def _error_report(operation: str, exc: Exception, code: int) -> Report:
    result = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
    for attr in ("line", "column"):
        if getattr(exc, attr, None) is not None:
            result[attr] = getattr(exc, attr)
    return Report(operation=operation, result=result, exit_code=code)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "seed") and os.environ.get(SEED_ENV):
            try:
                args.seed = int(os.environ[SEED_ENV])
            except ValueError:
                raise UsageError(f"{SEED_ENV} must be an integer") from None
    except UsageError as exc:
        _log(f"usage error: {exc}")
        print(_error_report("usage", exc, EXIT_NEGATIVE).to_json())
        return EXIT_NEGATIVE

    try:
        report = args.func(args)
    except InconsistencyError as exc:
        _log(f"internal inconsistency: {exc}")
        report = _error_report(args.command, exc, EXIT_BUG)
    except (CoreInvError, OSError) as exc:
        _log(f"{type(exc).__name__}: {exc}")
        report = _error_report(args.command, exc, EXIT_NEGATIVE)
    print(report.to_json())
    return report.exit_code


def run() -> None:
    sys.exit(main())
