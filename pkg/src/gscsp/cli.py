"""Command-line interface.

Exit codes: 0 ok / solved / consistent, 1 INFEASIBLE or EMPTY_DOMAIN,
2 usage or parse error, 3 class precondition violated.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from typing import Callable, Sequence

from . import algebra, fileformat
from .acids import DS, US, extract_bound_solutions, run_acids
from .classify import STAIRCASE_KINDS, classify, is_ds, is_us
from .core import CspInstance, RowConvexConstraint
from .errors import (
    ClassMismatch,
    DomainMismatch,
    GscspError,
    InstanceSyntaxError,
    InvalidSpec,
    MixedClasses,
    NotGS,
    NotRowConvex,
    TooLarge,
)
from .oracle import (
    GenSpec,
    Kind,
    Topology,
    ac3_reference,
    brute_force_solutions,
    diff_chain,
    generate,
    infeasible_chain,
    planted_chain,
)
from .solver import solve_dscsp

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CLASS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _load(path: str) -> CspInstance:
    try:
        return fileformat.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _oriented(instance: CspInstance, i: int, j: int) -> RowConvexConstraint:
    c = instance.constraint(i, j)
    if c is not None:
        return c
    back = instance.constraint(j, i)
    if back is None:
        raise UsageError(f"no constraint between {instance.names[i]} and {instance.names[j]}")
    return algebra.transpose(back)


def _var(instance: CspInstance, tok: str) -> int:
    try:
        return instance.var_index(tok)
    except KeyError:
        raise UsageError(f"unknown variable {tok!r}") from None


# -- commands --------------------------------------------------------------


def cmd_classify(args) -> int:
    inst = _load(args.file)
    stair = [f"stair{'le' if a == '<=' else 'ge'}{'le' if b == '<=' else 'ge'}" for a, b in STAIRCASE_KINDS]
    header = ["pair", "row_convex", "ds", "us", "crc", "min_closed", "max_closed", *stair]
    table = [header]
    for c in inst.constraints:
        rep = classify(c)
        table.append(
            [
                f"{inst.names[c.row_var]}-{inst.names[c.col_var]}",
                _yn(rep.row_convex),
                _yn(rep.ds),
                _yn(rep.us),
                _yn(rep.crc),
                _yn(rep.min_closed),
                _yn(rep.max_closed),
                *(_yn(rep.staircase[k]) for k in STAIRCASE_KINDS),
            ]
        )
    widths = [max(len(row[k]) for row in table) for k in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def _print_domains(inst: CspInstance, domains) -> None:
    for name, dom in zip(inst.names, domains):
        print(f"{name}: {' '.join(map(str, dom))}".rstrip())


def cmd_ac(args) -> int:
    inst = _load(args.file)
    if args.engine == "ac3":
        res = ac3_reference(inst)
    else:
        res = run_acids(inst, args.direction, check_invariants=args.check_invariants or None, backend=args.backend)
    if res.consistent:
        print("CONSISTENT")
    else:
        print(f"EMPTY_DOMAIN {inst.names[res.empty_var]}")
    _print_domains(inst, res.domains)
    print(f"opCount {res.op_count}")
    return EXIT_OK if res.consistent else EXIT_NO


def cmd_solve(args) -> int:
    inst = _load(args.file)
    if args.engine == "dscsp":
        res = solve_dscsp(inst, backend=args.backend)
        if args.stats:
            print(f"opCount {res.op_count}", file=sys.stderr)
        if not res.feasible:
            print("INFEASIBLE")
            return EXIT_NO
        print(f"SOLUTION {inst.format_assignment(res.assignment)}")
        return EXIT_OK
    if args.engine == "acids":
        if not all(is_ds(c) for c in inst.constraints) and all(is_us(c) for c in inst.constraints):
            print(
                "error: instance is up staircase; arc consistency is not known to be sufficient "
                "to extract a solution (use 'ac --direction us')",
                file=sys.stderr,
            )
            return EXIT_CLASS
        res = run_acids(inst, DS, backend=args.backend)
        if args.stats:
            print(f"opCount {res.op_count}", file=sys.stderr)
        if not res.consistent:
            print("INFEASIBLE")
            return EXIT_NO
        first, last = extract_bound_solutions(inst, res)
        print(f"SOLUTION {inst.format_assignment(first)}")
        print(f"SOLUTION_LAST {inst.format_assignment(last)}")
        return EXIT_OK
    sols = brute_force_solutions(inst, limit=1)
    if not sols:
        print("INFEASIBLE")
        return EXIT_NO
    print(f"SOLUTION {inst.format_assignment(sols[0])}")
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(
        kind=Kind(args.kind),
        n=args.n,
        d=args.d,
        density=args.density,
        seed=args.seed,
        topology=Topology(args.topology),
        c=args.c,
    )
    text = fileformat.serialize(generate(spec))
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_algebra(args) -> int:
    inst = _load(args.file)
    if args.op == "transpose":
        i, j = (_var(inst, t) for t in args.vars)
        out = algebra.transpose(_oriented(inst, i, j))
    elif args.op == "intersect":
        other = _load(args.other)
        if other.domains != inst.domains:
            raise DomainMismatch("the two files declare different domains")
        i, j = (_var(inst, t) for t in args.vars)
        out = algebra.intersect(_oriented(inst, i, j), _oriented(other, i, j))
    else:
        i, j, k = (_var(inst, t) for t in args.vars)
        out = algebra.compose(_oriented(inst, i, j), _oriented(inst, j, k))
    print(fileformat.serialize_constraint(out))
    kind = "ds" if is_ds(out) else "us" if is_us(out) else "none"
    print(f"class {kind}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load(args.file)
    sols = brute_force_solutions(inst, limit=args.limit)
    for s in sols:
        print(f"SOLUTION {inst.format_assignment(s)}")
    print(f"COUNT {len(sols)}")
    return EXIT_OK if sols else EXIT_NO


FAMILIES: dict[str, Callable[..., CspInstance]] = {
    "diff-chain": lambda n, d, s, seed: diff_chain(n, d),
    "planted-chain": lambda n, d, s, seed: planted_chain(n, d, s, seed),
    "infeasible-chain": lambda n, d, s, seed: infeasible_chain(n, d),
}


def bench_rows(family: str, n: int, d_list: Sequence[int], s: int, seed: int, engines: Sequence[str], backend=None):
    rows = []
    for d in d_list:
        inst = FAMILIES[family](n, d, s, seed)
        inst.tables  # build once, outside the timed region
        for engine in engines:
            t0 = time.perf_counter()
            if engine == "acids":
                res = run_acids(inst, DS, backend=backend)
                ops, outcome = res.op_count, res.status
            else:
                sres = solve_dscsp(inst, backend=backend)
                ops, outcome = sres.op_count, "SOLVED" if sres.feasible else "INFEASIBLE"
            ms = (time.perf_counter() - t0) * 1000.0
            rows.append(
                {"engine": engine, "n": inst.n, "c": inst.c, "d": d, "opCount": ops, "ms": f"{ms:.3f}", "outcome": outcome}
            )
    return rows


def cmd_bench(args) -> int:
    try:
        d_list = [int(x) for x in args.d_list.split(",") if x]
    except ValueError:
        raise UsageError(f"bad --d-list {args.d_list!r}") from None
    engines = [e for e in args.engines.split(",") if e]
    for e in engines:
        if e not in ("acids", "dscsp"):
            raise UsageError(f"unknown engine {e!r}")
    rows = bench_rows(args.family, args.n, d_list, args.s, args.seed, engines, args.backend)
    fields = ["engine", "n", "c", "d", "opCount", "ms", "outcome"]
    if args.csv in (None, "-"):
        out = sys.stdout
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gscsp", description="Staircase constraint networks: classify, propagate, solve.")
    sub = p.add_subparsers(dest="command", required=True)

    def backend_opt(sp):
        sp.add_argument("--backend", choices=["auto", "python", "compiled"], default=None)

    sp = sub.add_parser("classify", help="class table for every constraint")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("ac", help="arc consistency")
    sp.add_argument("file")
    sp.add_argument("--engine", choices=["acids", "ac3"], default="acids")
    sp.add_argument("--direction", choices=[DS, US], default=DS)
    sp.add_argument("--check-invariants", action="store_true")
    backend_opt(sp)
    sp.set_defaults(func=cmd_ac)

    sp = sub.add_parser("solve", help="find a solution")
    sp.add_argument("file")
    sp.add_argument("--engine", choices=["dscsp", "acids", "brute"], default="dscsp")
    sp.add_argument("--stats", action="store_true", help="print opCount on stderr")
    backend_opt(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.RANDOM_DS.value)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--d", type=int, default=6)
    sp.add_argument("--density", type=float, default=0.3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--topology", choices=[t.value for t in Topology], default=Topology.CHAIN.value)
    sp.add_argument("--c", type=int, default=None, help="constraint count for random topology")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("algebra", help="transpose, intersect or compose constraints")
    ops = sp.add_subparsers(dest="op", required=True)
    t = ops.add_parser("transpose", help="C_ij -> C_ji")
    t.add_argument("file")
    t.add_argument("vars", nargs=2, metavar="VAR")
    t = ops.add_parser("intersect", help="C_ij of FILE and C_ij of OTHER")
    t.add_argument("file")
    t.add_argument("other")
    t.add_argument("vars", nargs=2, metavar="VAR")
    t = ops.add_parser("compose", help="C_ij o C_jk -> C_ik")
    t.add_argument("file")
    t.add_argument("vars", nargs=3, metavar="VAR")
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("oracle", help="enumerate solutions by brute force")
    sp.add_argument("file")
    sp.add_argument("--limit", type=int, default=None)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="opCount and wall time over a d sweep")
    sp.add_argument("--family", choices=sorted(FAMILIES), default="diff-chain")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--d-list", default="256,512,1024")
    sp.add_argument("--s", type=int, default=8, help="planted solution index bound")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--engines", default="acids,dscsp")
    sp.add_argument("--csv", default=None, help="output file (stdout by default)")
    backend_opt(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, InstanceSyntaxError, InvalidSpec, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClassMismatch, NotGS, MixedClasses, NotRowConvex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except GscspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
