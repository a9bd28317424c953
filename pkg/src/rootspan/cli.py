"""``rootspan`` command line: run, bench, stats, gen, validate."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench as bm
from .bfs import bfs_rst
from .graph import GraphFormatError, format_edge_list, generate
from .validate import oracle_cc, validate_rooted_forest


def _algorithms(values: list[str] | None) -> list[str]:
    if not values:
        return list(bm.ALGORITHM_NAMES)
    out = []
    for v in values:
        out.extend(x for x in v.split(",") if x)
    for a in out:
        if a not in bm.ALGORITHM_NAMES:
            raise ValueError(f"unknown algorithm {a!r}; choose from {', '.join(bm.ALGORITHM_NAMES)}")
    return out


def _check_root(g, root):
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range [0, {g.n})")


def cmd_run(args) -> int:
    algo = args.algo or args.algorithm or "bfs"
    name, g = bm.load_source(args.source, args.seed)
    _check_root(g, args.root)
    forest, report = bm.run_algorithm(g, algo, args.root, args.jump_batch, args.workers)
    check = validate_rooted_forest(g, forest)
    if args.dump_parents:
        np.savetxt(args.dump_parents, forest.parent, fmt="%d")
    print(f"dataset={name} algorithm={algo} n={g.n} m={g.m} root={args.root} "
          f"depth={check.depth} steps={report.steps} work={report.work} "
          f"components={check.components_found} time_ms={report.wall_time * 1e3:.3f} "
          f"valid={'true' if check.ok else 'false'}")
    for rule, item, msg in check.violations[:20]:
        print(f"violation {rule} {item}: {msg}", file=sys.stderr)
    return 0 if check.ok else 1


def cmd_bench(args) -> int:
    records = bm.bench(args.sources, _algorithms(args.algo), args.root, args.jump_batch,
                       args.seed, args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            bm.write_csv(records, fh)
    else:
        bm.write_csv(records, sys.stdout)
    return 0 if all(r.valid for r in records) else 1


def cmd_stats(args) -> int:
    name, g = bm.load_source(args.source, args.seed)
    _check_root(g, args.root)
    forest, _ = bfs_rst(g, args.root)
    labels = oracle_cc(g)
    depth = int(forest.levels[labels == labels[args.root]].max())
    print(f"dataset={name} n={g.n} m={g.m} components={len(np.unique(labels))} depth={depth}")
    return 0


def cmd_gen(args) -> int:
    el = generate(args.kind, *args.params, seed=args.seed)
    text = format_edge_list(el)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    name, g = bm.load_source(args.source, args.seed)
    parent = np.loadtxt(args.parents, dtype=np.int64, ndmin=1)
    check = validate_rooted_forest(g, parent)
    print(f"dataset={name} n={g.n} roots={len(check.depth_per_root)} depth={check.depth} "
          f"components={check.components_found} valid={'true' if check.ok else 'false'}")
    for rule, item, msg in check.violations[:20]:
        print(f"violation {rule} {item}: {msg}")
    return 0 if check.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rootspan", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--root", type=int, default=0)
        sp.add_argument("--seed", type=int, default=None, help="seed for gen:random sources")
        sp.add_argument("--jump-batch", type=int, default=5, help="pointer jumps per barrier in pr-rst")
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("run", help="run one algorithm and validate its output")
    sp.add_argument("source", help="edge-list file or gen:<kind>:<params>")
    sp.add_argument("algorithm", nargs="?", choices=bm.ALGORITHM_NAMES)
    sp.add_argument("--algo", choices=bm.ALGORITHM_NAMES)
    sp.add_argument("--dump-parents", metavar="PATH")
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("bench", help="1 warm-up + 5 timed runs per source and algorithm")
    sp.add_argument("sources", nargs="+")
    sp.add_argument("--algo", action="append", help="algorithm(s), repeatable or comma separated")
    sp.add_argument("--out", metavar="PATH", help="CSV output (default stdout)")
    common(sp)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("stats", help="size, components and BFS-tree depth")
    sp.add_argument("source")
    sp.add_argument("--root", type=int, default=0)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("gen", help="write a synthetic graph as an edge list")
    sp.add_argument("kind")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("validate", help="check a parent dump against a graph")
    sp.add_argument("source")
    sp.add_argument("parents", help="one parent id per line")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        msg = str(exc) if "file not found" in str(exc) else f"file not found: {exc.filename}"
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except (GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
