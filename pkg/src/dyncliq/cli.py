"""Command-line front end.

Subcommands:
  run        simulate a scenario file under a named algorithm
  generate   emit a scenario file (seeded random or adversarial)
  oracle     print the true cliques / expected outputs at a given round
  algos      list the algorithm catalog with closed-form budgets
  bounds     evaluate the counting lower bounds next to catalog budgets
  suite      run the conformance matrix (small or full scale)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine
from .algorithms import UnknownAlgorithm, catalog, instantiate
from .conformance import entry_problem, exhaustive_check, random_suite
from .dyngraph import (
    ChangeKind,
    ParseError,
    PreconditionViolation,
    ProblemSpec,
    ScenarioError,
    Task,
    dump_scenario,
    load_scenario,
)
from .generators import BadParams, random_scenario
from .lowerbounds import AdversarySpec, Family, eval_bound, gen_adversary
from .oracle import cliques_containing, enumerate_cliques

_TASKS = {t.value: t for t in Task}
_KINDS = {k.value: k for k in ChangeKind if k is not ChangeKind.NOOP}


def _read_scenario(path: str):
    text = Path(path).read_text()
    return load_scenario(text, name=Path(path).stem)


def cmd_run(args) -> int:
    try:
        scenario = _read_scenario(args.scenario)
    except FileNotFoundError:
        print(f"error: scenario file not found: {args.scenario}", file=sys.stderr)
        return 2
    except (ParseError, PreconditionViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        alg = instantiate(args.algorithm, scenario)
    except UnknownAlgorithm:
        print(f"error: unknown algorithm {args.algorithm!r}", file=sys.stderr)
        return 2
    try:
        report = engine.run(scenario, alg, budget=args.budget,
                            strict_oracle=True)
    except engine.UnsupportedProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = report.render_machine() if args.format == "machine" else report.render_human()
    sys.stdout.write(out)
    return 0 if report.passed else 1


def cmd_generate(args) -> int:
    try:
        if args.kind == "random":
            allowed = frozenset(_KINDS[tok] for tok in args.changes.split(","))
            problem = ProblemSpec(_TASKS[args.task], args.s, args.r, allowed)
            scenario = random_scenario(
                args.n, args.events, problem,
                seed=args.seed if args.seed is not None else 0,
                density=args.density, quiet_tail=args.quiet_tail,
            )
        else:
            fam = Family(args.kind)
            spec = AdversarySpec(
                family=fam, n=args.n, t=args.t, s=args.s,
                seed=args.seed, target=args.target, target2=args.target2,
                rounds=args.r, quiet_tail=args.quiet_tail,
            )
            scenario = gen_adversary(spec)
    except (BadParams, KeyError, ValueError, ScenarioError) as exc:
        print(f"error: bad parameters: {exc}", file=sys.stderr)
        return 2
    text = dump_scenario(scenario)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    try:
        scenario = _read_scenario(args.scenario)
    except (FileNotFoundError, ParseError, PreconditionViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.round is None:
        args.round = len(scenario.events)
    if not (0 <= args.round <= len(scenario.events)):
        print(f"error: round must be in [0, {len(scenario.events)}]", file=sys.stderr)
        return 2
    g = scenario.replay()[args.round]
    cliques = enumerate_cliques(g, scenario.problem.s)
    print(f"round {args.round}: {len(g.present)} nodes, {len(g.edges)} edges")
    print(f"cliques (s={scenario.problem.s}): "
          + (" ".join(str(c) for c in sorted(cliques)) or "-"))
    task = scenario.problem.task
    for v in sorted(g.present):
        mine = sorted(cliques_containing(cliques, v))
        if task is Task.MEMLIST:
            print(f"  node {v}: {mine or '-'}")
        elif task is Task.MEMDETECT:
            print(f"  node {v}: {bool(mine)}")
    if task is Task.LIST:
        print("  expected union:", " ".join(str(c) for c in sorted(cliques)) or "-")
    if task is Task.DETECT:
        print("  expected somewhere-true:", bool(cliques))
    return 0


def cmd_algos(args) -> int:
    rows = []
    for name, e in sorted(catalog().items()):
        changes = ",".join(sorted(k.value for k in e.allowed))
        rows.append((
            name, e.task.value, "any" if e.s is None else str(e.s),
            "any" if e.r is None else str(e.r), e.budget_doc, changes,
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(6)]
    header = ("name", "task", "s", "r", "budget", "changes")
    widths = [max(w, len(h)) for w, h in zip(widths, header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    print(fmt.format(*header))
    for r in rows:
        print(fmt.format(*r))
    return 0


def cmd_bounds(args) -> int:
    eps = args.eps
    rows = [
        ("memlist", "node_insert", args.n,
         eval_bound(Task.MEMLIST, ChangeKind.NODE_INSERT, args.n, eps, args.r),
         f"mlist-rround-blocks: {catalog()['mlist-rround-blocks'].budget(args.n, args.r)}"),
        ("memdetect", "node_insert", args.n,
         eval_bound(Task.MEMDETECT, ChangeKind.NODE_INSERT, args.n, eps),
         "(one-round; compare linear-bandwidth trivial solution)"),
        ("memlist", "edge_insert", args.n,
         eval_bound(Task.MEMLIST, ChangeKind.EDGE_INSERT, args.n, eps),
         f"tri-mlist-edgeins-sqrt: {catalog()['tri-mlist-edgeins-sqrt'].budget(args.n)}"),
    ]
    print(f"lower bounds at eps={eps} (bits per message)")
    print(f"{'task':<10} {'change':<12} {'n':>7} {'bound':>12}  catalog upper bound")
    for task, change, n, bound, upper in rows:
        print(f"{task:<10} {change:<12} {n:>7} {bound:>12.3f}  {upper}")
    return 0


def cmd_suite(args) -> int:
    full = args.scale == "full"
    names = sorted(catalog())
    print(f"conformance suite ({args.scale}); zero violations required")
    failures = 0
    for name in names:
        kw = {"r": 2} if name == "mlist-rround-blocks" else {}
        exh = exhaustive_check(
            name, n=5, depth=4 if not full else 6,
            initials=8 if not full else 50,
            check_reductions=True, **kw,
        )
        rnd = random_suite(
            name, n=12, count=30 if not full else 200,
            events=40, check_reductions=True, **kw,
        )
        ok = exh.passed and rnd.passed
        failures += 0 if ok else 1
        print(f"{'pass' if ok else 'FAIL'}  {name:28s} "
              f"exhaustive={exh.rounds}r random={rnd.scenarios}sc "
              f"max_bits={max(exh.max_bits, rnd.max_bits)}")
        for f in (exh.failures + rnd.failures)[:3]:
            print(f"      {f}")
    if full:
        failures += _suite_bandwidth()
        failures += _suite_negative_control()
    print(f"suite {'PASSED' if not failures else 'FAILED'}")
    return 0 if failures == 0 else 1


def _suite_bandwidth() -> int:
    from .algorithms import budget

    bad = 0
    for name, n, r in [
        ("tri-mlist-edgeins-sqrt", 16, 1), ("tri-mlist-edgeins-sqrt", 64, 1),
        ("mlist-rround-blocks", 12, 2), ("mlist-rround-blocks", 12, 3),
    ]:
        res = random_suite(name, n=n, count=12, events=40, r=r,
                           check=(n <= 16))
        cap = budget(name, n, r, n - 1)
        ok = res.passed and res.max_bits <= cap
        bad += 0 if ok else 1
        print(f"{'pass' if ok else 'FAIL'}  bandwidth {name} n={n} r={r}: "
              f"{res.max_bits} <= {cap}")
    return bad


def _suite_negative_control() -> int:
    from .algorithms.base import AlgoContext
    from .algorithms.sqrt_digest import crippled_sqrt

    caught = 0
    for seed in range(10):
        spec = AdversarySpec(Family.TRI_EDGE_INS, n=16, t=4, seed=seed,
                             target=seed % 11)
        sc = gen_adversary(spec)
        alg = crippled_sqrt(AlgoContext.from_scenario(sc))
        rep = engine.run(sc, alg)
        if not rep.passed:
            caught += 1
    ok = caught > 0
    print(f"{'pass' if ok else 'FAIL'}  negative control: crippled digest "
          f"caught on {caught}/10 adversarial runs")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="dyncliq", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="simulate a scenario under an algorithm")
    p.add_argument("scenario")
    p.add_argument("algorithm")
    p.add_argument("--budget", type=int, default=None,
                   help="override the per-message bit budget")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("generate", help="emit a scenario file")
    kinds = ["random"] + [f.value for f in Family]
    p.add_argument("kind", choices=kinds)
    p.add_argument("-n", type=int, default=8)
    p.add_argument("--events", type=int, default=20)
    p.add_argument("--task", choices=sorted(_TASKS), default="memlist")
    p.add_argument("--changes", default="edge_insert",
                   help="comma-separated change kinds (random only)")
    p.add_argument("-s", type=int, default=3)
    p.add_argument("-r", type=int, default=1)
    p.add_argument("-t", type=int, default=3, help="hub-side size (adversarial)")
    p.add_argument("--target", type=int, default=0)
    p.add_argument("--target2", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help="random seed; omitted: 0 for random, complete "
                        "pattern for adversarial kinds")
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--quiet-tail", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("oracle", help="true cliques and expected outputs")
    p.add_argument("scenario")
    p.add_argument("--round", type=int, default=-1,
                   help="round index (default: final round)")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("algos", help="list the algorithm catalog")
    p.set_defaults(fn=cmd_algos)

    p = sub.add_parser("bounds", help="evaluate counting lower bounds")
    p.add_argument("-n", type=int, default=100)
    p.add_argument("--eps", type=float, default=1 / 3)
    p.add_argument("-r", type=int, default=1)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("suite", help="run the conformance matrix")
    p.add_argument("scale", choices=("small", "full"))
    p.set_defaults(fn=cmd_suite)

    args = ap.parse_args(argv)
    if getattr(args, "round", None) == -1:
        args.round = None  # resolved after loading
    return args.fn(args)


def _entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
