#!/usr/bin/env python3
"""Development fuzz loop: random scenarios per catalog entry vs the oracle."""

import argparse
import sys
import time

from dyncliq import engine
from dyncliq.algorithms import catalog, instantiate
from dyncliq.dyngraph import ProblemSpec
from dyncliq.generators import random_scenario


def fuzz_entry(name, n, count, events, s=3, r=None, verbose=False):
    entry = catalog()[name]
    s_eff = entry.s if entry.s is not None else s
    r_eff = entry.r if entry.r is not None else (r or 1)
    if r is not None:
        r_eff = max(r_eff, r)
    problem = ProblemSpec(entry.task, s_eff, r_eff, entry.allowed)
    bad = []
    for seed in range(count):
        sc = random_scenario(n, events, problem, seed=seed,
                             density=0.35, quiet_tail=max(0, r_eff - 1))
        alg = instantiate(name, sc)
        rep = engine.run(sc, alg)
        if not rep.passed:
            bad.append((seed, rep.violations[:2]))
            if verbose:
                print(rep.render_human())
    return bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", default=None)
    ap.add_argument("-n", type=int, default=8)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--events", type=int, default=25)
    ap.add_argument("-s", type=int, default=4)
    ap.add_argument("-r", type=int, default=None)
    args = ap.parse_args()

    names = sorted(catalog())
    if args.only:
        names = [x for x in names if args.only in x]
    failures = 0
    for name in names:
        t0 = time.time()
        bad = fuzz_entry(name, args.n, args.count, args.events, s=args.s, r=args.r)
        dt = time.time() - t0
        status = "ok " if not bad else "BAD"
        print(f"{status} {name:28s} {dt:6.2f}s  failures={len(bad)}")
        if bad:
            failures += 1
            for seed, vio in bad[:3]:
                print(f"      seed={seed}: {vio}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
