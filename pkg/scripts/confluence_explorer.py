"""Measure how often the seven-rule fragment fails to join, and shrink witnesses.

For each seed and depth, counts generated paths whose random-strategy
normalizations disagree, under the seven groupoid rules and under the
completed rule set.  The smallest disagreeing path found is then shrunk
greedily (replace any sub-path by one of its own sub-paths while the
disagreement persists) and printed with all its normal forms.

    python scripts/confluence_explorer.py --seeds 4 --samples 500
"""

from __future__ import annotations

import argparse
import random

from pathkit.campaigns import CampaignConfig, run_range
from pathkit.generate import GeneratorConfig, PathGenerator, sample_rng
from pathkit.path import endpoints, is_valid, path_size, preorder, replace_subpath, show_path
from pathkit.rewrite import RULE_SETS, normalize_random, normalize_rw


def normal_forms(p, rules, tries: int = 40) -> set:
    rng = random.Random(0)
    forms = {normalize_rw(p, rules=rules)[0]}
    forms |= {normalize_random(p, rng, rules=rules)[0] for _ in range(tries)}
    return forms


def shrink(p, rules):
    improved = True
    while improved:
        improved = False
        for pos, sub in sorted(preorder(p), key=lambda x: -path_size(x[1])):
            for _, smaller in preorder(sub):
                if smaller is sub or endpoints(smaller) != endpoints(sub):
                    continue
                q = replace_subpath(p, pos, smaller)
                if is_valid(q) and len(normal_forms(q, rules)) > 1:
                    p, improved = q, True
                    break
            if improved:
                break
    return p


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--depths", type=int, nargs="+", default=[4, 6, 8])
    args = ap.parse_args()

    print(f"{'rules':>10} {'depth':>5} {'seed':>4} {'nonconfluent':>13}")
    witnesses = []
    for rules in RULE_SETS:
        for depth in args.depths:
            for seed in range(args.seeds):
                cfg = CampaignConfig("confluence", args.samples, seed, depth, rule_set=rules)
                report = run_range(cfg, 0, args.samples)
                print(f"{rules:>10} {depth:>5} {seed:>4} {report.stats.get('nonconfluent', 0):>13}")
                if rules == "groupoid":
                    for i in range(args.samples):
                        p = PathGenerator(GeneratorConfig(seed=seed, max_path_depth=depth), sample_rng(seed, i)).path()
                        if len(normal_forms(p, RULE_SETS[rules], 20)) > 1:
                            witnesses.append(p)
    if witnesses:
        smallest = min(witnesses, key=path_size)
        small = shrink(smallest, RULE_SETS["groupoid"])
        print("\nshrunk witness:", show_path(small))
        for f in sorted(show_path(f) for f in normal_forms(small, RULE_SETS["groupoid"])):
            print("  normal form:", f)
        print("  under completed rules:", {show_path(f) for f in normal_forms(small, RULE_SETS["completed"])})


if __name__ == "__main__":
    main()
