"""Run every law campaign and write one JSON report per law.

    python scripts/run_campaigns.py --out reports/ --seed 0 --workers 4
"""

from __future__ import annotations

import argparse
import pathlib

from pathkit.campaigns import LAWS, CampaignConfig, run_campaign

SAMPLES = {
    "groupoid": 1000,
    "termination": 10_000,
    "confluence": 500,
    "interchange": 200,
    "pentagon": 100,
    "triangle": 100,
    "equivalence": 1000,
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("reports"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--rules", default="groupoid", choices=("groupoid", "completed"))
    ap.add_argument("--scale", type=float, default=1.0, help="multiply every sample count")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for law in LAWS:
        cfg = CampaignConfig(law=law, samples=max(1, int(SAMPLES[law] * args.scale)), seed=args.seed, rule_set=args.rules)
        report = run_campaign(cfg, args.workers)
        (args.out / f"{law}.json").write_text(report.to_json(timing=True) + "\n", encoding="utf-8")
        print(f"{report.summary()}  [{report.elapsed:.0f} ms]")


if __name__ == "__main__":
    main()
