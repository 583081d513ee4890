#!/usr/bin/env python3
"""Run a reduced verification suite and look at the margins.

The full default grid (the one the acceptance tests run) takes ~15 s; this
narrative version trims the grids so it finishes in a couple of seconds and
prints the tightest margin per inequality.
"""

from collections import defaultdict

from latgauss import SuiteConfig, run_suite

config = SuiteConfig(
    dims=(1, 2, 3),
    seeds=(0, 1),
    s_grid=(0.7, 1.0),
    c_grid=(1.0, 1.5, 2.0),
    k_grid=(1.2, 2.0),
)
report = run_suite(config)

print("summary:", report.summary)
print()

tightest = defaultdict(lambda: None)
for record in report.records:
    if not record.in_regime:
        continue
    cur = tightest[record.inequality]
    if cur is None or record.margin < cur.margin:
        tightest[record.inequality] = record

print(f"{'inequality':18s} {'tightest margin':>16s}  instance")
print("-" * 76)
for name in sorted(tightest):
    rec = tightest[name]
    inst = {k: v for k, v in rec.instance.items() if k in ("n", "s", "c", "k", "seed", "style")}
    print(f"{name:18s} {rec.margin:16.3e}  {inst}")

print()
print("out-of-regime instances are reported, never dropped:",
      report.summary["out_of_regime"])
print("the CLI equivalent writes a JSON-lines report:")
print("  latgauss verify --out report.jsonl")
