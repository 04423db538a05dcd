"""
Cost of the slack method versus a sieve
=======================================

The slack method does (p-1)/2 divisions per prime, so its per-prime cost
grows linearly in p; a sieve's amortised cost per prime barely moves.
"""
from slackprime.harness import CampaignConfig, format_bench_table, run_bench

rep = run_bench(CampaignConfig("bench", count=5))
print(format_bench_table(rep.bench))
