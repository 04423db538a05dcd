"""
Checking the slack method against a sieve
=========================================

Iterate the method from 5 and compare with the oracle, then run a full
campaign over the first 10,000 primes and look at the report.
"""
import tempfile
from pathlib import Path

from slackprime import prime_sequence, next_prime_oracle
from slackprime.harness import CampaignConfig, run_next_prime_campaign

# %%
chain = prime_sequence(5, 15)
print("chain from 5:", [r.successor for r in chain])
print("oracle agrees:", all(r.successor == next_prime_oracle(r.p) for r in chain))

# %%
# A campaign records mismatches instead of stopping, and checkpoints as it goes.
out = Path(tempfile.mkdtemp(prefix="slackprime-"))
rep = run_next_prime_campaign(CampaignConfig("next-prime", start_index=3, count=10_000,
                                             output_path=str(out)))
print(f"\nchecked {rep.primes_checked} primes in {rep.wall_time:.2f} s")
print("discrepancies:", len(rep.discrepancies))
print("largest E used:", rep.max_observed_E)
print("beyond-range fallbacks:", rep.beyond_range_uses)
print("files:", sorted(p.name for p in out.iterdir()))

# %%
# Running it again resumes from the checkpoint and does no new work.
again = run_next_prime_campaign(CampaignConfig("next-prime", start_index=3, count=10_000,
                                               output_path=str(out)))
print("resumed report identical:", again.comparable() == rep.comparable())
