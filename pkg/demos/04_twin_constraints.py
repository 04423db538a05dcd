"""
Twin primes from R-constraints
==============================

A prime p >= 5 leads a twin pair exactly when no divisor d in [2, (p-1)/2]
leaves remainder d - 2.  We trace the constraints for 11 and 13, then list
twin pairs and check the verdicts against trial division.
"""
from slackprime import constraint_trace, is_twin_leader, twin_pairs_upto
from slackprime.oracle import is_prime_trial, segmented_sieve

# %%
for p in (11, 13):
    print(f"P = {p}")
    for row in constraint_trace(p).rows:
        print(f"  d={row.d:<2} remainder={p % row.d:<2} d-2={row.d - 2:<2} slack={row.s:<2} {row.status}")
    rep = is_twin_leader(p, full=True)
    print("  verdict:", "twin leader" if rep.verdict else f"not a twin leader, violations {list(rep.violations)}")

# %%
print("\ntwin pairs up to 200:", twin_pairs_upto(200))

# %%
primes = segmented_sieve(5, 200_000).tolist()
mismatch = [p for p in primes if is_twin_leader(p).verdict != is_prime_trial(p + 2)]
print(f"verdicts checked for {len(primes)} primes, mismatches: {len(mismatch)}")
