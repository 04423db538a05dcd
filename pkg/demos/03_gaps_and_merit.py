"""
Prime gaps, the half-prime bound, and merit
===========================================

Every gap below 10^6 against floor((p+1)/2), the maximal gaps, and how the
observed maximal gaps compare with the Cramér/Shanks and Wolf estimates.
"""
import numpy as np

from slackprime import oracle
from slackprime.gaps import estimates, gap_records, maximal_gaps

primes = oracle.sieve_upto(10**6).primes()
gaps = np.diff(primes)
bound = (primes[:-1] + 1) // 2

# %%
print("pairs below 10^6:", gaps.size)
print("largest gap:", gaps.max(), "after", primes[gaps.argmax()])
print("violations of gap <= floor((p+1)/2):", int((gaps > bound).sum()))
# the worst gap-to-bound ratio once past the first ten primes
ratio = gaps[10:] / bound[10:]
print(f"max gap / bound for p >= 31: {ratio.max():.4f}")

# %%
recs = maximal_gaps(gap_records(primes))
print(f"\n{'p':>8} {'gap':>4} {'merit':>6} {'(ln p)^2':>9} {'wolf':>7}")
for r in recs:
    if r.is_maximal:
        est = estimates(r.p_i, r.i)
        print(f"{r.p_i:>8} {r.gap:>4} {r.merit:6.3f} {est.cramer:9.2f} {est.wolf:7.2f}")

# %%
# Average merit over [N, 2N] drifts around 1, the prime number theorem's average.
for n in (10**3, 10**4, 10**5, 5 * 10**5):
    sel = (primes[:-1] >= n) & (primes[:-1] < 2 * n)
    m = gaps[sel] / np.log(primes[:-1][sel])
    print(f"mean merit on [{n}, {2 * n}): {m.mean():.4f}")
