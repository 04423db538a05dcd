"""
Slack lists and the first missing even slack
============================================

How a prime's slack list is built and how the successor is read off it.
Run with ``python demos/01_slack_lists.py``.
"""

from slackprime import slack, remainder, build_slack_list, first_missing_even, next_prime_slack
from slackprime.nextprime import even_search_range

# %%
# The slack of 7 against 3: the amount 7 is short of the next multiple of 3.
print("slack(7, 3) =", slack(7, 3), " -> 7 + 2 = 9 = 3 * 3")
print("slack(8, 3) =", slack(8, 3))
# remainder and slack always add up to the divisor (when it does not divide p)
print("remainder(11, 5) + slack(11, 5) =", remainder(11, 5), "+", slack(11, 5))

# %%
# Slack lists for the four small primes used as worked examples.
for p in (11, 29, 7, 5):
    sl = build_slack_list(p)
    rng = even_search_range(p)
    e, beyond = first_missing_even(sl)
    print(f"\nP = {p}: divisors 2..{(p - 1) // 2}, even window [2, {rng.hi_in_range}]")
    print("  d :", " ".join(f"{d:>3}" for d in sl.divisors.tolist()))
    print("  S :", " ".join(f"{s:>3}" for s in sl.slacks.tolist()))
    how = f"beyond the window ({rng.beyond})" if beyond else "inside the window"
    print(f"  first missing even E = {e}, {how}; successor {p + e}")

# %%
# 13 has slack 2 at d = 3 and d = 5, so E moves on to 4: 13 + 4 = 17.
r = next_prime_slack(13)
print(f"\n13 -> {r.successor} with E = {r.e}")
