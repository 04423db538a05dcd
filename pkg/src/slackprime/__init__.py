"""Next-prime generation from slack lists, with sieve oracles to check it."""
from .errors import (
    CapacityError, CheckpointError, DomainError, IntegerOverflow, SlackPrimeError,
)
from .slack import Alpha, alpha, remainder, slack, slack_remainder_dual
from .nextprime import (
    NextPrimeResult, SlackList, build_slack_list, divisor_range, first_missing_even,
    max_divisor_bound, next_prime_slack, prime_sequence, successor_upper_bound,
)
from .oracle import (
    PrimeTable, is_prime_trial, next_prime_oracle, nth_prime, prime_count,
    segmented_sieve, sieve_upto,
)
from .gaps import GapRecord, EstimateSet, estimates, gap_record, maximal_gaps, merit, paper_gap_bound
from .twins import TwinReport, constraint_trace, is_twin_leader, r_constraint_violations, twin_pairs_upto

__version__ = "0.1.0"
