import pytest
from hypothesis import given, settings, strategies as st

from slackprime import DomainError
from slackprime.nextprime import (
    build_slack_list, check_successor_divisors, divisor_range, even_search_range,
    first_missing_even, iter_prime_sequence, max_divisor_bound, next_prime_slack,
    prime_sequence, successor_upper_bound,
)

from brute import next_prime, primes_below, slack_table

SLACKS_11 = {2: 1, 3: 1, 4: 1, 5: 4}
SLACKS_29 = {2: 1, 3: 1, 4: 3, 5: 1, 6: 1, 7: 6, 8: 3, 9: 7, 10: 1, 11: 4, 12: 7, 13: 10, 14: 13}
SLACKS_7 = {2: 1, 3: 2}
SLACKS_5 = {2: 1}

SMALL_PRIMES = [p for p in primes_below(5000) if p >= 5]


@pytest.mark.parametrize("p, expected", [(11, (2, 5)), (29, (2, 14)), (5, (2, 2))])
def test_divisor_range(p, expected):
    assert divisor_range(p) == expected


@pytest.mark.parametrize("p", [3, 2, 4, 10])
def test_divisor_range_rejects(p):
    with pytest.raises(DomainError):
        divisor_range(p)


@pytest.mark.parametrize("p, table", [(11, SLACKS_11), (29, SLACKS_29), (7, SLACKS_7), (5, SLACKS_5)])
def test_golden_slack_lists(p, table):
    assert build_slack_list(p).as_dict() == table


def test_slack_list_13_matches_brute_force():
    sl = build_slack_list(13)
    assert sl.as_dict() == slack_table(13) == {2: 1, 3: 2, 4: 3, 5: 2, 6: 5}
    assert sl.even_present == {2}


@pytest.mark.parametrize("p, expected", [
    (11, (2, False)),
    (7, (4, True)),
    (5, (2, True)),
    (13, (4, False)),
])
def test_first_missing_even(p, expected):
    assert first_missing_even(build_slack_list(p)) == expected


@pytest.mark.parametrize("p, hi, beyond", [
    (5, 0, 2),    # k = 2 even, empty in-range window
    (7, 2, 4),    # k = 3 odd
    (11, 4, 6),   # k = 5 odd
    (29, 12, 14), # k = 14 even
])
def test_even_search_range_branches(p, hi, beyond):
    rng = even_search_range(p)
    assert (rng.lo, rng.hi_in_range, rng.beyond) == (2, hi, beyond)
    assert rng.beyond % 2 == 0 and rng.beyond > rng.hi_in_range


@pytest.mark.parametrize("p, succ, e, beyond", [
    (11, 13, 2, False),
    (29, 31, 2, False),
    (7, 11, 4, True),
    (5, 7, 2, True),
    (13, 17, 4, False),
])
@pytest.mark.parametrize("mode", ["faithful", "fast"])
def test_next_prime_examples(p, succ, e, beyond, mode):
    r = next_prime_slack(p, mode=mode)
    assert (r.successor, r.e, r.used_beyond_range) == (succ, e, beyond)
    assert r.successor <= successor_upper_bound(p)


def test_seeds():
    assert next_prime_slack(2).successor == 3
    assert next_prime_slack(3).successor == 5


@pytest.mark.parametrize("mode", ["faithful", "fast"])
@pytest.mark.parametrize("p", [9, 15, 25, 91, 8, 1])
def test_rejects_non_primes(p, mode):
    with pytest.raises(DomainError):
        next_prime_slack(p, mode=mode)


def test_verify_mode_checks_primality():
    with pytest.raises(DomainError):
        build_slack_list(15, verify=True)
    # without verify the list silently skips the divisible pairs
    assert 3 not in build_slack_list(15).as_dict()
    assert build_slack_list(13, verify=True).as_dict()[5] == 2


def test_prime_sequence():
    assert [r.successor for r in prime_sequence(5, 4)] == [7, 11, 13, 17]
    assert [r.successor for r in prime_sequence(5, 1)] == [7]
    assert [r.successor for r in prime_sequence(29, 1)] == [31]
    with pytest.raises(DomainError):
        prime_sequence(5, 0)


def test_chain_tracks_oracle():
    got = [r.successor for r in iter_prime_sequence(5, 300)]
    expected, p = [], 5
    for _ in range(300):
        p = next_prime(p)
        expected.append(p)
    assert got == expected


@pytest.mark.parametrize("p, expected", [(7, 11), (11, 17), (29, 44)])
def test_successor_upper_bound(p, expected):
    assert successor_upper_bound(p) == expected


@pytest.mark.parametrize("p, expected", [(7, 5), (11, 8), (5, 3)])
def test_max_divisor_bound(p, expected):
    assert max_divisor_bound(p) == expected


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_agrees_with_brute_force(p):
    r = next_prime_slack(p)
    assert r.successor == next_prime(p)
    assert r.e % 2 == 0 and r.e >= 2
    if not r.used_beyond_range:
        assert r.e not in build_slack_list(p).even_present
    assert check_successor_divisors(r.successor)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([p for p in primes_below(200_000) if p >= 5]))
def test_fast_mode_bit_for_bit(p):
    assert next_prime_slack(p, mode="fast") == next_prime_slack(p, mode="faithful")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_PRIMES))
def test_kernel_matches_slack_list_path(p):
    e, beyond = first_missing_even(build_slack_list(p))
    r = next_prime_slack(p)
    assert (r.e, r.used_beyond_range) == (e, beyond)


def test_successor_divisor_check_catches_composites():
    assert not check_successor_divisors(15)
    assert check_successor_divisors(13)


def test_deterministic():
    a = [next_prime_slack(p) for p in SMALL_PRIMES[:200]]
    b = [next_prime_slack(p) for p in SMALL_PRIMES[:200]]
    assert a == b
