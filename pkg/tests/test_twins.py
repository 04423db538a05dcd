import csv
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from slackprime import DomainError
from slackprime.nextprime import build_slack_list, first_missing_even
from slackprime.slack import slack
from slackprime.twins import (
    EQUALS_ONE, GREATER_THAN_TWO, VIOLATES, constraint_trace, is_twin_leader,
    r_constraint_violations, twin_pairs_upto, twin_report_json, write_twin_csv,
)

from brute import is_prime, primes_below

PRIMES = [p for p in primes_below(20000) if p >= 5]


@pytest.mark.parametrize("p, expected", [(11, []), (13, [3, 5]), (5, [])])
def test_violations(p, expected):
    assert r_constraint_violations(p) == expected


def test_twin_leader_examples():
    r = is_twin_leader(11)
    assert r.verdict and r.companion == 13 and r.checked_divisors == 4
    r = is_twin_leader(13)
    assert not r.verdict and r.companion is None
    assert is_twin_leader(13, full=True).violations == (3, 5)
    assert is_twin_leader(13).violations == (3,)  # early exit keeps the first
    r = is_twin_leader(41)
    assert r.verdict and r.companion == 43


def test_trace_examples():
    assert constraint_trace(11).as_dict() == {
        2: (1, EQUALS_ONE), 3: (1, EQUALS_ONE), 4: (1, EQUALS_ONE), 5: (4, GREATER_THAN_TWO)}
    t13 = constraint_trace(13).as_dict()
    assert t13[3] == (2, VIOLATES) and t13[5] == (2, VIOLATES)
    assert constraint_trace(7).as_dict() == {2: (1, EQUALS_ONE), 3: (2, VIOLATES)}


@pytest.mark.parametrize("p", PRIMES[:400])
def test_trace_consistent_with_violations(p):
    rows = constraint_trace(p).rows
    assert rows[0].d == 2 and rows[0].s == 1
    assert [r.d for r in rows if r.status == VIOLATES] == r_constraint_violations(p)


def test_twin_pairs():
    assert twin_pairs_upto(20) == [(5, 7), (11, 13), (17, 19)]
    assert twin_pairs_upto(7) == [(5, 7)]
    assert twin_pairs_upto(5) == []
    assert twin_pairs_upto(20, include_3_5=True)[0] == (3, 5)
    pairs = twin_pairs_upto(45)
    assert (29, 31) in pairs and (41, 43) in pairs
    with pytest.raises(DomainError):
        twin_pairs_upto(4)


def test_twin_pairs_match_brute_force():
    expected = [(p, p + 2) for p in primes_below(3000) if p >= 5 and p + 2 <= 3000 and is_prime(p + 2)]
    assert twin_pairs_upto(3000) == expected


def test_rejects():
    for p in (3, 4, 10):
        with pytest.raises(DomainError):
            r_constraint_violations(p)
    with pytest.raises(DomainError):
        is_twin_leader(15, verify=True)


@settings(max_examples=500, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_slack_two_iff_remainder_d_minus_2(p, data):
    d = data.draw(st.integers(2, (p - 1) // 2))
    assert (p % d == d - 2) == (slack(p, d) == 2)


@pytest.mark.parametrize("p", PRIMES[1:600])
def test_verdict_matches_algorithm(p):
    e, beyond = first_missing_even(build_slack_list(p))
    assert is_twin_leader(p).verdict == (e == 2 and not beyond)


def test_verdict_p5_boundary():
    # 5 reaches E = 2 through the beyond-range path yet leads (5, 7)
    assert first_missing_even(build_slack_list(5)) == (2, True)
    assert is_twin_leader(5).verdict


@pytest.mark.parametrize("p", PRIMES)
def test_verdict_matches_oracle(p):
    assert is_twin_leader(p).verdict == is_prime(p + 2)
    assert slack(p, 2) == 1


def test_json_emission():
    assert json.loads(twin_report_json(is_twin_leader(11))) == {
        "p": 11, "violations": [], "verdict": True, "companion": 13}
    d = json.loads(twin_report_json(is_twin_leader(13, full=True)))
    assert d == {"p": 13, "violations": [3, 5], "verdict": False}


def test_csv_emission():
    buf = io.StringIO()
    write_twin_csv(twin_pairs_upto(20), buf)
    assert buf.getvalue() == "p,p_plus_2\n5,7\n11,13\n17,19\n"
    assert list(csv.reader(io.StringIO(buf.getvalue())))[0] == ["p", "p_plus_2"]
