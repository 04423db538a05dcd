"""Naive reference computations for tests; deliberately share no code with the package."""


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_below(n):
    return [k for k in range(2, n) if is_prime(k)]


def next_prime(n):
    k = n + 1
    while not is_prime(k):
        k += 1
    return k


def slack_by_search(p, d):
    """Smallest t in [1, d] with d | p + t."""
    for t in range(1, d + 1):
        if (p + t) % d == 0:
            return t
    raise AssertionError("unreachable")


def slack_table(p):
    return {d: slack_by_search(p, d) for d in range(2, (p - 1) // 2 + 1) if p % d}
