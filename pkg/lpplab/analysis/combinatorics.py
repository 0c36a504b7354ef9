import math

from lpplab.errors import DomainError, ResourceError

MAX_CIRCLE = 28
MAX_BINOMIAL = 60


def circular_placements(m: int, r: int) -> int:
    """
    Number of ways to choose r of the m + r points of a circle so that any
    two chosen points are at distance at least 2. Counted exhaustively.
    """
    if m < 1 or not 0 <= r <= m:
        raise DomainError(f"circular_placements needs 1 <= m and 0 <= r <= m, got m={m}, r={r}")
    size = m + r
    if size > MAX_CIRCLE:
        raise ResourceError(f"Enumerating {size} circle points exceeds the limit of {MAX_CIRCLE}")

    def count(start: int, left: int, first: int | None) -> int:
        if left == 0:
            return 1
        total = 0
        for p in range(start, size):
            # the last point must also stay 2 away from the first one
            if left == 1 and first is not None and p > first + size - 2:
                break
            total += count(p + 2, left - 1, p if first is None else first)
        return total

    return count(0, r, None)


def circular_placements_formula(m: int, r: int) -> int:
    """C(m, r) + C(m-1, r-1) = (m+r)/m C(m, r)."""
    if r == 0:
        return 1
    return math.comb(m, r) + math.comb(m - 1, r - 1)


def hockey_stick(n: int, m: int) -> tuple[int, int]:
    """(sum_{k<=m} C(n+k, n), C(n+m+1, n+1)) in exact integers."""
    if n < 0 or m < 0:
        raise DomainError(f"hockey_stick needs n, m >= 0, got n={n}, m={m}")
    if n > MAX_BINOMIAL or m > MAX_BINOMIAL:
        raise ResourceError(f"hockey_stick is limited to n, m <= {MAX_BINOMIAL}")
    left = sum(math.comb(n + k, n) for k in range(m + 1))
    return left, math.comb(n + m + 1, n + 1)
