"""Pure-Python carry-counting kernels (fallback for the compiled core)."""


def carry_count(N, n, p):
    """Carries produced when adding ``n`` and ``N - n`` in base ``p``."""
    a, b = n, N - n
    carry = 0
    count = 0
    while a or b:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def min_carry_scan(N, S, p, step):
    """Minimum carry count over ``n = step, 2*step, ... <= S`` and its argmin.

    Returns ``(None, [])`` when no ``n`` is admissible.
    """
    best = None
    argmin = []
    for n in range(step, S + 1, step):
        c = carry_count(N, n, p)
        if best is None or c < best:
            best = c
            argmin = [n]
        elif c == best:
            argmin.append(n)
    return best, argmin
