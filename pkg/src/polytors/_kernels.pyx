# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled carry-counting kernels.

Arguments must fit in an unsigned 64-bit word; the dispatcher in
``polytors.kernels`` routes larger values to the pure-Python fallback.
"""

ctypedef unsigned long long u64


cdef inline int _carries(u64 N, u64 n, u64 p) nogil:
    cdef u64 a = n
    cdef u64 b = N - n
    cdef u64 s
    cdef int carry = 0
    cdef int count = 0
    while a or b:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        count += carry
        a //= p
        b //= p
    return count


def carry_count(u64 N, u64 n, u64 p):
    return _carries(N, n, p)


def min_carry_scan(u64 N, u64 S, u64 p, u64 step):
    cdef int best = -1
    cdef int c
    cdef u64 n = step
    argmin = []
    while n <= S:
        c = _carries(N, n, p)
        if best < 0 or c < best:
            best = c
            argmin = [n]
        elif c == best:
            argmin.append(n)
        n += step
    if best < 0:
        return None, []
    return best, argmin
