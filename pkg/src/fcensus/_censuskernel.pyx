# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled inner loop of the matrix census.

Walks a contiguous range of matrix indices (base-q digits = entries,
least significant digit first), tallies the matrices commuting with
their entrywise p-th power image, flags the ones commuting with every
power-map iterate, and records member indices for later stratification.
The loop runs without the GIL so range workers can share threads.
"""

BACKEND = "compiled"


def count_commuting_range(
    long long start,
    long long stop,
    int n,
    int q,
    int e,
    const int[:, ::1] mul,
    const int[:, ::1] add,
    const int[::1] frob,
    long long[::1] members,
    signed char[::1] inf_flags,
):
    """Scan [start, stop); returns (x_count, xinf_count, member_count).

    members[:member_count] receives the indices of commuting matrices in
    increasing order; inf_flags marks which of them commute with every
    iterate of the entrywise power map (iterates 2..e-1; the first is
    the membership test itself, and the e-th is the identity).
    """
    cdef int nn = n * n
    cdef int m[36]
    cdef int f[36]
    cdef int g[36]
    cdef long long idx, x_count = 0, xinf_count = 0, mcount = 0
    cdef long long t
    cdef int i, j, k, pos, s1, s2, iorb
    cdef bint in_x, in_inf

    if nn > 36:
        raise ValueError("kernel supports n <= 6")

    t = start
    for pos in range(nn):
        m[pos] = <int> (t % q)
        t //= q

    with nogil:
        idx = start
        while idx < stop:
            for pos in range(nn):
                f[pos] = frob[m[pos]]
            in_x = True
            for i in range(n):
                for j in range(n):
                    s1 = 0
                    s2 = 0
                    for k in range(n):
                        s1 = add[s1, mul[m[i * n + k], f[k * n + j]]]
                        s2 = add[s2, mul[f[i * n + k], m[k * n + j]]]
                    if s1 != s2:
                        in_x = False
                        break
                if not in_x:
                    break
            if in_x:
                x_count += 1
                in_inf = True
                for pos in range(nn):
                    g[pos] = f[pos]
                for iorb in range(2, e):
                    for pos in range(nn):
                        g[pos] = frob[g[pos]]
                    for i in range(n):
                        for j in range(n):
                            s1 = 0
                            s2 = 0
                            for k in range(n):
                                s1 = add[s1, mul[m[i * n + k], g[k * n + j]]]
                                s2 = add[s2, mul[g[i * n + k], m[k * n + j]]]
                            if s1 != s2:
                                in_inf = False
                                break
                        if not in_inf:
                            break
                    if not in_inf:
                        break
                if in_inf:
                    xinf_count += 1
                members[mcount] = idx
                inf_flags[mcount] = 1 if in_inf else 0
                mcount += 1
            idx += 1
            pos = 0
            while pos < nn:
                m[pos] += 1
                if m[pos] == q:
                    m[pos] = 0
                    pos += 1
                else:
                    break

    return x_count, xinf_count, mcount
