"""Vectorized numpy fallback for the census inner loop.

Same contract as the compiled kernel: decode a contiguous index range
into matrix entries, test commutation with the entrywise power image
via table gathers, and record member indices.  Used automatically when
the compiled extension is unavailable (or forced via FCENSUS_PURE=1).
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def count_commuting_range(start, stop, n, q, e, mul, add, frob, members, inf_flags):
    """Scan [start, stop); returns (x_count, xinf_count, member_count)."""
    idx = np.arange(start, stop, dtype=np.int64)
    nn = n * n
    digits = []
    t = idx
    for _ in range(nn):
        digits.append((t % q).astype(np.int32))
        t = t // q
    frob_digits = [frob[d] for d in digits]
    alive = _commute_mask(n, mul, add, digits, frob_digits)

    member_idx = idx[alive]
    mcount = int(member_idx.shape[0])
    members[:mcount] = member_idx

    sub = [d[alive] for d in digits]
    cur = [fd[alive] for fd in frob_digits]
    inf_alive = np.ones(mcount, dtype=bool)
    for _ in range(2, e):
        cur = [frob[c] for c in cur]
        inf_alive &= _commute_mask(n, mul, add, sub, cur)
    inf_flags[:mcount] = inf_alive.astype(np.int8)
    return mcount, int(inf_alive.sum()), mcount


def _commute_mask(n, mul, add, a, b):
    """Entrywise AB == BA over the whole vectorized batch."""
    size = a[0].shape[0] if a else 0
    mask = np.ones(size, dtype=bool)
    for i in range(n):
        for j in range(n):
            s1 = np.zeros(size, dtype=np.int32)
            s2 = np.zeros(size, dtype=np.int32)
            for k in range(n):
                s1 = add[s1, mul[a[i * n + k], b[k * n + j]]]
                s2 = add[s2, mul[b[i * n + k], a[k * n + j]]]
            mask &= s1 == s2
    return mask
