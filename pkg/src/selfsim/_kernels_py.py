"""Numpy fallback for the pointwise kernels in ``_kernels.pyx``.

Both implementations share one contract: a map is four int64 arrays
``(ks, rs, kps, rps)`` and undefined values are encoded as ``-1``.
"""
import numpy as np


def apply_pieces(ks, rs, kps, rps, ns):
    ns = np.asarray(ns, dtype=np.int64)
    out = np.full(ns.shape, -1, dtype=np.int64)
    live = ns >= 0
    for k, r, kp, rp in zip(ks.tolist(), rs.tolist(), kps.tolist(), rps.tolist()):
        hit = live & ((ns & ((1 << k) - 1)) == r)
        if hit.any():
            out[hit] = (((ns[hit] - r) >> k) << kp) + rp
    return out


def first_mismatch(a, b, start, stop):
    ns = np.arange(start, stop, dtype=np.int64)
    diff = np.nonzero(apply_pieces(*a, ns) != apply_pieces(*b, ns))[0]
    return int(ns[diff[0]]) if diff.size else -1
