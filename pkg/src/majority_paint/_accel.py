"""Exhaustive subset scans used by the brute-force kernel oracle.

The hot loop enumerates all ``2^m`` subsets of a presented set and, for
each subset mask, computes the potential value

    cost(mask) = sum_{v in mask} (rho2[v] - 2 * w(v -> mask))  [rho2 = 2*rho]

together with whether the mask satisfies the rank characterisation
``v in mask  <=>  rho2[v] >= 2 * w(v -> mask)``.

Two interchangeable backends are provided:

* ``numba`` (default when importable): a Gray-code walk that flips one
  vertex per step, O(m * 2^m) time and O(m) working memory;
* ``numpy``: block-wise matrix products over the membership bit matrix.

Selection: the ``MP_ACCEL`` environment variable (``numba``, ``numpy`` or
``auto``).  Integer inputs are exact in both backends as long as the
magnitudes fit ``int64``; callers are expected to pre-check bounds and
fall back to :func:`subset_scan_object` (arbitrary precision, slow) when
they do not.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an install dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def active_backend() -> str:
    """Resolve the backend from ``MP_ACCEL`` (read on every call)."""
    choice = os.environ.get("MP_ACCEL", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if choice == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("MP_ACCEL=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"MP_ACCEL must be 'numba', 'numpy' or 'auto', got {choice!r}")


def _gray_scan(weights, rho2, costs, ok):
    m = rho2.shape[0]
    size = costs.shape[0]
    nws = np.zeros(m, dtype=weights.dtype)  # 2 * w(v -> current members)
    member = np.zeros(m, dtype=np.uint8)
    cost = costs[0]  # typed zero
    good = True
    for v in range(m):
        if rho2[v] >= 0:
            good = False
            break
    ok[0] = 1 if good else 0
    mask = 0
    for i in range(1, size):
        gray_prev = mask
        mask = i ^ (i >> 1)
        flip = 0
        diff = mask ^ gray_prev
        while diff > 1:
            diff >>= 1
            flip += 1
        if member[flip]:
            member[flip] = 0
            for t in range(m):
                nws[t] -= weights[t, flip]
            cost = cost - rho2[flip] + nws[flip]
        else:
            cost = cost + rho2[flip] - nws[flip]
            member[flip] = 1
            for t in range(m):
                nws[t] += weights[t, flip]
        costs[mask] = cost
        good = True
        for v in range(m):
            inside = member[v] == 1
            if inside != (rho2[v] >= nws[v]):
                good = False
                break
        ok[mask] = 1 if good else 0


if HAVE_NUMBA:
    _gray_scan_jit = njit(cache=True)(_gray_scan)


def _scan_numba(weights2: np.ndarray, rho2: np.ndarray):
    m = rho2.shape[0]
    costs = np.zeros(1 << m, dtype=weights2.dtype)
    ok = np.zeros(1 << m, dtype=np.uint8)
    _gray_scan_jit(weights2, rho2, costs, ok)
    return costs, ok


def _scan_numpy(weights2: np.ndarray, rho2: np.ndarray, block_bits: int = 16):
    m = rho2.shape[0]
    size = 1 << m
    costs = np.zeros(size, dtype=weights2.dtype)
    ok = np.zeros(size, dtype=np.uint8)
    block = 1 << min(m, block_bits)
    shifts = np.arange(m, dtype=np.uint64)
    col = rho2[:, None]
    exact = weights2.dtype.kind in "iu"
    for start in range(0, size, block):
        masks = np.arange(start, start + block, dtype=np.uint64)
        bits = ((masks[None, :] >> shifts[:, None]) & 1).astype(weights2.dtype)
        nws = weights2 @ bits  # 2 * w(v -> mask) for every mask in the block
        sl = slice(start, start + block)
        # cost = sum_{v in mask} 2*rho(v) - 2*E(mask); summing the doubled
        # per-member neighbor weights counts every internal edge 4 times.
        picked = (bits * nws).sum(axis=0)
        costs[sl] = (bits * col).sum(axis=0) - (picked // 2 if exact else picked / 2)
        ok[sl] = ((bits != 0) == (col >= nws)).all(axis=0)
    return costs, ok


def subset_scan(weights2: np.ndarray, rho2: np.ndarray):
    """Scan all subsets; ``weights2[u, v]`` must hold ``2 * w(u, v)``.

    Returns ``(costs, ok)`` indexed by subset bitmask.  dtype of the inputs
    (int64 or float64) is preserved in ``costs``.
    """
    if active_backend() == "numba":
        return _scan_numba(weights2, rho2)
    return _scan_numpy(weights2, rho2)


def subset_scan_object(weights2, rho2):
    """Pure-Python scan over arbitrary-precision numbers.

    Same contract as :func:`subset_scan` but takes nested lists and returns
    lists; used when scaled integer magnitudes would overflow int64.
    """
    m = len(rho2)
    size = 1 << m
    costs = [0] * size
    ok = [False] * size
    nws = [0] * m
    member = [False] * m
    cost = 0
    ok[0] = all(rho2[v] < 0 for v in range(m))
    mask = 0
    for i in range(1, size):
        prev = mask
        mask = i ^ (i >> 1)
        flip = (mask ^ prev).bit_length() - 1
        if member[flip]:
            member[flip] = False
            for t in range(m):
                nws[t] -= weights2[t][flip]
            cost += nws[flip] - rho2[flip]
        else:
            cost += rho2[flip] - nws[flip]
            member[flip] = True
            for t in range(m):
                nws[t] += weights2[t][flip]
        costs[mask] = cost
        ok[mask] = all(member[v] == (rho2[v] >= nws[v]) for v in range(m))
    return costs, ok
