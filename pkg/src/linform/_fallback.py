"""Pure numpy versions of the compiled kernels.

Same signatures and results as ``_kernels``.  The algorithms differ on
purpose: counts use partial-sum histograms instead of tuple enumeration, and
the exhaustive searches evaluate every subset at once with a subset-sum
(zeta) transform over the support masks of all solution tuples.
"""

from __future__ import annotations

import itertools

import numpy as np


def _partial_sums(weights: np.ndarray, members: np.ndarray, scale: np.ndarray, add: np.ndarray, upto: int):
    """Histogram over s = sum_{i<upto} a_i x_i of prod w(x_i), x_i ranging over ``members``."""
    N = add.shape[0]
    dist = np.zeros(N, dtype=weights.dtype)
    dist[0] = 1
    for i in range(upto):
        live = np.flatnonzero(dist)
        targets = add[np.ix_(live, scale[i, members])]
        contrib = dist[live][:, None] * weights[members][None, :]
        nxt = np.zeros(N, dtype=weights.dtype)
        np.add.at(nxt, targets.ravel(), contrib.ravel())
        dist = nxt
    return dist


def count_solutions(member, scale, add, solve, distinct=False):
    member = np.asarray(member, dtype=np.uint8)
    scale, add, solve = np.asarray(scale), np.asarray(add), np.asarray(solve)
    k = scale.shape[0]
    members = np.flatnonzero(member)
    if distinct:
        total = 0
        for xs in itertools.permutations(members.tolist(), k - 1):
            s = 0
            for i, x in enumerate(xs):
                s = add[s, scale[i, x]]
            last = solve[k - 1, s]
            if member[last] and last not in xs:
                total += 1
        return total
    dist = _partial_sums(np.ones(add.shape[0], dtype=object), members, scale, add, k - 1)
    return int(sum(dist[s] for s in np.flatnonzero(member[solve[k - 1]])))


def lambda_sum(f, scale, add, solve):
    f = np.asarray(f, dtype=np.complex128)
    scale, add, solve = np.asarray(scale), np.asarray(add), np.asarray(solve)
    k = scale.shape[0]
    allx = np.arange(add.shape[0])
    dist = _partial_sums(f, allx, scale, add, k - 1)
    return complex(np.sum(dist * f[solve[k - 1]]))


def _subset_counts(scale, add, solve) -> np.ndarray:
    """counts[mask] = number of solution tuples with every coordinate in mask."""
    scale, add, solve = np.asarray(scale), np.asarray(add), np.asarray(solve)
    N = add.shape[0]
    k = scale.shape[0]
    grids = np.indices((N,) * (k - 1)).reshape(k - 1, -1) if k > 1 else np.zeros((0, 1), dtype=np.int64)
    s = np.zeros(grids.shape[1], dtype=np.int64)
    support = np.zeros(grids.shape[1], dtype=np.int64)
    for i in range(k - 1):
        s = add[s, scale[i, grids[i]]]
        support |= np.int64(1) << grids[i].astype(np.int64)
    support |= np.int64(1) << solve[k - 1, s].astype(np.int64)
    counts = np.bincount(support, minlength=1 << N).astype(np.int64)
    for bit in range(N):
        view = counts.reshape(-1, 2, 1 << bit)
        view[:, 1, :] += view[:, 0, :]
    return counts


def _popcounts(N: int) -> np.ndarray:
    pc = np.zeros(1 << N, dtype=np.int64)
    for bit in range(N):
        pc.reshape(-1, 2, 1 << bit)[:, 1, :] += 1
    return pc


def search_sidorenko(scale, add, solve, ell):
    N = np.asarray(add).shape[0]
    k = np.asarray(scale).shape[0]
    counts = _subset_counts(scale, add, solve)
    size = _popcounts(N)
    obj = N * counts * size**ell - size ** (k + ell)
    best = int(np.argmin(obj))
    return int(obj[best]), best, int(counts[best])


def search_common(scale, add, solve, ell):
    N = np.asarray(add).shape[0]
    k = np.asarray(scale).shape[0]
    K = k + ell
    counts = _subset_counts(scale, add, solve)
    size = _popcounts(N)
    half = 1 << (N - 1)
    masks = np.arange(half)
    comp = (1 << N) - 1 - masks
    mono = counts[masks] * size[masks] ** ell + counts[comp] * size[comp] ** ell
    obj = 2 ** (K - 1) * mono - N ** (K - 1)
    best = int(np.argmin(obj))
    return int(obj[best]), best, int(counts[best]), int(counts[comp[best]])
