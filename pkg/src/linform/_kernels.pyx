# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

All group elements are indices into F_q^n.  Shared arguments:

scale   int32[k, N]   scale[i, x] = index of a_i * x
add     int32[N, N]   vector addition
solve   int32[k, N]   solve[p, s] = index of a_p^{-1} (b - s)
"""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int32_t i32
ctypedef long long i64


cdef struct Ctx:
    int N
    int k
    const i32* scale
    const i32* add
    const i32* solve
    const unsigned char* mem
    const i32* members
    int n_members
    int* xs
    int distinct


cdef i64 _count_rec(Ctx* c, int depth, int s) noexcept nogil:
    cdef int i, j, x, t
    cdef i64 total = 0
    if depth == c.k - 1:
        x = c.solve[(c.k - 1) * c.N + s]
        if not c.mem[x]:
            return 0
        if c.distinct:
            for j in range(depth):
                if c.xs[j] == x:
                    return 0
        return 1
    for i in range(c.n_members):
        x = c.members[i]
        if c.distinct:
            t = 0
            for j in range(depth):
                if c.xs[j] == x:
                    t = 1
                    break
            if t:
                continue
        c.xs[depth] = x
        total += _count_rec(c, depth + 1, c.add[s * c.N + c.scale[depth * c.N + x]])
    return total


def count_solutions(const unsigned char[::1] member, const i32[:, ::1] scale, const i32[:, ::1] add,
                    const i32[:, ::1] solve, bint distinct=False):
    """Tuples (x_1..x_k) in A^k with sum a_i x_i = b.

    Plain counts run a histogram of partial sums over x_1..x_{k-1} and solve
    for x_k, O(k N |A|).  ``distinct`` needs the tuples themselves, so it
    enumerates them.
    """
    cdef int N = member.shape[0]
    cdef int k = scale.shape[0]
    members = np.flatnonzero(np.asarray(member)).astype(np.int32)
    cdef i32[::1] mview = members
    cdef int n_members = members.shape[0]
    cdef i64 total = 0
    cdef int i, j, s, x
    if distinct:
        return _count_distinct(member, scale, add, solve, members)
    dist_a = np.zeros(N, dtype=np.int64)
    nxt_a = np.zeros(N, dtype=np.int64)
    cdef i64[::1] dist = dist_a
    cdef i64[::1] nxt = nxt_a
    cdef i64[::1] tmp
    dist[0] = 1
    with nogil:
        for i in range(k - 1):
            nxt[:] = 0
            for s in range(N):
                if dist[s]:
                    for j in range(n_members):
                        x = mview[j]
                        nxt[add[s, scale[i, x]]] += dist[s]
            tmp = dist
            dist = nxt
            nxt = tmp
        for s in range(N):
            if dist[s] and member[solve[k - 1, s]]:
                total += dist[s]
    return int(total)


def _count_distinct(const unsigned char[::1] member, const i32[:, ::1] scale, const i32[:, ::1] add,
                    const i32[:, ::1] solve, members):
    cdef Ctx c
    cdef i32[::1] mview = members
    xs = np.zeros(max(scale.shape[0], 1), dtype=np.intc)
    cdef int[::1] xview = xs
    cdef i64 total
    c.N = member.shape[0]
    c.k = scale.shape[0]
    c.scale = &scale[0, 0]
    c.add = &add[0, 0]
    c.solve = &solve[0, 0]
    c.mem = &member[0]
    c.n_members = members.shape[0]
    c.members = &mview[0] if c.n_members else NULL
    c.xs = &xview[0]
    c.distinct = 1
    with nogil:
        total = _count_rec(&c, 0, 0)
    return int(total)


def lambda_sum(const double complex[::1] f, const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve):
    """Sum of f(x_1)...f(x_k) over every solution tuple (not normalised), by partial-sum histogram."""
    cdef int N = f.shape[0]
    cdef int k = scale.shape[0]
    cdef int i, s, x
    cdef double complex total = 0
    dist_a = np.zeros(N, dtype=np.complex128)
    nxt_a = np.zeros(N, dtype=np.complex128)
    cdef double complex[::1] dist = dist_a
    cdef double complex[::1] nxt = nxt_a
    cdef double complex[::1] tmp
    dist[0] = 1
    with nogil:
        for i in range(k - 1):
            nxt[:] = 0
            for s in range(N):
                if dist[s] != 0:
                    for x in range(N):
                        nxt[add[s, scale[i, x]]] += dist[s] * f[x]
            tmp = dist
            dist = nxt
            nxt = tmp
        for s in range(N):
            total = total + dist[s] * f[solve[k - 1, s]]
    return complex(total)


cdef struct DCtx:
    int N
    int k
    const i32* scale
    const i32* add
    const i32* solve
    const unsigned char* mem      # membership of S (e excluded)
    const i32* members            # members of S
    int n_members
    int e
    int j
    int p
    int* order                    # positions other than j and p, ascending
    int n_order


cdef i64 _delta_rec(DCtx* c, int depth, int s) noexcept nogil:
    cdef int i, x, pos
    cdef i64 total = 0
    if depth == c.n_order:
        x = c.solve[c.p * c.N + s]
        if c.mem[x] or (c.p > c.j and x == c.e):
            return 1
        return 0
    pos = c.order[depth]
    for i in range(c.n_members):
        x = c.members[i]
        total += _delta_rec(c, depth + 1, c.add[s * c.N + c.scale[pos * c.N + x]])
    if pos > c.j:
        total += _delta_rec(c, depth + 1, c.add[s * c.N + c.scale[pos * c.N + c.e]])
    return total


cdef i64 _delta(DCtx* c) noexcept nogil:
    """count(S + {e}) - count(S), split by the first position holding e."""
    cdef int j, i, t
    cdef i64 total = 0
    if c.k == 1:
        return 1 if c.solve[0] == c.e else 0
    for j in range(c.k):
        c.j = j
        c.p = c.k - 1 if j != c.k - 1 else c.k - 2
        t = 0
        for i in range(c.k):
            if i != j and i != c.p:
                c.order[t] = i
                t += 1
        c.n_order = t
        total += _delta_rec(c, 0, c.scale[j * c.N + c.e])
    return total


cdef inline i64 _ipow(i64 b, int e) noexcept nogil:
    cdef i64 r = 1
    while e > 0:
        r *= b
        e -= 1
    return r


cdef int _fill_members(const unsigned char* mem, int N, int skip, i32* out) noexcept nogil:
    cdef int x, t = 0
    for x in range(N):
        if mem[x] and x != skip:
            out[t] = x
            t += 1
    return t


def search_sidorenko_gray(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    """Gray-code sweep of all subsets minimising N*count*|A|^ell - |A|^(k+ell).

    Returns (best_objective, best_mask, best_count) with count over the k
    non-free variables; ties go to the smallest mask.
    """
    cdef int N = add.shape[0]
    cdef int k = scale.shape[0]
    cdef DCtx c
    mem_a = np.zeros(N, dtype=np.uint8)
    members_a = np.zeros(N, dtype=np.int32)
    order_a = np.zeros(max(k, 1), dtype=np.intc)
    cdef unsigned char[::1] mem = mem_a
    cdef i32[::1] members = members_a
    cdef int[::1] order = order_a
    cdef long long i, limit = (<long long>1) << N
    cdef long long mask = 0, best_mask = 0
    cdef i64 cnt = 0, best_cnt = 0, obj, best = 0
    cdef int e, size = 0
    c.N = N
    c.k = k
    c.scale = &scale[0, 0]
    c.add = &add[0, 0]
    c.solve = &solve[0, 0]
    c.mem = &mem[0]
    c.members = &members[0]
    c.order = &order[0]
    with nogil:
        for i in range(1, limit):
            e = 0
            while not ((i >> e) & 1):
                e += 1
            c.e = e
            if mem[e]:
                mem[e] = 0
                c.n_members = _fill_members(&mem[0], N, -1, &members[0])
                cnt -= _delta(&c)
                size -= 1
            else:
                c.n_members = _fill_members(&mem[0], N, -1, &members[0])
                cnt += _delta(&c)
                mem[e] = 1
                size += 1
            mask ^= (<long long>1) << e
            obj = N * cnt * _ipow(size, ell) - _ipow(size, k + ell)
            if obj < best or (obj == best and mask < best_mask):
                best = obj
                best_mask = mask
                best_cnt = cnt
    return int(best), int(best_mask), int(best_cnt)


def search_common_gray(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    """Gray-code sweep of 2-colourings with the top element fixed to colour 0.

    Colour 1 is the set bit.  Minimises 2^(K-1)*mono - N^(K-1), K = k + ell,
    where mono = cA*|A|^ell + cB*|B|^ell.  Returns (best_objective, best_mask,
    count_colour1, count_colour0).
    """
    cdef int N = add.shape[0]
    cdef int k = scale.shape[0]
    cdef int K = k + ell
    cdef DCtx c
    mem_a = np.zeros(N, dtype=np.uint8)
    mem_b = np.ones(N, dtype=np.uint8)
    members_a = np.zeros(N, dtype=np.int32)
    order_a = np.zeros(max(k, 1), dtype=np.intc)
    cdef unsigned char[::1] ma = mem_a
    cdef unsigned char[::1] mb = mem_b
    cdef i32[::1] members = members_a
    cdef int[::1] order = order_a
    cdef long long i, limit = (<long long>1) << (N - 1)
    cdef long long mask = 0, best_mask = 0
    cdef i64 ca = 0, cb = _ipow(N, k - 1), obj, best, best_ca, best_cb
    cdef i64 two = _ipow(2, K - 1), base = _ipow(N, K - 1)
    cdef int e, size = 0
    c.N = N
    c.k = k
    c.scale = &scale[0, 0]
    c.add = &add[0, 0]
    c.solve = &solve[0, 0]
    c.members = &members[0]
    c.order = &order[0]
    best = two * (ca * _ipow(0, ell) + cb * _ipow(N, ell)) - base
    best_ca = ca
    best_cb = cb
    with nogil:
        for i in range(1, limit):
            e = 0
            while not ((i >> e) & 1):
                e += 1
            c.e = e
            if ma[e]:
                # colour 1 -> colour 0
                ma[e] = 0
                c.mem = &ma[0]
                c.n_members = _fill_members(&ma[0], N, -1, &members[0])
                ca -= _delta(&c)
                c.mem = &mb[0]
                c.n_members = _fill_members(&mb[0], N, -1, &members[0])
                cb += _delta(&c)
                mb[e] = 1
                size -= 1
            else:
                c.mem = &ma[0]
                c.n_members = _fill_members(&ma[0], N, -1, &members[0])
                ca += _delta(&c)
                ma[e] = 1
                mb[e] = 0
                c.mem = &mb[0]
                c.n_members = _fill_members(&mb[0], N, -1, &members[0])
                cb -= _delta(&c)
                size += 1
            mask ^= (<long long>1) << e
            obj = two * (ca * _ipow(size, ell) + cb * _ipow(N - size, ell)) - base
            if obj < best or (obj == best and mask < best_mask):
                best = obj
                best_mask = mask
                best_ca = ca
                best_cb = cb
    return int(best), int(best_mask), int(best_ca), int(best_cb)


# -- subset-sum searches ------------------------------------------------------------
#
# Every solution tuple is enumerated once and binned by the set of points it
# uses; a subset-sum transform then gives count(A) for every A at once.  Work
# is N^(k-1) + N 2^N against roughly 2^N k N^(k-2) for the Gray-code sweep,
# at the price of a 2^N table, so the dispatchers below only use it while
# that table stays small.

ZETA_MAX_POINTS = 22


cdef struct ZCtx:
    int N
    int k
    const i32* scale
    const i32* add
    const i32* solve
    i64* hist


cdef void _support_rec(ZCtx* c, int depth, int s, i64 mask) noexcept nogil:
    cdef int x
    if depth == c.k - 1:
        x = c.solve[(c.k - 1) * c.N + s]
        c.hist[mask | ((<i64>1) << x)] += 1
        return
    for x in range(c.N):
        _support_rec(c, depth + 1, c.add[s * c.N + c.scale[depth * c.N + x]], mask | ((<i64>1) << x))


def subset_counts(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve):
    """counts[mask] = solution tuples with every coordinate inside mask."""
    cdef int N = add.shape[0]
    cdef ZCtx c
    out = np.zeros((<i64>1) << N, dtype=np.int64)
    cdef i64[::1] h = out
    cdef i64 size = (<i64>1) << N, block, base, j
    cdef int bit
    c.N = N
    c.k = scale.shape[0]
    c.scale = &scale[0, 0]
    c.add = &add[0, 0]
    c.solve = &solve[0, 0]
    c.hist = &h[0]
    with nogil:
        _support_rec(&c, 0, 0, 0)
        for bit in range(N):
            block = (<i64>1) << bit
            base = 0
            while base < size:
                for j in range(base, base + block):
                    h[j + block] += h[j]
                base += 2 * block
    return out


cdef inline int _popcount(i64 x) noexcept nogil:
    cdef int n = 0
    while x:
        x &= x - 1
        n += 1
    return n


def search_sidorenko_zeta(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    cdef int N = add.shape[0]
    cdef int k = scale.shape[0]
    counts_a = subset_counts(scale, add, solve)
    cdef i64[::1] counts = counts_a
    cdef i64 mask, limit = (<i64>1) << N, best_mask = 0, obj, best
    cdef int size
    best = -_ipow(0, k + ell) + N * counts[0] * _ipow(0, ell)
    with nogil:
        for mask in range(1, limit):
            size = _popcount(mask)
            obj = N * counts[mask] * _ipow(size, ell) - _ipow(size, k + ell)
            if obj < best:
                best = obj
                best_mask = mask
    return int(best), int(best_mask), int(counts[best_mask])


def search_common_zeta(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    cdef int N = add.shape[0]
    cdef int K = scale.shape[0] + ell
    counts_a = subset_counts(scale, add, solve)
    cdef i64[::1] counts = counts_a
    cdef i64 mask, comp, full = ((<i64>1) << N) - 1, limit = (<i64>1) << (N - 1)
    cdef i64 best_mask = 0, obj, best = 0
    cdef i64 two = _ipow(2, K - 1), base = _ipow(N, K - 1)
    cdef int size
    with nogil:
        for mask in range(limit):
            comp = full ^ mask
            size = _popcount(mask)
            obj = two * (counts[mask] * _ipow(size, ell) + counts[comp] * _ipow(N - size, ell)) - base
            if mask == 0 or obj < best:
                best = obj
                best_mask = mask
    return int(best), int(best_mask), int(counts[best_mask]), int(counts[full ^ best_mask])


def search_sidorenko(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    """(best_objective, best_mask, best_count) over all subsets; ties to the smallest mask."""
    if add.shape[0] <= ZETA_MAX_POINTS:
        return search_sidorenko_zeta(scale, add, solve, ell)
    return search_sidorenko_gray(scale, add, solve, ell)


def search_common(const i32[:, ::1] scale, const i32[:, ::1] add, const i32[:, ::1] solve, int ell):
    """(best_objective, best_mask, count_colour1, count_colour0), top element in colour 0."""
    if add.shape[0] <= ZETA_MAX_POINTS:
        return search_common_zeta(scale, add, solve, ell)
    return search_common_gray(scale, add, solve, ell)
