"""JIT-compiled core of the indexed incremental solver.

Slots of the common window are visited once in increasing ``(h_t, t)`` order and
each is accepted iff inserting it keeps the current slot set feasible for the
next job in energy order. Two conditions decide that:

* ``Z(s) >= P[c+1]``, where ``Z(s)`` is the harvest before ``s`` minus the harvest
  forfeited by used slots before ``s``, ``c`` is the number of used slots before
  ``s`` and ``P`` holds prefix sums of the sorted energies;
* ``s > B``, where ``B`` is the rightmost used slot whose slack
  ``Z(u) - P[k(u)+1]`` is below the current harvest level. Inserting ``s``
  before such a slot would starve the job there.

The slack of used slots is kept in a lazy segment tree. Suffix insertions shift
every later slack by ``-h_s`` and their rank by one; since the rank shift changes
each leaf by a different energy, internal nodes store a lower bound that is
tightened on descent. ``B`` only moves right, and used slots at or left of ``B``
never matter again, so they are removed from the tree.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _apply(lb, kmax, cnt, tz, tk, P, node, dz, dk):
    if cnt[node] > 0:
        k = kmax[node]
        lb[node] += dz - (P[k + dk + 1] - P[k + 1])
        kmax[node] = k + dk
    tz[node] += dz
    tk[node] += dk


@njit(cache=True)
def _push(lb, kmax, cnt, tz, tk, P, node):
    if tz[node] != 0 or tk[node] != 0:
        _apply(lb, kmax, cnt, tz, tk, P, 2 * node, tz[node], tk[node])
        _apply(lb, kmax, cnt, tz, tk, P, 2 * node + 1, tz[node], tk[node])
        tz[node] = 0
        tk[node] = 0


@njit(cache=True)
def _pull(lb, kmax, cnt, node):
    a = 2 * node
    b = a + 1
    cnt[node] = cnt[a] + cnt[b]
    if cnt[a] > 0 and cnt[b] > 0:
        lb[node] = min(lb[a], lb[b])
        kmax[node] = max(kmax[a], kmax[b])
    elif cnt[a] > 0:
        lb[node] = lb[a]
        kmax[node] = kmax[a]
    elif cnt[b] > 0:
        lb[node] = lb[b]
        kmax[node] = kmax[b]


@njit(cache=True)
def _rightmost_below(lb, kmax, cnt, tz, tk, P, size, level, stk):
    """Rightmost live leaf whose slack is below ``level``, or -1."""
    found = -1
    sp = 0
    stk[0, 0] = 1
    stk[0, 1] = 0
    stk[0, 2] = size - 1
    stk[0, 3] = 0
    while sp >= 0:
        node = stk[sp, 0]
        l = stk[sp, 1]
        r = stk[sp, 2]
        st = stk[sp, 3]
        if st == 0:
            if cnt[node] == 0 or lb[node] >= level or found >= 0:
                sp -= 1
                continue
            if l == r:
                found = l
                sp -= 1
                continue
            _push(lb, kmax, cnt, tz, tk, P, node)
            stk[sp, 3] = 1
            mid = (l + r) // 2
            sp += 1
            stk[sp, 0] = 2 * node + 1
            stk[sp, 1] = mid + 1
            stk[sp, 2] = r
            stk[sp, 3] = 0
        elif st == 1:
            stk[sp, 3] = 2
            mid = (l + r) // 2
            sp += 1
            stk[sp, 0] = 2 * node
            stk[sp, 1] = l
            stk[sp, 2] = mid
            stk[sp, 3] = 0
        else:
            # children were only tightened, so pulling keeps the bound valid
            _pull(lb, kmax, cnt, node)
            sp -= 1
    return found


@njit(cache=True)
def _range_update(lb, kmax, cnt, tz, tk, P, size, ql, qr, kill, dz, stk):
    """Either drop all leaves in ``[ql, qr]`` or shift them by ``(dz, +1)``."""
    sp = 0
    stk[0, 0] = 1
    stk[0, 1] = 0
    stk[0, 2] = size - 1
    stk[0, 3] = 0
    while sp >= 0:
        node = stk[sp, 0]
        l = stk[sp, 1]
        r = stk[sp, 2]
        st = stk[sp, 3]
        if st == 0:
            if r < ql or l > qr or (kill and cnt[node] == 0):
                sp -= 1
                continue
            if ql <= l and r <= qr:
                if kill:
                    cnt[node] = 0
                else:
                    _apply(lb, kmax, cnt, tz, tk, P, node, dz, 1)
                sp -= 1
                continue
            _push(lb, kmax, cnt, tz, tk, P, node)
            stk[sp, 3] = 1
            mid = (l + r) // 2
            sp += 1
            stk[sp, 0] = 2 * node
            stk[sp, 1] = l
            stk[sp, 2] = mid
            stk[sp, 3] = 0
        elif st == 1:
            stk[sp, 3] = 2
            mid = (l + r) // 2
            sp += 1
            stk[sp, 0] = 2 * node + 1
            stk[sp, 1] = mid + 1
            stk[sp, 2] = r
            stk[sp, 3] = 0
        else:
            _pull(lb, kmax, cnt, node)
            sp -= 1


@njit(cache=True)
def _activate(lb, kmax, cnt, tz, tk, P, size, s, k, slack, path):
    node = 1
    l = 0
    r = size - 1
    depth = 0
    while l != r:
        _push(lb, kmax, cnt, tz, tk, P, node)
        path[depth] = node
        depth += 1
        mid = (l + r) // 2
        if s <= mid:
            node = 2 * node
            r = mid
        else:
            node = 2 * node + 1
            l = mid + 1
    cnt[node] = 1
    kmax[node] = k
    lb[node] = slack
    tz[node] = 0
    tk[node] = 0
    while depth > 0:
        depth -= 1
        _pull(lb, kmax, cnt, path[depth])


@njit(cache=True)
def _advance_barrier(lb, kmax, cnt, tz, tk, P, size, level, B, stk):
    found = _rightmost_below(lb, kmax, cnt, tz, tk, P, size, level, stk)
    if found > B:
        _range_update(lb, kmax, cnt, tz, tk, P, size, B + 1, found, True, 0, stk)
        return found
    return B


@njit(cache=True)
def incremental_slots(h, H, P, order, n, T, out):
    """Fill ``out`` with accepted slots in insertion order; return how many.

    ``h`` and ``H`` are 1-indexed (index 0 unused / zero), ``P`` has length
    ``n + 2`` with ``P[n+1] = P[n]``, ``order`` lists the window slots sorted by
    ``(h_t, t)``.
    """
    size = 1
    while size < T + 2:
        size *= 2
    lb = np.zeros(2 * size, dtype=np.int64)
    kmax = np.zeros(2 * size, dtype=np.int64)
    cnt = np.zeros(2 * size, dtype=np.int64)
    tz = np.zeros(2 * size, dtype=np.int64)
    tk = np.zeros(2 * size, dtype=np.int64)
    fen_cnt = np.zeros(T + 1, dtype=np.int64)
    fen_h = np.zeros(T + 1, dtype=np.int64)
    stk = np.zeros((128, 4), dtype=np.int64)
    path = np.zeros(128, dtype=np.int64)

    B = 0
    used = 0
    level = 0
    for idx in range(order.shape[0]):
        if used == n:
            break
        s = order[idx]
        if idx == 0 or h[s] != level:
            level = h[s]
            B = _advance_barrier(lb, kmax, cnt, tz, tk, P, size, level, B, stk)
        if s <= B:
            continue
        c = 0
        forfeited = 0
        i = s - 1
        while i > 0:
            c += fen_cnt[i]
            forfeited += fen_h[i]
            i -= i & (-i)
        z = H[s - 1] - forfeited
        if z < P[c + 1]:
            continue
        i = s
        while i <= T:
            fen_cnt[i] += 1
            fen_h[i] += h[s]
            i += i & (-i)
        _range_update(lb, kmax, cnt, tz, tk, P, size, s + 1, size - 1, False, -h[s], stk)
        _activate(lb, kmax, cnt, tz, tk, P, size, s, c + 1, z - P[c + 2], path)
        out[used] = s
        used += 1
        B = _advance_barrier(lb, kmax, cnt, tz, tk, P, size, level, B, stk)
    return used
