"""Array kernels behind the bulk APIs.

Every kernel exists twice: a loop version compiled with numba ``@njit`` and a
pure-numpy version.  The active pair is chosen at import time; set
``KPANCAKE_NO_JIT=1`` (or uninstall numba) to force the numpy path.  Both
variants stay importable by name so tests and the benchmark can compare them.

Array conventions: a listing is a pair of ``(N, n)`` int64 arrays, values
1-based and colours 0-based; flip sequences are 1-D int64 arrays.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional accelerator
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


JIT_ENABLED = HAVE_NUMBA and os.environ.get("KPANCAKE_NO_JIT", "").strip() in ("", "0")


def place_values(n, k):
    """``P_t = k**t * t!`` for t = 0..n, as int64 (caller checks capacity)."""
    out = np.ones(n + 1, dtype=np.int64)
    for t in range(1, n + 1):
        out[t] = out[t - 1] * k * t
    return out


# -- flip sequence -----------------------------------------------------------


def _flipseq_loop(n, k, out):
    # loop-free successor of the flip sequence, driven until the sentinel
    c = np.zeros(n + 3, dtype=np.int64)
    f = np.arange(n + 3, dtype=np.int64)
    pos = 0
    while True:
        if k == 1:
            x = f[2]
            f[2] = 2
        else:
            x = f[1]
            f[1] = 1
        c[x] += 1
        if c[x] == k * x - 1:
            c[x] = 0
            f[x] = f[x + 1]
            f[x + 1] = x + 1
        if x > n:
            return pos
        out[pos] = x
        pos += 1


def flipseq_numpy(n, k, out):
    """Mixed-radix form: entry i (1-based) is ``1 + max{t : P_t divides i}``."""
    size = out.shape[0]
    idx = np.arange(1, size + 1, dtype=np.int64)
    res = np.ones(size, dtype=np.int64)
    pv = place_values(n, k)
    for t in range(1, n):
        res[idx % pv[t] == 0] = t + 1
    out[:] = res
    return size


# -- listings ----------------------------------------------------------------


def _listing_from_flips_loop(v0, c0, k, flips, out_v, out_c):
    n = v0.shape[0]
    for p in range(n):
        out_v[0, p] = v0[p]
        out_c[0, p] = c0[p]
    for r in range(flips.shape[0]):
        j = flips[r]
        for p in range(j):
            out_v[r + 1, p] = out_v[r, j - 1 - p]
            out_c[r + 1, p] = (out_c[r, j - 1 - p] + 1) % k
        for p in range(j, n):
            out_v[r + 1, p] = out_v[r, p]
            out_c[r + 1, p] = out_c[r, p]


def listing_from_flips_numpy(v0, c0, k, flips, out_v, out_c):
    out_v[0] = v0
    out_c[0] = c0
    for r in range(flips.shape[0]):
        j = flips[r]
        out_v[r + 1] = out_v[r]
        out_c[r + 1] = out_c[r]
        out_v[r + 1, :j] = out_v[r, j - 1::-1]
        out_c[r + 1, :j] = (out_c[r, j - 1::-1] + 1) % k


def _successor_one(v, c, k, n):
    incr = 0
    for j in range(1, n):
        a = v[j - 1]
        b = v[j]
        if a < b:
            incr += 1
        if incr == 2 or (incr == 1 and b < v[0]):
            return j
        if k > 1 and a < b and (c[j] - c[j - 1] + k) % k != 1:
            return j
        if k > 1 and a > b and c[j - 1] != c[j]:
            return j
    return n


def _successor_rows_loop(vals, cols, k):
    rows, n = vals.shape
    out = np.empty(rows, dtype=np.int64)
    for r in range(rows):
        out[r] = _successor_one(vals[r], cols[r], k, n)
    return out


def successor_rows_numpy(vals, cols, k):
    rows, n = vals.shape
    if n == 1:
        return np.ones(rows, dtype=np.int64)
    a, b = vals[:, :-1], vals[:, 1:]
    up = a < b
    incr = np.cumsum(up, axis=1)
    stop = (incr == 2) | ((incr == 1) & (b < vals[:, :1]))
    if k > 1:
        step = (cols[:, 1:] - cols[:, :-1]) % k
        stop |= up & (step != 1)
        stop |= (~up) & (step != 0)
    hit = stop.any(axis=1)
    first = np.argmax(stop, axis=1) + 1
    return np.where(hit, first, n).astype(np.int64)


def _listing_by_successor_loop(k, out_v, out_c):
    rows, n = out_v.shape
    for p in range(n):
        out_v[0, p] = p + 1
        out_c[0, p] = 0
    for r in range(rows - 1):
        j = _successor_one(out_v[r], out_c[r], k, n)
        for p in range(j):
            out_v[r + 1, p] = out_v[r, j - 1 - p]
            out_c[r + 1, p] = (out_c[r, j - 1 - p] + 1) % k
        for p in range(j, n):
            out_v[r + 1, p] = out_v[r, p]
            out_c[r + 1, p] = out_c[r, p]


def listing_by_successor_numpy(k, out_v, out_c):
    rows, n = out_v.shape
    out_v[0] = np.arange(1, n + 1)
    out_c[0] = 0
    for r in range(rows - 1):
        j = int(successor_rows_numpy(out_v[r:r + 1], out_c[r:r + 1], k)[0])
        out_v[r + 1] = out_v[r]
        out_c[r + 1] = out_c[r]
        out_v[r + 1, :j] = out_v[r, j - 1::-1]
        out_c[r + 1, :j] = (out_c[r, j - 1::-1] + 1) % k


# -- transitions -------------------------------------------------------------


def _transition_flips_loop(pv, pc, qv, qc, k):
    # flip length taking row r of p to row r of q, or 0 if no single flip does
    rows, n = pv.shape
    out = np.zeros(rows, dtype=np.int64)
    for r in range(rows):
        d = 0
        for p in range(n - 1, -1, -1):
            if pv[r, p] != qv[r, p] or pc[r, p] != qc[r, p]:
                d = p + 1
                break
        if d == 0:
            # only the k=1 length-1 flip fixes a permutation
            if k == 1:
                out[r] = 1
            continue
        ok = True
        for p in range(d):
            if qv[r, p] != pv[r, d - 1 - p] or qc[r, p] != (pc[r, d - 1 - p] + 1) % k:
                ok = False
                break
        if ok:
            out[r] = d
    return out


def transition_flips_numpy(pv, pc, qv, qc, k):
    rows, n = pv.shape
    diff = (pv != qv) | (pc != qc)
    anydiff = diff.any(axis=1)
    d = np.where(anydiff, n - np.argmax(diff[:, ::-1], axis=1), 0)
    pos = np.arange(n)[None, :]
    src = np.where(pos < d[:, None], d[:, None] - 1 - pos, pos)
    ev = np.take_along_axis(pv, src, axis=1)
    ec = np.take_along_axis(pc, src, axis=1)
    ec = np.where(pos < d[:, None], (ec + 1) % k, ec)
    ok = ((ev == qv) & (ec == qc)).all(axis=1)
    out = np.where(ok & anydiff, d, 0)
    if k == 1:
        out = np.where(anydiff, out, 1)
    return out.astype(np.int64)


# -- rank / unrank -------------------------------------------------------------


def _rank_rows_loop(vals, cols, k, pv):
    rows, n = vals.shape
    out = np.empty(rows, dtype=np.int64)
    a = np.empty(n, dtype=np.int64)
    col = np.empty(n, dtype=np.int64)
    for r in range(rows):
        for p in range(n):
            a[p] = vals[r, p]
            col[p] = cols[r, p]
        total = 0
        for t in range(n, 1, -1):
            at = a[t - 1]
            ct = col[t - 1]
            for j in range(t - 1):
                if a[j] < at:
                    col[j] = (col[j] - ct + k) % k
                else:
                    col[j] = (col[j] - ct - 1 + 2 * k) % k
                a[j] = (a[j] - at + t) % t
            total += ((ct + 1) * t - at) * pv[t - 1]
        out[r] = total + col[0] + 1
    return out


def rank_rows_numpy(vals, cols, k, pv):
    a = vals.astype(np.int64, copy=True)
    col = cols.astype(np.int64, copy=True)
    n = a.shape[1]
    total = np.zeros(a.shape[0], dtype=np.int64)
    for t in range(n, 1, -1):
        at = a[:, t - 1:t]
        ct = col[:, t - 1:t]
        head_a = a[:, :t - 1]
        below = head_a < at
        col[:, :t - 1] = np.where(below, (col[:, :t - 1] - ct) % k, (col[:, :t - 1] - ct - 1) % k)
        a[:, :t - 1] = (head_a - at + t) % t
        total += ((ct[:, 0] + 1) * t - at[:, 0]) * pv[t - 1]
    return total + col[:, 0] + 1


def _unrank_rows_loop(ranks, n, k, pv, out_v, out_c):
    for r in range(ranks.shape[0]):
        rank = ranks[r]
        xs = np.empty(n + 1, dtype=np.int64)
        for t in range(n, 1, -1):
            x = (rank - 1) // pv[t - 1]
            rank -= x * pv[t - 1]
            xs[t] = x
        out_v[r, 0] = 1
        out_c[r, 0] = rank - 1
        for t in range(2, n + 1):
            x = xs[t]
            vt = t - (x % t)
            ctl = x // t
            for j in range(t - 1):
                nv = 1 + (out_v[r, j] + vt - 1) % t
                out_v[r, j] = nv
                if nv < vt:
                    out_c[r, j] = (out_c[r, j] + ctl) % k
                else:
                    out_c[r, j] = (out_c[r, j] + ctl + 1) % k
            out_v[r, t - 1] = vt
            out_c[r, t - 1] = ctl


def unrank_rows_numpy(ranks, n, k, pv, out_v, out_c):
    rank = ranks.astype(np.int64, copy=True)
    xs = {}
    for t in range(n, 1, -1):
        x = (rank - 1) // pv[t - 1]
        rank = rank - x * pv[t - 1]
        xs[t] = x
    out_v[:, 0] = 1
    out_c[:, 0] = rank - 1
    for t in range(2, n + 1):
        x = xs[t]
        vt = (t - x % t)[:, None]
        ctl = (x // t)[:, None]
        nv = 1 + (out_v[:, :t - 1] + vt - 1) % t
        out_v[:, :t - 1] = nv
        out_c[:, :t - 1] = np.where(nv < vt, (out_c[:, :t - 1] + ctl) % k, (out_c[:, :t - 1] + ctl + 1) % k)
        out_v[:, t - 1] = vt[:, 0]
        out_c[:, t - 1] = ctl[:, 0]


# -- dispatch ----------------------------------------------------------------

flipseq_loop = _flipseq_loop
listing_from_flips_loop = _listing_from_flips_loop
successor_rows_loop = _successor_rows_loop
listing_by_successor_loop = _listing_by_successor_loop
transition_flips_loop = _transition_flips_loop
rank_rows_loop = _rank_rows_loop
unrank_rows_loop = _unrank_rows_loop

if HAVE_NUMBA:
    _successor_one_jit = njit(cache=True)(_successor_one)

    flipseq_numba = njit(cache=True)(_flipseq_loop)
    listing_from_flips_numba = njit(cache=True)(_listing_from_flips_loop)
    transition_flips_numba = njit(cache=True)(_transition_flips_loop)
    rank_rows_numba = njit(cache=True)(_rank_rows_loop)
    unrank_rows_numba = njit(cache=True)(_unrank_rows_loop)

    @njit(cache=True)
    def successor_rows_numba(vals, cols, k):
        rows, n = vals.shape
        out = np.empty(rows, dtype=np.int64)
        for r in range(rows):
            out[r] = _successor_one_jit(vals[r], cols[r], k, n)
        return out

    @njit(cache=True)
    def listing_by_successor_numba(k, out_v, out_c):
        rows, n = out_v.shape
        for p in range(n):
            out_v[0, p] = p + 1
            out_c[0, p] = 0
        for r in range(rows - 1):
            j = _successor_one_jit(out_v[r], out_c[r], k, n)
            for p in range(j):
                out_v[r + 1, p] = out_v[r, j - 1 - p]
                out_c[r + 1, p] = (out_c[r, j - 1 - p] + 1) % k
            for p in range(j, n):
                out_v[r + 1, p] = out_v[r, p]
                out_c[r + 1, p] = out_c[r, p]


BACKENDS = {
    "numpy": {
        "flipseq": flipseq_numpy,
        "listing_from_flips": listing_from_flips_numpy,
        "successor_rows": successor_rows_numpy,
        "listing_by_successor": listing_by_successor_numpy,
        "transition_flips": transition_flips_numpy,
        "rank_rows": rank_rows_numpy,
        "unrank_rows": unrank_rows_numpy,
    },
}
if HAVE_NUMBA:
    BACKENDS["numba"] = {
        "flipseq": flipseq_numba,
        "listing_from_flips": listing_from_flips_numba,
        "successor_rows": successor_rows_numba,
        "listing_by_successor": listing_by_successor_numba,
        "transition_flips": transition_flips_numba,
        "rank_rows": rank_rows_numba,
        "unrank_rows": unrank_rows_numba,
    }

BACKEND = "numba" if JIT_ENABLED else "numpy"
_active = BACKENDS[BACKEND]

flipseq = _active["flipseq"]
listing_from_flips = _active["listing_from_flips"]
successor_rows = _active["successor_rows"]
listing_by_successor = _active["listing_by_successor"]
transition_flips = _active["transition_flips"]
rank_rows = _active["rank_rows"]
unrank_rows = _active["unrank_rows"]
