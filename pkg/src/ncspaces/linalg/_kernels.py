"""Row-reduction kernels over GF(p).

Two interchangeable implementations of in-place reduced row echelon form for
``int64`` arrays with entries in ``[0, p)``: a numba-compiled scalar loop and
a vectorised numpy version.  The numba path is used when numba imports and
``NCSPACES_DISABLE_NUMBA`` is unset (or ``0``); set it to ``1`` to force the
pure-numpy path.
"""

import os

import numpy as np

_DISABLED = os.environ.get("NCSPACES_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return decorator


USE_NUMBA = NUMBA_AVAILABLE and not _DISABLED

# entries are multiplied pairwise and summed over up to ~10^4 terms in int64
MAX_PRIME = 1 << 25


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


@njit(cache=True)
def rref_modp_numba(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


def rref_modp_numpy(a, p):
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a[:, c:] = (a[:, c:] - np.outer(col, a[r, c:])) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


@njit(cache=True)
def matmul_modp_numba(a, b, p):
    n, k = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), np.int64)
    for i in range(n):
        for t in range(k):
            x = a[i, t]
            if x != 0:
                for j in range(m):
                    out[i, j] += x * b[t, j]
        for j in range(m):
            out[i, j] %= p
    return out


def matmul_modp_numpy(a, b, p):
    return (a @ b) % p


def rref_modp(a, p):
    """Reduce ``a`` (int64, entries in [0, p)) in place; return (rank, pivots)."""
    if USE_NUMBA:
        return rref_modp_numba(a, p)
    return rref_modp_numpy(a, p)


def matmul_modp(a, b, p):
    if USE_NUMBA and a.size and b.size:
        return matmul_modp_numba(np.ascontiguousarray(a), np.ascontiguousarray(b), p)
    return matmul_modp_numpy(a, b, p)
