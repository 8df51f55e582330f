# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled integer elimination kernels.

Same contracts and same reduction strategy as `upic._kernels_py` (the
pure-Python twin).  Entries stay Python ints (arbitrary precision is
non-negotiable); the speedup comes from typed loop counters and direct
list indexing.
"""


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


cdef list _identity(Py_ssize_t n):
    cdef Py_ssize_t i
    cdef list rows = [[0] * n for _ in range(n)]
    for i in range(n):
        (<list>rows[i])[i] = 1
    return rows


def matmul(a, b):
    """Exact product of row-major integer matrices."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t k = len(b)
    cdef Py_ssize_t n = len(b[0]) if k else 0
    cdef Py_ssize_t i, j, t
    cdef list out = [], row, arow, bcol
    cdef list bt = [list(col) for col in zip(*b)] if (k and n) else []
    for i in range(m):
        arow = a[i]
        row = [0] * n
        for j in range(n):
            acc = 0
            bcol = <list>bt[j]
            for t in range(k):
                acc += (<object>arow[t]) * (<object>bcol[t])
            row[j] = acc
        out.append(row)
    return out


cdef tuple _find_pivot(list d, Py_ssize_t m, Py_ssize_t n, Py_ssize_t t):
    cdef Py_ssize_t i, j, bi = -1, bj = -1
    cdef list row
    best = None
    for i in range(t, m):
        row = <list>d[i]
        for j in range(t, n):
            v = row[j]
            if v:
                av = -v if v < 0 else v
                if best is None or av < best:
                    best, bi, bj = av, i, j
                    if av == 1:
                        return (bi, bj)
    if best is None:
        return None
    return (bi, bj)


def snf(a, Py_ssize_t m, Py_ssize_t n, bint want_transforms):
    """Smith normal form; see the pure twin for the full contract."""
    cdef list d = [list(row) for row in a]
    cdef list u = _identity(m) if want_transforms else None
    cdef list v = _identity(n) if want_transforms else None
    cdef Py_ssize_t t, i, j, jj, pi, pj, offender
    cdef list dr, pr, ur, upr, row
    cdef bint dirty

    for t in range(min(m, n)):
        while True:
            pos = _find_pivot(d, m, n, t)
            if pos is None:
                break
            pi = pos[0]
            pj = pos[1]
            if pi != t:
                d[t], d[pi] = d[pi], d[t]
                if u is not None:
                    u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for i in range(m):
                    row = <list>d[i]
                    row[t], row[pj] = row[pj], row[t]
                if v is not None:
                    for i in range(n):
                        row = <list>v[i]
                        row[t], row[pj] = row[pj], row[t]
            pr = <list>d[t]
            if pr[t] < 0:
                for jj in range(t, n):
                    pr[jj] = -pr[jj]
                if u is not None:
                    upr = <list>u[t]
                    for jj in range(m):
                        upr[jj] = -upr[jj]
            p = pr[t]

            dirty = False
            for i in range(t + 1, m):
                dr = <list>d[i]
                b = dr[t]
                if b:
                    q = b // p
                    if q:
                        for jj in range(t, n):
                            dr[jj] = dr[jj] - q * pr[jj]
                        if u is not None:
                            ur = <list>u[i]
                            upr = <list>u[t]
                            for jj in range(m):
                                ur[jj] = ur[jj] - q * upr[jj]
                    if dr[t]:
                        dirty = True
            for j in range(t + 1, n):
                b = pr[j]
                if b:
                    q = b // p
                    if q:
                        for i in range(m):
                            row = <list>d[i]
                            row[j] = row[j] - q * row[t]
                        if v is not None:
                            for i in range(n):
                                row = <list>v[i]
                                row[j] = row[j] - q * row[t]
                    if pr[j]:
                        dirty = True
            if dirty:
                continue

            offender = -1
            for i in range(t + 1, m):
                dr = <list>d[i]
                for j in range(t + 1, n):
                    if dr[j] % p:
                        offender = i
                        break
                if offender != -1:
                    break
            if offender == -1:
                break
            dr = <list>d[offender]
            for jj in range(t, n):
                pr[jj] = pr[jj] + dr[jj]
            if u is not None:
                ur = <list>u[offender]
                upr = <list>u[t]
                for jj in range(m):
                    upr[jj] = upr[jj] + ur[jj]

    return d, u, v


def hnf_cols(a, Py_ssize_t m, Py_ssize_t n):
    """Column Hermite form; see the pure twin for the full contract."""
    cdef list h = [list(row) for row in a]
    cdef list v = _identity(n)
    cdef list pivots = []
    cdef Py_ssize_t c = 0, r, i, j, bj
    cdef list hr, row
    cdef bint placed, clean
    for r in range(m):
        if c >= n:
            break
        hr = <list>h[r]
        placed = False
        while True:
            best = None
            bj = -1
            for j in range(c, n):
                x = hr[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best:
                        best, bj = ax, j
                        if ax == 1:
                            break
            if best is None:
                break
            placed = True
            if bj != c:
                for i in range(m):
                    row = <list>h[i]
                    row[c], row[bj] = row[bj], row[c]
                for i in range(n):
                    row = <list>v[i]
                    row[c], row[bj] = row[bj], row[c]
            if hr[c] < 0:
                for i in range(m):
                    row = <list>h[i]
                    row[c] = -row[c]
                for i in range(n):
                    row = <list>v[i]
                    row[c] = -row[c]
            p = hr[c]
            clean = True
            for j in range(c + 1, n):
                b = hr[j]
                if b:
                    q = b // p
                    if q:
                        for i in range(m):
                            row = <list>h[i]
                            row[j] = row[j] - q * row[c]
                        for i in range(n):
                            row = <list>v[i]
                            row[j] = row[j] - q * row[c]
                    if hr[j]:
                        clean = False
            if clean:
                break
        if not placed:
            continue
        p = hr[c]
        for j in range(c):
            q = hr[j] // p
            if q:
                for i in range(m):
                    row = <list>h[i]
                    row[j] = row[j] - q * row[c]
                for i in range(n):
                    row = <list>v[i]
                    row[j] = row[j] - q * row[c]
        pivots.append((r, c))
        c += 1
    return h, v, pivots
