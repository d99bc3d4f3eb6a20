"""Compiled inner loops.

All cost arithmetic is on int64 with INF = 2**62 - 1, so adding two clamped
values never overflows; results are clamped back to INF where it matters.
"""
import numba as nb
import numpy as np

INF = (1 << 62) - 1

jit = nb.njit(cache=True, nogil=True)


# ---------------------------------------------------------------------------
# LCE support


@jit
def kasai(sa, rank, codes):
    n = codes.shape[0]
    lcp = np.zeros(n, np.int64)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and codes[i + h] == codes[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


@jit
def sparse_table(arr):
    n = arr.shape[0]
    logs = np.zeros(n + 2, np.int64)
    for i in range(2, n + 2):
        logs[i] = logs[i // 2] + 1
    levels = logs[n] + 1 if n > 0 else 1
    table = np.zeros((levels, max(n, 1)), np.int64)
    for i in range(n):
        table[0, i] = arr[i]
    for lv in range(1, levels):
        half = 1 << (lv - 1)
        for i in range(n - (1 << lv) + 1):
            a = table[lv - 1, i]
            b = table[lv - 1, i + half]
            table[lv, i] = a if a < b else b
    return table, logs


@jit
def lce_query(rank, table, logs, n, i, j):
    if i >= n or j >= n:
        return 0
    if i == j:
        return n - i
    a = rank[i]
    b = rank[j]
    if a > b:
        a, b = b, a
    lo = a + 1
    lv = logs[b - lo + 1]
    x = table[lv, lo]
    y = table[lv, b - (1 << lv) + 1]
    return x if x < y else y


# ---------------------------------------------------------------------------
# Landau-Vishkin furthest reaching diagonals


@jit
def lv_core(codes, xo, xl, yo, yl, rank, table, logs, n, d, L, B, C):
    """Unit-cost distance between codes[xo:xo+xl] and codes[yo:yo+yl] if <= d.

    L[e, k+off] is the furthest row reached on diagonal k with e edits, B the
    row before the final LCE slide, C the move taken (0 keep, 1 sub, 2 del,
    3 ins). Returns the distance or -1.
    """
    target = yl - xl
    if target > d or -target > d:
        return -1
    off = d + 2
    for e in range(d + 1):
        lo = max(-e, -xl)
        hi = min(e, yl)
        for k in range(max(lo - 2, -d - 2), min(hi + 2, d + 2) + 1):
            L[e, k + off] = -1
        for k in range(lo, hi + 1):
            best = -1
            move = 0
            if e == 0:
                best = 0
            else:
                a = L[e - 1, k + off]
                if a >= 0:
                    best = a
                    if a < xl and a + k < yl and a + 1 > best:
                        best = a + 1
                        move = 1
                b = L[e - 1, k + 1 + off]
                if b >= 0 and b < xl and b + 1 > best:
                    best = b + 1
                    move = 2
                c = L[e - 1, k - 1 + off]
                if c >= 0 and c + k - 1 < yl and c > best:
                    best = c
                    move = 3
            if best < 0:
                continue
            B[e, k + off] = best
            C[e, k + off] = move
            room = min(xl - best, yl - best - k)
            # short runs are cheaper to scan than to look up
            ext = 0
            x0 = xo + best
            y0 = yo + best + k
            while ext < room and ext < 8 and codes[x0 + ext] == codes[y0 + ext]:
                ext += 1
            if ext == 8 and ext < room:
                ext = lce_query(rank, table, logs, n, x0, y0)
                if ext > room:
                    ext = room
            L[e, k + off] = best + ext
            if k == target and best + ext == xl:
                return e
    return -1


@jit
def lv_batch(codes, m, starts, ends, yo, d, rank, table, logs, n):
    """Unit distance of codes[0:m] against each chunk codes[yo+s:yo+e] (or -1)."""
    out = np.empty(starts.shape[0], np.int64)
    L = np.empty((d + 1, 2 * d + 5), np.int64)
    B = np.empty((d + 1, 2 * d + 5), np.int64)
    C = np.empty((d + 1, 2 * d + 5), np.int8)
    for c in range(starts.shape[0]):
        out[c] = lv_core(codes, 0, m, yo + starts[c], ends[c] - starts[c], rank, table, logs, n, d, L, B, C)
    return out


# ---------------------------------------------------------------------------
# dynamic programs over the alignment graph


@jit
def dp_last_row(pc, tc, wt, lo, hi, free_start):
    """Last row D[m, 0..n] of the alignment DP restricted to lo <= t - p <= hi.

    With free_start every vertex of row 0 is a source (Sellers); otherwise only
    (0, 0) is. Cells outside the band are INF.
    """
    m = pc.shape[0]
    n = tc.shape[0]
    sigma = wt.shape[0]
    # prof[c, p] = cost of aligning P[p] with character c
    prof = np.empty((sigma, m), np.int64)
    for c in range(sigma):
        for p in range(m):
            prof[c, p] = wt[pc[p], c]
    dl = prof[0]
    col = np.full(m + 1, INF, np.int64)
    out = np.full(n + 1, INF, np.int64)
    if lo <= 0 <= hi:
        col[0] = 0
        for p in range(1, min(m, -lo) + 1):
            col[p] = col[p - 1] + dl[p - 1]
    out[0] = col[m]
    for t in range(n):
        tt = t + 1
        c = tc[t]
        ins = wt[0, c]
        row = prof[c]
        plo = max(tt - hi, 0)
        phi = min(tt - lo, m)
        if plo > phi:
            if plo - 1 <= m:
                col[plo - 1] = INF
            continue
        if plo == 0:
            diag = col[0]
            col[0] = 0 if free_start else col[0] + ins
            up = col[0]
            start = 1
        else:
            diag = col[plo - 1]
            up = INF
            start = plo
        for p in range(start, phi + 1):
            old = col[p]
            v = diag + row[p - 1]
            h = old + ins
            if h < v:
                v = h
            u = up + dl[p - 1]
            if u < v:
                v = u
            col[p] = v
            up = v
            diag = old
        if plo >= 1:
            col[plo - 1] = INF
        if phi == m:
            out[tt] = col[m] if col[m] < INF else INF
    return out


@jit
def dp_table(pc, tc, wt):
    m = pc.shape[0]
    n = tc.shape[0]
    D = np.empty((m + 1, n + 1), np.int64)
    D[0, 0] = 0
    for t in range(n):
        D[0, t + 1] = D[0, t] + wt[0, tc[t]]
    for p in range(m):
        a = pc[p]
        dl = wt[a, 0]
        D[p + 1, 0] = D[p, 0] + dl
        for t in range(n):
            c = tc[t]
            v = D[p, t] + wt[a, c]
            h = D[p + 1, t] + wt[0, c]
            if h < v:
                v = h
            u = D[p, t + 1] + dl
            if u < v:
                v = u
            D[p + 1, t + 1] = v
    return D


@jit
def selfed_dp(xc, cap):
    """Unit-cost DP on AG(X, X) without main-diagonal edges, band |t-p| <= cap+1."""
    n = xc.shape[0]
    w = cap + 1
    D = np.full((n + 1, n + 1), INF, np.int64)
    D[0, 0] = 0
    for p in range(n + 1):
        for t in range(max(0, p - w), min(n, p + w) + 1):
            if p == 0 and t == 0:
                continue
            v = INF
            if p > 0 and D[p - 1, t] + 1 < v:
                v = D[p - 1, t] + 1
            if t > 0 and D[p, t - 1] + 1 < v:
                v = D[p, t - 1] + 1
            if p > 0 and t > 0 and p != t:
                s = D[p - 1, t - 1] + (0 if xc[p - 1] == xc[t - 1] else 1)
                if s < v:
                    v = s
            D[p, t] = v if v < INF else INF
    return D[n, n]


# ---------------------------------------------------------------------------
# SMAWK


@jit
def _entry(A, v, r, c):
    a = A[r, c]
    b = v[c]
    if a >= INF or b >= INF:
        return INF
    s = a + b
    return s if s < INF else INF


@jit
def smawk_mv(A, v):
    """Leftmost row minima of M[r, c] = A[r, c] + v[c] for totally monotone M.

    Iterative form of the classic reduce / recurse-on-odd-rows / interpolate
    scheme. Returns (values, argmins).
    """
    p, q = A.shape
    idx = np.zeros(p, np.int64)
    val = np.full(p, INF, np.int64)
    if p == 0 or q == 0:
        return val, idx
    levels = 1
    t = p
    while t > 0:
        t >>= 1
        levels += 1
    rbuf = np.empty(2 * p + 2, np.int64)
    rst = np.zeros(levels + 1, np.int64)
    rln = np.zeros(levels + 1, np.int64)
    cbuf = np.empty(q + 2 * p + 2, np.int64)
    cst = np.zeros(levels + 1, np.int64)
    cln = np.zeros(levels + 1, np.int64)
    for i in range(p):
        rbuf[i] = i
    for j in range(q):
        cbuf[j] = j
    rln[0] = p
    in_st = 0
    in_ln = q
    cfree = q
    rfree = p
    depth = 0
    while True:
        nr = rln[depth]
        r0 = rst[depth]
        # reduce the candidate columns of this level to at most nr
        top = 0
        s0 = cfree
        for ci in range(in_st, in_st + in_ln):
            c = cbuf[ci]
            while top > 0:
                row = rbuf[r0 + top - 1]
                if _entry(A, v, row, cbuf[s0 + top - 1]) <= _entry(A, v, row, c):
                    break
                top -= 1
            if top < nr:
                cbuf[s0 + top] = c
                top += 1
        cst[depth] = s0
        cln[depth] = top
        cfree = s0 + top
        if nr <= 1:
            break
        # odd rows go one level deeper
        nxt = 0
        for i in range(1, nr, 2):
            rbuf[rfree + nxt] = rbuf[r0 + i]
            nxt += 1
        rst[depth + 1] = rfree
        rln[depth + 1] = nxt
        rfree += nxt
        in_st = s0
        in_ln = top
        depth += 1
    for lev in range(depth, -1, -1):
        nr = rln[lev]
        r0 = rst[lev]
        s0 = cst[lev]
        sl = cln[lev]
        ci = 0
        for i in range(0, nr, 2):
            row = rbuf[r0 + i]
            if i == nr - 1:
                last = cbuf[s0 + sl - 1]
            else:
                last = idx[rbuf[r0 + i + 1]]
            bc = cbuf[s0 + ci]
            best = _entry(A, v, row, bc)
            while cbuf[s0 + ci] != last:
                ci += 1
                c = cbuf[s0 + ci]
                x = _entry(A, v, row, c)
                if x < best:
                    best = x
                    bc = c
            idx[row] = bc
            val[row] = best
    return val, idx


@jit
def smawk_mm(A, B):
    """(min,+) product of Monge A and B, one SMAWK pass per output column."""
    p = A.shape[0]
    r = B.shape[1]
    C = np.empty((p, r), np.int64)
    col = np.empty(B.shape[0], np.int64)
    for j in range(r):
        for i in range(B.shape[0]):
            col[i] = B[i, j]
        vals, _ = smawk_mv(A, col)
        for i in range(p):
            C[i, j] = vals[i]
    return C


@jit
def naive_mm(A, B):
    p, q = A.shape
    r = B.shape[1]
    C = np.full((p, r), INF, np.int64)
    for i in range(p):
        for k in range(q):
            a = A[i, k]
            if a >= INF:
                continue
            for j in range(r):
                b = B[k, j]
                if b >= INF:
                    continue
                s = a + b
                if s < C[i, j]:
                    C[i, j] = s
    return C


# ---------------------------------------------------------------------------
# slice sweep for the band graph


@jit
def sweep(pc, sc, s, wt, back, d, lo, hi, V, src, lead, trail):
    """Carry portal labels from portal ``hi`` back to portal ``lo``.

    ``V[r, q]`` is the label of portal vertex (p_lo(hi) + r, s[hi]) in the
    q-th column. Slice j spans rows [max(0, j-2d), min(m, j+1+2d)] and columns
    [s[j], s[j+1]] with augmented edges. With ``trail`` the bottom-row vertices
    are targets of label 0; with ``lead`` the top-row labels of column 0 are
    min-accumulated into ``src``. Returns the labels at portal ``lo``.
    """
    m = pc.shape[0]
    q = V.shape[1]
    width = 4 * d + 3
    f = np.empty((width, q), np.int64)
    g = np.empty((width, q), np.int64)
    h = np.empty(q, np.int64)
    dl = np.empty(m, np.int64)
    for p in range(m):
        dl[p] = wt[pc[p], 0]
    cur = V
    for j in range(hi - 1, lo - 1, -1):
        R0 = j - 2 * d
        if R0 < 0:
            R0 = 0
        R1 = j + 1 + 2 * d
        if R1 > m:
            R1 = m
        Rr0 = j + 1 - 2 * d
        if Rr0 < 0:
            Rr0 = 0
        Rl1 = j + 2 * d
        if Rl1 > m:
            Rl1 = m
        nr = R1 - R0 + 1
        c0 = s[j]
        c1 = s[j + 1]
        bottom = trail and R1 == m
        top_out = lead and R0 == 0
        offr = Rr0 - R0
        for r in range(nr):
            for x in range(q):
                f[r, x] = INF
        for r in range(cur.shape[0]):
            for x in range(q):
                f[offr + r, x] = cur[r, x]
        if bottom:
            for x in range(q):
                f[nr - 1, x] = 0
        for r in range(nr - 2, -1, -1):
            dd = dl[R0 + r]
            for x in range(q):
                u = f[r + 1, x] + dd
                if u < f[r, x]:
                    f[r, x] = u
        if top_out and f[0, 0] < src[c1]:
            src[c1] = f[0, 0]
        total_ins = 0
        for t in range(c1 - 1, c0 - 1, -1):
            ch = sc[t]
            ins = wt[0, ch]
            total_ins += ins
            for x in range(q):
                v = f[nr - 1, x] + ins
                g[nr - 1, x] = v if v < INF else INF
            if bottom:
                for x in range(q):
                    g[nr - 1, x] = 0
            for r in range(nr - 2, -1, -1):
                pp = R0 + r
                sub = wt[pc[pp], ch]
                dd = dl[pp]
                for x in range(q):
                    v = f[r, x] + ins
                    a = f[r + 1, x] + sub
                    if a < v:
                        v = a
                    b = g[r + 1, x] + dd
                    if b < v:
                        v = b
                    g[r, x] = v if v < INF else INF
            if top_out and g[0, 0] < src[t]:
                src[t] = g[0, 0]
            f, g = g, f
        # going up: every monotone up-right path to (b, c1), b < a, costs the same
        out = np.empty((Rl1 - R0 + 1, q), np.int64)
        for x in range(q):
            h[x] = INF
        for a in range(R0, Rl1 + 1):
            if a > R0:
                b = a - 1
                for x in range(q):
                    hv = h[x]
                    if b >= Rr0:
                        vb = cur[b - Rr0, x]
                        if vb < hv:
                            hv = vb
                    hv = hv + back
                    h[x] = hv if hv < INF else INF
            for x in range(q):
                v = f[a - R0, x]
                u = h[x] + total_ins
                if u < v:
                    v = u
                out[a - R0, x] = v if v < INF else INF
        cur = out
    if hi == lo:
        return V.copy()
    return cur


@jit
def sweep_vec(pc, sc, s, wt, back, d, lo, hi, v, src, lead, trail):
    """Single-column version of :func:`sweep` working on flat arrays."""
    m = pc.shape[0]
    width = 4 * d + 3
    f = np.empty(width, np.int64)
    g = np.empty(width, np.int64)
    cur = np.full(width, INF, np.int64)
    nxt = np.empty(width, np.int64)
    ncur = v.shape[0]
    for r in range(ncur):
        cur[r] = v[r]
    # only rows the band touches between portals lo and hi
    base = max(lo - 2 * d, 0)
    top = min(hi + 1 + 2 * d, m)
    dl = np.empty(top - base, np.int64)
    for p in range(base, top):
        dl[p - base] = wt[pc[p], 0]
    for j in range(hi - 1, lo - 1, -1):
        R0 = max(j - 2 * d, 0)
        R1 = min(j + 1 + 2 * d, m)
        Rr0 = max(j + 1 - 2 * d, 0)
        Rl1 = min(j + 2 * d, m)
        nr = R1 - R0 + 1
        c0 = s[j]
        c1 = s[j + 1]
        bottom = trail and R1 == m
        top_out = lead and R0 == 0
        offr = Rr0 - R0
        for r in range(offr):
            f[r] = INF
        for r in range(ncur):
            f[offr + r] = cur[r]
        if bottom:
            f[nr - 1] = 0
        for r in range(nr - 2, -1, -1):
            u = f[r + 1] + dl[R0 - base + r]
            if u < f[r]:
                f[r] = u
        if top_out and f[0] < src[c1]:
            src[c1] = f[0]
        total_ins = 0
        for t in range(c1 - 1, c0 - 1, -1):
            ch = sc[t]
            ins = wt[0, ch]
            total_ins += ins
            g[nr - 1] = 0 if bottom else f[nr - 1] + ins
            for r in range(nr - 2, -1, -1):
                pp = R0 + r
                x = f[r] + ins
                a = f[r + 1] + wt[pc[pp], ch]
                if a < x:
                    x = a
                b = g[r + 1] + dl[pp - base]
                if b < x:
                    x = b
                g[r] = x
            if top_out and g[0] < src[t]:
                src[t] = g[0]
            f, g = g, f
        hv = INF
        for a in range(R0, Rl1 + 1):
            if a > R0:
                b = a - 1
                if b >= Rr0 and cur[b - Rr0] < hv:
                    hv = cur[b - Rr0]
                hv = hv + back
                if hv > INF:
                    hv = INF
            x = f[a - R0]
            u = hv + total_ins
            if u < x:
                x = u
            nxt[a - R0] = x if x < INF else INF
        ncur = Rl1 - R0 + 1
        cur, nxt = nxt, cur
    out = np.empty(ncur, np.int64)
    for r in range(ncur):
        out[r] = cur[r]
    return out
