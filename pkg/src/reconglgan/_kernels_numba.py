"""Numba-jitted implementations of the hot kernels.

Default backend when numba imports cleanly.  Loops are written with
disjoint output writes only, so ``parallel=True`` stays deterministic.
"""

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def im2col(x, k, pad):
    C, H, W = x.shape
    Hp, Wp = H + 2 * pad, W + 2 * pad
    Ho, Wo = Hp - k + 1, Wp - k + 1
    out = np.zeros((Ho * Wo, C * k * k), dtype=x.dtype)
    for i in prange(Ho):
        for j in range(Wo):
            row = i * Wo + j
            col = 0
            for c in range(C):
                for di in range(k):
                    src_i = i + di - pad
                    inside_i = 0 <= src_i < H
                    for dj in range(k):
                        src_j = j + dj - pad
                        if inside_i and 0 <= src_j < W:
                            out[row, col] = x[c, src_i, src_j]
                        col += 1
    return out


@njit(cache=True, parallel=True)
def col2im(cols, C, H, W, k, pad):
    Hp, Wp = H + 2 * pad, W + 2 * pad
    Ho, Wo = Hp - k + 1, Wp - k + 1
    g = np.zeros((C, H, W), dtype=cols.dtype)
    for c in prange(C):
        for i in range(Ho):
            for j in range(Wo):
                row = i * Wo + j
                base = c * k * k
                for di in range(k):
                    src_i = i + di - pad
                    if src_i < 0 or src_i >= H:
                        continue
                    for dj in range(k):
                        src_j = j + dj - pad
                        if 0 <= src_j < W:
                            g[c, src_i, src_j] += cols[row, base + di * k + dj]
    return g


@njit(cache=True, parallel=True)
def avgpool2_forward(x):
    B, C, H, W = x.shape
    Ho, Wo = H // 2, W // 2
    out = np.zeros((B, C, Ho, Wo), dtype=x.dtype)
    for b in prange(B):
        for c in range(C):
            for i in range(Ho):
                for j in range(Wo):
                    s = (x[b, c, 2 * i, 2 * j] + x[b, c, 2 * i, 2 * j + 1]
                         + x[b, c, 2 * i + 1, 2 * j] + x[b, c, 2 * i + 1, 2 * j + 1])
                    out[b, c, i, j] = s * 0.25
    return out


@njit(cache=True, parallel=True)
def avgpool2_backward(gy, H, W):
    B, C, Ho, Wo = gy.shape
    gx = np.zeros((B, C, H, W), dtype=gy.dtype)
    for b in prange(B):
        for c in range(C):
            for i in range(Ho):
                for j in range(Wo):
                    g = gy[b, c, i, j] * 0.25
                    gx[b, c, 2 * i, 2 * j] = g
                    gx[b, c, 2 * i, 2 * j + 1] = g
                    gx[b, c, 2 * i + 1, 2 * j] = g
                    gx[b, c, 2 * i + 1, 2 * j + 1] = g
    return gx


@njit(cache=True, parallel=True)
def maxpool2_forward(x):
    B, C, H, W = x.shape
    Ho, Wo = H // 2, W // 2
    out = np.zeros((B, C, Ho, Wo), dtype=x.dtype)
    idx = np.zeros((B, C, Ho, Wo), dtype=np.uint8)
    for b in prange(B):
        for c in range(C):
            for i in range(Ho):
                for j in range(Wo):
                    best = x[b, c, 2 * i, 2 * j]
                    arg = np.uint8(0)
                    for dy in range(2):
                        for dx in range(2):
                            v = x[b, c, 2 * i + dy, 2 * j + dx]
                            if v > best:
                                best = v
                                arg = np.uint8(dy * 2 + dx)
                    out[b, c, i, j] = best
                    idx[b, c, i, j] = arg
    return out, idx


@njit(cache=True, parallel=True)
def maxpool2_backward(gy, idx, H, W):
    B, C, Ho, Wo = gy.shape
    gx = np.zeros((B, C, H, W), dtype=gy.dtype)
    for b in prange(B):
        for c in range(C):
            for i in range(Ho):
                for j in range(Wo):
                    a = idx[b, c, i, j]
                    gx[b, c, 2 * i + a // 2, 2 * j + a % 2] = gy[b, c, i, j]
    return gx


@njit(cache=True, parallel=True)
def sep_corr_valid(x, w):
    K = w.shape[0]
    H, W = x.shape
    Ho, Wo = H - K + 1, W - K + 1
    tmp = np.zeros((Ho, W), dtype=x.dtype)
    for i in prange(Ho):
        for j in range(W):
            acc = 0.0
            for t in range(K):
                acc += w[t] * x[i + t, j]
            tmp[i, j] = acc
    out = np.zeros((Ho, Wo), dtype=x.dtype)
    for i in prange(Ho):
        for j in range(Wo):
            acc = 0.0
            for t in range(K):
                acc += w[t] * tmp[i, j + t]
            out[i, j] = acc
    return out


@njit(cache=True)
def directed_hausdorff_sq(a, b):
    worst = 0.0
    for i in range(a.shape[0]):
        best = 1.0e30
        for j in range(b.shape[0]):
            dr = a[i, 0] - b[j, 0]
            dc = a[i, 1] - b[j, 1]
            d2 = float(dr * dr + dc * dc)
            if d2 < best:
                best = d2
                if best == 0.0:
                    break
        if best > worst:
            worst = best
    return worst
