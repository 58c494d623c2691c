"""Pure-numpy implementations of the hot kernels.

Fallback path used when numba is unavailable or when
``RECONGLGAN_BACKEND=numpy`` is set.  Signatures match
``_kernels_numba`` exactly; see ``backend`` for dispatch.
"""

import numpy as np
from numpy.lib.stride_tricks import as_strided


def im2col(x, k, pad):
    """Patch matrix of a (C, H, W) array for a k x k stride-1 convolution.

    Returns (Ho*Wo, C*k*k) with Ho = H + 2*pad - k + 1.
    """
    C, H, W = x.shape
    if pad > 0:
        x = np.pad(x, ((0, 0), (pad, pad), (pad, pad)))
    Hp, Wp = x.shape[1], x.shape[2]
    Ho, Wo = Hp - k + 1, Wp - k + 1
    sc, sh, sw = x.strides
    win = as_strided(x, (Ho, Wo, C, k, k), (sh, sw, sc, sh, sw))
    return win.reshape(Ho * Wo, C * k * k)


def col2im(cols, C, H, W, k, pad):
    """Adjoint of im2col: scatter-add patch gradients back to (C, H, W)."""
    Hp, Wp = H + 2 * pad, W + 2 * pad
    Ho, Wo = Hp - k + 1, Wp - k + 1
    g = np.zeros((C, Hp, Wp), dtype=cols.dtype)
    cols = cols.reshape(Ho, Wo, C, k, k)
    for di in range(k):
        for dj in range(k):
            g[:, di:di + Ho, dj:dj + Wo] += cols[:, :, :, di, dj].transpose(2, 0, 1)
    if pad > 0:
        g = g[:, pad:pad + H, pad:pad + W]
    return np.ascontiguousarray(g)


def avgpool2_forward(x):
    """2x2 stride-2 average pooling over (B, C, H, W); trailing odd row/col dropped."""
    B, C, H, W = x.shape
    Ho, Wo = H // 2, W // 2
    v = x[:, :, :2 * Ho, :2 * Wo].reshape(B, C, Ho, 2, Wo, 2)
    return v.mean(axis=(3, 5))


def avgpool2_backward(gy, H, W):
    """Gradient of avgpool2_forward w.r.t. its input of spatial size (H, W)."""
    B, C, Ho, Wo = gy.shape
    gx = np.zeros((B, C, H, W), dtype=gy.dtype)
    g = np.repeat(np.repeat(gy, 2, axis=2), 2, axis=3) * gy.dtype.type(0.25)
    gx[:, :, :2 * Ho, :2 * Wo] = g
    return gx


def maxpool2_forward(x):
    """2x2 stride-2 max pooling; returns (out, idx) with idx in {0..3} (dy*2+dx)."""
    B, C, H, W = x.shape
    Ho, Wo = H // 2, W // 2
    v = x[:, :, :2 * Ho, :2 * Wo].reshape(B, C, Ho, 2, Wo, 2)
    v = v.transpose(0, 1, 2, 4, 3, 5).reshape(B, C, Ho, Wo, 4)
    idx = v.argmax(axis=-1).astype(np.uint8)
    out = np.take_along_axis(v, idx[..., None], axis=-1)[..., 0]
    return out, idx


def maxpool2_backward(gy, idx, H, W):
    """Scatter gy back to the argmax positions recorded by maxpool2_forward."""
    B, C, Ho, Wo = gy.shape
    g4 = np.zeros((B, C, Ho, Wo, 4), dtype=gy.dtype)
    np.put_along_axis(g4, idx[..., None].astype(np.intp), gy[..., None], axis=-1)
    g = g4.reshape(B, C, Ho, Wo, 2, 2).transpose(0, 1, 2, 4, 3, 5)
    gx = np.zeros((B, C, H, W), dtype=gy.dtype)
    gx[:, :, :2 * Ho, :2 * Wo] = g.reshape(B, C, 2 * Ho, 2 * Wo)
    return gx


def sep_corr_valid(x, w):
    """Separable valid-mode correlation of a 2-D array with a 1-D window."""
    K = w.shape[0]
    H, W = x.shape
    Ho, Wo = H - K + 1, W - K + 1
    tmp = np.zeros((Ho, W), dtype=x.dtype)
    for t in range(K):
        tmp += w[t] * x[t:t + Ho, :]
    out = np.zeros((Ho, Wo), dtype=x.dtype)
    for t in range(K):
        out += w[t] * tmp[:, t:t + Wo]
    return out


def directed_hausdorff_sq(a, b):
    """max over points of `a` of the squared distance to the nearest point of `b`.

    a, b: (N, 2) integer coordinate arrays, both nonempty.
    """
    d2 = (a[:, None, 0] - b[None, :, 0]) ** 2 + (a[:, None, 1] - b[None, :, 1]) ** 2
    return float(d2.min(axis=1).max())
