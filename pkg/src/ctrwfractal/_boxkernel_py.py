"""Pure-numpy fallback for the compiled box-counting kernels.

Same contract as the Cython module: ``morton_pack`` interleaves quantized
coordinates into sortable keys, ``multiscale_counts`` reads distinct-box
counts for every requested shift off one sorted key array.
"""

import numpy as np

_U = np.uint64

_MASKS2 = [
    (_U(16), _U(0x0000FFFF0000FFFF)),
    (_U(8), _U(0x00FF00FF00FF00FF)),
    (_U(4), _U(0x0F0F0F0F0F0F0F0F)),
    (_U(2), _U(0x3333333333333333)),
    (_U(1), _U(0x5555555555555555)),
]

_MASKS3 = [
    (_U(32), _U(0x1F00000000FFFF)),
    (_U(16), _U(0x1F0000FF0000FF)),
    (_U(8), _U(0x100F00F00F00F00F)),
    (_U(4), _U(0x10C30C30C30C30C3)),
    (_U(2), _U(0x1249249249249249)),
]


def _spread(v, masks, first_mask):
    v = v & first_mask
    for shift, mask in masks:
        v = (v | (v << shift)) & mask
    return v


def morton_pack(cols):
    cols = np.ascontiguousarray(cols, dtype=np.int64)
    n, c = cols.shape
    if c == 1:
        return cols[:, 0].astype(np.uint64)
    if c == 2:
        a = _spread(cols[:, 0].astype(np.uint64), _MASKS2, _U(0xFFFFFFFF))
        b = _spread(cols[:, 1].astype(np.uint64), _MASKS2, _U(0xFFFFFFFF))
        return a | (b << _U(1))
    if c == 3:
        a = _spread(cols[:, 0].astype(np.uint64), _MASKS3, _U(0x1FFFFF))
        b = _spread(cols[:, 1].astype(np.uint64), _MASKS3, _U(0x1FFFFF))
        d = _spread(cols[:, 2].astype(np.uint64), _MASKS3, _U(0x1FFFFF))
        return a | (b << _U(1)) | (d << _U(2))
    raise ValueError("morton_pack supports 1..3 columns")


def multiscale_counts(sorted_keys, shifts):
    out = np.zeros(len(shifts), dtype=np.int64)
    if len(sorted_keys) == 0:
        return out
    for i, s in enumerate(shifts):
        sh = sorted_keys >> _U(int(s))
        out[i] = int(np.count_nonzero(sh[1:] != sh[:-1])) + 1
    return out
