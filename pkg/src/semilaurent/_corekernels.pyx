# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the _kernels_py loops.

Coefficients stay arbitrary Python objects (exact rationals or cyclotomic
scalars); the win is C-level loop and list handling around their arithmetic.
"""

IMPLEMENTATION = "cython"


def convolve_trunc(list a, list b, Py_ssize_t out_len, zero):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j, jmax
    cdef list out = [zero] * out_len
    for i in range(min(la, out_len)):
        ai = a[i]
        if not ai:
            continue
        jmax = lb
        if out_len - i < jmax:
            jmax = out_len - i
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def invert_unit_trunc(list a, Py_ssize_t out_len, one):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t k, j, jmax
    inv0 = one / a[0]
    cdef list out = [inv0]
    for k in range(1, out_len):
        acc = None
        jmax = k
        if la - 1 < jmax:
            jmax = la - 1
        for j in range(1, jmax + 1):
            aj = a[j]
            if not aj:
                continue
            term = aj * out[k - j]
            acc = term if acc is None else acc + term
        if acc is None:
            out.append(one - one)
        else:
            out.append(-inv0 * acc)
    return out


def polymul_reduce(list a, list b, list reduction_rows, Py_ssize_t deg, zero):
    cdef Py_ssize_t i, j, e
    cdef list raw = [zero] * (2 * deg - 1)
    cdef list out, row
    for i in range(deg):
        ai = a[i]
        if not ai:
            continue
        for j in range(deg):
            bj = b[j]
            if bj:
                raw[i + j] = raw[i + j] + ai * bj
    out = raw[:deg]
    for e in range(deg - 1):
        c = raw[deg + e]
        if not c:
            continue
        row = reduction_rows[e]
        for i in range(deg):
            ri = row[i]
            if ri:
                out[i] = out[i] + c * ri
    return out
