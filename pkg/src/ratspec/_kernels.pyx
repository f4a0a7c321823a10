# cython: language_level=3
"""Compiled hot kernels: exact RREF and matrix multiply over Fractions.

Same algorithm as _kernels_py (integer scaling, fraction-free elimination,
Fraction reconstruction at the end); typed loop indices remove interpreter
overhead while the big-int arithmetic itself stays exact.
"""

from fractions import Fraction
from math import gcd

BACKEND = "cython"

_ZERO = Fraction(0)


cdef list _int_rows(Py_ssize_t rows, Py_ssize_t cols, list data):
    cdef Py_ssize_t i, j, off
    cdef list mat = [], row
    for i in range(rows):
        off = i * cols
        den = 1
        for j in range(cols):
            d = (<object>data[off + j]).denominator
            den = den // gcd(den, d) * d
        row = []
        for j in range(cols):
            x = <object>data[off + j]
            row.append(x.numerator * (den // x.denominator))
        mat.append(row)
    return mat


cdef void _reduce_content(list row, Py_ssize_t cols):
    cdef Py_ssize_t j
    g = 0
    for j in range(cols):
        v = <object>row[j]
        if v:
            g = gcd(g, v)
            if g == 1:
                return
    if g > 1:
        for j in range(cols):
            row[j] = (<object>row[j]) // g


def rref(Py_ssize_t rows, Py_ssize_t cols, list data):
    """Reduced row echelon form; returns (rref_data, pivot_columns)."""
    cdef list mat = _int_rows(rows, cols, data)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, pr, k, off
    cdef list piv_row, row
    for c in range(cols):
        pr = -1
        for i in range(r, rows):
            if <object>(<list>mat[i])[c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
        piv_row = <list>mat[r]
        p = <object>piv_row[c]
        for i in range(r + 1, rows):
            row = <list>mat[i]
            e = <object>row[c]
            if e:
                for j in range(c, cols):
                    row[j] = (<object>row[j]) * p - (<object>piv_row[j]) * e
                _reduce_content(row, cols)
        pivots.append(c)
        r += 1
        if r == rows:
            break
    cdef Py_ssize_t npiv = len(pivots)
    for k in range(npiv - 1, 0, -1):
        c = <Py_ssize_t>pivots[k]
        piv_row = <list>mat[k]
        p = <object>piv_row[c]
        for i in range(k):
            row = <list>mat[i]
            e = <object>row[c]
            if e:
                for j in range(cols):
                    row[j] = (<object>row[j]) * p - (<object>piv_row[j]) * e
                _reduce_content(row, cols)
    cdef list out = [_ZERO] * (rows * cols)
    for k in range(npiv):
        c = <Py_ssize_t>pivots[k]
        row = <list>mat[k]
        p = <object>row[c]
        off = k * cols
        for j in range(c, cols):
            v = <object>row[j]
            if v:
                out[off + j] = Fraction(v, p)
    return out, tuple(pivots)


def matmul(Py_ssize_t m, Py_ssize_t k, Py_ssize_t n, list a, list b):
    """Product of an m x k and a k x n Fraction matrix, both row-major."""
    cdef Py_ssize_t i, j, t, arow_off, boff, ooff
    da = 1
    for x in a:
        d = x.denominator
        da = da // gcd(da, d) * d
    db = 1
    for x in b:
        d = x.denominator
        db = db // gcd(db, d) * d
    cdef list ai = [x.numerator * (da // x.denominator) for x in a]
    cdef list bi = [x.numerator * (db // x.denominator) for x in b]
    den = da * db
    cdef list out = [_ZERO] * (m * n)
    cdef list acc
    for i in range(m):
        arow_off = i * k
        acc = [0] * n
        for t in range(k):
            v = <object>ai[arow_off + t]
            if v:
                boff = t * n
                for j in range(n):
                    acc[j] = (<object>acc[j]) + v * (<object>bi[boff + j])
        ooff = i * n
        for j in range(n):
            s = <object>acc[j]
            if s:
                out[ooff + j] = Fraction(s, den)
    return out
