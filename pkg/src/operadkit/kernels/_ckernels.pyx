# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same functions, same results.

Entries stay Python ints (arbitrary precision); the speedup comes from typed
loop indices, direct list/dict access and avoiding per-step interpreter
dispatch.
"""

from math import gcd


cdef object _content(dict row):
    cdef object g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


cdef void _make_primitive(dict row, Py_ssize_t lead):
    cdef object g = _content(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for c in row:
            row[c] //= g


def echelon_insert(dict pivots, dict row):
    cdef Py_ssize_t lead
    cdef dict prow
    cdef object a, b, g, x, y
    while row:
        lead = min(row)
        prow = pivots.get(lead)
        if prow is None:
            _make_primitive(row, lead)
            pivots[lead] = row
            return True
        a = prow[lead]
        b = row[lead]
        g = gcd(a, b)
        a = a // g
        b = b // g
        if a != 1:
            for c in row:
                row[c] *= a
        for c, x in prow.items():
            y = row.get(c, 0) - b * x
            if y:
                row[c] = y
            else:
                row.pop(c, None)
        if a != 1 and row:
            # keep the working row primitive so coefficients stay small
            g = _content(row)
            if g > 1:
                for c in row:
                    row[c] //= g
    return False


def reduce_full(dict pivots, dict row_in):
    cdef dict row = dict(row_in)
    cdef dict prow
    cdef object scale = 1
    cdef Py_ssize_t last = -1
    cdef Py_ssize_t c, best, k
    cdef bint found
    cdef object a, b, g, x, y
    while True:
        found = False
        best = 0
        for k in row:
            if k > last and k in pivots:
                if not found or k < best:
                    best = k
                    found = True
        if not found:
            break
        c = best
        prow = pivots[c]
        a = prow[c]
        b = row[c]
        g = gcd(a, b)
        a = a // g
        b = b // g
        if a != 1:
            for k in row:
                row[k] *= a
            scale *= a
        for k, x in prow.items():
            y = row.get(k, 0) - b * x
            if y:
                row[k] = y
            else:
                row.pop(k, None)
        g = gcd(_content(row), scale)
        if g > 1:
            for k in row:
                row[k] //= g
            scale //= g
        last = c
    return row, scale


def rref_int(rows, Py_ssize_t ncols):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivot_cols = []
    cdef Py_ssize_t r = 0, c, p, i, k
    cdef list prow, row
    cdef object a, b, g, aa, bb, cont, x
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = <list>m[r]
        cont = 0
        for k in range(c, ncols):
            cont = gcd(cont, prow[k])
        if prow[c] < 0:
            cont = -cont
        if cont != 1:
            for k in range(c, ncols):
                prow[k] = prow[k] // cont
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>m[i]
            b = row[c]
            if b == 0:
                continue
            g = gcd(a, b)
            aa = a // g
            bb = b // g
            cont = 0
            for k in range(ncols):
                x = aa * row[k] - bb * prow[k]
                row[k] = x
                cont = gcd(cont, x)
            if cont > 1:
                for k in range(ncols):
                    row[k] = row[k] // cont
        pivot_cols.append(c)
        r += 1
    return m, pivot_cols
