"""Pure-Python exact elimination kernels.

All routines work on integer data (Python ints, so arbitrary precision) and use
fraction-free elimination: a row ``v`` is reduced by a pivot row ``p`` with
leading coefficient ``a`` as ``a*v - v[c]*p``, then divided by its content.
The compiled twin in ``_ckernels.pyx`` implements the same functions with the
same signatures and must return identical results.
"""

from math import gcd


def _content(row):
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _make_primitive(row, lead):
    g = _content(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for c in row:
            row[c] //= g


def echelon_insert(pivots, row):
    """Reduce sparse ``row`` by the leading pivots of ``pivots`` and store it.

    ``pivots`` maps a leading column to a primitive sparse row (dict col -> int)
    whose smallest column is that key and whose leading entry is positive.
    ``row`` is consumed. Returns True iff the row was independent and inserted.
    """
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
        a //= g
        b //= g
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


def reduce_full(pivots, row):
    """Eliminate every pivot column of ``pivots`` from sparse ``row``.

    Returns ``(reduced, scale)`` with ``scale > 0`` such that
    ``reduced == scale * row - (row-space element)``. Pivot columns are
    processed in increasing order, so the result has zeros in all of them.
    """
    row = dict(row)
    scale = 1
    last = -1
    while True:
        cand = [c for c in row if c > last and c in pivots]
        if not cand:
            break
        c = min(cand)
        prow = pivots[c]
        a = prow[c]
        b = row[c]
        g = gcd(a, b)
        a //= g
        b //= g
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


def rref_int(rows, ncols):
    """Fraction-free Gauss-Jordan elimination of a dense integer matrix.

    ``rows`` is a list of int lists (copied, not mutated). Returns
    ``(rows, pivot_cols)``: every returned row is primitive with a positive
    pivot, pivot columns are strictly increasing, each pivot column is zero
    outside its pivot row, and zero rows are kept at the bottom.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        cont = 0
        for k in range(c, ncols):
            cont = gcd(cont, prow[k])
        if prow[c] < 0:
            cont = -cont
        if cont != 1:
            for k in range(c, ncols):
                prow[k] //= cont
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
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
                    row[k] //= cont
        pivot_cols.append(c)
        r += 1
    return m, pivot_cols
