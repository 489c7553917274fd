"""Pure Python Smith normal form kernel.

This is the reference implementation of the elimination loop.  The
compiled twin in _snf_core.pyx follows the exact same pivoting and
reduction rules, so both produce identical transform matrices; the
compiled version works in int64 with overflow checks and the caller
falls back to this module when entries grow past int64.

Conventions, shared with the compiled twin:

  * pivot selection scans the trailing submatrix row-major and takes
    the nonzero entry of smallest absolute value, preferring the lowest
    (row, col) on ties;
  * the pivot is normalised positive;
  * row and column reductions use floor division, so remainders lie in
    [0, pivot);
  * a divisibility repair (add the offending row to the pivot row)
    runs until the pivot divides the whole trailing submatrix.

The result is the canonical diagonal (nonnegative, each entry dividing
the next) together with unimodular transforms U, V with U A V = D.
"""


def snf_kernel(a, m, n):
    """Smith normal form of the m x n matrix `a` (list of row lists).

    Returns (u, d, v) as lists of row lists with u*a*v = d.  `a` is not
    modified.
    """
    d = [list(row) for row in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    for t in range(min(m, n)):
        # pivot selection
        bi = bj = -1
        best = 0
        for i in range(t, m):
            di = d[i]
            for j in range(t, n):
                x = di[j]
                if x != 0:
                    if x < 0:
                        x = -x
                    if bi < 0 or x < best:
                        best = x
                        bi, bj = i, j
        if bi < 0:
            break
        if bi != t:
            d[t], d[bi] = d[bi], d[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in d:
                row[t], row[bj] = row[bj], row[t]
            for row in v:
                row[t], row[bj] = row[bj], row[t]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

        while True:
            # clear column t, bringing any nonzero remainder up as the
            # new (strictly smaller) pivot
            restart = False
            for i in range(t + 1, m):
                if d[i][t] == 0:
                    continue
                q = d[i][t] // d[t][t]
                if q:
                    dt, ut = d[t], u[t]
                    di, ui = d[i], u[i]
                    for j in range(n):
                        di[j] -= q * dt[j]
                    for j in range(m):
                        ui[j] -= q * ut[j]
                if d[i][t] != 0:
                    d[t], d[i] = d[i], d[t]
                    u[t], u[i] = u[i], u[t]
                    restart = True
                    break
            if restart:
                continue
            # clear row t
            for j in range(t + 1, n):
                if d[t][j] == 0:
                    continue
                q = d[t][j] // d[t][t]
                if q:
                    for row in d:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if d[t][j] != 0:
                    for row in d:
                        row[t], row[j] = row[j], row[t]
                    for row in v:
                        row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if restart:
                continue
            # divisibility repair: the pivot must divide the trailing
            # submatrix before t advances
            piv = d[t][t]
            bad = -1
            for i in range(t + 1, m):
                di = d[i]
                for j in range(t + 1, n):
                    if di[j] % piv != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            dt, ut = d[t], u[t]
            db, ub = d[bad], u[bad]
            for j in range(n):
                dt[j] += db[j]
            for j in range(m):
                ut[j] += ub[j]

    return u, d, v
