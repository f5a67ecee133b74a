"""Small exact linear algebra helpers: field Gauss, Smith/Hermite forms, signatures.

Matrices are tuples of tuples (immutable) or lists of lists (work buffers).
Field routines are generic over any type supporting +,-,*,/ and == 0
comparison through the supplied zero/one samples, so they serve both the
rational backend and Q(w).
"""

from ._rational import as_int, qq

# ---------------------------------------------------------------------------
# generic field routines


def mat_freeze(m):
    return tuple(tuple(row) for row in m)


def mat_identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, zero):
    n, k, m = len(a), len(b), len(b[0])
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x == zero:
                continue
            bt = b[t]
            for j in range(m):
                oi[j] = oi[j] + x * bt[j]
    return out

def mat_vec(a, v, zero):
    out = []
    for row in a:
        s = zero
        for x, y in zip(row, v):
            s = s + x * y
        out.append(s)
    return out


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_pow_order(m, one, zero, cap=200):
    """Multiplicative order of a square matrix, or None if above cap."""
    ident = mat_identity(len(m), one, zero)
    acc = m
    for k in range(1, cap + 1):
        if mat_eq(acc, ident):
            return k
        acc = mat_mul(acc, m, zero)
    return None


def mat_inverse(a, one, zero):
    """Gauss-Jordan inverse over a field; raises on singular input."""
    n = len(a)
    work = [list(row) + irow for row, irow in zip(a, mat_identity(n, one, zero))]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != zero), None)
        if piv is None:
            raise ValueError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        inv = one / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != zero:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def det_field(a, one, zero):
    n = len(a)
    work = [list(row) for row in a]
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != zero), None)
        if piv is None:
            return zero
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det = det * work[col][col]
        inv = one / work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != zero:
                f = work[r][col] * inv
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


def rank_field(a, one, zero):
    if not a:
        return 0
    work = [list(row) for row in a]
    n, m = len(work), len(work[0])
    rank = 0
    row = 0
    for col in range(m):
        piv = next((r for r in range(row, n) if work[r][col] != zero), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = one / work[row][col]
        work[row] = [x * inv for x in work[row]]
        for r in range(n):
            if r != row and work[r][col] != zero:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[row])]
        rank += 1
        row += 1
        if row == n:
            break
    return rank


# ---------------------------------------------------------------------------
# rational-specific


def signature(gram):
    """(positive, negative) inertia of a nondegenerate symmetric rational matrix."""
    pos, neg, null = inertia(gram)
    if null:
        raise ValueError("degenerate form")
    return pos, neg


def _sym_eliminate(a, idx, n):
    d = a[idx][idx]
    for r in range(idx + 1, n):
        if a[r][idx] != 0:
            f = a[r][idx] / d
            for c in range(idx, n):
                a[r][c] = a[r][c] - f * a[idx][c]
    for c in range(idx + 1, n):
        if a[idx][c] != 0:
            f = a[idx][c] / d
            for r in range(idx, n):
                a[r][c] = a[r][c] - f * a[r][idx]


def inertia(gram):
    """(positive, negative, zero) counts for a symmetric rational matrix.

    Proper congruence diagonalization; replaces signature() above for
    callers needing exactness on degenerate forms too.
    """
    n = len(gram)
    a = [[qq(x) for x in row] for row in gram]
    zero = qq(0)
    pos = neg = 0
    for idx in range(n):
        if a[idx][idx] == zero:
            j = next(
                (j for j in range(idx + 1, n) if a[idx][j] != zero or a[j][idx] != zero),
                None,
            )
            if j is None:
                continue
            for c in range(n):
                a[idx][c] = a[idx][c] + a[j][c]
            for r in range(n):
                a[r][idx] = a[r][idx] + a[r][j]
        if a[idx][idx] == zero:
            continue
        if a[idx][idx] > 0:
            pos += 1
        else:
            neg += 1
        _sym_eliminate(a, idx, n)
    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# integer routines


def int_mat_inverse(u):
    """Inverse of a unimodular integer matrix, returned with int entries."""
    n = len(u)
    inv = mat_inverse([[qq(x) for x in row] for row in u], qq(1), qq(0))
    return [[as_int(x) for x in row] for row in inv]


def smith_normal_form(a):
    """(S, U, V) with U*A*V = S diagonal, d1 | d2 | ..., U and V unimodular."""
    a = [[int(x) for x in row] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                stop = False
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t] != 0:
                            add_row(t, i, 1)
                            dirty = True
                            stop = True
                            break
                    if stop:
                        break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def hermite_row_basis(rows, n):
    """Row Hermite basis of the subgroup of Z^n generated by integer rows."""
    work = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while col < n and work:
        work.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
        if work[0][col] == 0:
            col += 1
            continue
        # reduce all other rows against the smallest pivot until column clears
        while True:
            pivot = work[0]
            done = True
            for r in work[1:]:
                if r[col] != 0:
                    f = r[col] // pivot[col]
                    for j in range(n):
                        r[j] -= f * pivot[j]
                    if r[col] != 0:
                        done = False
            work.sort(key=lambda r: (r[col] == 0, abs(r[col]) if r[col] else 0))
            if done and all(r[col] == 0 for r in work[1:]):
                break
        pivot = work.pop(0)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        work = [r for r in work if any(r)]
        col += 1
    # reduce above pivots
    for i in reversed(range(len(basis))):
        lead = next(j for j in range(n) if basis[i][j] != 0)
        for k in range(i):
            if basis[k][lead] != 0:
                f = basis[k][lead] // basis[i][lead]
                basis[k] = [x - f * y for x, y in zip(basis[k], basis[i])]
    return basis
