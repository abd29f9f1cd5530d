"""Pure-Python Smith normal form kernel.

Operates in place on lists of lists of Python ints.  The compiled kernel in
``_snf_ext`` runs the same elimination sequence on 64-bit words; both must
produce identical ``(D, U, V)`` for the same input.
"""


def _pick(A, t, m, n):
    best = None
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            a = row[j]
            if a:
                a = -a if a < 0 else a
                if best is None or a < best[0]:
                    best = (a, i, j)
    return best


def snf_inplace(A, U, V, m, n):
    """Reduce ``A`` (m x n) to Smith form, applying row ops to ``U`` and column ops to ``V``."""
    t = 0
    while t < m and t < n:
        best = _pick(A, t, m, n)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        while True:
            At = A[t]
            if At[t] < 0:
                A[t] = At = [-x for x in At]
                U[t] = [-x for x in U[t]]
            p = At[t]
            clean = True
            for i in range(t + 1, m):
                Ai = A[i]
                if Ai[t]:
                    q = Ai[t] // p
                    if q:
                        for k in range(t, n):
                            Ai[k] -= q * At[k]
                        Ui, Ut = U[i], U[t]
                        for k in range(m):
                            Ui[k] -= q * Ut[k]
                    if Ai[t]:
                        clean = False
            for j in range(t + 1, n):
                if At[j]:
                    q = At[j] // p
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                        for row in V:
                            row[j] -= q * row[t]
                    if At[j]:
                        clean = False
            if not clean:
                # smallest remainder in row t / column t becomes the pivot
                best = None
                for j in range(t + 1, n):
                    a = At[j]
                    if a:
                        a = -a if a < 0 else a
                        if best is None or a < best[0]:
                            best = (a, t, j)
                for i in range(t + 1, m):
                    a = A[i][t]
                    if a:
                        a = -a if a < 0 else a
                        if best is None or a < best[0]:
                            best = (a, i, t)
                _, pi, pj = best
                if pi != t:
                    A[t], A[pi] = A[pi], A[t]
                    U[t], U[pi] = U[pi], U[t]
                else:
                    for row in A:
                        row[t], row[pj] = row[pj], row[t]
                    for row in V:
                        row[t], row[pj] = row[pj], row[t]
                continue
            bad = -1
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            Ab, Ub, Ut = A[bad], U[bad], U[t]
            for k in range(t, n):
                At[k] += Ab[k]
            for k in range(m):
                Ut[k] += Ub[k]
        t += 1
