"""Integer lattice utilities: Hermite and Smith normal forms, membership, kernels."""


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _bezout(a, b):
    """``(x, y, p, q)`` with ``[[x, y], [-q, p]]`` unimodular sending ``(a, b)`` to ``(g, 0)``."""
    if b % a == 0:
        return 1, 0, 1, b // a
    g, x, y = _xgcd(a, b)
    return x, y, a // g, b // g


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hnf(matrix):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ matrix == H``.  The
    nonzero rows of ``H`` come first, in echelon form with positive pivots
    and entries above each pivot reduced into ``[0, pivot)``; zero rows
    follow.
    """
    A = [[int(v) for v in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        for i in range(row + 1, m):
            if A[i][col] == 0:
                continue
            if A[row][col] == 0:
                A[row], A[i] = A[i], A[row]
                U[row], U[i] = U[i], U[row]
                continue
            x, y, p, q = _bezout(A[row][col], A[i][col])
            A[row], A[i] = (
                [x * u + y * v for u, v in zip(A[row], A[i])],
                [-q * u + p * v for u, v in zip(A[row], A[i])],
            )
            U[row], U[i] = (
                [x * u + y * v for u, v in zip(U[row], U[i])],
                [-q * u + p * v for u, v in zip(U[row], U[i])],
            )
        if A[row][col] == 0:
            continue
        if A[row][col] < 0:
            A[row] = [-v for v in A[row]]
            U[row] = [-v for v in U[row]]
        piv = A[row][col]
        for i in range(row):
            f = A[i][col] // piv
            if f:
                A[i] = [u - f * v for u, v in zip(A[i], A[row])]
                U[i] = [u - f * v for u, v in zip(U[i], U[row])]
        row += 1
    return A, U


def hnf_basis(vectors, ncols=None):
    """Nonzero HNF rows spanning the lattice generated by ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    H, _ = hnf(vectors)
    return [r for r in H if any(r)]


def pivots(H):
    out = []
    for r in H:
        for j, v in enumerate(r):
            if v:
                out.append(j)
                break
    return out


def lattice_index(H):
    """Index in Z^n of a full-rank lattice given by its HNF rows."""
    basis = [r for r in H if any(r)]
    n = len(basis[0]) if basis else 0
    if len(basis) != n:
        return 0
    out = 1
    for r, j in zip(basis, pivots(basis)):
        out *= r[j]
    return abs(out)


def solve_in_lattice(basis, v):
    """Integer coefficients ``c`` with ``sum c_i * basis_i == v``, or ``None``.

    ``basis`` must be in row echelon form (as returned by :func:`hnf_basis`).
    """
    v = list(v)
    coeffs = []
    piv = pivots(basis)
    for r, j in zip(basis, piv):
        if v[j] % r[j]:
            return None
        c = v[j] // r[j]
        coeffs.append(c)
        if c:
            v = [a - c * b for a, b in zip(v, r)]
    if any(v):
        return None
    return coeffs


def kernel_basis(matrix, ncols):
    """Basis of the saturated integer kernel ``{x in Z^ncols : matrix @ x == 0}``."""
    if not matrix:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = [[row[j] for row in matrix] for j in range(ncols)]
    H, U = hnf(cols)
    return hnf_basis([U[i] for i, r in enumerate(H) if not any(r)]) if any(not any(r) for r in H) else []


def smith(matrix):
    """Smith normal form ``(D, U, V)`` with ``U @ matrix @ V == D``.

    ``D`` is diagonal with nonnegative entries, each dividing the next.
    """
    A = [[int(v) for v in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    x, y, p, q = _bezout(A[t][t], A[i][t])
                    A[t], A[i] = (
                        [x * u + y * v for u, v in zip(A[t], A[i])],
                        [-q * u + p * v for u, v in zip(A[t], A[i])],
                    )
                    U[t], U[i] = (
                        [x * u + y * v for u, v in zip(U[t], U[i])],
                        [-q * u + p * v for u, v in zip(U[t], U[i])],
                    )
            for j in range(t + 1, n):
                if A[t][j]:
                    done = False
                    x, y, p, q = _bezout(A[t][t], A[t][j])
                    for M in (A, V):
                        for row in M:
                            u, v = row[t], row[j]
                            row[t], row[j] = x * u + y * v, -q * u + p * v
            if any(A[i][t] for i in range(t + 1, m)):
                done = False
                continue
            # divisibility: fold a row whose entries the pivot does not divide
            piv = A[t][t]
            for i in range(t + 1, m):
                if any(A[i][j] % piv for j in range(t + 1, n)):
                    A[t] = [u + v for u, v in zip(A[t], A[i])]
                    U[t] = [u + v for u, v in zip(U[t], U[i])]
                    done = False
                    break
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def det(matrix):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
