"""Integer linear algebra: Smith and Hermite normal forms, kernels and
lattice equality."""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list  # list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def _shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def determinant(A: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SNF:
    D: Matrix
    U: Matrix
    V: Matrix
    diagonal: list[int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: Matrix) -> SNF:
    """U A V = D with U, V unimodular, D diagonal and d1 | d2 | ...
    Pivots are chosen by smallest absolute value."""
    m, n = _shape(A)
    D = [list(map(int, r)) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        if D[t][t] == 0:
            break
    diag = [D[i][i] for i in range(min(m, n))]
    return SNF(D, U, V, diag)


def hermite_normal_form(A: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style HNF: returns (H, W) with W A = H, W unimodular, H in row
    echelon form with positive pivots and entries above pivots reduced."""
    m, n = _shape(A)
    H = [list(map(int, r)) for r in A]
    W = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nz = [i for i in range(row, m) if H[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            H[row], H[piv] = H[piv], H[row]
            W[row], W[piv] = W[piv], W[row]
            done = True
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[row][col]
                    H[i] = [x - q * y for x, y in zip(H[i], H[row])]
                    W[i] = [x - q * y for x, y in zip(W[i], W[row])]
                    done = done and H[i][col] == 0
            if done:
                break
        if row < m and H[row][col]:
            if H[row][col] < 0:
                H[row] = [-x for x in H[row]]
                W[row] = [-x for x in W[row]]
            p = H[row][col]
            for i in range(row):
                q = H[i][col] // p
                if q:
                    H[i] = [x - q * y for x, y in zip(H[i], H[row])]
                    W[i] = [x - q * y for x, y in zip(W[i], W[row])]
            row += 1
    return H, W


def column_hermite_form(B: Matrix) -> Matrix:
    """Hermite-reduced basis for the column span of B (zero columns dropped)."""
    m, k = _shape(B)
    H, _ = hermite_normal_form(transpose(B))
    rows = [r for r in H if any(r)]
    return transpose(rows) if rows else [[] for _ in range(m)]


class KernelCertificateError(AssertionError):
    pass


def integer_kernel(A: Matrix) -> Matrix:
    """A Z-basis (as columns) of {x in Z^n : A x = 0}, in Hermite column form.
    The result is checked: A K = 0, the right number of columns, and K
    saturated (all invariant factors 1), so it spans the whole kernel."""
    m, n = _shape(A)
    s = smith_normal_form(A)
    r = s.rank
    cols = [[s.V[i][j] for i in range(n)] for j in range(r, n)]
    if not cols:
        return [[] for _ in range(n)]
    K = column_hermite_form(transpose(cols))
    certify_kernel(A, K)
    return K


def certify_kernel(A: Matrix, K: Matrix):
    m, n = _shape(A)
    k = len(K[0]) if K and K[0] else 0
    rank = smith_normal_form(A).rank
    if k != n - rank:
        raise KernelCertificateError(f"kernel has {k} columns, expected {n - rank}")
    if k == 0:
        return
    if any(any(row) for row in matmul(A, K)):
        raise KernelCertificateError("A K is not zero")
    sk = smith_normal_form(K)
    if sk.rank != k or any(d != 1 for d in sk.diagonal[:k]):
        raise KernelCertificateError("candidate basis is not saturated in Z^n")


def solve_integer(A: Matrix, b: list[int]) -> list[int] | None:
    """Some integer x with A x = b, or None."""
    m, n = _shape(A)
    s = smith_normal_form(A)
    c = [sum(u * y for u, y in zip(row, b)) for row in s.U]
    y = [0] * n
    for i in range(m):
        d = s.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(v * t for v, t in zip(row, y)) for row in s.V]


def _columns(K: Matrix) -> list[list[int]]:
    if not K or not K[0]:
        return []
    return [list(c) for c in zip(*K)]


def same_column_span_Z(K1: Matrix, K2: Matrix) -> bool:
    """Do K1 and K2 span the same lattice over Z?"""
    if len(K1) != len(K2):
        return False
    c1, c2 = _columns(K1), _columns(K2)
    if not c1 or not c2:
        return not any(any(c) for c in c1 + c2)
    return (all(solve_integer(K1, c) is not None for c in c2)
            and all(solve_integer(K2, c) is not None for c in c1))


def is_unimodular(A: Matrix) -> bool:
    return len(A) == (len(A[0]) if A else 0) and abs(determinant(A)) == 1
