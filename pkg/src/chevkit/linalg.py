"""Dense exact linear algebra over FieldElems (small matrices, lists of rows)."""

from __future__ import annotations

from .errors import FieldError


def identity(F, n):
    z, o = F.zero, F.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zeros(F, n, m=None):
    return [[F.zero] * (n if m is None else m) for _ in range(n)]


def diag(F, entries):
    n = len(entries)
    M = zeros(F, n)
    for i, e in enumerate(entries):
        M[i][i] = F.convert(e)
    return M


def mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            s = None
            for t in range(k):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = a * b if s is None else s + a * b
            row.append(s if s is not None else A[0][0].field.zero)
        out.append(row)
    return out


def mul_many(F, *Ms):
    out = None
    for M in Ms:
        out = M if out is None else mul(out, M)
    return out if out is not None else identity(F, 0)


def vecmat(v, M):
    F = v[0].field
    out = []
    for j in range(len(M[0])):
        s = F.zero
        for t, a in enumerate(v):
            if a:
                b = M[t][j]
                if b:
                    s = s + a * b
        out.append(s)
    return out


def transpose(A):
    return [list(r) for r in zip(*A)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A, c):
    return [[a * c for a in r] for r in A]


def equal(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def rref(A):
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return M, piv


def rank(A):
    return len(rref(A)[1]) if A else 0


def nullspace(A, F=None):
    """Basis of {x : A x = 0} (column convention), as a list of vectors."""
    if not A:
        raise ValueError("empty matrix")
    R, piv = rref(A)
    n = len(A[0])
    F = F or A[0][0].field
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def left_kernel(A):
    """Basis of row vectors x with x A = 0."""
    return nullspace(transpose(A))


def inverse(A):
    n = len(A)
    F = A[0][0].field
    aug = [list(r) + e for r, e in zip(A, identity(F, n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise FieldError("singular matrix")
    return [r[n:] for r in R]


def solve_row(vectors, target):
    """Coefficients c with sum c_i vectors[i] = target, or None."""
    F = target[0].field
    k = len(vectors)
    A = [[vectors[i][j] for i in range(k)] + [target[j]] for j in range(len(target))]
    R, piv = rref(A)
    if k in piv:
        return None
    c = [F.zero] * k
    for i, p in enumerate(piv):
        c[p] = R[i][k]
    return c


def span_contains(vectors, v):
    return solve_row(vectors, v) is not None if vectors else all(not x for x in v)


def charpoly(A):
    """Coefficients (constant first) of det(lambda I - A), by Berkowitz (division free)."""
    n = len(A)
    F = A[0][0].field
    # Berkowitz: iterate over leading principal submatrices
    C = [F.one, -A[0][0]]  # highest degree first
    for r in range(1, n):
        # partition A_{r+1} = [[B, R], [S, a]] with B the leading r x r block
        Rcol = [A[i][r] for i in range(r)]
        S = [A[r][j] for j in range(r)]
        a = A[r][r]
        B = [row[:r] for row in A[:r]]
        # Toeplitz column: 1, -a, -S R, -S B R, ...
        T = [F.one, -a]
        v = Rcol
        for _ in range(r):
            s = F.zero
            for x, y in zip(S, v):
                s = s + x * y
            T.append(-s)
            v = [sum((B[i][j] * v[j] for j in range(r)), F.zero) for i in range(r)]
        T = T[:r + 2]
        # multiply the (r+2) x (r+1) lower triangular Toeplitz matrix by C
        newC = []
        for i in range(r + 2):
            s = F.zero
            for j in range(min(i + 1, len(C))):
                s = s + T[i - j] * C[j]
            newC.append(s)
        C = newC
    return list(reversed(C))


def poly_mul(p, q):
    F = p[0].field
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def poly_pow(p, e):
    out = [p[0].field.one]
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def poly_eval(p, x):
    s = x.field.zero
    for c in reversed(p):
        s = s * x + c
    return s
