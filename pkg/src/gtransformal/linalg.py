"""Gaussian elimination over an arbitrary exact field object."""


def rref(F, rows):
    """Reduced row echelon form; returns (rows, pivot columns). Input is not modified."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != F.zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != F.zero:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F, rows):
    return len(rref(F, rows)[1])


def nullspace(F, rows, ncols=None):
    """Basis of {x : M x = 0} as a list of vectors."""
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    R, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def solve(F, A, b):
    """One solution x of A x = b, or None."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    ncols = len(A[0]) if A else 0
    R, pivots = rref(F, aug)
    if ncols in pivots:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def transpose(M):
    return [list(col) for col in zip(*M)]


def mat_vec(F, M, v):
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, v):
            if a != F.zero and b != F.zero:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def mat_mul(F, A, B):
    Bt = transpose(B)
    return [[_dot(F, row, col) for col in Bt] for row in A]


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if a != F.zero and b != F.zero:
            acc = F.add(acc, F.mul(a, b))
    return acc


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
