"""Exact linear algebra over Q(q): row reduction, solving, span tests."""

from __future__ import annotations

from .scalar import ONE, ZERO, CycScalar, as_scalar

__all__ = ["rref", "solve", "rank", "matmul", "identity", "kron", "zeros", "InconsistentSystem", "SparseEchelon"]


class InconsistentSystem(ValueError):
    """Raised when a linear system demands 1 = 0."""


def zeros(n: int, m: int) -> list:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> list:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def matmul(A, B) -> list:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = zeros(n, m)
    for i in range(n):
        row = A[i]
        acc = out[i]
        for t in range(k):
            a = row[t]
            if not a:
                continue
            bt = B[t]
            for j in range(m):
                if bt[j]:
                    acc[j] = acc[j] + a * bt[j]
    return out


def kron(A, B) -> list:
    n, m = len(A), len(A[0])
    r, s = len(B), len(B[0])
    out = zeros(n * r, m * s)
    for i in range(n):
        for j in range(m):
            a = A[i][j]
            if not a:
                continue
            for k in range(r):
                for l in range(s):
                    if B[k][l]:
                        out[i * r + k][j * s + l] = a * B[k][l]
    return out


def rref(rows, ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns). Input is copied."""
    M = [[as_scalar(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inv()
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def solve(A, b):
    """Solve ``A u = b``; returns (particular solution, free column indices).

    Free unknowns are set to zero in the particular solution.
    """
    n = len(A[0]) if A else 0
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        raise InconsistentSystem("linear system has no solution")
    u = [ZERO] * n
    for row, c in zip(R, piv):
        u[c] = row[n]
    free = [c for c in range(n) if c not in piv]
    return u, free


class SparseEchelon:
    """Incremental echelon basis of sparse vectors (dicts from sortable keys to scalars).

    Each stored row has a distinct leading key (its largest key) with coefficient one.
    """

    def __init__(self, key=None):
        self._key = key or (lambda k: k)
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: as_scalar(c) for k, c in vec.items() if c}
        done: dict = {}
        while v:
            lead = max(v, key=self._key)
            c = v.pop(lead)
            row = self.rows.get(lead)
            if row is None:
                done[lead] = c
                continue
            for k, rc in row.items():
                if k == lead:
                    continue
                nv = v.get(k, ZERO) - c * rc
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return done

    def add(self, vec: dict) -> bool:
        """Insert a vector; returns False if it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        lead = max(r, key=self._key)
        inv = r[lead].inv()
        self.rows[lead] = {k: c * inv for k, c in r.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
