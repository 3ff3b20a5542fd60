"""Exact integer and rational linear algebra on row vectors.

Lattices are spanned by the rows of integer matrices and canonicalized in
row Hermite normal form: echelon, positive pivots, entries above a pivot
reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from fractions import Fraction


def hnf_with_transform(rows, ncols: int | None = None):
    """Row HNF ``H = U A`` with ``U`` unimodular.

    Returns ``(H, U, pivots)``: the first ``len(pivots)`` rows of ``H`` are the
    nonzero HNF rows; the remaining rows of ``U`` span the left kernel of ``A``.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            U[r], U[piv] = U[piv], U[r]
            a = A[r][c]
            clean = True
            for i in range(r + 1, m):
                b = A[i][c]
                if b:
                    q = b // a
                    if q:
                        Ai, Ar = A[i], A[r]
                        for j in range(c, n):
                            Ai[j] -= q * Ar[j]
                        Ui, Ur = U[i], U[r]
                        for j in range(m):
                            Ui[j] -= q * Ur[j]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if not any(A[i][c] for i in range(r, m)):
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
            U[r] = [-v for v in U[r]]
        a = A[r][c]
        for i in range(r):
            q = A[i][c] // a
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return A, U, pivots


def hnf(rows, ncols: int | None = None):
    """Nonzero rows of the row HNF, and their pivot columns."""
    H, _, piv = hnf_with_transform(rows, ncols)
    return [tuple(r) for r in H[: len(piv)]], piv


def left_kernel(rows, ncols: int | None = None):
    """HNF basis of ``{x integral : x A = 0}``."""
    m = len(rows)
    if m == 0:
        return []
    _, U, piv = hnf_with_transform(rows, ncols)
    kern = U[len(piv):]
    if not kern:
        return []
    basis, _ = hnf(kern, m)
    return basis


def echelon_solve(basis, pivots, vec):
    """Rational ``c`` with ``c * basis == vec``, or ``None`` if ``vec`` is outside the span.

    ``basis`` must be in row echelon form with the given pivot columns.
    """
    coords = []
    for i, p in enumerate(pivots):
        acc = Fraction(vec[p])
        for j in range(i):
            if coords[j]:
                acc -= coords[j] * basis[j][p]
        coords.append(acc / basis[i][p])
    for col in range(len(vec)):
        total = sum((c * b[col] for c, b in zip(coords, basis) if c), Fraction(0))
        if total != vec[col]:
            return None
    return coords


def det(M) -> Fraction:
    """Exact determinant (Bareiss for integers, Gaussian elimination otherwise)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    if all(isinstance(v, int) for r in M for v in r):
        A = [list(r) for r in M]
        sign, prev = 1, 1
        for k in range(n - 1):
            if A[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if A[i][k]), None)
                if swap is None:
                    return Fraction(0)
                A[k], A[swap] = A[swap], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return Fraction(sign * A[n - 1][n - 1])
    A = [[Fraction(v) for v in r] for r in M]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    return d


def rank(rows) -> int:
    """Rank over Q of a dense matrix."""
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return 0
    n = len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c] / A[r][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def sparse_rank(rows) -> int:
    """Rank over Q of rows given as ``{column: value}`` dicts."""
    pivots: dict[int, dict] = {}
    r = 0
    for row in rows:
        v = {k: Fraction(x) for k, x in row.items() if x}
        while v:
            lead = min(v)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = v
                r += 1
                break
            f = v[lead] / prow[lead]
            for k, x in prow.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return r
