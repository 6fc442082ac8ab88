"""Finitely generated modules over Z/p^N by Smith normal form.

Z/p^N is a local principal ideal ring, so elimination only ever needs to
pivot on an entry of least p-adic valuation and divide by a unit.

Conventions: a matrix is a list of rows; a homomorphism is given by the
images of its domain generators, one image per row, so it acts on row
vectors as ``x -> x A``.  A module ``⊕ Z/p^{n_k}`` is embedded in
``(Z/p^N)^r`` by multiplying coordinate k by ``p^(N - n_k)``; with that
embedding every length computation reduces to spans inside one free module.
"""
from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def valuation(x: int, p: int, N: int) -> int:
    """p-adic valuation of x in Z/p^N, with v(0) = N."""
    x %= p**N
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass
class Smith:
    """``U A V = D`` with D diagonal, diagonal entries p^valuations[k]."""

    valuations: list[int]
    U: Matrix
    rows: int
    cols: int


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith(A: Matrix, p: int, N: int, ncols: int | None = None,
          track: bool = True) -> Smith:
    """Smith form over Z/p^N, tracking the row transform U only (if ``track``)."""
    mod = p**N
    rows = len(A)
    cols = len(A[0]) if A else (ncols or 0)
    M = [[x % mod for x in row] for row in A]
    U = _identity(rows) if track else [[] for _ in range(rows)]
    vals = []
    r = 0
    for c in range(min(rows, cols)):
        # pivot: least valuation in the remaining block
        best, bi, bj = N, -1, -1
        for i in range(r, rows):
            row = M[i]
            for j in range(c, cols):
                if row[j]:
                    v = valuation(row[j], p, N)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if bi < 0:
            break
        M[r], M[bi] = M[bi], M[r]
        U[r], U[bi] = U[bi], U[r]
        if bj != c:
            for row in M:
                row[c], row[bj] = row[bj], row[c]
        piv = M[r][c]
        unit = piv // p**best
        inv = pow(unit, -1, mod)
        # normalize pivot to p^best
        M[r] = [x * inv % mod for x in M[r]]
        if track:
            U[r] = [x * inv % mod for x in U[r]]
        step = p**best
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c] // step
                Mi, Mr = M[i], M[r]
                M[i] = [(a - f * b) % mod for a, b in zip(Mi, Mr)]
                if track:
                    U[i] = [(a - f * b) % mod for a, b in zip(U[i], U[r])]
        # column clearing touches only M (U tracks rows)
        Mr = M[r]
        for j in range(c + 1, cols):
            if Mr[j]:
                f = Mr[j] // step
                for row in M:
                    row[j] = (row[j] - f * row[c]) % mod
        vals.append(best)
        r += 1
    vals.extend([N] * (rows - len(vals)))
    return Smith(vals, U, rows, cols)


def elementary_divisors(A: Matrix, p: int, N: int) -> list[int]:
    """Nonzero diagonal valuations (each < N), sorted."""
    return sorted(v for v in smith(A, p, N).valuations if v < N)


def span_length(gens: Matrix, p: int, N: int) -> int:
    """Length of the submodule of (Z/p^N)^r spanned by the rows."""
    if not gens:
        return 0
    return sum(N - v for v in smith(gens, p, N, track=False).valuations if v < N)


def cokernel_length(A: Matrix, p: int, N: int, rank: int) -> int:
    return rank * N - span_length(A, p, N)


def kernel(A: Matrix, p: int, N: int, ncols: int | None = None) -> Matrix:
    """Generators of ``{x : x A = 0}`` in (Z/p^N)^rows."""
    mod = p**N
    s = smith(A, p, N, ncols)
    out = []
    for k, v in enumerate(s.valuations):
        if v == 0:
            continue
        scale = p ** (N - v) if v < N else 1
        out.append([x * scale % mod for x in s.U[k]])
    return out


def contains(gens: Matrix, vec: list[int], p: int, N: int) -> bool:
    return span_length(gens + [vec], p, N) == span_length(gens, p, N)


def spans_equal(a: Matrix, b: Matrix, p: int, N: int) -> bool:
    la, lb = span_length(a, p, N), span_length(b, p, N)
    return la == lb == span_length(a + b, p, N)


def rank_mod_p(A: Matrix, p: int) -> int:
    """Rank over F_p by sparse elimination (rows as dicts)."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in A:
        r = {k: x % p for k, x in enumerate(row) if x % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {k: x * inv % p for k, x in r.items()}
                rank += 1
                break
            f = r[lead]
            for k, x in piv.items():
                v = (r.get(k, 0) - f * x) % p
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
    return rank


def matmul(A: Matrix, B: Matrix, mod: int) -> Matrix:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) % mod for col in cols] for row in A]


def determinant(A: Matrix, mod: int) -> int:
    """Determinant over Z/mod by fraction-free Bareiss elimination over Z."""
    n = len(A)
    if n == 0:
        return 1 % mod
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] % mod


# -- modules with mixed lengths ---------------------------------------------------

@dataclass(frozen=True)
class ModuleShape:
    """``⊕ Z/p^{n_k}`` embedded in ``(Z/p^N)^r`` as described above."""

    p: int
    lengths: tuple[int, ...]
    N: int

    @property
    def rank(self) -> int:
        return len(self.lengths)

    @property
    def length(self) -> int:
        return sum(self.lengths)

    def embed(self, residues) -> list[int]:
        """Residues x_k mod p^{n_k} to the ambient vector."""
        p, N = self.p, self.N
        return [(x % p**n) * p ** (N - n) % p**N for x, n in zip(residues, self.lengths)]

    def generators(self) -> Matrix:
        return [self.embed([int(k == j) for j in range(self.rank)]) for k in range(self.rank)]


def hom_kernel(images: Matrix, source: ModuleShape, target_N: int) -> Matrix:
    """Kernel of ``⊕ Z/p^{n_k} -> T`` given images of the basis (rows, in an ambient
    over Z/p^target_N), returned as embedded vectors of ``source``.

    Computed on the free cover ``(Z/p^N)^r`` and pushed down; the relations
    p^{n_k} e_k are included so the cover's kernel contains them.
    """
    p, N = source.p, max(source.N, target_N)
    mod = p**N
    width = len(images[0]) if images else 0
    lift = [[x * p ** (N - target_N) % mod for x in row] for row in images]
    ker = kernel(lift, p, N, width) if width else [
        [int(i == j) for j in range(source.rank)] for i in range(source.rank)]
    out = []
    for vec in ker:
        out.append(source.embed(vec))
    return [v for v in out if any(v)]


def intersection(A: Matrix, B: Matrix, p: int, N: int) -> Matrix:
    """Generators of span(A) ∩ span(B) inside (Z/p^N)^r."""
    if not A or not B:
        return []
    mod = p**N
    width = len(A[0])
    stacked = [list(r) for r in A] + [[-x % mod for x in r] for r in B]
    out = []
    for x in kernel(stacked, p, N, width):
        v = [0] * width
        for coef, row in zip(x[: len(A)], A):
            if coef:
                for k, a in enumerate(row):
                    v[k] = (v[k] + coef * a) % mod
        if any(v):
            out.append(v)
    return out


def scale_rows(A: Matrix, k: int, mod: int) -> Matrix:
    return [[x * k % mod for x in row] for row in A]
