"""Dense matrices over a finite field, stored as lists of rows of ints.

Every function takes the field first; any object with ``add/sub/mul/inv``
and ``zero/one`` works (:class:`PrimeField` or :class:`ExtField`).  Gaussian
elimination always pivots on the first nonzero entry of the column.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import DimensionMismatch, FormatError, RankDeficient, Singular

Matrix = list  # list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Matrix, cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def columns(M: Matrix, idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in M]


def mat_mul(F, A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DimensionMismatch(f"{len(A)}x{len(A[0])} times {len(B)}x{len(B[0])}")
    cols = len(B[0]) if B else 0
    out = []
    add, mul = F.add, F.mul
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def vec_mat(F, v: Sequence[int], M: Matrix, cols: int | None = None) -> list[int]:
    """Row vector times matrix."""
    if len(v) != len(M):
        raise DimensionMismatch(f"vector of length {len(v)} against {len(M)} rows")
    if not M:
        return [0] * (cols or 0)
    return mat_mul(F, [list(v)], M)[0]


def _rref(F, M: Matrix, ncols: int | None = None):
    R = [list(row) for row in M]
    ncols = len(R[0]) if R else (ncols or 0)
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(R)) if R[i][col]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = F.inv(R[row][col])
        R[row] = [F.mul(inv, x) for x in R[row]]
        prow = R[row]
        for i in range(len(R)):
            f = R[i][col]
            if i != row and f:
                R[i] = [F.sub(x, F.mul(f, p)) if p else x for x, p in zip(R[i], prow)]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def rref_rank(F, M: Matrix) -> tuple[Matrix, int]:
    R, pivots = _rref(F, M)
    return R, len(pivots)


def rref(F, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    return _rref(F, M)


def rank(F, M: Matrix) -> int:
    return len(_rref(F, M)[1])


def null_space(F, M: Matrix, ncols: int | None = None) -> Matrix:
    """Basis (as rows) of {v : M v^T = 0}; ``ncols`` is needed when M has no rows."""
    n = len(M[0]) if M else (ncols or 0)
    R, pivots = _rref(F, M, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = F.neg(R[i][f])
        basis.append(v)
    return basis


def solve_square(F, M: Matrix, b: Sequence[int]) -> list[int]:
    """Solve M x = b for square nonsingular M."""
    n = len(M)
    if any(len(row) != n for row in M) or len(b) != n:
        raise DimensionMismatch("solve_square needs an n x n system")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = _rref(F, aug, n + 1)
    r = len([p for p in pivots if p < n])
    if r < n:
        raise Singular(f"rank {r} < {n}")
    return [R[i][n] for i in range(n)]


def inverse(F, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(n))]
    R, pivots = _rref(F, aug, 2 * n)
    if len([p for p in pivots if p < n]) < n:
        raise Singular("matrix is singular")
    return [row[n:] for row in R]


def is_nonsingular(F, M: Matrix) -> bool:
    n = len(M)
    return n == 0 or rank(F, M) == n


def find_singular_subset(F, M: Matrix) -> tuple[int, ...] | None:
    """First k-column subset (lexicographic) whose k x k minor is singular.

    Costs C(N, k) eliminations.  Raises RankDeficient when rank(M) < k.
    """
    k = len(M)
    if k == 0:
        return None
    N = len(M[0])
    if k > N or rank(F, M) < k:
        raise RankDeficient(f"matrix has rank < {k}")
    for S in combinations(range(N), k):
        if rank(F, columns(M, S)) < k:
            return S
    return None


def all_k_subsets_full_rank(F, M: Matrix) -> bool:
    """True iff every k-column submatrix of the k x N matrix is nonsingular (MDS)."""
    return find_singular_subset(F, M) is None


def in_row_space(F, M: Matrix, v: Sequence[int]) -> bool:
    if not M:
        return not any(v)
    return rank(F, list(M) + [list(v)]) == rank(F, M)


def row_space_equal(F, A: Matrix, B: Matrix) -> bool:
    """Mutual membership: every row of each lies in the span of the other."""
    return all(in_row_space(F, A, b) for b in B) and all(in_row_space(F, B, a) for a in A)


def format_matrix(F, M: Matrix, cols: int | None = None) -> str:
    cols = len(M[0]) if M else (cols or 0)
    lines = [f"{len(M)} {cols}"]
    lines += [" ".join(F.serialize(x) for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(F, text: str) -> Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    M, rest = read_matrix(F, lines)
    if rest:
        raise FormatError("trailing lines after matrix")
    return M


def read_matrix(F, lines: list[str]) -> tuple[Matrix, list[str]]:
    """Consume one matrix block from the front of ``lines``."""
    if not lines:
        raise FormatError("missing matrix header")
    try:
        rows, cols = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError(f"bad matrix header {lines[0]!r}") from None
    body = lines[1:1 + rows]
    if len(body) != rows:
        raise FormatError("matrix truncated")
    M = []
    for ln in body:
        toks = ln.split()
        if len(toks) != cols:
            raise FormatError(f"expected {cols} entries, got {len(toks)}")
        M.append([F.parse(t) for t in toks])
    return M, lines[1 + rows:]
