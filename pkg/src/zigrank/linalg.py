"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays holding residues in ``[0, p)``.  Every
routine takes the modulus explicitly; the default is 2.  Elimination uses the
first nonzero entry of each column as pivot, so results are deterministic.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix",
    "is_prime",
    "check_prime",
    "rref",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve",
    "quotient_map",
    "right_inverse",
    "inverse",
    "matmul",
    "identity",
    "zeros",
    "block_diag",
    "equal",
]

DEFAULT_FIELD = 2


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"field modulus must be prime, got {p}")
    if p >= 1 << 31:
        raise ValueError(f"field modulus {p} too large for int64 products")
    return p


def as_matrix(a, p: int = DEFAULT_FIELD, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``a`` to a 2-D int64 array reduced mod p.

    ``shape`` fixes the shape of empty inputs such as ``[]`` for a 0 x n map.
    """
    m = np.asarray(a, dtype=np.int64)
    if m.size == 0 and shape is not None:
        return np.zeros(shape, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(-1, 1) if shape is None or shape[1] == 1 else m.reshape(shape)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {m.shape}")
    if shape is not None and m.shape != tuple(shape):
        raise ValueError(f"expected shape {tuple(shape)}, got {m.shape}")
    return np.mod(m, p)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    if a.shape[1] == 0 or b.shape[0] == 0:
        return zeros(a.shape[0], b.shape[1])
    return np.mod(a @ b, p)


def equal(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_FIELD) -> bool:
    return a.shape == b.shape and not np.any(np.mod(a - b, p))


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def rref(m: np.ndarray, p: int = DEFAULT_FIELD, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Only the first ``ncols`` columns are eligible as pivots; row operations
    still act on the full width (for augmented systems).
    """
    r = np.mod(np.array(m, dtype=np.int64), p)
    rows, cols = r.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == rows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        if inv != 1:
            r[row] = (r[row] * inv) % p
        others = np.flatnonzero(r[:, col])
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, p: int = DEFAULT_FIELD) -> int:
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Columns spanning the null space; ``cols - rank`` of them."""
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def image_basis(m: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Independent subset of the columns of ``m`` spanning its column space."""
    if m.shape[1] == 0:
        return m.copy()
    _, pivots = rref(m, p)
    return m[:, pivots]


def solve(m: np.ndarray, b, p: int = DEFAULT_FIELD) -> np.ndarray | None:
    """Some ``x`` with ``m @ x == b`` (mod p), or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides; with a matrix every
    column must be solvable.
    """
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    rows, cols = m.shape
    if bb.shape[0] != rows:
        raise ValueError(f"right-hand side has {bb.shape[0]} rows, matrix has {rows}")
    aug = np.hstack([np.mod(m, p), np.mod(bb, p)])
    r, pivots = rref(aug, p, ncols=cols)
    k = len(pivots)
    if np.any(r[k:, cols:]):
        return None
    x = zeros(cols, bb.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x[:, 0] if vec else x


def quotient_map(ambient_dim: int, subspace_basis: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    """Surjection ``F^n -> F^(n-r)`` whose kernel is the given span.

    Rows form a basis of the annihilator of the span.
    """
    s = subspace_basis
    if s.size == 0:
        return identity(ambient_dim)
    if s.shape[0] != ambient_dim:
        raise ValueError(f"subspace vectors have length {s.shape[0]}, expected {ambient_dim}")
    return kernel_basis(s.T, p).T.copy()


def right_inverse(q: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    """``s`` with ``q @ s == I`` for a surjective ``q``."""
    rows, cols = q.shape
    s = solve(q, identity(rows), p) if rows else zeros(cols, 0)
    if s is None:
        raise ValueError("matrix is not surjective")
    return s


def inverse(m: np.ndarray, p: int = DEFAULT_FIELD) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, pivots = rref(np.hstack([np.mod(m, p), identity(n)]), p, ncols=n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return r[:, n:]
