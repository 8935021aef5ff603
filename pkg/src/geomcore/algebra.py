"""Determinant identity for sums of scaled rank-deficient matrices.

If A_1..A_k are n×n with rank(A_i) <= m and k·m <= n, then

    det(Σ r_i A_i) = r_1^m ... r_k^m det(Σ A_i).

When k·m < n both sides vanish; when k·m = n each A_i = U_i V_iᵀ with
m columns and the sum factors as U diag(r) Vᵀ.
"""

from collections.abc import Sequence

import numpy as np

from ..exceptions import DomainError, PreconditionError

RANK_TOLERANCE = 1e-10


def numerical_rank(matrix: np.ndarray, tol: float = RANK_TOLERANCE) -> int:
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def det_rank_identity_check(
    matrices: Sequence[np.ndarray],
    scalars: Sequence[float],
    m: int | None = None,
) -> tuple[float, float]:
    """Return (det(Σ r_i A_i), Π r_i^m · det(Σ A_i)).

    ``m`` defaults to the largest numerical rank among the matrices.

    Raises:
        DomainError: on shape mismatches
        PreconditionError: if a matrix has numerical rank above m, or k·m > n
    """
    mats = [np.asarray(a, dtype=float) for a in matrices]
    if not mats or len(mats) != len(scalars):
        raise DomainError("need one scalar per matrix and at least one matrix")
    n = mats[0].shape[0]
    if any(a.shape != (n, n) for a in mats):
        raise DomainError("matrices must all be square of the same size")
    ranks = [numerical_rank(a) for a in mats]
    if m is None:
        m = max(ranks)
    for idx, rank in enumerate(ranks):
        if rank > m:
            raise PreconditionError(f"matrix {idx} has numerical rank {rank} > {m}")
    if len(mats) * m > n:
        raise PreconditionError(
            f"{len(mats)} matrices of rank {m} exceed dimension {n}; identity does not apply"
        )

    scaled = sum(r * a for r, a in zip(scalars, mats, strict=True))
    plain = sum(mats)
    factor = float(np.prod(np.asarray(scalars, dtype=float) ** m))
    return float(np.linalg.det(scaled)), factor * float(np.linalg.det(plain))
