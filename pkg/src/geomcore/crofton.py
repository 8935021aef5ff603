"""Crofton lift of mean-EC coefficients to mean LK curvatures."""

from collections.abc import Sequence

from ..exceptions import DomainError
from ..special import flag_coeff


def crofton_lift(coeffs: Sequence[float], j: int) -> list[float]:
    """Coefficients of ℒ_{j+k}(M), k = 0..N-j, in E{ℒ_j(A_u)}.

    ``coeffs`` holds C_0(u)..C_N(u), the coefficients of ℒ_k(M) in E{φ(A_u)}.
    """
    n = len(coeffs) - 1
    if not 0 <= j <= n:
        raise DomainError(f"LK index must lie in [0, {n}], got {j}")
    return [flag_coeff(j + k, k) * coeffs[k] for k in range(n - j + 1)]
