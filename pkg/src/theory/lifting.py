"""Higher LK curvatures of excursion sets from Euler-characteristic weights."""

from ..exceptions import DomainError, PreconditionError
from ..geomcore import crofton_lift
from .prediction import AsymptoticPrediction


def with_lks(prediction: AsymptoticPrediction, coefficients, lks_of_m) -> AsymptoticPrediction:
    """Attach isotropic ℒ_k weights and the curvatures ℒ_k(M) to a prediction."""
    coefficients = tuple(float(c) for c in coefficients)
    lks_of_m = tuple(float(v) for v in lks_of_m)
    if len(coefficients) != len(lks_of_m):
        raise DomainError(f"{len(coefficients)} coefficients for {len(lks_of_m)} curvatures")
    return AsymptoticPrediction(
        alpha=prediction.alpha,
        constant=prediction.constant,
        breakdown=prediction.breakdown,
        standard_error=prediction.standard_error,
        coefficients=coefficients,
        lks=lks_of_m,
    )


def stable_mean_lk_asymptote(prediction: AsymptoticPrediction, j: int) -> AsymptoticPrediction:
    """u^{α} E ℒ_j(A_u) → Σ_k [j+k k] c_k ℒ_{j+k}(M).

    ``prediction`` must carry isotropic weights c_k and the curvatures ℒ_k(M)
    (see with_lks).
    """
    if prediction.coefficients is None or prediction.lks is None:
        raise PreconditionError("LK lifting needs an isotropic prediction with ℒ_k weights")
    n = len(prediction.lks) - 1
    if not 0 <= j <= n:
        raise DomainError(f"LK index must lie in [0, {n}], got {j}")
    lifted = crofton_lift(prediction.coefficients, j)
    lks = prediction.lks[j:]
    breakdown = [c * v for c, v in zip(lifted, lks, strict=True)]
    return AsymptoticPrediction.from_breakdown(
        prediction.alpha, breakdown, coefficients=tuple(lifted), lks=lks
    )
