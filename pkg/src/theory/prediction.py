"""Asymptotic predictions of the form E{φ(A_u)} ~ constant · u^{-α}."""

from dataclasses import dataclass


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Coefficient of u^{-α} with its contribution per facet dimension.

    ``coefficients`` (isotropic cases only) are the weights c_k with
    constant = Σ_k c_k ℒ_k(M); ``lks`` holds those ℒ_k(M). Both are needed to
    lift the prediction to higher LK curvatures.
    """

    alpha: float
    constant: float
    breakdown: tuple[float, ...]
    standard_error: float = 0.0
    coefficients: tuple[float, ...] | None = None
    lks: tuple[float, ...] | None = None

    @classmethod
    def from_breakdown(cls, alpha: float, breakdown, **kwargs) -> "AsymptoticPrediction":
        parts = tuple(float(b) for b in breakdown)
        return cls(alpha=alpha, constant=sum(parts), breakdown=parts, **kwargs)

    def at(self, u: float) -> float:
        """constant · u^{-α} for u > 0."""
        return self.constant * u ** (-self.alpha)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "constant": self.constant,
            "breakdown": {str(n): value for n, value in enumerate(self.breakdown)},
            "standard_error": self.standard_error,
            "coefficients": None if self.coefficients is None else list(self.coefficients),
            "lks": None if self.lks is None else list(self.lks),
        }
