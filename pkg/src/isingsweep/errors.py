"""Exception and warning types shared across the package."""


class NotHermitianError(ValueError):
    """Input matrix deviates from Hermiticity beyond tolerance."""


class NotTracePreservingError(ValueError):
    """Kraus set fails the completeness relation sum(K^dag K) = I."""


class DegenerateFormulationError(ValueError):
    """Closed-form triplet eigenvectors requested where the formula is 0/0 (g_x ~ 0)."""


class DegenerateDeviationError(ValueError):
    """Deviation extraction attempted on a (numerically) fully mixed state."""


class NonPositiveTimeError(ValueError):
    """A duration that must be strictly positive was not."""


class NonPositiveTauError(NonPositiveTimeError):
    """Effective step duration must be strictly positive."""


class UnphysicalNoiseError(ValueError):
    """Relaxation times violate the physicality bound t1 >= t2 / 2."""


class OptimizationDidNotImproveWarning(UserWarning):
    """Schedule optimizer fell below the quadrature-uniform baseline; baseline used."""
