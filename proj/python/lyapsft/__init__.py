"""Lyapunov exponents and periodic spectra of Schrodinger cocycles over subshifts of finite type."""

from ._core import (
    ConsistencyError,
    DomainError,
    ErgodicityError,
    InputError,
    LyapsftError,
    MarkovMeasure,
    NumericalError,
    Potential,
    ResourceError,
    TransitionSystem,
    ValidationError,
    bands,
    classify,
    compute_j,
    discriminant,
    enumerate_periodic_orbits,
    estimate_lyapunov,
    positivity_certificate,
    union_s,
)

__all__ = [
    "ConsistencyError",
    "DomainError",
    "ErgodicityError",
    "InputError",
    "LyapsftError",
    "MarkovMeasure",
    "NumericalError",
    "Potential",
    "ResourceError",
    "TransitionSystem",
    "ValidationError",
    "bands",
    "classify",
    "compute_j",
    "discriminant",
    "enumerate_periodic_orbits",
    "estimate_lyapunov",
    "positivity_certificate",
    "union_s",
]
