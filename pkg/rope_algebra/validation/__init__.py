from rope_algebra.validation.checks import (
    MasaProbe,
    check_commutativity,
    check_independence,
    check_masa,
    check_relativity,
    check_reversibility,
    check_skewness,
    masa_probe,
    validate_all,
)
from rope_algebra.validation.models import CheckResult, ValidationReport

__all__ = [
    "CheckResult",
    "MasaProbe",
    "ValidationReport",
    "check_commutativity",
    "check_independence",
    "check_masa",
    "check_relativity",
    "check_reversibility",
    "check_skewness",
    "masa_probe",
    "validate_all",
]
