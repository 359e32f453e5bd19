"""Verification suites, sample families and their shared machinery."""

from .base_suite import BaseSuite
from .certify_suite import CertificationSuite, suite_certification
from .derivative_suite import DerivativeSuite, suite_derivative
from .lemma_suite import LemmaSuite, suite_lemma_properties
from .samples import SampleFamily
from .sawtooth_suite import SawtoothSuite, suite_sawtooth_contrast
from .scaling_suite import ScalingSuite, suite_h2_scaling

__all__ = [
    "BaseSuite",
    "CertificationSuite",
    "DerivativeSuite",
    "LemmaSuite",
    "SampleFamily",
    "SawtoothSuite",
    "ScalingSuite",
    "suite_certification",
    "suite_derivative",
    "suite_h2_scaling",
    "suite_lemma_properties",
    "suite_sawtooth_contrast",
]
