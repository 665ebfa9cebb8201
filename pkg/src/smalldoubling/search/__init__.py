"""Balls, pruned subset enumeration, explicit constructions and verification."""
from .balls import BallSpec, ball
from .constructions import construct_4k5, random_two_ap, sample_two_ap_params
from .enumerate import EnumerationTask, enumerate_indices, enumerate_small_doubling, product_table
from .verify import THEOREMS, VerificationReport, revalidate_counterexample, verify

__all__ = [
    "BallSpec",
    "ball",
    "construct_4k5",
    "random_two_ap",
    "sample_two_ap_params",
    "EnumerationTask",
    "enumerate_indices",
    "enumerate_small_doubling",
    "product_table",
    "THEOREMS",
    "VerificationReport",
    "revalidate_counterexample",
    "verify",
]
