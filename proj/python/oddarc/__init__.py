"""Odd arc algebras, real two-row Springer fibers and the odd chronological TQFT."""

from ._core import (
    ArcAlgebra,
    apply_cobordism,
    betti,
    circles,
    enumerate_matchings,
    enumerate_weights,
    surgery_sequence,
    verify,
)

__all__ = [
    "ArcAlgebra",
    "apply_cobordism",
    "betti",
    "circles",
    "enumerate_matchings",
    "enumerate_weights",
    "surgery_sequence",
    "verify",
]
