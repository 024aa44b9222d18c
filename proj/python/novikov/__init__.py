"""Twisted (Morse-Novikov) cohomology of simplicial complexes with rank-1 local systems."""

from ._novikov import (
    Complex,
    LocalSystem,
    NovikovError,
    betti,
    catalog,
    gauge_transform,
    generic_system,
    long_exact_sequence,
    loop_basis,
    model,
    monodromy,
    product,
    pullback_to_product,
    relative_betti,
    suites,
    validate_system,
    verify,
)

__all__ = [
    "Complex",
    "LocalSystem",
    "NovikovError",
    "betti",
    "catalog",
    "gauge_transform",
    "generic_system",
    "long_exact_sequence",
    "loop_basis",
    "model",
    "monodromy",
    "product",
    "pullback_to_product",
    "relative_betti",
    "suites",
    "validate_system",
    "verify",
]
