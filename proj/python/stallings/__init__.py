"""Decision procedures for finite-rank free groups.

Reduced words and conjugacy, Stallings fold factorizations, subgroup graphs
with membership and index, Whitehead's algorithm for primitivity and partial
free bases, and exact systole computations on length structures.
"""

from _stallings import (  # noqa: F401
    StallingsGraph,
    abelian_basis_element,
    abelian_partial_basis,
    abelianize,
    apply_endomorphism,
    are_conjugate,
    classify_endomorphism,
    compose,
    cyclic_reduce,
    extract_root,
    fold_trace,
    invert,
    is_partial_free_basis,
    is_primitive,
    is_surjective,
    multiply,
    reduce,
    systole,
    whitehead_trace,
)

__all__ = [
    "StallingsGraph",
    "abelian_basis_element",
    "abelian_partial_basis",
    "abelianize",
    "apply_endomorphism",
    "are_conjugate",
    "classify_endomorphism",
    "compose",
    "cyclic_reduce",
    "extract_root",
    "fold_trace",
    "invert",
    "is_partial_free_basis",
    "is_primitive",
    "is_surjective",
    "multiply",
    "reduce",
    "systole",
    "whitehead_trace",
]
