"""fgkit: exact computation in finite-rank free groups.

Word arithmetic with free and cyclic reduction, homomorphisms given by
generator images, Stallings subgroup graphs with injectivity certificates,
exact integer Smith normal forms, and a verifier for a built-in family of
surface-group embeddings into the rank-3 free group.
"""

from .abelian import INFINITE, exponent_vector, image_matrix, quotient_order, smith_normal_form
from .family import (
    DEFAULT_G_VALUES,
    DEFAULT_L_VALUES,
    DEFAULT_SEED,
    FamilyParams,
    VerificationReport,
    boundary_class,
    boundary_word,
    check_shuffle_identities,
    domain_alphabet,
    embedding,
    generator_images_closed,
    generator_images_recursive,
    reference_quotient_order,
    shuffle_words,
    slope_distinctness,
    target_alphabet,
    verify,
)
from .homs import Homomorphism, compose, random_reduced_word
from .stallings import InjectivityResult, SubgroupGraph, build_subgroup_graph, is_injective
from .words import (
    Alphabet,
    AlphabetMismatch,
    CyclicWord,
    Word,
    WordSyntaxError,
    canonical_class,
    iter_reduced_words,
    parse_word,
    render_word,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatch",
    "CyclicWord",
    "DEFAULT_G_VALUES",
    "DEFAULT_L_VALUES",
    "DEFAULT_SEED",
    "FamilyParams",
    "Homomorphism",
    "INFINITE",
    "InjectivityResult",
    "SubgroupGraph",
    "VerificationReport",
    "Word",
    "WordSyntaxError",
    "boundary_class",
    "boundary_word",
    "build_subgroup_graph",
    "canonical_class",
    "check_shuffle_identities",
    "compose",
    "domain_alphabet",
    "embedding",
    "exponent_vector",
    "generator_images_closed",
    "generator_images_recursive",
    "image_matrix",
    "is_injective",
    "iter_reduced_words",
    "parse_word",
    "quotient_order",
    "random_reduced_word",
    "reference_quotient_order",
    "render_word",
    "shuffle_words",
    "slope_distinctness",
    "smith_normal_form",
    "target_alphabet",
    "verify",
]
