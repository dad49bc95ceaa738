"""A parametric family of embeddings of surface groups into the rank-3 free group.

The family is indexed by an even genus ``g >= 2`` and a winding parameter
``l >= 3``.  The domain is the free group on x1..x_{2g} (the fundamental
group of a genus-g surface with one boundary circle); the codomain is the
free group on y1, y2, y3.  Generator images are defined by a four-step
recursion seeded with ``x1 -> y3^3``; closed forms for the images exist in
terms of a pair of shuffle words and are re-derived here as checked claims,
never assumed.

:func:`verify` runs the full battery for one parameter pair: closed-form
agreement, the telescoping shuffle identities, first/last-letter structure
of images of single-parity words, an injectivity certificate via Stallings
folding, the order of the abelianized cokernel, and the canonical conjugacy
class of the image of the surface boundary word.  Mathematical failures are
recorded in the report, never raised.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .abelian import INFINITE, _InfiniteType, image_matrix, quotient_order
from .homs import Homomorphism, _random_reduced_letters
from .stallings import is_injective
from .words import Alphabet, CyclicWord, Word, canonical_class, iter_reduced_words, render_word

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_G_VALUES",
    "DEFAULT_L_VALUES",
    "FamilyParams",
    "VerificationReport",
    "target_alphabet",
    "domain_alphabet",
    "shuffle_words",
    "generator_images_recursive",
    "generator_images_closed",
    "embedding",
    "check_shuffle_identities",
    "first_shuffle_failure",
    "boundary_word",
    "boundary_class",
    "slope_distinctness",
    "reference_quotient_order",
    "verify",
]

DEFAULT_SEED = 1729
DEFAULT_G_VALUES = (2, 4, 6, 8)
DEFAULT_L_VALUES = tuple(range(3, 13))

REPORT_SCHEMA = "fgkit-report/1"


def target_alphabet() -> Alphabet:
    """The rank-3 codomain alphabet y1, y2, y3."""
    return Alphabet(("y1", "y2", "y3"))


def domain_alphabet(g: int) -> Alphabet:
    """The rank-2g domain alphabet x1 .. x_{2g}."""
    return Alphabet.numbered(2 * g, "x")


@dataclass(frozen=True)
class FamilyParams:
    """One instance of the family: genus g (even, >= 2), winding l (>= 3)."""

    g: int
    l: int

    def __post_init__(self) -> None:
        if self.g % 2 != 0:
            raise ValueError("g must be even")
        if self.g < 2:
            raise ValueError("g must be >= 2")
        if self.l < 3:
            raise ValueError("l must be >= 3")


def shuffle_words(l: int) -> tuple[Word, Word]:
    """The word pair (y1 y2 y3, y3^-3 y2^-l y1^3) driving the recursion.

    Conjugation blocks built from this pair telescope, which is what the
    shuffle identities and the closed image forms express.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    y = target_alphabet()
    u = Word(y, (1, 2, 3))
    v = Word(y, (-3, -3, -3) + (-2,) * l + (1, 1, 1))
    return u, v


def generator_images_recursive(params: FamilyParams) -> list[Word]:
    """Images of x1 .. x_{2g} by the defining four-step recursion."""
    y = target_alphabet()
    l = params.l
    y1 = Word(y, (1,))
    y2 = Word(y, (2,))
    y3 = Word(y, (3,))
    images = [y3 ** 3]
    for k in range(2, 2 * params.g + 1):
        prev = images[-1]
        step = k % 4
        if step == 1:
            img = y3 ** -1 * y2 ** -1 * prev * y2 ** l * y3 ** 3
        elif step == 2:
            img = y1 ** 3 * prev * y1
        elif step == 3:
            img = y3 ** -3 * y2 ** -l * prev * y2 * y3
        else:
            img = y1 ** -1 * prev * y1 ** -3
        images.append(img)
    return images


def generator_images_closed(params: FamilyParams) -> list[Word]:
    """Images of x1 .. x_{2g} built directly from the closed forms.

    Must agree with :func:`generator_images_recursive` entrywise; the
    agreement is one of the verified claims, not an assumption.
    """
    y = target_alphabet()
    u, v = shuffle_words(params.l)
    a = u.inverse() * v
    b = u * v.inverse()
    y1 = Word(y, (1,))
    y3 = Word(y, (3,))
    images = []
    for k in range(1, 2 * params.g + 1):
        i = (k - 1) // 4
        mid = a ** i * y3 ** 3 * b ** i
        step = k % 4
        if step == 1:
            img = mid
        elif step == 2:
            img = y1 ** 3 * mid * y1
        elif step == 3:
            img = v * mid * u
        else:
            img = y1 ** -1 * v * mid * u * y1 ** -3
        images.append(img)
    return images


def embedding(params: FamilyParams) -> Homomorphism:
    """The family homomorphism, with recursively built images."""
    return Homomorphism(
        domain_alphabet(params.g), target_alphabet(), generator_images_recursive(params)
    )


def first_shuffle_failure(
    i_max: int, j_max: int, l: int
) -> Optional[tuple[str, int, int]]:
    """First (branch, i, j) where a shuffle identity fails, or None.

    The four branches state how mixed conjugation blocks telescope:
    ``b^j u a^i`` collapses to ``v a^(i-j-1)`` when i > j and to
    ``b^(j-i) u`` otherwise, and ``b^j v a^i`` collapses to ``v a^(i-j)``
    when i >= j and to ``b^(j-i-1) u`` otherwise, where a = u^-1 v and
    b = u v^-1.
    """
    if i_max < 0 or j_max < 0:
        raise ValueError("bounds must be >= 0")
    u, v = shuffle_words(l)
    a = u.inverse() * v
    b = u * v.inverse()
    for i in range(i_max + 1):
        for j in range(j_max + 1):
            lhs = b ** j * u * a ** i
            if i > j:
                branch = "first:i>j"
                rhs = v * a ** (i - j - 1)
            else:
                branch = "first:i<=j"
                rhs = b ** (j - i) * u
            if lhs != rhs:
                return (branch, i, j)
            lhs = b ** j * v * a ** i
            if i >= j:
                branch = "second:i>=j"
                rhs = v * a ** (i - j)
            else:
                branch = "second:i<j"
                rhs = b ** (j - i - 1) * u
            if lhs != rhs:
                return (branch, i, j)
    return None


def check_shuffle_identities(i_max: int, j_max: int, l: int) -> bool:
    """True iff all four telescoping branches hold on the (i, j) grid."""
    return first_shuffle_failure(i_max, j_max, l) is None


def boundary_word(g: int) -> Word:
    """The length-4g word spelling the surface boundary circle.

    Four blocks: odd generator indices ascending with alternating signs
    starting +, the same with all signs flipped, even indices descending
    with alternating signs starting -, the same flipped.  Every generator
    occurs exactly once with each sign, so the word abelianizes to zero.
    """
    if g < 2 or g % 2 != 0:
        raise ValueError("g must be even and >= 2")
    letters: list[int] = []
    odd = list(range(1, 2 * g, 2))
    letters.extend(idx if t % 2 == 0 else -idx for t, idx in enumerate(odd))
    letters.extend(-idx if t % 2 == 0 else idx for t, idx in enumerate(odd))
    even_desc = list(range(2 * g, 0, -2))
    letters.extend(-idx if t % 2 == 0 else idx for t, idx in enumerate(even_desc))
    letters.extend(idx if t % 2 == 0 else -idx for t, idx in enumerate(even_desc))
    return Word(domain_alphabet(g), letters)


def boundary_class(params: FamilyParams, oriented: bool = False) -> CyclicWord:
    """Canonical conjugacy class of the image of the boundary word."""
    hom = embedding(params)
    return canonical_class(hom.apply(boundary_word(params.g)), oriented=oriented)


def slope_distinctness(
    g: int, l_values: Iterable[int], oriented: bool = False
) -> bool:
    """True iff the boundary classes for the given l values are pairwise
    distinct and all nontrivial."""
    values = list(l_values)
    classes = [boundary_class(FamilyParams(g, l), oriented=oriented) for l in values]
    if any(c.is_identity() for c in classes):
        return False
    return len(set(classes)) == len(values)


def reference_quotient_order(l: int) -> int:
    """Reference closed form, 4l + 4, for the abelianized cokernel order.

    The verifier recomputes the order mechanically and reports agreement
    with this value; a mismatch is a warning, not a failure, since only
    finiteness is load-bearing.
    """
    return 4 * l + 4


# -- first/last-letter structure ------------------------------------------

_EVEN_BOUNDARY_GENS = frozenset({1})
_ODD_BOUNDARY_GENS = frozenset({2, 3})


def _block_letters_hold(
    hom: Homomorphism,
    params: FamilyParams,
    seed: int,
    samples_per_parity: int = 200,
    max_sample_length: int = 8,
    exhaustive_length: int = 3,
) -> bool:
    """Check the first/last-letter structure of single-parity images.

    Nontrivial words in the even-index generators alone must map to words
    starting and ending in a power of y1; words in the odd-index generators
    alone must start and end in powers of y2 or y3.  Checked exhaustively
    up to ``exhaustive_length`` and on seeded random samples up to
    ``max_sample_length``.  Random full-alphabet words are also checked to
    have nontrivial images.
    """
    domain = hom.domain
    even_gens = tuple(range(2, 2 * params.g + 1, 2))
    odd_gens = tuple(range(1, 2 * params.g + 1, 2))
    parities = ((even_gens, _EVEN_BOUNDARY_GENS), (odd_gens, _ODD_BOUNDARY_GENS))

    def ends_ok(img: Word, boundary: frozenset[int]) -> bool:
        if img.is_identity():
            return False
        return abs(img.letters[0]) in boundary and abs(img.letters[-1]) in boundary

    for gens, boundary in parities:
        for w in iter_reduced_words(domain, exhaustive_length, allowed=gens):
            if w.is_identity():
                continue
            if not ends_ok(hom.apply(w), boundary):
                return False
    rng = random.Random(seed)
    for gens, boundary in parities:
        for _ in range(samples_per_parity):
            length = rng.randint(1, max_sample_length)
            w = Word(domain, _random_reduced_letters(rng, length, gens))
            if not ends_ok(hom.apply(w), boundary):
                return False
    all_gens = tuple(range(1, 2 * params.g + 1))
    for _ in range(samples_per_parity):
        length = rng.randint(1, max_sample_length)
        w = Word(domain, _random_reduced_letters(rng, length, all_gens))
        if hom.apply(w).is_identity():
            return False
    return True


# -- the per-instance verdict ----------------------------------------------


@dataclass
class VerificationReport:
    """Structured outcome of one (g, l) verification run."""

    params: FamilyParams
    injective: bool
    image_rank: int
    closed_form_ok: bool
    shuffle_identities_ok: bool
    block_letter_ok: bool
    quotient_order: Union[int, _InfiniteType]
    reference_order: int
    reference_order_match: bool
    boundary_class: CyclicWord
    boundary_class_oriented: CyclicWord
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def quotient_finite(self) -> bool:
        return self.quotient_order is not INFINITE

    @property
    def hard_pass(self) -> bool:
        """All checks that gate success; the reference-order comparison
        is excluded (a mismatch only warns)."""
        return (
            self.injective
            and self.closed_form_ok
            and self.shuffle_identities_ok
            and self.block_letter_ok
            and self.quotient_finite
            and not self.boundary_class.is_identity()
        )

    def to_json_dict(self, include_timings: bool = True) -> dict:
        data = {
            "schema": REPORT_SCHEMA,
            "params": {"g": self.params.g, "l": self.params.l},
            "injective": self.injective,
            "image_rank": self.image_rank,
            "closed_form_ok": self.closed_form_ok,
            "shuffle_identities_ok": self.shuffle_identities_ok,
            "block_letter_ok": self.block_letter_ok,
            "quotient_order": (
                "INFINITE" if self.quotient_order is INFINITE else self.quotient_order
            ),
            "reference_order": self.reference_order,
            "reference_order_match": self.reference_order_match,
            "boundary_class": render_word(self.boundary_class.to_word()),
            "boundary_class_oriented": render_word(
                self.boundary_class_oriented.to_word()
            ),
            "hard_pass": self.hard_pass,
            "warnings": list(self.warnings),
        }
        if include_timings:
            data["timings"] = dict(self.timings)
        return data


def verify(params: FamilyParams, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Run every check for one parameter pair and return the report.

    Mathematical failures are recorded in the report fields; only invalid
    parameters raise.
    """
    timings: dict[str, float] = {}

    def timed(name: str, fn):
        t0 = time.perf_counter()
        result = fn()
        timings[name] = time.perf_counter() - t0
        return result

    images_rec = timed("images_recursive", lambda: generator_images_recursive(params))
    images_closed = timed("images_closed", lambda: generator_images_closed(params))
    closed_form_ok = images_rec == images_closed

    hom = Homomorphism(domain_alphabet(params.g), target_alphabet(), images_rec)
    shuffle_ok = timed(
        "shuffle_identities",
        lambda: check_shuffle_identities(params.g, params.g, params.l),
    )
    block_ok = timed(
        "block_letters", lambda: _block_letters_hold(hom, params, seed)
    )
    inj = timed("injectivity", lambda: is_injective(hom))
    order = timed("quotient_order", lambda: quotient_order(image_matrix(hom), 3))
    reference = reference_quotient_order(params.l)
    order_match = order == reference

    bword = boundary_word(params.g)
    image = hom.apply(bword)
    cls_unoriented = timed(
        "boundary_class", lambda: canonical_class(image, oriented=False)
    )
    cls_oriented = canonical_class(image, oriented=True)

    warnings = []
    if order is INFINITE:
        warnings.append("abelianized cokernel is infinite")
    elif not order_match:
        warnings.append(
            f"quotient order {order} != reference closed form {reference}"
        )

    return VerificationReport(
        params=params,
        injective=inj.verdict,
        image_rank=inj.image_rank,
        closed_form_ok=closed_form_ok,
        shuffle_identities_ok=shuffle_ok,
        block_letter_ok=block_ok,
        quotient_order=order,
        reference_order=reference,
        reference_order_match=order_match,
        boundary_class=cls_unoriented,
        boundary_class_oriented=cls_oriented,
        warnings=warnings,
        timings=timings,
    )
