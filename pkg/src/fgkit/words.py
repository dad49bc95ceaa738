"""Exact arithmetic on freely reduced words in finite-rank free groups.

A letter is a nonzero ``int``: ``+k`` is the k-th generator of an
:class:`Alphabet` (1-indexed), ``-k`` its inverse.  A :class:`Word` is an
immutable, freely reduced sequence of letters; the empty word is the group
identity.  All operations are pure and return new values, so words are safe
to share between threads.

The text grammar is whitespace-separated atoms ``name`` or ``name^k`` with
``k`` a signed decimal integer; the single token ``1`` denotes the empty
word.  Rendering always emits maximal runs, e.g. ``y1^3 y2^-2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

__all__ = [
    "Alphabet",
    "Word",
    "CyclicWord",
    "WordSyntaxError",
    "AlphabetMismatch",
    "parse_word",
    "render_word",
    "canonical_class",
    "iter_reduced_words",
]


class WordSyntaxError(ValueError):
    """Raised when word text does not conform to the grammar."""


class AlphabetMismatch(ValueError):
    """Raised when combining values that live over different alphabets."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_ATOM_RE = re.compile(r"(?P<name>[A-Za-z][A-Za-z0-9_]*)(?:\^(?P<exp>[+-]?[0-9]+))?\Z")


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of free generators, identified by name.

    >>> Alphabet.numbered(3, "y").names
    ('y1', 'y2', 'y3')
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.names) < 1:
            raise ValueError("alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")

    @classmethod
    def numbered(cls, rank: int, prefix: str = "y") -> "Alphabet":
        """Alphabet with generators ``prefix1 .. prefixN``."""
        return cls(tuple(f"{prefix}{k}" for k in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """1-based generator index of ``name``."""
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise KeyError(name) from None

    def name(self, gen: int) -> str:
        return self.names[gen - 1]

    def letters(self) -> tuple[int, ...]:
        """All 2*rank signed letters, in canonical order y1, y1^-1, y2, ..."""
        out: list[int] = []
        for g in range(1, self.rank + 1):
            out.extend((g, -g))
        return tuple(out)


def _letter_key(letter: int) -> int:
    # total order: generator index ascending, positive sign before negative
    return 2 * abs(letter) + (0 if letter > 0 else 1)


def _free_reduce(letters: Iterable[int], rank: int) -> tuple[int, ...]:
    out: list[int] = []
    for s in letters:
        if not isinstance(s, int) or s == 0 or abs(s) > rank:
            raise ValueError(f"letter {s!r} out of range for rank {rank}")
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


class Word:
    """A freely reduced word.  Construction reduces its argument.

    >>> ab = Alphabet.numbered(2, "a")
    >>> str(Word(ab, (1, 2, -2, 1)))
    'a1^2'
    >>> Word(ab, (1, -1)).is_identity()
    True
    """

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = ()) -> None:
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", _free_reduce(letters, alphabet.rank))

    @classmethod
    def _wrap(cls, alphabet: Alphabet, reduced: tuple[int, ...]) -> "Word":
        # trusted constructor: `reduced` must already be freely reduced
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "letters", reduced)
        return w

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word._wrap, (self.alphabet, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.alphabet, self.letters))

    def __repr__(self) -> str:
        return f"Word({render_word(self)!r})"

    def __str__(self) -> str:
        return render_word(self)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        out = list(self.letters)
        for s in other.letters:
            if out and out[-1] == -s:
                out.pop()
            else:
                out.append(s)
        return Word._wrap(self.alphabet, tuple(out))

    def inverse(self) -> "Word":
        return Word._wrap(self.alphabet, tuple(-s for s in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        """n-fold reduced product; negative n inverts.

        >>> ab = Alphabet.numbered(1, "a")
        >>> str(Word(ab, (1,)) ** 3)
        'a1^3'
        """
        if n == 0:
            return Word._wrap(self.alphabet, ())
        if n < 0:
            return (self ** (-n)).inverse()
        # w = c u c^-1 with u cyclically reduced, so w^n = c u^n c^-1 and
        # the n copies of u concatenate with no cancellation.
        core, conj = self.cyclic_reduce()
        mid = core.letters * n
        return Word._wrap(
            self.alphabet, conj.letters + mid + conj.inverse().letters
        )

    def runs(self) -> Iterator[tuple[int, int]]:
        """Maximal runs as (generator, signed exponent) pairs."""
        letters = self.letters
        i = 0
        while i < len(letters):
            j = i
            while j < len(letters) and letters[j] == letters[i]:
                j += 1
            gen = abs(letters[i])
            exp = (j - i) if letters[i] > 0 else -(j - i)
            yield gen, exp
            i = j

    def cyclic_reduce(self) -> tuple["CyclicWord", "Word"]:
        """Split ``w`` as ``conj * core * conj^-1`` with ``core`` cyclically reduced.

        >>> ab = Alphabet.numbered(2, "a")
        >>> core, conj = Word(ab, (1, 2, -1)).cyclic_reduce()
        >>> core.letters, conj.letters
        ((2,), (1,))
        """
        ls = self.letters
        i, j = 0, len(ls)
        while j - i >= 2 and ls[i] == -ls[j - 1]:
            i += 1
            j -= 1
        core = CyclicWord(self.alphabet, ls[i:j])
        conj = Word._wrap(self.alphabet, ls[:i])
        return core, conj

    def canonical_class(self, oriented: bool = True) -> "CyclicWord":
        return canonical_class(self, oriented=oriented)

    def exponent_sum(self, gen: int) -> int:
        return sum(1 if s == gen else -1 if s == -gen else 0 for s in self.letters)


class CyclicWord:
    """A cyclically reduced word standing for a conjugacy class.

    Equality and hashing are rotation-invariant, since all rotations of a
    cyclically reduced word are conjugate representatives of the same class.
    Orientation is respected: a class and its inverse class compare unequal
    unless they happen to coincide.
    """

    __slots__ = ("alphabet", "letters", "_canon")

    def __init__(self, alphabet: Alphabet, letters: Iterable[int] = ()) -> None:
        letters = tuple(letters)
        reduced = _free_reduce(letters, alphabet.rank)
        if letters != reduced:
            raise ValueError("letters are not freely reduced")
        if len(reduced) >= 2 and reduced[0] == -reduced[-1]:
            raise ValueError("word is not cyclically reduced")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", reduced)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("CyclicWord is immutable")

    def __reduce__(self):
        return (CyclicWord, (self.alphabet, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def _canonical_rotation(self) -> tuple[int, ...]:
        cached = self._canon
        if cached is None:
            cached = _least_rotation(self.letters)
            object.__setattr__(self, "_canon", cached)
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self._canonical_rotation() == other._canonical_rotation()
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self._canonical_rotation()))

    def __repr__(self) -> str:
        return f"CyclicWord({render_word(self.to_word())!r})"

    def __str__(self) -> str:
        return render_word(self.to_word())

    def is_identity(self) -> bool:
        return not self.letters

    def to_word(self) -> Word:
        return Word._wrap(self.alphabet, self.letters)

    def rotated(self, k: int) -> "CyclicWord":
        ls = self.letters
        if not ls:
            return self
        k %= len(ls)
        return CyclicWord(self.alphabet, ls[k:] + ls[:k])

    def inverse_class(self) -> "CyclicWord":
        return CyclicWord(self.alphabet, tuple(-s for s in reversed(self.letters)))


def _least_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least rotation under the total letter order."""
    n = len(letters)
    if n == 0:
        return letters
    keys = [_letter_key(s) for s in letters]
    # Booth's least-rotation algorithm on the doubled key sequence.
    s = keys + keys
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    k %= n
    return letters[k:] + letters[:k]


def canonical_class(w: Word, oriented: bool = True) -> CyclicWord:
    """Deterministic representative of the conjugacy class of ``w``.

    With ``oriented=False`` the representative is shared by the class of
    ``w`` and the class of ``w^-1`` (the unoriented comparison used for
    boundary slopes).  Equal outputs iff the classes are equal.

    >>> ab = Alphabet.numbered(2, "a")
    >>> a, b = Word(ab, (1,)), Word(ab, (2,))
    >>> canonical_class(a * b) == canonical_class(b * a)
    True
    >>> canonical_class(a * b) == canonical_class((a * b).inverse())
    False
    >>> canonical_class(a * b, oriented=False) == canonical_class(
    ...     (a * b).inverse(), oriented=False)
    True
    """
    core, _ = w.cyclic_reduce()
    best = _least_rotation(core.letters)
    if not oriented and core.letters:
        inv = tuple(-s for s in reversed(core.letters))
        cand = _least_rotation(inv)
        if [_letter_key(s) for s in cand] < [_letter_key(s) for s in best]:
            best = cand
    return CyclicWord(w.alphabet, best)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse word text and return its free reduction.

    >>> y = Alphabet.numbered(3, "y")
    >>> parse_word("y3^3", y).letters
    (3, 3, 3)
    >>> parse_word("y1 y1^-1", y).is_identity()
    True
    >>> parse_word("1", y).is_identity()
    True
    """
    stripped = text.strip()
    if stripped == "1":
        return Word._wrap(alphabet, ())
    letters: list[int] = []
    for atom in stripped.split():
        m = _ATOM_RE.match(atom)
        if m is None:
            raise WordSyntaxError(f"malformed atom {atom!r}")
        name = m.group("name")
        try:
            gen = alphabet.index(name)
        except KeyError:
            raise WordSyntaxError(f"unknown generator {name!r}") from None
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        # exponent 0 is legal and contributes nothing
        letter = gen if exp > 0 else -gen
        letters.extend([letter] * abs(exp))
    return Word(alphabet, letters)


def render_word(w: Word) -> str:
    """Render ``w`` in the text grammar; the empty word renders as ``1``.

    >>> y = Alphabet.numbered(3, "y")
    >>> render_word(parse_word("y3 y3 y3 y2^-1", y))
    'y3^3 y2^-1'
    """
    if w.is_identity():
        return "1"
    parts = []
    for gen, exp in w.runs():
        name = w.alphabet.name(gen)
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return " ".join(parts)


def iter_reduced_words(
    alphabet: Alphabet,
    max_length: int,
    allowed: Optional[Iterable[int]] = None,
) -> Iterator[Word]:
    """Yield every reduced word of length <= max_length, shortest first.

    ``allowed`` restricts the generators used (1-based indices).  The order
    is deterministic: within a length, words are lexicographic under the
    canonical letter order.
    """
    gens = tuple(sorted(allowed)) if allowed is not None else tuple(
        range(1, alphabet.rank + 1)
    )
    letters = [s for g in gens for s in (g, -g)]
    frontier: list[tuple[int, ...]] = [()]
    yield Word._wrap(alphabet, ())
    for _ in range(max_length):
        nxt: list[tuple[int, ...]] = []
        for prefix in frontier:
            for s in letters:
                if prefix and prefix[-1] == -s:
                    continue
                seq = prefix + (s,)
                nxt.append(seq)
                yield Word._wrap(alphabet, seq)
        frontier = nxt
