"""Exact arithmetic with reduced words in free groups F_d and free products
of cyclic groups (Z/mZ)^{*d}.

Letters are small integers.  For ``free:d`` the alphabet has 2d codes and
generator i / its inverse are ``2i`` / ``2i+1``, so inversion is ``code ^ 1``.
For ``cyclic:m:d`` a letter is a syllable (factor i, exponent e in 1..m-1)
encoded as ``i*(m-1) + (e-1)``.  Words are tuples of letter codes and are
totally ordered by ``(length, letter sequence)``; that order fixes the
summation order everywhere downstream, which keeps floating point results
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, MalformedInputError

FREE = "free"
CYCLIC = "cyclic"

MAX_RANK = 64
MAX_ORDER = 256

_ABC = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Presentation:
    """A group presentation: ``free:d`` or ``cyclic:m:d``."""

    kind: str
    d: int
    m: int = 0  # cyclic factor order; 0 for free groups

    def __post_init__(self):
        if self.kind == FREE:
            if not (1 <= self.d <= MAX_RANK) or self.m != 0:
                raise DomainError(f"free rank must be in 1..{MAX_RANK}")
        elif self.kind == CYCLIC:
            if not (1 <= self.d <= MAX_RANK):
                raise DomainError(f"number of factors must be in 1..{MAX_RANK}")
            if not (2 <= self.m <= MAX_ORDER):
                raise DomainError(f"cyclic order must be in 2..{MAX_ORDER}")
        else:
            raise DomainError(f"unknown presentation kind {self.kind!r}")

    @classmethod
    def free(cls, d: int) -> "Presentation":
        return cls(FREE, d)

    @classmethod
    def cyclic(cls, m: int, d: int) -> "Presentation":
        return cls(CYCLIC, d, m)

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse a group descriptor, ``free:<d>`` or ``cyclic:<m>:<d>``."""
        parts = text.strip().split(":")
        try:
            if parts[0] == FREE and len(parts) == 2:
                return cls.free(int(parts[1]))
            if parts[0] == CYCLIC and len(parts) == 3:
                return cls.cyclic(int(parts[1]), int(parts[2]))
        except (ValueError, DomainError) as exc:
            raise MalformedInputError(f"bad group descriptor {text!r}: {exc}") from exc
        raise MalformedInputError(
            f"bad group descriptor {text!r}; expected free:<d> or cyclic:<m>:<d>")

    def descriptor(self) -> str:
        if self.kind == FREE:
            return f"free:{self.d}"
        return f"cyclic:{self.m}:{self.d}"

    @property
    def alphabet_size(self) -> int:
        return 2 * self.d if self.kind == FREE else self.d * (self.m - 1)

    def inv_letter(self, code: int) -> int:
        if self.kind == FREE:
            return code ^ 1
        w = self.m - 1
        return (code // w) * w + (w - 1 - code % w)

    def letter_factor(self, code: int) -> int:
        """Factor index of a cyclic letter (generator index for free groups)."""
        if self.kind == FREE:
            return code >> 1
        return code // (self.m - 1)

    def letter_exp(self, code: int) -> int:
        if self.kind == FREE:
            raise DomainError("free letters carry no exponent")
        return code % (self.m - 1) + 1

    def check_letter(self, code: int) -> None:
        if not isinstance(code, int) or not (0 <= code < self.alphabet_size):
            raise MalformedInputError(
                f"letter {code!r} outside the alphabet of {self.descriptor()}")

    def letter_str(self, code: int) -> str:
        if self.kind == FREE:
            i = code >> 1
            if self.d <= 26:
                c = _ABC[i]
                return c.upper() if code & 1 else c
            return ("G" if code & 1 else "g") + str(i + 1)
        return f"{self.letter_factor(code) + 1}^{self.letter_exp(code)}"

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Parse a word.  ``e`` is the identity.  Free groups with d <= 26 use
        compact letters (``abA``; uppercase means inverse); any rank accepts
        dot-separated ``g<i>``/``G<i>`` tokens.  Cyclic free products use
        dot-separated ``<factor>^<exp>`` tokens with 1-based factors."""
        text = text.strip()
        if text in ("", "e"):
            return ()
        letters: list[int] = []
        if self.kind == FREE:
            if "." in text or text[0] in "gG" and any(ch.isdigit() for ch in text):
                for tok in text.split("."):
                    if not tok or tok[0] not in "gG" or not tok[1:].isdigit():
                        raise MalformedInputError(f"bad free-group token {tok!r}")
                    i = int(tok[1:]) - 1
                    if not 0 <= i < self.d:
                        raise MalformedInputError(f"generator index {tok!r} out of range")
                    letters.append(2 * i + (1 if tok[0] == "G" else 0))
            else:
                for ch in text:
                    i = _ABC.find(ch.lower())
                    if i < 0 or i >= self.d:
                        raise MalformedInputError(
                            f"letter {ch!r} outside the alphabet of {self.descriptor()}")
                    letters.append(2 * i + (1 if ch.isupper() else 0))
        else:
            for tok in text.split("."):
                head, sep, tail = tok.partition("^")
                if not sep or not head.isdigit() or not tail.isdigit():
                    raise MalformedInputError(f"bad syllable {tok!r}; expected <factor>^<exp>")
                i, e = int(head) - 1, int(tail)
                if not 0 <= i < self.d:
                    raise MalformedInputError(f"factor index in {tok!r} out of range")
                if not 1 <= e <= self.m - 1:
                    raise MalformedInputError(f"exponent in {tok!r} outside 1..{self.m - 1}")
                letters.append(i * (self.m - 1) + (e - 1))
        return tuple(letters)

    def word_str(self, letters: tuple[int, ...]) -> str:
        if not letters:
            return "e"
        if self.kind == FREE and self.d <= 26:
            return "".join(self.letter_str(c) for c in letters)
        return ".".join(self.letter_str(c) for c in letters)


def _reduce_tuple(pres: Presentation, seq) -> tuple[int, ...]:
    out: list[int] = []
    if pres.kind == FREE:
        for code in seq:
            if out and out[-1] == code ^ 1:
                out.pop()
            else:
                out.append(code)
    else:
        m = pres.m
        w = m - 1
        for code in seq:
            if out and out[-1] // w == code // w:
                e = (out[-1] % w + code % w + 2) % m
                if e == 0:
                    out.pop()
                else:
                    out[-1] = (code // w) * w + (e - 1)
            else:
                out.append(code)
    return tuple(out)


def _concat_reduced(pres: Presentation, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Reduced product of two already-reduced words (cancellation happens only
    at the junction)."""
    i, j = len(a), 0
    if pres.kind == FREE:
        while i > 0 and j < len(b) and a[i - 1] == b[j] ^ 1:
            i -= 1
            j += 1
        return a[:i] + b[j:]
    m = pres.m
    w = m - 1
    mid: tuple[int, ...] = ()
    while i > 0 and j < len(b):
        x, y = a[i - 1], b[j]
        if x // w != y // w:
            break
        e = (x % w + y % w + 2) % m
        i -= 1
        j += 1
        if e != 0:
            # merged syllable; its factor differs from both new neighbours
            mid = ((x // w) * w + (e - 1),)
            break
    return a[:i] + mid + b[j:]


def _invert_tuple(pres: Presentation, letters: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(pres.inv_letter(c) for c in reversed(letters))


class GroupElement:
    """A reduced word.  Immutable; equality and ordering are by
    ``(length, letter sequence)`` within one presentation."""

    __slots__ = ("presentation", "letters")

    def __init__(self, presentation: Presentation, letters=()):
        codes = tuple(letters)
        for c in codes:
            presentation.check_letter(c)
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "letters", _reduce_tuple(presentation, codes))

    @classmethod
    def _make(cls, presentation: Presentation, letters: tuple[int, ...]) -> "GroupElement":
        # trusted constructor: letters must already be reduced
        self = object.__new__(cls)
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "letters", letters)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.presentation == other.presentation
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.presentation, self.letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement._make(self.presentation,
                                  _invert_tuple(self.presentation, self.letters))

    def sort_key(self):
        return (len(self.letters), self.letters)

    def __lt__(self, other: "GroupElement"):
        if self.presentation != other.presentation:
            raise DomainError("cannot order elements of different presentations")
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"<{self.presentation.descriptor()} {self.presentation.word_str(self.letters)}>"

    def __str__(self):
        return self.presentation.word_str(self.letters)


def identity(pres: Presentation) -> GroupElement:
    return GroupElement._make(pres, ())


def letter_element(pres: Presentation, code: int) -> GroupElement:
    pres.check_letter(code)
    return GroupElement._make(pres, (code,))


def reduce(letters, pres: Presentation) -> GroupElement:
    """Reduce a raw letter sequence to its unique normal form.  Idempotent."""
    return GroupElement(pres, letters)


def multiply(u: GroupElement, v: GroupElement) -> GroupElement:
    if u.presentation != v.presentation:
        raise DomainError("cannot multiply elements of different presentations")
    return GroupElement._make(u.presentation,
                              _concat_reduced(u.presentation, u.letters, v.letters))


def inverse(u: GroupElement) -> GroupElement:
    return u.inverse()


def length(u: GroupElement) -> int:
    """Word length (syllable count for cyclic free products)."""
    return len(u.letters)


def sort_key(u: GroupElement):
    return u.sort_key()
