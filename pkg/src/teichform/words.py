"""Words in the genus-2 surface group generators a1, b1, a2, b2.

Letters are signed integers: 1, 2, 3, 4 stand for a1, b1, a2, b2 and the
negatives for their inverses (written A1, B1, A2, B2).
"""

from __future__ import annotations

from itertools import product

NAMES = {1: "a1", 2: "b1", 3: "a2", 4: "b2", -1: "A1", -2: "B1", -3: "A2", -4: "B2"}
_BY_NAME = {v: k for k, v in NAMES.items()}

# shortlex letter order a1 < A1 < b1 < B1 < a2 < A2 < b2 < B2
LETTERS = (1, -1, 2, -2, 3, -3, 4, -4)
GENERATOR_NAMES = ("a1", "b1", "a2", "b2")


def letter_key(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)


def _reduce(letters):
    out = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return out


class Word(tuple):
    """Freely reduced word; multiplication concatenates and reduces."""

    def __new__(cls, letters=()):
        letters = [int(l) for l in letters]
        for l in letters:
            if l not in NAMES:
                raise ValueError(f"invalid letter {l}")
        return super().__new__(cls, _reduce(letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if not text or text in ("1", "e"):
            return cls()
        try:
            return cls(_BY_NAME[tok] for tok in text.replace("*", " ").split())
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r} in word {text!r}") from None

    def __mul__(self, other):
        return Word(tuple(self) + tuple(other))

    def inverse(self) -> "Word":
        return Word(-l for l in reversed(self))

    def __str__(self):
        return " ".join(NAMES[l] for l in self)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def shortlex_key(self):
        return (len(self), tuple(letter_key(l) for l in self))


RELATOR = Word.parse("a1 b1 A1 B1 a2 b2 A2 B2")


def reduced_words(max_len: int):
    """All freely reduced words of length <= max_len in shortlex order."""
    yield Word()
    for n in range(1, max_len + 1):
        for combo in product(LETTERS, repeat=n):
            if any(combo[i] == -combo[i + 1] for i in range(n - 1)):
                continue
            yield Word(combo)
