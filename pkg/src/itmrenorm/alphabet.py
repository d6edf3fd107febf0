"""The four-letter alphabet of the renormalization and its Markov structure.

Letters A and CA act at permutation state (1,2,3); B and CB act at
(2,1,3). A and B keep the state, CA and CB swap it. Words are paths in
this two-state graph.
"""

from __future__ import annotations

import enum
from typing import Iterable, Tuple

from .exact import Mat3


class Perm(enum.Enum):
    P123 = "123"
    P213 = "213"

    def other(self) -> "Perm":
        return Perm.P213 if self is Perm.P123 else Perm.P123


class Letter(enum.Enum):
    A = "A"
    CA = "CA"
    B = "B"
    CB = "CB"


# lambda = M lambda' bookkeeping matrices, one per letter
MATRIX = {
    Letter.A: ((1, 1, 1), (0, 1, 0), (0, 0, 1)),
    Letter.CA: ((1, 0, 0), (0, 1, 0), (1, 0, 1)),
    Letter.B: ((1, 0, 0), (1, 1, 1), (0, 0, 1)),
    Letter.CB: ((1, 0, 0), (0, 1, 0), (0, 1, 1)),
}

SOURCE = {
    Letter.A: Perm.P123,
    Letter.CA: Perm.P123,
    Letter.B: Perm.P213,
    Letter.CB: Perm.P213,
}

TARGET = {
    Letter.A: Perm.P123,
    Letter.CA: Perm.P213,
    Letter.B: Perm.P213,
    Letter.CB: Perm.P123,
}

Word = Tuple[Letter, ...]

_CHAR = {Letter.A: "A", Letter.CA: "a", Letter.B: "B", Letter.CB: "b"}
_LETTER = {v: k for k, v in _CHAR.items()}


def matrix_of(letter: Letter) -> Mat3:
    return MATRIX[letter]


def is_admissible(word: Iterable[Letter], start_state: Perm = Perm.P123) -> bool:
    """Whether the word is a path in the two-state graph from start_state."""
    state = start_state
    for letter in word:
        if SOURCE[letter] is not state:
            return False
        state = TARGET[letter]
    return True


def end_state(word: Iterable[Letter], start_state: Perm = Perm.P123) -> Perm:
    state = start_state
    for letter in word:
        if SOURCE[letter] is not state:
            raise ValueError(f"letter {letter} not admissible at state {state}")
        state = TARGET[letter]
    return state


def word_to_string(word: Iterable[Letter]) -> str:
    return "".join(_CHAR[l] for l in word)


def word_from_string(text: str) -> Word:
    try:
        return tuple(_LETTER[ch] for ch in text)
    except KeyError as exc:
        raise ValueError(f"invalid word character {exc.args[0]!r}") from None
