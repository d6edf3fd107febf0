"""Words over the four-letter alphabet and their big-integer products.

Products are exact; a positive product contracts the nonnegative cone,
and its columns (projectivized) give the simplex cylinder of the word.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .alphabet import (
    MATRIX,
    SOURCE,
    TARGET,
    Letter,
    Perm,
    Word,
    is_admissible,
)
from .exact import IDENTITY3, Mat3, mat_mul, normalize_simplex

UNIFORM = "uniform"

# probability of picking the state-preserving edge (A at P123, B at P213)
Policy = Union[str, float]


def product(word: Sequence[Letter]) -> Mat3:
    """Ordered exact product of the letter matrices along the word."""
    if not is_admissible(word, SOURCE[word[0]] if word else Perm.P123):
        raise ValueError("word is not a path in the transition graph")
    return _balanced_product(tuple(word))


def _balanced_product(word: Tuple[Letter, ...]) -> Mat3:
    # divide and conquer keeps big-integer operand sizes balanced
    n = len(word)
    if n == 0:
        return IDENTITY3
    if n == 1:
        return MATRIX[word[0]]
    mid = n // 2
    return mat_mul(_balanced_product(word[:mid]), _balanced_product(word[mid:]))


def _stay_probability(policy: Policy) -> float:
    if policy == UNIFORM:
        return 0.5
    p = float(policy)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"invalid edge weight {policy!r}")
    return p


def random_word(
    rng_seed: int, length: int, policy: Policy = UNIFORM, start: Perm = Perm.P123
) -> Word:
    """Reproducible word: i.i.d. choice between the two edges at each state."""
    if length < 0:
        raise ValueError("length must be >= 0")
    p_stay = _stay_probability(policy)
    rng = random.Random(rng_seed)
    state = start
    letters = []
    for _ in range(length):
        stay = rng.random() < p_stay
        if state is Perm.P123:
            letter = Letter.A if stay else Letter.CA
        else:
            letter = Letter.B if stay else Letter.CB
        letters.append(letter)
        state = TARGET[letter]
    return tuple(letters)


class NotContracted(ValueError):
    """The word's product is not strictly positive."""


def limit_direction(word: Sequence[Letter]) -> np.ndarray:
    """Unit 3-vector spanning the dominant image direction of the product.

    Computed as the left singular vector of the top singular value, with
    the exact integer product demoted to floats only after rescaling by
    its largest entry. Requires a strictly positive product.
    """
    m = product(word)
    if min(min(row) for row in m) <= 0:
        raise NotContracted("product has nonpositive entries")
    top = max(max(row) for row in m)
    scaled = np.array(
        [[float(Fraction(e, top)) for e in row] for row in m], dtype=float
    )
    u, _, _ = np.linalg.svd(scaled)
    f = u[:, 0]
    if f.sum() < 0:
        f = -f
    norm = np.linalg.norm(f)
    assert abs(norm - 1.0) < 1e-12
    if f.min() < 0:
        raise NotContracted("leading direction left the nonnegative cone")
    return f


def cylinder(word: Sequence[Letter]) -> Tuple[tuple, tuple, tuple]:
    """Projective image of the simplex: the normalized product columns."""
    if word and SOURCE[word[0]] is not Perm.P123:
        raise ValueError("cylinders are anchored at the (1,2,3) state")
    m = product(word)
    return tuple(
        normalize_simplex(tuple(m[i][j] for i in range(3))) for j in range(3)
    )


def hole_triangle(perm: Perm) -> Tuple[tuple, tuple, tuple]:
    """Vertices of the parameter triangle where the induction stops."""
    h = Fraction(1, 2)
    if perm is Perm.P123:
        return (
            (Fraction(0), Fraction(1), Fraction(0)),
            (h, h, Fraction(0)),
            (h, Fraction(0), h),
        )
    return (
        (Fraction(1), Fraction(0), Fraction(0)),
        (h, h, Fraction(0)),
        (Fraction(0), h, h),
    )


def block_decomposition(word: Sequence[Letter]) -> Tuple[Tuple[Word, ...], Word]:
    """Split into maximal blocks A^k CA / B^k CB plus the incomplete tail."""
    blocks = []
    current = []
    for letter in word:
        current.append(letter)
        if letter in (Letter.CA, Letter.CB):
            blocks.append(tuple(current))
            current = []
    return tuple(blocks), tuple(current)


def ifs_point_map(
    letter: Letter, point: Sequence[Fraction], printed: bool = False
) -> tuple:
    """Projective self-map of the simplex attached to a letter.

    The default is the projective action of the letter matrix on column
    vectors, which reproduces the exact three-piece simplex partition.
    printed=True selects instead the explicit closed-form fractional
    maps, which for CA and CB coincide with the action of the transposed
    matrices; they are kept only for comparison.
    """
    x, y, z = (Fraction(v) for v in point)
    if not printed:
        m = MATRIX[letter]
        return normalize_simplex(
            tuple(m[i][0] * x + m[i][1] * y + m[i][2] * z for i in range(3))
        )
    if letter is Letter.A:
        d = 2 - x
        return (1 / Fraction(d), y / d, z / d)
    if letter is Letter.B:
        d = 2 - y
        return (x / d, 1 / Fraction(d), z / d)
    if letter is Letter.CA:
        d = 2 - x - y
        return ((1 - y) / d, y / d, z / d)
    d = 2 - x - y
    return (x / d, (1 - x) / d, z / d)
