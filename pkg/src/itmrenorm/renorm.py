"""Renormalization of the three-interval translation maps.

One step cuts the longest of two competing intervals and records a
letter. Ties between exact rational lengths are reported as degenerate
rather than dispatched, and the parameter region where the map drops to
two intervals is reported as the hole.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .alphabet import MATRIX, SOURCE, Letter, Perm, Word, word_to_string
from .exact import Vec3, mat_vec, normalize_simplex


@dataclass(frozen=True)
class InductionState:
    perm: Perm
    lengths: Vec3

    def __post_init__(self):
        a, b, c = self.lengths
        if a < 0 or b < 0 or c < 0 or a + b + c != 1:
            raise ValueError(f"invalid length vector {self.lengths}")


@dataclass(frozen=True)
class Step:
    next: InductionState
    letter: Letter


class Hole:
    """Case 2: the map reduces to two intervals (finite type)."""

    def __repr__(self):
        return "Hole"


class Degenerate:
    """An exact tie in a case comparison; the dispatch is undefined."""

    def __repr__(self):
        return "Degenerate"


HOLE = Hole()
DEGENERATE = Degenerate()


def length_vector(a, b, c) -> Vec3:
    v = (Fraction(a), Fraction(b), Fraction(c))
    if sum(v) != 1 or min(v) < 0:
        raise ValueError(f"not a length vector: {v}")
    return v


def induction_step(state: InductionState):
    """One renormalization step: Step(next, letter), HOLE, or DEGENERATE."""
    a, b, c = state.lengths
    if state.perm is Perm.P123:
        if a == b + c or a == c:
            return DEGENERATE
        if a > b + c:
            lengths = normalize_simplex((a - b - c, b, c))
            return Step(InductionState(Perm.P123, lengths), Letter.A)
        if a < c:
            lengths = normalize_simplex((a, b, c - a))
            return Step(InductionState(Perm.P213, lengths), Letter.CA)
        return HOLE  # c < a < b + c
    else:
        if b == a + c or b == c:
            return DEGENERATE
        if b > a + c:
            lengths = normalize_simplex((a, b - a - c, c))
            return Step(InductionState(Perm.P213, lengths), Letter.B)
        if b < c:
            lengths = normalize_simplex((a, b, c - b))
            return Step(InductionState(Perm.P123, lengths), Letter.CB)
        return HOLE  # c < b < a + c


@dataclass(frozen=True)
class InductionRun:
    word: Word
    outcome: str  # "hole" | "survived" | "degenerate"
    step: Optional[int]  # step index for hole/degenerate, None if survived
    final: InductionState
    states: Tuple[InductionState, ...]  # states[0] is the start


def run_induction(state: InductionState, max_steps: int) -> InductionRun:
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    word = []
    states = [state]
    for n in range(max_steps):
        result = induction_step(state)
        if result is HOLE:
            return InductionRun(tuple(word), "hole", n, state, tuple(states))
        if result is DEGENERATE:
            return InductionRun(tuple(word), "degenerate", n, state, tuple(states))
        word.append(result.letter)
        state = result.next
        states.append(state)
    return InductionRun(tuple(word), "survived", None, state, tuple(states))


def reconstruct(word: Sequence[Letter], final_lengths: Vec3) -> Vec3:
    """Undo the induction: normalize(M_{w_1} ... M_{w_n} final_lengths).

    Equals the starting lengths exactly when (word, final) came from
    run_induction. Raises on a word that is not a path in the graph.
    """
    _check_path(word)
    v = tuple(final_lengths)
    for letter in reversed(word):
        v = mat_vec(MATRIX[letter], v)
    return normalize_simplex(v)


def _check_path(word: Sequence[Letter]) -> None:
    from .alphabet import TARGET

    for prev, cur in zip(word, word[1:]):
        if TARGET[prev] is not SOURCE[cur]:
            raise ValueError(f"inadmissible transition {prev} -> {cur}")


def gauss_step(alpha: Fraction, beta: Fraction) -> Tuple[Fraction, Fraction]:
    """(alpha, beta) -> (beta/alpha, (beta-1)/alpha + floor(1/alpha))."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha == 0:
        raise ZeroDivisionError("alpha must be nonzero")
    if not (0 < beta < alpha < 1):
        raise ValueError("requires 0 < beta < alpha < 1")
    n = Fraction(1, 1) / alpha
    floor_inv = n.numerator // n.denominator
    return beta / alpha, (beta - 1) / alpha + floor_inv


def gauss_via_induction(
    alpha: Fraction, beta: Fraction
) -> Optional[Tuple[Fraction, Fraction]]:
    """Accelerated induction realizing one Gauss-map step.

    Runs floor(1/alpha)-1 cutting steps of the first kind followed by one
    order-swapping step on the lengths (1-alpha, alpha-beta, beta), then
    rescales the support by alpha. Returns None when the swap step is not
    reached (the new beta would leave the parameter region).
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not (0 < beta < alpha < 1):
        raise ValueError("requires 0 < beta < alpha < 1")
    a, b, c = 1 - alpha, alpha - beta, beta
    inv = Fraction(1, 1) / alpha
    n = inv.numerator // inv.denominator - 1
    # n unnormalized steps with a > b + c strictly, tracked exactly
    for _ in range(n):
        if not a > b + c:
            return None
        a = a - b - c
    # one swap step needs a < c strictly
    if not a < c:
        return None
    c = c - a
    support = a + b + c
    assert support == alpha
    return (a + c) / alpha, c / alpha


def trace_csv(run: InductionRun) -> str:
    """CSV trace of an induction run: step, case, letter, a, b, c."""
    case_of = {Letter.A: "1", Letter.CA: "3", Letter.B: "1", Letter.CB: "3"}
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["step", "case", "letter", "a", "b", "c"])
    for i, letter in enumerate(run.word):
        a, b, c = run.states[i].lengths
        writer.writerow([i, case_of[letter], word_to_string([letter]), a, b, c])
    if run.outcome in ("hole", "degenerate"):
        a, b, c = run.final.lengths
        case = "2" if run.outcome == "hole" else "tie"
        writer.writerow([run.step, case, "", a, b, c])
    return buf.getvalue()
