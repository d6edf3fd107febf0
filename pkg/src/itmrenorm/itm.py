"""Exact simulation of the three-interval translation maps.

The map translates [0, 1-alpha) by alpha, [1-alpha, 1-beta) by beta and
[1-beta, 1) by beta-1. Everything here is exact rational arithmetic:
finite/infinite-type classification hinges on equality tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .alphabet import Perm
from .exact import Vec3, format_fraction, parse_fraction
from .renorm import InductionState, length_vector, run_induction


@dataclass(frozen=True)
class BtParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not (0 <= self.beta <= self.alpha <= 1):
            raise ValueError(
                f"parameters outside region 0 <= beta <= alpha <= 1: "
                f"({self.alpha}, {self.beta})"
            )

    @property
    def lengths(self) -> Vec3:
        return length_vector(1 - self.alpha, self.alpha - self.beta, self.beta)

    @classmethod
    def from_lengths(cls, a, b, c) -> "BtParams":
        a, b, c = length_vector(a, b, c)
        return cls(alpha=b + c, beta=c)


class IntervalSet:
    """Sorted disjoint union of half-open rational subintervals of [0,1)."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Sequence[Tuple[Fraction, Fraction]] = ()):
        pairs = sorted(
            (Fraction(lo), Fraction(hi)) for lo, hi in intervals if lo < hi
        )
        merged: List[Tuple[Fraction, Fraction]] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                last_lo, last_hi = merged[-1]
                merged[-1] = (last_lo, max(last_hi, hi))
            else:
                merged.append((lo, hi))
        if merged and (merged[0][0] < 0 or merged[-1][1] > 1):
            raise ValueError("intervals must lie inside [0, 1]")
        self.intervals = tuple(merged)

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls([(Fraction(0), Fraction(1))])

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def contains(self, x: Fraction) -> bool:
        return any(lo <= x < hi for lo, hi in self.intervals)

    def issubset(self, other: "IntervalSet") -> bool:
        return all(
            any(olo <= lo and hi <= ohi for olo, ohi in other.intervals)
            for lo, hi in self.intervals
        )

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def __repr__(self):
        parts = ", ".join(f"[{lo}, {hi})" for lo, hi in self.intervals)
        return f"IntervalSet({parts})"

    def to_json(self) -> str:
        return json.dumps(
            [[format_fraction(lo), format_fraction(hi)] for lo, hi in self.intervals]
        )

    @classmethod
    def from_json(cls, text: str) -> "IntervalSet":
        return cls(
            [(parse_fraction(lo), parse_fraction(hi)) for lo, hi in json.loads(text)]
        )


def bt_apply(params: BtParams, x: Fraction) -> Fraction:
    x = Fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"point {x} outside [0, 1)")
    alpha, beta = params.alpha, params.beta
    if x < 1 - alpha:
        return x + alpha
    if x < 1 - beta:
        return x + beta
    return x + beta - 1


def image_of_set(params: BtParams, s: IntervalSet) -> IntervalSet:
    """Exact image T(S): split at the discontinuities, translate, merge."""
    alpha, beta = params.alpha, params.beta
    cuts = (Fraction(0), 1 - alpha, 1 - beta, Fraction(1))
    shifts = (alpha, beta, beta - 1)
    out = []
    for lo, hi in s.intervals:
        for (clo, chi), shift in zip(zip(cuts, cuts[1:]), shifts):
            plo, phi = max(lo, clo), min(hi, chi)
            if plo < phi:
                out.append((plo + shift, phi + shift))
    return IntervalSet(out)


def attractor_iterates(
    params: BtParams, max_n: int
) -> Tuple[List[IntervalSet], Optional[int]]:
    """Nested images X_n = T^n([0,1)) and the first n with X_n = X_{n+1}.

    T maps the interval into itself, so X_{n+1} is contained in X_n and
    X_n equals the intersection of the first n forward images. Returns
    (iterates, k) where k is the stabilization step, or None if the
    sequence did not stabilize within max_n steps.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    current = IntervalSet.full()
    iterates = [current]
    for n in range(max_n):
        nxt = image_of_set(params, current)
        iterates.append(nxt)
        if nxt == current:
            return iterates, n
        current = nxt
    return iterates, None


@dataclass(frozen=True)
class Classification:
    kind: str  # "finite" | "infinite_up_to" | "degenerate"
    step: int


def classify(params: BtParams, max_steps: int) -> Classification:
    """Finite/infinite-type verdict from the renormalization.

    Entering the hole means finite type; an exact tie (possible only for
    rationally dependent lengths) is reported as degenerate rather than
    resolved by a convention.
    """
    run = run_induction(InductionState(Perm.P123, params.lengths), max_steps)
    if run.outcome == "hole":
        return Classification("finite", run.step)
    if run.outcome == "degenerate":
        return Classification("degenerate", run.step)
    return Classification("infinite_up_to", max_steps)
