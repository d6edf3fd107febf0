"""Induction step, runs, reconstruction, and the Gauss-map equivalence."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itmrenorm.alphabet import Letter, Perm
from itmrenorm.renorm import (
    DEGENERATE,
    HOLE,
    InductionState,
    gauss_step,
    gauss_via_induction,
    induction_step,
    length_vector,
    reconstruct,
    run_induction,
    trace_csv,
)

F = Fraction


def state(perm, a, b, c):
    return InductionState(perm, length_vector(F(a), F(b), F(c)))


class TestInductionStep:
    def test_case1_cut(self):
        # a > b + c cuts the loser pair off the winner and keeps the state
        step = induction_step(state(Perm.P123, F(3, 5), F(3, 10), F(1, 10)))
        assert step.letter is Letter.A
        assert step.next == state(Perm.P123, F(1, 3), F(1, 2), F(1, 6))

    def test_case3_swap(self):
        # a < c swaps the interval order and the permutation
        step = induction_step(state(Perm.P123, F(1, 10), F(3, 10), F(3, 5)))
        assert step.letter is Letter.CA
        assert step.next == state(Perm.P213, F(1, 9), F(1, 3), F(5, 9))

    def test_hole(self):
        # c < a < b + c is the hole
        assert induction_step(state(Perm.P123, F(2, 5), F(2, 5), F(1, 5))) is HOLE

    def test_tie_is_degenerate(self):
        assert induction_step(state(Perm.P123, F(1, 2), F(1, 4), F(1, 4))) is DEGENERATE
        assert induction_step(state(Perm.P123, F(1, 4), F(1, 2), F(1, 4))) is DEGENERATE

    def test_p213_mirrors_p123(self):
        s = induction_step(state(Perm.P213, F(3, 10), F(3, 5), F(1, 10)))
        assert s.letter is Letter.B
        assert s.next.perm is Perm.P213
        swapped = induction_step(state(Perm.P123, F(3, 5), F(3, 10), F(1, 10)))
        a, b, c = s.next.lengths
        assert (b, a, c) == swapped.next.lengths


@st.composite
def rational_lengths(draw, max_den=10**4):
    q = draw(st.integers(min_value=3, max_value=max_den))
    a = draw(st.integers(min_value=1, max_value=q - 2))
    b = draw(st.integers(min_value=1, max_value=q - a - 1))
    c = q - a - b
    return F(a, q), F(b, q), F(c, q)


class TestRunAndReconstruct:
    @settings(max_examples=200, deadline=None)
    @given(rational_lengths())
    def test_reconstruct_every_surviving_prefix(self, lengths):
        start = InductionState(Perm.P123, lengths)
        run = run_induction(start, 60)
        for i in range(len(run.word) + 1):
            prefix = run.word[:i]
            assert reconstruct(prefix, run.states[i].lengths) == lengths

    @settings(max_examples=200, deadline=None)
    @given(rational_lengths())
    def test_step_arithmetic(self, lengths):
        # cuts shrink the winner by the losers; swaps trim c by the winner
        run = run_induction(InductionState(Perm.P123, lengths), 40)
        for i, letter in enumerate(run.word):
            a, b, c = run.states[i].lengths
            a2, b2, c2 = run.states[i + 1].lengths
            assert a2 + b2 + c2 == 1
            if letter is Letter.A:
                assert (a2, b2, c2) == ((a - b - c) / a, b / a, c / a)
            elif letter is Letter.B:
                assert (a2, b2, c2) == (a / b, (b - a - c) / b, c / b)
            elif letter is Letter.CA:
                t = 1 - a
                assert run.states[i + 1].perm is Perm.P213
                assert (a2, b2, c2) == (a / t, b / t, (c - a) / t)
            else:
                t = 1 - b
                assert run.states[i + 1].perm is Perm.P123
                assert (a2, b2, c2) == (a / t, b / t, (c - b) / t)

    def test_rational_parameters_terminate_or_survive(self):
        run = run_induction(state(Perm.P123, F(2, 5), F(2, 5), F(1, 5)), 10)
        assert run.outcome == "hole"
        assert run.step == 0

    def test_reconstruct_rejects_bad_path(self):
        with pytest.raises(ValueError):
            reconstruct((Letter.A, Letter.B), (F(1, 3), F(1, 3), F(1, 3)))

    def test_trace_csv_header(self):
        run = run_induction(state(Perm.P123, F(3, 5), F(3, 10), F(1, 10)), 5)
        lines = trace_csv(run).strip().splitlines()
        assert lines[0] == "step,case,letter,a,b,c"
        assert len(lines) >= 2


class TestGauss:
    def test_worked_example(self):
        assert gauss_step(F(9, 10), F(1, 2)) == (F(5, 9), F(4, 9))
        assert gauss_via_induction(F(9, 10), F(1, 2)) == (F(5, 9), F(4, 9))

    def test_not_applicable_iff_image_leaves_region(self):
        rng = random.Random(7)
        seen_none = 0
        for _ in range(1000):
            q = rng.randint(5, 9999)
            k = rng.randint(2, q - 1)
            p = rng.randint(1, k - 1)
            alpha, beta = F(k, q), F(p, q)
            new_alpha, new_beta = gauss_step(alpha, beta)
            via = gauss_via_induction(alpha, beta)
            if via is None:
                seen_none += 1
                assert not 0 < new_beta < new_alpha
            else:
                assert 0 < new_beta < new_alpha
                assert via == (new_alpha, new_beta)
        assert seen_none > 0

    def test_precondition(self):
        with pytest.raises(ValueError):
            gauss_step(F(1, 2), F(3, 4))
        with pytest.raises(ValueError):
            gauss_via_induction(F(1, 2), F(3, 4))
