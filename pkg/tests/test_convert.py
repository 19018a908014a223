"""Sweep reduction, acceptor conversions, and DFA plumbing."""

import itertools

import pytest

from iufst import (
    MachineError,
    Nfa,
    dfa_complement,
    dfa_isomorphic,
    dfa_minimize,
    dfa_product,
    gen_block_nfa,
    gen_e,
    gen_unary,
    in_e,
    in_unary,
    nfa_to_1niufst,
    nfa_to_dfa,
    predicate_to_min_dfa,
    reduced_state_universe,
    run,
    sweep_reduce,
    to_nfa,
)


class TestSweepReduce:
    def test_universe_formula(self):
        # 3 original states, 2 lanes: 1 + 3 + 9 tuples
        assert reduced_state_universe(3, 2) == 13
        red = sweep_reduce(gen_e(2, 2), 2, 2)
        assert red.meta["universe_states"] == 13
        assert red.sweep_bound == 1

    def test_universe_within_2n_pow_i(self):
        for n, k in [(2, 2), (2, 4), (3, 2)]:
            t = gen_unary(n, k) if n >= 2 else None
            for i in range(1, k + 1):
                assert reduced_state_universe(n, i) <= 2 * n**i

    def test_lane_bounds_checked(self, e22):
        with pytest.raises(MachineError):
            sweep_reduce(e22, 2, 0)
        with pytest.raises(MachineError):
            sweep_reduce(e22, 2, 3)
        with pytest.raises(MachineError):
            sweep_reduce(e22, "log", 1)

    def test_single_lane_language_equivalent(self, e22):
        red = sweep_reduce(e22, 2, 1)
        assert red.sweep_bound == 2
        for length in range(9):
            for w in itertools.product("ab", repeat=length):
                assert run(red, w, 2, 10_000).accepted == run(e22, w, 2, 10_000).accepted

    def test_full_reduction_equivalent(self, e22):
        red = sweep_reduce(e22, 2, 2)
        for length in range(10):
            for w in itertools.product("ab", repeat=length):
                assert run(red, w, 1, 10_000).accepted == in_e(2, 2, w), w

    def test_determinism_preserved(self):
        t = gen_unary(2, 4)
        for i in (1, 2, 3, 4):
            red = sweep_reduce(t, 4, i)
            assert red.is_deterministic
            for m in range(33):
                w = ("a",) * m
                assert run(red, w, red.sweep_bound, 10_000).accepted == in_unary(2, 4, w)

    def test_nondeterminism_not_introduced_spuriously(self, e21):
        assert not sweep_reduce(e21, 1, 1).is_deterministic


class TestToNfa:
    def test_state_bound(self):
        for t, n, k in [(gen_e(2, 2), 3, 2), (gen_unary(2, 3), 2, 3)]:
            nfa = to_nfa(t, k)
            assert len(nfa.states) <= 2 * n**k

    def test_unary_language(self):
        nfa = to_nfa(gen_unary(2, 3), 3)
        for m in range(33):
            assert nfa.accepts(("a",) * m) == (m % 8 == 0)

    def test_accepts_empty_word_exactly_when_machine_does(self, e21, unary22):
        assert not to_nfa(e21, 1).accepts(())
        assert to_nfa(unary22, 2).accepts(())

    def test_identity_acceptor_keeps_lambda(self):
        from tests.test_core import identity_machine

        nfa = to_nfa(identity_machine(), 1)
        assert nfa.accepts(())
        for w in [("a",), ("a", "b")]:
            assert nfa.accepts(w)


class TestPowersetAndMinimize:
    def test_powerset_bound(self, block_nfa2):
        small = Nfa(
            states=("p", "q", "r"),
            alphabet=("a",),
            initial="p",
            accepting=("r",),
            transitions={("p", "a"): ("p", "q"), ("q", "a"): ("r",)},
        )
        dfa = nfa_to_dfa(small)
        assert len(dfa.states) <= 2**3
        assert dfa.is_complete

    def test_minimal_unary_dfa(self):
        nfa = to_nfa(gen_unary(2, 3), 3)
        m = dfa_minimize(nfa_to_dfa(nfa))
        assert len(m.states) == 8
        assert m.meta["complete_states"] == 8

    def test_minimize_idempotent(self, block_nfa2):
        d = nfa_to_dfa(block_nfa2)
        m1 = dfa_minimize(d)
        m2 = dfa_minimize(m1)
        assert m1.states == m2.states and m1.transitions == m2.transitions

    def test_minimal_dfas_isomorphic(self):
        # two different presentations of multiples-of-4 over a
        d1 = predicate_to_min_dfa(lambda w: len(w) % 4 == 0, ("a",), 16)
        d2 = dfa_minimize(nfa_to_dfa(to_nfa(gen_unary(2, 2), 2)))
        assert dfa_isomorphic(d1, d2)

    def test_complement_and_product(self):
        d1 = predicate_to_min_dfa(lambda w: len(w) % 2 == 0, ("a",), 10)
        d2 = predicate_to_min_dfa(lambda w: len(w) % 3 == 0, ("a",), 12)
        inter = dfa_product(d1, d2, "intersection")
        union = dfa_product(d1, d2, "union")
        diff = dfa_product(d1, d2, "difference")
        comp = dfa_complement(d1)
        for m in range(13):
            w = ("a",) * m
            assert inter.accepts(w) == (m % 2 == 0 and m % 3 == 0)
            assert union.accepts(w) == (m % 2 == 0 or m % 3 == 0)
            assert diff.accepts(w) == (m % 2 == 0 and m % 3 != 0)
            assert comp.accepts(w) == (m % 2 != 0)

    def test_dead_state_counted_separately(self):
        # language {a}: the minimal complete DFA needs a dead state
        d = predicate_to_min_dfa(lambda w: w == ("a",), ("a",), 8)
        assert d.meta["complete_states"] == 3
        assert d.meta["partial_states"] == 2


class TestNfaEmbedding:
    def test_single_word_language(self):
        nfa = Nfa(
            states=("p", "q"),
            alphabet=("a",),
            initial="p",
            accepting=("q",),
            transitions={("p", "a"): ("q",)},
        )
        t = nfa_to_1niufst(nfa)
        assert len(t.states) == 3
        for m in range(7):
            assert run(t, ("a",) * m, 1, 1000).accepted == (m == 1)

    def test_state_count_exact(self, block_nfa2):
        t = nfa_to_1niufst(block_nfa2)
        assert len(t.states) == len(block_nfa2.states) + 1

    def test_roundtrip_language(self, block_nfa2):
        t = nfa_to_1niufst(block_nfa2)
        back = to_nfa(t, 1)
        for length in range(9):
            for w in itertools.product("01#", repeat=length):
                assert back.accepts(w) == block_nfa2.accepts(w), w
