"""Decision procedures checked against brute-force enumeration on a
seeded fuzz corpus and on the hand-built examples."""

import itertools
import random

import pytest

from iufst import (
    Transducer,
    equivalent,
    gen_e,
    gen_unary,
    includes,
    is_empty,
    is_finite,
    is_universal,
    run,
    to_nfa,
)
from iufst.decide import (
    emptiness_witness,
    equivalence_witness,
    inclusion_witness,
    infiniteness_witness,
    universality_witness,
)


def no_accept_machine():
    return Transducer(
        states=("q",),
        input_alphabet=("a", "b"),
        output_alphabet=("a", "b", "<"),
        endmarker="<",
        initial="q",
        accepting=(),
        transitions={("q", "a"): (("q", "a"),), ("q", "<"): (("q", "<"),)},
        sweep_bound=1,
    )


def unreachable_accept_machine():
    return Transducer(
        states=("q", "f"),
        input_alphabet=("a",),
        output_alphabet=("a", "<"),
        endmarker="<",
        initial="q",
        accepting=("f",),
        transitions={("q", "a"): (("q", "a"),), ("q", "<"): (("q", "<"),)},
        sweep_bound=1,
    )


def sigma_star_machine():
    return Transducer(
        states=("q", "f"),
        input_alphabet=("a", "b"),
        output_alphabet=("a", "b", "<"),
        endmarker="<",
        initial="q",
        accepting=("f",),
        transitions={
            ("q", "a"): (("q", "a"),),
            ("q", "b"): (("q", "b"),),
            ("q", "<"): (("f", "<"),),
        },
        sweep_bound=1,
    )


def word_machine(words, alphabet=("a", "b")):
    """One-sweep acceptor of a finite word set, built as a trie."""
    words = [tuple(w) for w in words]
    prefixes = sorted({w[:i] for w in words for i in range(len(w) + 1)})
    name = {p: "r" + "".join(p) for p in prefixes}
    trans = {}
    for p in prefixes:
        for x in alphabet:
            if p + (x,) in name:
                trans[(name[p], x)] = ((name[p + (x,)], x),)
    for w in words:
        trans[(name[w], "<")] = (("F", "<"),)
    return Transducer(
        states=tuple(name[p] for p in prefixes) + ("F",),
        input_alphabet=tuple(alphabet),
        output_alphabet=tuple(alphabet) + ("<",),
        endmarker="<",
        initial=name[()],
        accepting=("F",),
        transitions=trans,
        sweep_bound=1,
    )


class TestExamples:
    def test_empty_cases(self, e21):
        assert is_empty(no_accept_machine(), 1)
        assert is_empty(unreachable_accept_machine(), 1)
        assert not is_empty(e21, 1)
        w = emptiness_witness(e21, 1)
        assert run(e21, w, 1, 1000).accepted

    def test_finite_cases(self, unary22):
        assert not is_finite(unary22, 2)
        assert is_finite(word_machine([()]), 1)  # exactly the empty word
        assert is_finite(no_accept_machine(), 1)

    def test_infiniteness_witness_pumps(self, unary22):
        pre, cyc, suf = infiniteness_witness(unary22, 2)
        assert cyc
        for j in (1, 2, 3):
            w = pre + cyc * j + suf
            assert run(unary22, w, 2, 10_000).accepted, j

    def test_universal(self):
        assert is_universal(sigma_star_machine(), 1)
        assert not is_universal(word_machine([("a",)]), 1)

    def test_includes(self):
        small = word_machine([("a",)])
        big = word_machine([("a",), ("a", "a")])
        assert includes(small, 1, big, 1)
        assert not includes(big, 1, small, 1)
        w = inclusion_witness(big, 1, small, 1)
        assert run(big, w, 1, 1000).accepted and not run(small, w, 1, 1000).accepted

    def test_equivalent_with_reduction(self, e22):
        from iufst import sweep_reduce

        red = sweep_reduce(e22, 2, 2)
        assert equivalent(e22, 2, red, red.sweep_bound)

    def test_finiteness_threshold_crosscheck(self, unary22):
        # infinite iff an accepted word has length in [2n^k, 4n^k)
        nfa = to_nfa(unary22, 2)
        threshold = 2 * len(nfa.states)
        accepted_in_window = any(
            nfa.accepts(("a",) * m) for m in range(threshold, 2 * threshold)
        )
        assert accepted_in_window == (not is_finite(unary22, 2))


def fuzz_machine(rng: random.Random) -> tuple[Transducer, int]:
    """Small random machine with n^k <= 4 so brute-force budgets stay
    exhaustive (full certainty needs enumeration to 4 n^k symbols)."""
    n, k = rng.choice([(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
    states = tuple(f"s{i}" for i in range(n))
    inputs = ("a", "b")
    outputs = ("a", "b", "<")
    trans = {}
    for q in states:
        for x in inputs + ("<",):
            n_choices = rng.choices([0, 1, 2], weights=[3, 5, 1])[0]
            choices = []
            for _ in range(n_choices):
                choices.append((rng.choice(states), rng.choice(outputs)))
            if choices:
                trans[(q, x)] = tuple(dict.fromkeys(choices))
    accepting = tuple(q for q in states if rng.random() < 0.4)
    t = Transducer(
        states=states,
        input_alphabet=inputs,
        output_alphabet=outputs,
        endmarker="<",
        initial=states[0],
        accepting=accepting,
        transitions=trans,
        sweep_bound=k,
    )
    return t, k


def brute_language(t: Transducer, k: int, max_len: int) -> set:
    out = set()
    for length in range(max_len + 1):
        for w in itertools.product("ab", repeat=length):
            if run(t, w, k, 50_000).accepted:
                out.add(w)
    return out


def live_nfa_size(t: Transducer, k: int) -> int:
    from iufst.decide import _nfa_coaccessible, _nfa_reachable

    nfa = to_nfa(t, k)
    return max(1, len(_nfa_reachable(nfa) & _nfa_coaccessible(nfa)))


@pytest.fixture(scope="module")
def fuzz_corpus():
    """200 seeded machines with their brute-force languages.

    Enumeration budgets come from the pumping window of the trimmed
    equivalent NFA: the shortest accepted word is shorter than its live
    state count N, and the language is infinite exactly when a word
    with length in [N, 2N) is accepted, so enumerating to 2N - 1 settles
    emptiness and finiteness exactly (2 n^k is only the a-priori cap
    on N, and enumerating to twice that is out of desk range for the
    largest machines).
    """
    rng = random.Random(20240811)
    corpus = []
    while len(corpus) < 200:
        t, k = fuzz_machine(rng)
        size = live_nfa_size(t, k)
        budget = 2 * size - 1
        corpus.append((t, k, size, budget, brute_language(t, k, budget)))
    return corpus


class TestFuzzAgreement:
    def test_emptiness_and_finiteness_against_enumeration(self, fuzz_corpus):
        empties = infinites = 0
        for t, k, size, budget, lang in fuzz_corpus:
            assert is_empty(t, k) == (not lang), (t, k)
            infinite_by_window = any(len(w) >= size for w in lang)
            assert is_finite(t, k) == (not infinite_by_window), (t, k)
            empties += not lang
            infinites += infinite_by_window
            if infinite_by_window:
                pre, cyc, suf = infiniteness_witness(t, k)
                assert run(t, pre + cyc * 2 + suf, k, 50_000).accepted
        # the corpus must exercise all three outcomes
        assert empties and infinites and empties + infinites < len(fuzz_corpus)

    def test_equivalence_against_enumeration(self, fuzz_corpus):
        rng = random.Random(7)
        pairs = [
            (fuzz_corpus[rng.randrange(len(fuzz_corpus))],
             fuzz_corpus[rng.randrange(len(fuzz_corpus))])
            for _ in range(60)
        ]
        for (t1, k1, _s1, b1, l1), (t2, k2, _s2, b2, l2) in pairs:
            budget = min(b1, b2)
            verdict = equivalent(t1, k1, t2, k2)
            v1 = {w for w in l1 if len(w) <= budget}
            v2 = {w for w in l2 if len(w) <= budget}
            if verdict:
                assert v1 == v2, (t1, t2)
            else:
                w = equivalence_witness(t1, k1, t2, k2)
                assert run(t1, w, k1, 50_000).accepted != run(t2, w, k2, 50_000).accepted

    def test_equivalence_relation_properties(self, fuzz_corpus):
        sample = [(t, k) for t, k, *_ in fuzz_corpus[:12]]
        for t, k in sample:
            assert equivalent(t, k, t, k)
        rng = random.Random(99)
        for _ in range(25):
            (t1, k1), (t2, k2) = rng.sample(sample, 2)
            assert equivalent(t1, k1, t2, k2) == equivalent(t2, k2, t1, k1)
        for _ in range(25):
            (t1, k1), (t2, k2), (t3, k3) = rng.sample(sample, 3)
            if equivalent(t1, k1, t2, k2) and equivalent(t2, k2, t3, k3):
                assert equivalent(t1, k1, t3, k3)
