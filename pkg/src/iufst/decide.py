"""Exact decision procedures for machines with a declared constant
sweep bound.

Everything goes through the NFA conversion: emptiness and finiteness
are graph questions on the NFA, while universality, inclusion, and
equivalence determinize first and pay the exponential price, guarded by
a configurable state budget.  Each predicate also produces a witness
word where one exists, so tests can validate answers independently.
"""

from __future__ import annotations

from typing import Optional

from .convert import (
    Dfa,
    Nfa,
    dfa_complement,
    dfa_product,
    dfa_shortest_accepted,
    nfa_to_dfa,
    to_nfa,
)
from .core import Transducer

DEFAULT_DFA_CAP = 2**20

Word = tuple[str, ...]


def _nfa_reachable(n: Nfa) -> set[str]:
    seen = {n.initial}
    queue = [n.initial]
    while queue:
        q = queue.pop()
        for x in n.alphabet:
            for r in n.transitions.get((q, x), ()):
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
    return seen


def _nfa_coaccessible(n: Nfa) -> set[str]:
    rev: dict[str, set[str]] = {q: set() for q in n.states}
    for (q, _x), rs in n.transitions.items():
        for r in rs:
            rev[r].add(q)
    seen = set(n.accepting)
    queue = list(seen)
    while queue:
        q = queue.pop()
        for p in rev[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def is_empty(t: Transducer, k: int) -> bool:
    """True iff the machine accepts no word at all (the empty word included)."""
    return emptiness_witness(t, k) is None


def emptiness_witness(t: Transducer, k: int) -> Optional[Word]:
    """Shortest accepted word, or None when the language is empty."""
    n = to_nfa(t, k)
    if n.initial in n.accepting_set:
        return ()
    seen = {n.initial}
    queue: list[tuple[str, Word]] = [(n.initial, ())]
    while queue:
        q, w = queue.pop(0)
        for x in n.alphabet:
            for r in n.transitions.get((q, x), ()):
                if r in seen:
                    continue
                if r in n.accepting_set:
                    return w + (x,)
                seen.add(r)
                queue.append((r, w + (x,)))
    return None


def is_finite(t: Transducer, k: int) -> bool:
    """True iff the accepted language is finite.

    Exact on the NFA: the language is infinite precisely when a cycle
    lies on some path from the initial state to an accepting state.
    """
    return infiniteness_witness(t, k) is None


def infiniteness_witness(t: Transducer, k: int) -> Optional[tuple[Word, Word, Word]]:
    """A pumpable decomposition (prefix, cycle, suffix) of accepted
    words, or None when the language is finite."""
    n = to_nfa(t, k)
    live = _nfa_reachable(n) & _nfa_coaccessible(n)
    # Cycle detection restricted to live states, with path recovery.
    colors: dict[str, int] = {}
    edge_to: dict[str, tuple[str, str]] = {}
    cycle: Optional[list[tuple[str, str]]] = None

    def dfs(q: str) -> Optional[str]:
        nonlocal cycle
        colors[q] = 1
        for x in n.alphabet:
            for r in n.transitions.get((q, x), ()):
                if r not in live:
                    continue
                if colors.get(r, 0) == 1:
                    # walk back from q to r collecting the loop
                    loop = [(x, r)]
                    cur = q
                    while cur != r:
                        px, pq = edge_to[cur]
                        loop.append((px, cur))
                        cur = pq
                    loop.reverse()
                    cycle = loop
                    return r
                if colors.get(r, 0) == 0:
                    edge_to[r] = (x, q)
                    hit = dfs(r)
                    if hit is not None:
                        return hit
        colors[q] = 2
        return None

    if n.initial not in live:
        return None
    start = dfs(n.initial)
    if start is None:
        return None
    cyc_word = tuple(sym for sym, _q in cycle)
    prefix = _nfa_path(n, n.initial, start, live)
    suffix = _nfa_path_to_accepting(n, start, live)
    return (prefix, cyc_word, suffix)


def _nfa_path(n: Nfa, src: str, dst: str, live: set[str]) -> Word:
    if src == dst:
        return ()
    seen = {src}
    queue: list[tuple[str, Word]] = [(src, ())]
    while queue:
        q, w = queue.pop(0)
        for x in n.alphabet:
            for r in n.transitions.get((q, x), ()):
                if r not in live or r in seen:
                    continue
                if r == dst:
                    return w + (x,)
                seen.add(r)
                queue.append((r, w + (x,)))
    raise AssertionError("dst not reachable inside live subgraph")


def _nfa_path_to_accepting(n: Nfa, src: str, live: set[str]) -> Word:
    if src in n.accepting_set:
        return ()
    seen = {src}
    queue: list[tuple[str, Word]] = [(src, ())]
    while queue:
        q, w = queue.pop(0)
        for x in n.alphabet:
            for r in n.transitions.get((q, x), ()):
                if r not in live or r in seen:
                    continue
                if r in n.accepting_set:
                    return w + (x,)
                seen.add(r)
                queue.append((r, w + (x,)))
    raise AssertionError("no accepting state reachable inside live subgraph")


def _to_dfa(t: Transducer, k: int, state_cap: int) -> Dfa:
    return nfa_to_dfa(to_nfa(t, k), state_cap=state_cap)


def is_universal(
    t: Transducer, k: int, state_cap: int = DEFAULT_DFA_CAP
) -> bool:
    return universality_witness(t, k, state_cap) is None


def universality_witness(
    t: Transducer, k: int, state_cap: int = DEFAULT_DFA_CAP
) -> Optional[Word]:
    """Shortest rejected word, or None when every word is accepted."""
    return dfa_shortest_accepted(dfa_complement(_to_dfa(t, k, state_cap)))


def includes(
    t1: Transducer, k1: int, t2: Transducer, k2: int,
    state_cap: int = DEFAULT_DFA_CAP,
) -> bool:
    """Whether L(t1) is a subset of L(t2)."""
    return inclusion_witness(t1, k1, t2, k2, state_cap) is None


def inclusion_witness(
    t1: Transducer, k1: int, t2: Transducer, k2: int,
    state_cap: int = DEFAULT_DFA_CAP,
) -> Optional[Word]:
    """Shortest word accepted by t1 but not t2, or None."""
    d1 = _to_dfa(t1, k1, state_cap)
    d2 = _to_dfa(t2, k2, state_cap)
    return dfa_shortest_accepted(dfa_product(d1, d2, "difference"))


def equivalent(
    t1: Transducer, k1: int, t2: Transducer, k2: int,
    state_cap: int = DEFAULT_DFA_CAP,
) -> bool:
    return equivalence_witness(t1, k1, t2, k2, state_cap) is None


def equivalence_witness(
    t1: Transducer, k1: int, t2: Transducer, k2: int,
    state_cap: int = DEFAULT_DFA_CAP,
) -> Optional[Word]:
    """Shortest word in the symmetric difference, or None when equal."""
    d1 = _to_dfa(t1, k1, state_cap)
    d2 = _to_dfa(t2, k2, state_cap)
    w = dfa_shortest_accepted(dfa_product(d1, d2, "difference"))
    if w is not None:
        return w
    return dfa_shortest_accepted(dfa_product(d2, d1, "difference"))
