"""Generators for the concrete machine families used throughout the
test suite, plus straight-line reference predicates that serve as
ground truth for every oracle comparison.

Families:

* ``gen_block(k)``      nondeterministic k-sweep machine for the block
                        language: words ``u1#u2#...#um`` of k-bit blocks
                        where the last block equals some earlier one.
* ``gen_block_nfa(k)``  the classical NFA for the same language, with
                        exactly ``2^(k+1) * (k+2)`` states.
* ``gen_unary(n, k)``   deterministic n-state k-sweep machine for the
                        unary language of word lengths divisible by n^k.
* ``gen_e(n, k)``       nondeterministic (n+1)-state k-sweep machine for
                        words ``u b v`` where ``|v| = c*n^k - 1``, c > 0.
* ``gen_copy()``        deterministic machine for words ``u$u``.
* ``gen_uexpo()``       deterministic machine for unary words of
                        power-of-two length.
* ``gen_d()``           nondeterministic machine, logarithmic sweeps,
                        for the indexed-directory language (see
                        ``in_d``).
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .convert import Nfa
from .core import MachineError, Transducer, build_transducer

Word = tuple[str, ...]


# ---------------------------------------------------------------------------
# unary counting family


def gen_unary(n: int, k: int) -> Transducer:
    """n-state deterministic k-sweep acceptor of {a^(c * n^k) | c >= 0}.

    Counter states track the number of unmarked a's modulo n; each sweep
    keeps every n-th unmarked a and marks the rest, so the unmarked
    count divides by n per sweep.  Reading the sweep-indexed endmarker
    in the zero state advances its index; on the last index the machine
    moves to the designated accepting counter state.  A nonzero residue
    at the endmarker leaves the machine stuck, rejecting.
    """
    if n < 2 or k < 1:
        raise MachineError("gen_unary requires n >= 2 and k >= 1")
    states = tuple(f"q{r}" for r in range(n))
    marks = tuple(f"<{j}" for j in range(k))
    trans: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {}
    for r in range(n):
        if r + 1 == n:
            trans[(f"q{r}", "a")] = (("q0", "a"),)
        else:
            trans[(f"q{r}", "a")] = ((f"q{r+1}", "a'"),)
        trans[(f"q{r}", "a'")] = ((f"q{r}", "a'"),)
    for j in range(k - 1):
        trans[("q0", f"<{j}")] = (("q0", f"<{j+1}"),)
    trans[("q0", f"<{k-1}")] = ((f"q{n-1}", f"<{k-1}"),)
    return Transducer(
        states=states,
        input_alphabet=("a",),
        output_alphabet=("a", "a'") + marks,
        endmarker="<0",
        initial="q0",
        accepting=(f"q{n-1}",),
        transitions=trans,
        sweep_bound=k,
        meta={"family": "unary", "n": n, "k": k},
    )


def in_unary(n: int, k: int, w: Sequence[str]) -> bool:
    return all(a == "a" for a in w) and len(w) % (n**k) == 0


# ---------------------------------------------------------------------------
# suffix-length family


def gen_e(n: int, k: int) -> Transducer:
    """(n+1)-state k-sweep nondeterministic acceptor of words u b v with
    |v| = c * n^k - 1 for some c > 0.

    Sweep 1 blanks the prefix in the initial state, guessing on every b
    whether it separates u from v; from the guessed b on, the rest of
    the input is rewritten as consecutive blocks 1 2 .. n, checking
    divisibility by n.  Each later sweep rewrites n old blocks into one
    longer block, multiplying the checked divisor by n; the endmarker
    index counts the sweeps.  Acceptance happens on the final endmarker
    index only, hence at sweep k exactly.
    """
    if n < 2 or k < 1:
        raise MachineError("gen_e requires n >= 2 and k >= 1")
    digits = tuple(str(i) for i in range(1, n + 1))
    bar = f"{n}~"
    marks = tuple(f"<{j}" for j in range(k))
    blank = "_"
    trans: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {}
    trans[("q0", "a")] = (("q0", blank),)
    trans[("q0", blank)] = (("q0", blank),)
    trans[("q0", "b")] = (("q0", blank), ("q2", "1"))
    for i in range(1, n):
        for x in ("a", "b", str(n)):
            trans[(f"q{i}", x)] = ((f"q{i+1}", str(i)),)
    for x in ("a", "b", str(n)):
        trans[(f"q{n}", x)] = (("q1", str(n)),)
    for j in range(k - 1):
        trans[("q1", f"<{j}")] = (("q0", f"<{j+1}"),)
    trans[("q0", "1")] = (("q1", "1"),)
    small = tuple(str(i) for i in range(1, n)) + (bar,)
    for i in range(1, n):
        for x in small:
            trans[(f"q{i}", x)] = ((f"q{i}", str(i)),)
    for x in small:
        trans[(f"q{n}", x)] = ((f"q{n}", bar),)
    trans[("q1", f"<{k-1}")] = ((f"q{n}", f"<{k-1}"),)
    return Transducer(
        states=tuple(f"q{i}" for i in range(n + 1)),
        input_alphabet=("a", "b"),
        output_alphabet=("a", "b", blank) + digits + (bar,) + marks,
        endmarker="<0",
        initial="q0",
        accepting=(f"q{n}",),
        transitions=trans,
        sweep_bound=k,
        meta={"family": "e", "n": n, "k": k},
    )


def in_e(n: int, k: int, w: Sequence[str]) -> bool:
    period = n**k
    m = len(w)
    for i, sym in enumerate(w):
        if sym == "b" and (m - i) % period == 0 and m - i >= period:
            return True
    return False


# ---------------------------------------------------------------------------
# block language


def gen_block(k: int) -> Transducer:
    """k-sweep nondeterministic acceptor of the block language with a
    state count linear in k.

    Sweep 1 checks the block structure, nondeterministically picks an
    earlier block plus the last block, compares and blanks their first
    symbols, and flags the first tape cell so later sweeps know a choice
    was made.  Sweep j finds both chosen blocks by their blank prefixes
    and compares their j-th symbols; the sweep that blanks the chosen
    blocks' final symbols accepts at the endmarker, so every accepting
    computation takes exactly k sweeps.
    """
    if k < 2:
        raise MachineError("gen_block requires k >= 2")
    bits = ("0", "1")

    def delta(state, tok):
        kind = state[0]
        if kind == "q0":
            if tok in bits:
                return [(("A", 1), tok + "f"), (("C", tok, 1), "_f")]
            if tok in ("0f", "1f"):
                return [(("S0",), tok)]
            if tok == "_f":
                return [(("Sk1",), tok)]
            return []
        if kind == "A":
            p = state[1]
            if tok not in bits:
                return []
            if p == 0:
                return [(("A", 1), tok), (("C", tok, 1), "_")]
            if p < k - 1:
                return [(("A", p + 1), tok)]
            return [(("Asep",), tok)]
        if kind == "Asep":
            return [(("A", 0), "#")] if tok == "#" else []
        if kind == "C":
            s, p = state[1], state[2]
            if tok not in bits:
                return []
            if p == 0:
                out = [(("C", s, 1), tok)]
                if tok == s:
                    out.append((("D", 1), "_"))
                return out
            if p < k - 1:
                return [(("C", s, p + 1), tok)]
            return [(("Csep", s), tok)]
        if kind == "Csep":
            return [(("C", state[1], 0), "#")] if tok == "#" else []
        if kind == "D":
            p = state[1]
            if tok not in bits:
                return []
            if p < k - 1:
                return [(("D", p + 1), tok)]
            return [(("Dend",), tok)]
        if kind == "Dend":
            return [(("Vscan",), "<")] if tok == "<" else []
        if kind == "S0":
            if tok in bits or tok == "#":
                return [(("S0",), tok)]
            return [(("Sk1",), "_")] if tok == "_" else []
        if kind == "Sk1":
            if tok == "_":
                return [(("Sk1",), "_")]
            return [(("W", tok), "_")] if tok in bits else []
        if kind == "W":
            t = state[1]
            if tok in bits:
                return [(("Car", t, False), tok)]
            return [(("Car", t, True), "#")] if tok == "#" else []
        if kind == "Car":
            t, last = state[1], state[2]
            if tok in bits or tok == "#":
                return [(state, tok)]
            return [(("Sk2", t, last), "_")] if tok == "_" else []
        if kind == "Sk2":
            t, last = state[1], state[2]
            if tok == "_":
                return [(state, "_")]
            if tok == t:
                return [((("Vlast",) if last else ("Vscan",)), "_")]
            return []
        if kind == "Vscan":
            if tok in bits or tok == "#" or tok == "<":
                return [(("Vscan",), tok)]
            return []
        if kind == "Vlast":
            return [(("ACC",), "<")] if tok == "<" else []
        return []

    return build_transducer(
        start=("q0",),
        delta=delta,
        input_alphabet=("0", "1", "#"),
        output_alphabet=("0", "1", "#", "_", "0f", "1f", "_f", "<"),
        endmarker="<",
        accepting=lambda s: s == ("ACC",),
        name_of=lambda s: "-".join(str(p) for p in s),
        sweep_bound=k,
        meta={"family": "block", "k": k, "state_envelope": (4, 19)},
    )


def gen_block_nfa(k: int) -> Nfa:
    """Two-phase NFA for the block language, 2^(k+1) * (k+2) states.

    Phase one stores each block in the finite control and guesses
    whether to keep it (2^(k+1) states counting the initial one).
    Phase two re-checks the block structure while guessing the block to
    match symbol by symbol against the kept one, accepting exactly when
    the matched block ends the word (2^(k+1) * (k+1) states).
    """
    if k < 2:
        raise MachineError("gen_block_nfa requires k >= 2")
    bits = ("0", "1")
    prefixes = [
        "".join(w) for length in range(k + 1) for w in product(bits, repeat=length)
    ]
    blocks = ["".join(w) for w in product(bits, repeat=k)]
    states = ["I"] + [f"P{p}" for p in prefixes]
    for x in blocks:
        states += [f"S{x}.{p}" for p in range(k)]
        states.append(f"Ssep{x}")
        states += [f"M{x}.{q}" for q in range(k)]
        states.append(f"F{x}")
    trans: dict[tuple[str, str], tuple[str, ...]] = {}

    def add(q, a, r):
        trans[(q, a)] = trans.get((q, a), ()) + (r,)

    for t in bits:
        add("I", t, f"P{t}")
    for p in prefixes:
        if len(p) < k:
            for t in bits:
                add(f"P{p}", t, f"P{p}{t}")
        else:
            add(f"P{p}", "#", "P")
            add(f"P{p}", "#", f"S{p}.0")
            add(f"P{p}", "#", f"M{p}.0")
    for x in blocks:
        for pos in range(k - 1):
            for t in bits:
                add(f"S{x}.{pos}", t, f"S{x}.{pos+1}")
        for t in bits:
            add(f"S{x}.{k-1}", t, f"Ssep{x}")
        add(f"Ssep{x}", "#", f"S{x}.0")
        add(f"Ssep{x}", "#", f"M{x}.0")
        for pos in range(k - 1):
            add(f"M{x}.{pos}", x[pos], f"M{x}.{pos+1}")
        add(f"M{x}.{k-1}", x[k - 1], f"F{x}")
    return Nfa(
        states=tuple(states),
        alphabet=("0", "1", "#"),
        initial="I",
        accepting=tuple(f"F{x}" for x in blocks),
        transitions=trans,
        meta={"family": "block-nfa", "k": k},
    )


def in_block(k: int, w: Sequence[str]) -> bool:
    blocks: list[list[str]] = [[]]
    for sym in w:
        if sym == "#":
            blocks.append([])
        elif sym in ("0", "1"):
            blocks[-1].append(sym)
        else:
            return False
    if len(blocks) < 2 or any(len(b) != k for b in blocks):
        return False
    return blocks[-1] in blocks[:-1]


# ---------------------------------------------------------------------------
# copy language with center marker


def gen_copy(alphabet: Sequence[str] = ("a", "b")) -> Transducer:
    """Deterministic acceptor of u$u; one symbol pair checked per sweep.

    Each sweep marks the leftmost unmarked symbol on both sides of $ and
    compares them, holding the left symbol in the finite control across
    the marker.  Once the left side is exhausted the right side must be
    too, and the machine accepts at the endmarker; a word u$u therefore
    takes |u| + 1 sweeps.
    """
    alphabet = tuple(alphabet)
    if "$" in alphabet or not alphabet:
        raise MachineError("gen_copy needs a non-empty alphabet without '$'")
    marked = {t: t + "'" for t in alphabet}
    trans: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {}
    for t in alphabet:
        trans[("q0", marked[t])] = (("q0", marked[t]),)
        trans[("q0", t)] = ((f"L{t}", marked[t]),)
    trans[("q0", "$")] = (("Rz", "$"),)
    for t in alphabet:
        for u in alphabet:
            trans[(f"L{t}", u)] = ((f"L{t}", u),)
        trans[(f"L{t}", "$")] = ((f"R{t}", "$"),)
        for u in alphabet:
            trans[(f"R{t}", marked[u])] = ((f"R{t}", marked[u]),)
        trans[(f"R{t}", t)] = (("Rp", marked[t]),)
    for u in alphabet:
        trans[("Rp", u)] = (("Rp", u),)
        trans[("Rz", marked[u])] = (("Rz", marked[u]),)
    trans[("Rp", "<")] = (("q0", "<"),)
    trans[("Rz", "<")] = (("ACC", "<"),)
    return Transducer(
        states=("q0",)
        + tuple(f"L{t}" for t in alphabet)
        + tuple(f"R{t}" for t in alphabet)
        + ("Rp", "Rz", "ACC"),
        input_alphabet=alphabet + ("$",),
        output_alphabet=alphabet + tuple(marked[t] for t in alphabet) + ("$", "<"),
        endmarker="<",
        initial="q0",
        accepting=("ACC",),
        transitions=trans,
        sweep_bound="linear",
        meta={"family": "copy", "sweeps": "|u| + 1"},
    )


def in_copy(w: Sequence[str]) -> bool:
    text = list(w)
    if text.count("$") != 1:
        return False
    i = text.index("$")
    return text[:i] == text[i + 1 :]


# ---------------------------------------------------------------------------
# unary powers of two


def gen_uexpo() -> Transducer:
    """Deterministic acceptor of a^(2^j), j >= 0.

    Every sweep marks every second unmarked a, halving the unmarked
    count, which must stay even until exactly one or two remain (then
    one survives and the machine accepts).  Odd counts above one leave
    the machine stuck at the endmarker.
    """
    trans: dict[tuple[str, str], tuple[tuple[str, str], ...]] = {
        ("z", "a"): (("o1", "a"),),
        ("o1", "a"): (("e2", "a'"),),
        ("e2", "a"): (("o3", "a"),),
        ("o3", "a"): (("e4", "a'"),),
        ("e4", "a"): (("o3", "a"),),
        ("o1", "<"): (("ACC", "<"),),
        ("e2", "<"): (("ACC", "<"),),
        ("e4", "<"): (("z", "<"),),
    }
    for s in ("z", "o1", "e2", "o3", "e4"):
        trans[(s, "a'")] = ((s, "a'"),)
    return Transducer(
        states=("z", "o1", "e2", "o3", "e4", "ACC"),
        input_alphabet=("a",),
        output_alphabet=("a", "a'", "<"),
        endmarker="<",
        initial="z",
        accepting=("ACC",),
        transitions=trans,
        sweep_bound="log",
        meta={"family": "uexpo", "sweeps": "max(1, lg n)"},
    )


def in_uexpo(w: Sequence[str]) -> bool:
    m = len(w)
    return m >= 1 and all(a == "a" for a in w) and (m & (m - 1)) == 0


# ---------------------------------------------------------------------------
# indexed directory language


def bin_lsb(j: int, k: int) -> Word:
    """k-bit binary of j, least significant digit first."""
    return tuple(str((j >> t) & 1) for t in range(k))


def d_word(k: int, payloads: Sequence[Sequence[str]], i: int) -> Word:
    """Build a directory word: a^k b^(2^k), all indexed entries in
    ascending order, then entry i repeated."""
    if not 1 <= i <= 2**k - 1 or len(payloads) != 2**k:
        raise ValueError("need 2^k payloads and 1 <= i <= 2^k - 1")
    w: list[str] = ["a"] * k + ["b"] * (2**k)
    for j, u in enumerate(payloads):
        w += list(bin_lsb(j, k)) + list(u)
    w += list(bin_lsb(i, k)) + list(payloads[i])
    return tuple(w)


def in_d(w: Sequence[str]) -> bool:
    """Directory language: a^k b^(2^k) bin(0) u_0 ... bin(2^k-1)
    u_(2^k-1) bin(i) u_i, with k >= 2, payloads u_j in {a,b}^k, indices
    written least-significant-digit first, and 1 <= i <= 2^k - 1."""
    text = list(w)
    k = 0
    while k < len(text) and text[k] == "a":
        k += 1
    if k < 2:
        return False
    pos = k
    b = 0
    while pos < len(text) and text[pos] == "b":
        pos += 1
        b += 1
    if b != 2**k:
        return False
    entries: list[tuple[Word, Word]] = []
    for _ in range(2**k + 1):
        bin_part = tuple(text[pos : pos + k])
        pos += k
        pay = tuple(text[pos : pos + k])
        pos += k
        if len(bin_part) != k or len(pay) != k:
            return False
        if any(c not in ("0", "1") for c in bin_part):
            return False
        if any(c not in ("a", "b") for c in pay):
            return False
        entries.append((bin_part, pay))
    if pos != len(text):
        return False
    for j in range(2**k):
        if entries[j][0] != bin_lsb(j, k):
            return False
    return any(entries[i] == entries[-1] for i in range(1, 2**k))


_BITS = ("0", "1")
_AB = ("a", "b")
_T2 = ("a", "b", "0", "1", "-")


def _cell(base: str, m1=False, sel=False, m2=False, t2="-") -> str:
    return f"{base}{'*' if m1 else ''}{'!' if sel else ''}{'=' if m2 else ''}/{t2}"


def _c0(phase: str, m1: bool, t2: str) -> str:
    return f"@{phase}a{'*' if m1 else ''}/{t2}"


def _parse_tok(tok: str):
    if tok in _BITS or tok in _AB:
        return ("raw", tok)
    if tok == "<":
        return ("end",)
    if tok.startswith("@"):
        body = tok[2:]
        return ("c0", tok[1], "*" in body, body.split("/", 1)[1])
    head, t2 = tok.split("/", 1)
    return ("cell", head[0], "*" in head, "!" in head, "=" in head, t2)


def gen_d() -> Transducer:
    """Log-sweep nondeterministic acceptor of the directory language.

    Sweep 1 copies the input onto a second track and checks the coarse
    shape.  The next 2k sweeps mark one leading a, halve the unmarked
    b's, and mark the leftmost unmarked symbol of every index and
    payload block (pinning all block lengths to k and the b-run to 2^k)
    while shifting the second track right one cell per sweep.  Once the
    shifted track aligns every index under its successor's position,
    which is detectable locally at the first inner index boundary, that
    sweep instead adds one to each shifted index on the fly and compares
    it with the index above, verifying the ascending counter; the
    all-ones index marks the final entry, which is exempt from the check
    and must be the last.  One sweep then guesses which entry the final
    one repeats, and 2k comparison sweeps match the guessed entry
    against the final entry symbol by symbol.  Accepting computations
    take exactly (1 + k + k + 1 + 2k) + 1 sweeps; the extra sweep is the
    separate guess sweep.
    """

    def delta(state, tok):
        p = _parse_tok(tok)
        mode = state[0]

        # sweep-type dispatch at cell 0 -----------------------------------
        if mode == "q0":
            if p[0] == "raw" and p[1] == "a":
                return [(("s1", "a1"), _c0("C", False, "a"))]
            if p[0] == "c0":
                _, phase, m1, t2 = p
                if phase == "C":
                    if not m1:
                        return [(("m", "awatch", t2), _c0("C", True, "-"))]
                    return [
                        (("m", "aseek", t2), _c0("C", True, "-")),
                        (("sh", "a", t2), _c0("C", True, "-")),
                        (("ad", "a", t2), _c0("D", True, "-")),
                    ]
                if phase == "D":
                    return [(("g", "a"), _c0("P", m1, t2))]
                if phase == "P":
                    return [(("c", "a"), _c0("P", m1, t2))]
            return []

        # sweep 1: structure check and track split ------------------------
        if mode == "s1":
            region = state[1]
            if p[0] == "raw":
                ch = p[1]
                nxt = {
                    ("a1", "a"): "a2",
                    ("a2", "a"): "a2",
                    ("a2", "b"): "b",
                    ("b", "b"): "b",
                    ("b", "0"): "z",
                    ("z", "0"): "z",
                    ("z", "a"): "p0",
                    ("z", "b"): "p0",
                    ("p0", "a"): "p0",
                    ("p0", "b"): "p0",
                    ("p0", "0"): "bin",
                    ("p0", "1"): "bin",
                    ("bin", "0"): "bin",
                    ("bin", "1"): "bin",
                    ("bin", "a"): "pay",
                    ("bin", "b"): "pay",
                    ("pay", "a"): "pay",
                    ("pay", "b"): "pay",
                    ("pay", "0"): "bin",
                    ("pay", "1"): "bin",
                }.get((region, ch))
                if nxt is None:
                    return []
                return [(("s1", nxt), _cell(ch, t2=ch))]
            if p[0] == "end" and region == "pay":
                return [(("fin",), "<")]
            return []

        if p[0] == "c0":
            return []

        # shifting sweeps (marking, waiting, and the adder) ----------------
        if mode in ("m", "mbn", "mbf", "mblk", "sh", "shx", "ad", "add",
                    "adpay", "adfin", "adskip", "adskpay"):
            carry = state[-1]
            if p[0] == "end":
                return _shift_end(state)
            if p[0] != "cell":
                return []
            _, base, m1, sel, m2, t2 = p

            def w(**mods):
                return _cell(
                    mods.get("base", base),
                    mods.get("m1", m1),
                    sel,
                    m2,
                    carry,
                )

            def go(*core):
                return core + (t2,)

            if mode == "m":
                sub = state[1]
                if sub == "aseek":
                    if base == "a" and m1:
                        return [(go("m", "aseek"), w())]
                    if base == "a":
                        return [(go("m", "awatch"), w(m1=True))]
                    return []
                if sub == "awatch":
                    if base == "a" and not m1:
                        return [(go("m", "apass"), w())]
                    if base == "b":
                        return _b_step(True, 0, p, carry)
                    return []
                if sub == "apass":
                    if base == "a" and not m1:
                        return [(go("m", "apass"), w())]
                    if base == "b":
                        return _b_step(False, 0, p, carry)
                    return []
                return []
            if mode == "mbn":
                if base == "b":
                    return _b_step(False, state[1], p, carry)
                if base == "0" and state[1] == 0:
                    return _blk_step(False, "bin", False, False, p, carry)
                return []
            if mode == "mbf":
                if base == "b":
                    return _b_step(True, state[1], p, carry)
                if base == "0" and state[1] == 2:
                    return _blk_step(True, "bin", False, False, p, carry)
                return []
            if mode == "mblk":
                final, kind, got, just = state[1], state[2], state[3], state[4]
                same = (base in _BITS) == (kind == "bin")
                if same:
                    if just and final:
                        return []
                    if m1 or got:
                        return [(go("mblk", final, kind, got, False), w())]
                    return [(go("mblk", final, kind, True, True), w(m1=True))]
                if not got:
                    return []
                nk = "pay" if kind == "bin" else "bin"
                return _blk_step(final, nk, False, False, p, carry)

            if mode == "sh":
                region = state[1]
                if region == "a":
                    if base == "a" and m1:
                        return [(go("sh", "a"), w())]
                    if base == "b":
                        return [(go("sh", "b"), w())]
                    return []
                if region == "b":
                    if base == "b":
                        return [(go("sh", "b"), w())]
                    if base == "0":
                        return [(go("sh", "z"), w())]
                    return []
                if region == "z":
                    if base == "0":
                        return [(go("sh", "z"), w())]
                    if base in _AB:
                        return [(go("sh", "p"), w())]
                    return []
                if region == "p":
                    if base in _AB:
                        return [(go("sh", "p"), w())]
                    if base in _BITS:
                        aligned = carry in _AB and t2 in _BITS
                        if aligned:
                            return []
                        return [(go("shx"), w())]
                    return []
            if mode == "shx":
                return [(go("shx"), w())]

            if mode == "ad":
                region = state[1]
                if region == "a":
                    if base == "a" and m1:
                        return [(go("ad", "a"), w())]
                    if base == "b":
                        return [(go("ad", "b"), w())]
                    return []
                if region == "b":
                    if base == "b":
                        return [(go("ad", "b"), w())]
                    if base == "0":
                        return [(go("ad", "z"), w())]
                    return []
                if region == "z":
                    if base == "0":
                        return [(go("ad", "z"), w())]
                    if base in _AB:
                        return [(go("ad", "p"), w())]
                    return []
                if region == "p":
                    if base in _AB:
                        return [(go("ad", "p"), w())]
                    if base in _BITS:
                        if carry in _AB and t2 in _BITS:
                            return _add_step(1, True, p, carry)
                        return []
                    return []
            if mode == "add":
                c, all1 = state[1], state[2]
                if base in _BITS:
                    return _add_step(c, all1, p, carry)
                if base in _AB:
                    if c != 0:
                        return []
                    if all1:
                        return [(go("adfin"), w())]
                    return [(go("adpay"), w())]
                return []
            if mode == "adpay":
                if base in _AB:
                    return [(go("adpay"), w())]
                if base in _BITS:
                    return _add_step(1, True, p, carry)
                return []
            if mode == "adfin":
                if base in _AB:
                    return [(go("adfin"), w())]
                if base in _BITS:
                    return [(go("adskip"), w())]
                return []
            if mode == "adskip":
                if base in _BITS:
                    return [(go("adskip"), w())]
                if base in _AB:
                    return [(go("adskpay"), w())]
                return []
            if mode == "adskpay":
                if base in _AB:
                    return [(go("adskpay"), w())]
                return []
            return []

        # guess sweep ------------------------------------------------------
        if mode == "g":
            if p[0] == "end":
                return []
            if p[0] != "cell":
                return []
            _, base, m1, sel, m2, t2 = p
            keep = _cell(base, m1, sel, m2, t2)
            region = state[1]
            if region == "a":
                if base == "a":
                    return [(("g", "a"), keep)]
                if base == "b":
                    return [(("g", "b"), keep)]
                return []
            if region == "b":
                if base == "b":
                    return [(("g", "b"), keep)]
                if base == "0":
                    return [(("g", "z"), keep)]
                return []
            if region == "z":
                if base == "0":
                    return [(("g", "z"), keep)]
                if base in _AB:
                    return [(("g", "p0"), keep)]
                return []
            if region == "p0":
                if base in _AB:
                    return [(("g", "p0"), keep)]
                if base in _BITS:
                    return _guess_point(p)
                return []
            return []
        if mode in ("gbin", "gpay", "gpfin", "gfbin", "gfpay", "gdone"):
            if p[0] == "end":
                return [(("fin",), "<")] if mode == "gdone" else []
            if p[0] != "cell":
                return []
            _, base, m1, sel, m2, t2 = p
            keep = _cell(base, m1, sel, m2, t2)
            if mode == "gdone":
                return [(("gdone",), keep)]
            if mode == "gbin":
                all1 = state[1]
                if base in _BITS:
                    return [(("gbin", all1 and base == "1"), keep)]
                if base in _AB:
                    return [((("gpfin",) if all1 else ("gpay",)), keep)]
                return []
            if mode == "gpay":
                if base in _AB:
                    return [(("gpay",), keep)]
                if base in _BITS:
                    return _guess_point(p)
                return []
            if mode == "gpfin":
                if base in _AB:
                    return [(("gpfin",), keep)]
                if base in _BITS:
                    return [(("gfbin",), keep)]
                return []
            if mode == "gfbin":
                if base in _BITS:
                    return [(("gfbin",), keep)]
                if base in _AB:
                    return [(("gfpay",), keep)]
                return []
            if mode == "gfpay":
                if base in _AB:
                    return [(("gfpay",), keep)]
                return []
            return []

        # comparison sweeps --------------------------------------------
        if mode == "c":
            if p[0] == "end":
                return []
            if p[0] != "cell":
                return []
            _, base, m1, sel, m2, t2 = p
            keep = _cell(base, m1, sel, m2, t2)
            region = state[1]
            if region == "a":
                if base == "a":
                    return [(("c", "a"), keep)]
                if base == "b":
                    return [(("c", "b"), keep)]
                return []
            if region == "b":
                if base == "b":
                    return [(("c", "b"), keep)]
                if base == "0":
                    return [(("c", "z"), keep)]
                return []
            if region == "z":
                if base == "0":
                    return [(("c", "z"), keep)]
                if base in _AB:
                    return [(("c", "p0"), keep)]
                return []
            if region == "p0":
                if base in _AB:
                    return [(("c", "p0"), keep)]
                if base in _BITS:
                    return _cmp_entry(("seek",), ("bin", base == "1"), p, True)
                return []
            return []
        if mode == "cs":
            a_state, b_state = state[1], state[2]
            if p[0] == "end":
                if a_state == ("done",):
                    return [(("fin",), "<")]
                if a_state == ("accarm",):
                    return [(("ACC",), "<")]
                return []
            if p[0] != "cell":
                return []
            return _cmp_cell(a_state, b_state, p)

        return []

    def _shift_end(state):
        # A shifting sweep reaching the endmarker: the marking sweeps
        # must have completed their per-block checks (handled in mblk),
        # waiting sweeps and the adder end here as well.
        mode = state[0]
        if mode == "mblk":
            final, kind, got, just = state[1], state[2], state[3], state[4]
            if not got:
                return []
            return [(("fin",), "<")]
        if mode in ("shx", "adskpay"):
            return [(("fin",), "<")]
        return []

    def _b_step(final, acc, p, carry):
        _, base, m1, sel, m2, t2 = p
        if m1:
            core = ("mbf", acc) if final else ("mbn", acc)
            return [(core + (t2,), _cell(base, m1, sel, m2, carry))]
        if final:
            if acc == 0:
                return [(("mbf", 1, t2), _cell(base, m1, sel, m2, carry))]
            if acc == 1:
                return [(("mbf", 2, t2), _cell(base, True, sel, m2, carry))]
            return []
        if acc == 0:
            return [(("mbn", 1, t2), _cell(base, m1, sel, m2, carry))]
        return [(("mbn", 0, t2), _cell(base, True, sel, m2, carry))]

    def _blk_step(final, kind, got, just, p, carry):
        _, base, m1, sel, m2, t2 = p
        if m1:
            return [(("mblk", final, kind, got, False, t2), _cell(base, m1, sel, m2, carry))]
        return [(("mblk", final, kind, True, True, t2), _cell(base, True, sel, m2, carry))]

    def _add_step(c, all1, p, carry):
        _, base, m1, sel, m2, t2 = p
        if t2 not in _BITS:
            return []
        x, y = int(t2), int(base)
        if y != (x + c) % 2:
            return []
        return [
            (("add", (x + c) // 2, all1 and base == "1", t2),
             _cell(base, m1, sel, m2, carry))
        ]

    def _guess_point(p):
        _, base, m1, sel, m2, t2 = p
        return [
            (("gbin", base == "1"), _cell(base, m1, sel, m2, t2)),
            (("gdone",), _cell(base, m1, True, m2, t2)),
        ]

    def _cmp_entry(a_state, b_state, p, entry_start):
        """Process one cell in the entry region of a comparison sweep."""
        _, base, m1, sel, m2, t2 = p
        keep = _cell(base, m1, sel, m2, t2)
        mark = _cell(base, m1, sel, True, t2)
        # resolve a pending last-cell question from the previous cell
        if a_state[0] == "post" and a_state[2] is None:
            a_state = ("post", a_state[1], a_state[3] and base in _BITS)
        if a_state[0] == "post" and b_state == ("final",) and entry_start:
            a_state = ("fskip", a_state[1], a_state[2])
        if a_state == ("seek",) and sel:
            a_state = ("enter",)
        if a_state == ("enter",) or a_state == ("skip",):
            if m2:
                return [(("cs", ("skip",), b_state), keep)]
            pend = base in _AB
            return [(("cs", ("post", base, None, pend), b_state), mark)]
        if a_state[0] == "fskip":
            sigma, last = a_state[1], a_state[2]
            if m2:
                return [(("cs", a_state, b_state), keep)]
            if base != sigma:
                return []
            nxt = ("accarm",) if last else ("done",)
            return [(("cs", nxt, b_state), mark)]
        return [(("cs", a_state, b_state), keep)]

    def _cmp_cell(a_state, b_state, p):
        _, base, m1, sel, m2, t2 = p
        entry_start = False
        if b_state[0] == "bin":
            if base in _BITS:
                b_state = ("bin", b_state[1] and base == "1")
            else:
                b_state = ("payfin",) if b_state[1] else ("pay",)
        elif b_state == ("pay",):
            if base in _BITS:
                b_state = ("bin", base == "1")
                entry_start = True
        elif b_state == ("payfin",):
            if base in _BITS:
                b_state = ("final",)
                entry_start = True
        return _cmp_entry(a_state, b_state, p, entry_start)

    cells = [
        _cell(b, m1, sel, m2, t2)
        for b in _BITS + _AB
        for m1 in (False, True)
        for sel in (False, True)
        for m2 in (False, True)
        for t2 in _T2
    ]
    c0s = [_c0(ph, m1, t2) for ph in "CDP" for m1 in (False, True) for t2 in ("a", "-")]
    out_alpha = tuple(cells) + tuple(c0s) + ("<",)

    def name(s):
        if isinstance(s, tuple):
            return "(" + ",".join(name(x) for x in s) + ")"
        return str(s)

    return build_transducer(
        start=("q0",),
        delta=delta,
        input_alphabet=("a", "b", "0", "1"),
        output_alphabet=out_alpha,
        endmarker="<",
        accepting=lambda s: s == ("ACC",),
        name_of=name,
        sweep_bound="log",
        meta={"family": "d", "sweep_envelope": "(1+k+k+1+2k) + 1", "extra_sweeps": 1},
    )
