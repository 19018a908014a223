"""Text format: canonical serialization, structural round-trips, and
line-numbered diagnostics."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iufst import (
    MachineFile,
    MachineParseError,
    Transducer,
    gen_block_nfa,
    gen_copy,
    gen_e,
    gen_unary,
    lba_anbn,
    lba_copy,
    nfa_to_dfa,
    parse_machine,
    parse_word,
    serialize_machine,
)

IDENTITY = """\
kind niufst
states q
input a
output a <
endmarker <
initial q
accept q
trans q a -> q a
trans q < -> q <
"""


class TestParse:
    def test_identity_file(self):
        mf = parse_machine(IDENTITY)
        assert mf.kind == "niufst"
        assert len(mf.machine.states) == 1

    def test_endmarker_in_input_rejected(self):
        bad = IDENTITY.replace("endmarker <", "endmarker a")
        with pytest.raises(MachineParseError, match="endmarker must not be an input"):
            parse_machine(bad)

    def test_unknown_directive(self):
        with pytest.raises(MachineParseError, match="unknown directive"):
            parse_machine(IDENTITY + "frobnicate q\n")

    def test_undeclared_state(self):
        with pytest.raises(MachineParseError, match="undeclared state"):
            parse_machine(IDENTITY + "trans q a -> zz a\n")

    def test_undeclared_symbol(self):
        with pytest.raises(MachineParseError, match="undeclared symbol"):
            parse_machine(IDENTITY + "trans q zz -> q a\n")

    def test_duplicate_dfa_transition(self):
        text = (
            "kind dfa\nstates p q\ninput a\ninitial p\naccept q\n"
            "trans p a -> q\ntrans p a -> p\n"
        )
        with pytest.raises(MachineParseError, match="duplicate dfa transition"):
            parse_machine(text)

    def test_bad_lba_action(self):
        text = (
            "kind lba\nstates p\ninput a\ntape a > <\nlend >\nrend <\n"
            "initial p\naccept\ntrans p a -> p Q\n"
        )
        with pytest.raises(MachineParseError, match="lba action"):
            parse_machine(text)

    def test_line_numbers_in_errors(self):
        try:
            parse_machine(IDENTITY + "trans q a -> zz a\n")
        except MachineParseError as exc:
            assert exc.line == 10

    def test_comments_and_blank_lines(self):
        text = "% header comment\n\n" + IDENTITY.replace(
            "trans q a -> q a", "trans q a -> q a % inline"
        )
        assert parse_machine(text).machine == parse_machine(IDENTITY).machine

    def test_nondeterministic_iufst_rejected(self):
        text = IDENTITY.replace("kind niufst", "kind iufst") + "trans q a -> q <\n"
        with pytest.raises(MachineParseError, match="one choice per"):
            parse_machine(text)


class TestRoundTrip:
    @pytest.mark.parametrize(
        "kind,machine",
        [
            ("iufst", gen_unary(2, 2)),
            ("iufst", gen_unary(3, 2)),
            ("niufst", gen_e(2, 2)),
            ("iufst", gen_copy()),
            ("nfa", gen_block_nfa(2)),
            ("dfa", nfa_to_dfa(gen_block_nfa(2))),
            ("lba", lba_anbn()),
            ("lba", lba_copy()),
        ],
    )
    def test_structural_roundtrip(self, kind, machine):
        mf = MachineFile(kind, machine)
        text = serialize_machine(mf)
        back = parse_machine(text)
        assert back.kind == kind
        assert back.machine == machine
        assert serialize_machine(back) == text  # canonical fixed point

    def test_empty_accepting_serializes_bare(self):
        t = Transducer(
            states=("q",),
            input_alphabet=("a",),
            output_alphabet=("a", "<"),
            endmarker="<",
            initial="q",
            accepting=(),
            transitions={},
        )
        text = serialize_machine(MachineFile("niufst", t))
        assert "\naccept\n" in text
        assert parse_machine(text).machine == t

    def test_nondeterministic_choices_multiple_lines(self):
        t = gen_e(2, 1)
        text = serialize_machine(MachineFile("niufst", t))
        assert text.count("trans q0 b ->") == 2


@st.composite
def random_machines(draw):
    n_states = draw(st.integers(1, 4))
    states = tuple(f"s{i}" for i in range(n_states))
    inputs = tuple(draw(st.sets(st.sampled_from("abc"), min_size=1, max_size=3)))
    outputs = tuple(sorted(set(inputs) | set(draw(
        st.sets(st.sampled_from("xyz"), min_size=0, max_size=2))))) + ("<",)
    transitions = {}
    for q in states:
        for x in inputs + outputs:
            choices = draw(
                st.lists(
                    st.tuples(st.sampled_from(states), st.sampled_from(outputs)),
                    max_size=2,
                    unique=True,
                )
            )
            if choices:
                transitions[(q, x)] = tuple(choices)
    accepting = tuple(draw(st.sets(st.sampled_from(states), max_size=n_states)))
    bound = draw(st.sampled_from([None, 1, 2, 3, "log", "linear", "unbounded"]))
    return Transducer(
        states=states,
        input_alphabet=inputs,
        output_alphabet=outputs,
        endmarker="<",
        initial=states[0],
        accepting=accepting,
        transitions=transitions,
        sweep_bound=bound,
    )


@settings(max_examples=100, deadline=None)
@given(random_machines())
def test_parse_serialize_identity_on_random_machines(t):
    kind = "iufst" if t.is_deterministic else "niufst"
    text = serialize_machine(MachineFile(kind, t))
    assert parse_machine(text).machine == t


class TestWords:
    def test_comma_separated(self):
        assert parse_word("a,b,a", ("a", "b")) == ("a", "b", "a")

    def test_unseparated_single_char(self):
        assert parse_word("aba", ("a", "b")) == ("a", "b", "a")

    def test_empty_word(self):
        assert parse_word("", ("a",)) == ()

    def test_multichar_requires_commas(self):
        assert parse_word("aa,<0", ("aa", "<0")) == ("aa", "<0")

    def test_bad_symbol(self):
        from iufst import MalformedInputError

        with pytest.raises(MalformedInputError):
            parse_word("az", ("a", "b"))
