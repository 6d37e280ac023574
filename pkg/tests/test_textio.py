import pytest
from hypothesis import given, strategies as st

from dfadecomp import (
    Dfa,
    InputError,
    ParseError,
    export_dot,
    format_partition,
    gen_example31,
    gen_example31_partitions,
    gen_grid,
    gen_lkl,
    gen_ln,
    parse_dfa,
    parse_dfas,
    parse_partition,
    print_dfa,
)

import helpers


@st.composite
def dfas(draw):
    n = draw(st.integers(1, 5))
    table = tuple(
        tuple(draw(st.integers(0, n - 1)) for _ in range(2)) for _ in range(n)
    )
    acc = frozenset(i for i in range(n) if draw(st.booleans()))
    initial = draw(st.integers(0, n - 1))
    return Dfa("h", tuple(f"q{i}" for i in range(n)), ("a", "b"), table, initial, acc)


class TestRoundTrip:
    def test_fixture_round_trips_are_byte_exact(self):
        fixtures = [
            gen_ln(1),
            gen_ln(4),
            gen_lkl(2, 2),
            gen_grid(3, 5),
            *gen_example31(),
        ]
        for dfa in fixtures:
            text = print_dfa(dfa)
            again = parse_dfa(text)
            assert again == dfa
            assert print_dfa(again) == text

    @given(dfas())
    def test_random_round_trips(self, dfa):
        assert parse_dfa(print_dfa(dfa)) == dfa

    def test_lkl22_has_eight_transition_lines(self):
        lines = print_dfa(gen_lkl(2, 2)).splitlines()
        assert sum(1 for ln in lines if ln.startswith("trans ")) == 8

    def test_empty_accepting_line_round_trips(self):
        dfa = Dfa("x", ("p",), ("a",), ((0,),), 0, frozenset())
        text = print_dfa(dfa)
        assert "accepting" in text.splitlines()
        assert parse_dfa(text) == dfa

    def test_multi_document_stream(self):
        docs = print_dfa(gen_ln(2)) + print_dfa(gen_lkl(2, 2))
        parsed = parse_dfas(docs)
        assert [d.name for d in parsed] == ["ln2", "lkl2x2"]


class TestParseErrors:
    def test_missing_transition_names_the_pair(self):
        text = (
            "dfa x\nalphabet a b\nstates p q\ninitial p\naccepting q\n"
            "trans p a q\ntrans p b q\ntrans q a p\nend\n"
        )
        with pytest.raises(ParseError) as exc:
            parse_dfa(text)
        assert "'q'" in str(exc.value) and "'b'" in str(exc.value)

    def test_duplicate_transition_line_number(self):
        text = (
            "dfa x\nalphabet a\nstates p\ninitial p\naccepting\n"
            "trans p a p\ntrans p a p\nend\n"
        )
        with pytest.raises(ParseError) as exc:
            parse_dfa(text)
        assert exc.value.line == 7

    def test_unknown_symbol_in_transition(self):
        text = "dfa x\nalphabet a\nstates p\ninitial p\naccepting\ntrans p b p\nend\n"
        with pytest.raises(ParseError) as exc:
            parse_dfa(text)
        assert "'b'" in str(exc.value)

    def test_missing_initial_line(self):
        text = "dfa x\nalphabet a\nstates p\naccepting\ntrans p a p\nend\n"
        with pytest.raises(ParseError) as exc:
            parse_dfa(text)
        assert "initial" in str(exc.value)

    def test_trailing_content_rejected(self):
        text = print_dfa(gen_ln(1)) + "junk\n"
        with pytest.raises(ParseError):
            parse_dfa(text)

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_dfa("# nothing here\n")

    def test_comments_and_blank_lines_are_ignored(self):
        text = "# header\n\n" + print_dfa(gen_ln(2)).replace(
            "initial q0", "initial q0  # start here"
        )
        assert parse_dfa(text) == gen_ln(2)


class TestPartitionLiterals:
    def test_format_and_parse_round_trip(self):
        _, a_prime = gen_example31()
        pi1, pi2 = gen_example31_partitions()
        for pi in (pi1, pi2):
            literal = format_partition(pi, a_prime)
            assert parse_partition(literal, a_prime) == pi

    def test_example_literal(self):
        _, a_prime = gen_example31()
        pi2 = parse_partition("{a0,a1,b0,R0|b1,R1}", a_prime)
        assert pi2 == gen_example31_partitions()[1]

    def test_incomplete_literal_rejected(self):
        _, a_prime = gen_example31()
        with pytest.raises(InputError):
            parse_partition("{a0,a1}", a_prime)

    def test_unknown_state_rejected(self):
        _, a_prime = gen_example31()
        with pytest.raises(InputError):
            parse_partition("{a0,a1,b0,b1,R0,R1,zz}", a_prime)

    def test_braces_required(self):
        _, a_prime = gen_example31()
        with pytest.raises(InputError):
            parse_partition("a0,a1|b0", a_prime)


class TestDot:
    def test_one_state_all_accepting_has_one_doublecircle(self):
        dot = export_dot(helpers.one_state())
        assert dot.count("doublecircle") == 1
        assert "__start__ ->" in dot

    def test_partition_renders_one_cluster_per_block(self):
        _, a_prime = gen_example31()
        pi1, _ = gen_example31_partitions()
        dot = export_dot(a_prime, pi1)
        assert dot.count("subgraph cluster_") == 4

    def test_edge_labels_group_symbols(self):
        dot = export_dot(helpers.one_state())
        assert '[label="a,b"]' in dot

    def test_output_is_deterministic(self):
        g = gen_grid(2, 3)
        assert export_dot(g) == export_dot(g)
