"""Text formats: automata, graphs, lasso words, and run reports."""

from __future__ import annotations

import hashlib

import pytest

from gfgmin import (
    Alphabet,
    Kind,
    LassoWord,
    ParityAutomaton,
    ParseError,
    RunReport,
    Sink,
    parse_automaton,
    parse_graph,
    parse_lasso,
    parse_report,
    report_from_json,
    serialize_automaton,
    serialize_graph,
    serialize_lasso,
    file_digest,
    make_graph,
)


# -- automata ----------------------------------------------------------------


def test_automaton_round_trip_on_fixtures(small_corpus, g2_buchi, p5_buchi):
    fixtures = list(small_corpus.values()) + [g2_buchi, p5_buchi]
    for aut in fixtures:
        assert parse_automaton(serialize_automaton(aut)) == aut


def test_automaton_round_trip_sink_initial(ab):
    aut = ParityAutomaton.make(
        alphabet=ab, state_count=0, initial=Sink.TOP, delta={}, priority={}, kind=Kind.BUCHI
    )
    assert parse_automaton(serialize_automaton(aut)) == aut


def test_parse_automaton_accepts_comments_blanks_and_aliases():
    text = """
    # a one-state machine over the stop alphabet
    alphabet v0 ♮

    states 1
    kind buchi
    initial 0
    priority 0 2
    trans 0 v0 0
    trans 0 ♮ TOP
    """
    aut = parse_automaton(text)
    assert aut.alphabet.symbols == ("v0", "#")
    assert aut.delta[(0, "#")] is Sink.TOP


def test_parse_automaton_defaults():
    aut = parse_automaton("alphabet a\nstates 1\ninitial 0\npriority 0 0\ntrans 0 a 0\n")
    assert aut.kind is Kind.PARITY
    assert (aut.top_priority, aut.bottom_priority) == (0, 1)


def test_parse_automaton_leaves_holes_for_validate():
    aut = parse_automaton("alphabet a\nstates 2\ninitial 0\npriority 0 1\ntrans 0 a 1\n")
    problems = aut.validate()
    assert any("priority" in p for p in problems)
    assert any("transition" in p for p in problems)


def test_parse_automaton_nondeterministic_targets():
    aut = parse_automaton(
        "alphabet a\nstates 2\ninitial 0\npriority 0 1\npriority 1 2\n"
        "trans 0 a 0 1\ntrans 1 a 1\n"
    )
    assert aut.delta[(0, "a")] == frozenset({0, 1})
    assert not aut.is_deterministic()


@pytest.mark.parametrize(
    "text, message, line",
    [
        ("alphabet\n", "at least one symbol", 1),
        ("alphabet a\nstates 1 2\n", "exactly one number", 2),
        ("alphabet a\nstates x\n", "state count", 2),
        ("alphabet a\nkind strange\n", "unknown kind", 2),
        ("alphabet a\nstates 1\ninitial 0\ninitial 1\n", "duplicate 'initial'", 4),
        ("alphabet a\npriority 0 1\npriority 0 2\n", "duplicate priority", 3),
        ("alphabet a\ntrans 0 a 0\ntrans 0 a 1\n", "duplicate transition", 3),
        ("alphabet a\ntrans 0 a\n", "a state, a symbol, and a target", 2),
        ("alphabet a\ntrans 0 a 1 TOP\n", "not both", 2),
        ("alphabet a\nwibble 3\n", "unknown statement", 2),
    ],
)
def test_parse_automaton_errors_name_their_line(text, message, line):
    with pytest.raises(ParseError, match=message) as err:
        parse_automaton(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


@pytest.mark.parametrize("missing", ["alphabet", "states", "initial"])
def test_parse_automaton_missing_required_statement(missing):
    statements = {
        "alphabet": "alphabet a",
        "states": "states 1",
        "initial": "initial 0",
    }
    text = "\n".join(v for k, v in statements.items() if k != missing) + "\n"
    with pytest.raises(ParseError, match=f"missing required '{missing}'"):
        parse_automaton(text)


def test_serialize_automaton_is_canonical(g2_buchi):
    text = serialize_automaton(g2_buchi)
    lines = text.splitlines()
    assert lines[0].startswith("alphabet ")
    assert lines[1] == "states 5"
    assert lines[2] == "kind buchi"
    assert lines[3] == "initial 0"
    assert lines[4] == "priority TOP 2"
    assert lines[5] == "priority BOT 1"
    # One transition line per state and symbol, in table order.
    assert sum(1 for l in lines if l.startswith("trans ")) == 15
    assert text == serialize_automaton(parse_automaton(text))


# -- graphs ------------------------------------------------------------------


def test_graph_round_trip(p5, c4):
    for graph in (p5, c4):
        assert parse_graph(serialize_graph(graph)) == graph


def test_parse_graph_initial_defaults_to_zero():
    graph = parse_graph("vertices 2\nedge 0 1\n")
    assert graph.initial_vertex == 0


def test_parse_graph_checks_niceness_by_default():
    text = "vertices 4\nedge 0 1\nedge 2 3\n"
    with pytest.raises(ValueError, match="not connected"):
        parse_graph(text)
    raw = parse_graph(text, check=False)
    assert raw.vertex_count == 4


@pytest.mark.parametrize(
    "text, message",
    [
        ("vertices 2 3\nedge 0 1\n", "exactly one number"),
        ("edge 0 1\n", "missing required 'vertices'"),
        ("vertices 2\nedge 0\n", "exactly two vertices"),
        ("vertices 2\ninitial 0\ninitial 1\nedge 0 1\n", "duplicate 'initial'"),
        ("vertices 2\nedge 0 1\nloop 1\n", "unknown statement"),
    ],
)
def test_parse_graph_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_graph(text)


# -- lasso words ---------------------------------------------------------------


def test_lasso_round_trip():
    for text in ("; a", "a b ; c", "v0 v1 # ; v1", "# v0 ; v0"):
        word = parse_lasso(text)
        assert serialize_lasso(word) == text.strip()
        assert parse_lasso(serialize_lasso(word)) == word


def test_parse_lasso_normalizes_the_stop_alias():
    assert parse_lasso("♮ v0 ; v0") == LassoWord(("#", "v0"), ("v0",))


@pytest.mark.parametrize(
    "text, message",
    [
        ("a b c", "exactly one ';'"),
        ("a ; b ; c", "exactly one ';'"),
        ("a ; ", "period must contain at least one symbol"),
    ],
)
def test_parse_lasso_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_lasso(text)


# -- run reports -----------------------------------------------------------------


def sample_report() -> RunReport:
    return RunReport(
        command="gfg-equiv",
        verdict="EQUIVALENT",
        inputs=(("b1.txt", "ab" * 32), ("b2.txt", "cd" * 32)),
        details=(("forward", "included"), ("backward", "included")),
        warnings=("the reference automaton is nondeterministic: verdicts are "
                  "sound only if it is known to be good-for-games",),
    )


def test_report_text_round_trip():
    report = sample_report()
    text = report.to_text()
    assert text.splitlines()[0] == "report-version 1"
    assert parse_report(text) == report


def test_report_json_round_trip():
    report = sample_report()
    assert report_from_json(report.to_json()) == report


def test_report_with_no_optional_parts():
    report = RunReport(command="validate", verdict="VALID")
    assert parse_report(report.to_text()) == report
    assert report_from_json(report.to_json()) == report


def test_parse_report_requires_header_fields():
    with pytest.raises(ParseError, match="missing"):
        parse_report("command validate\nverdict VALID\n")
    with pytest.raises(ParseError, match="missing"):
        parse_report("report-version 1\nverdict VALID\n")
    with pytest.raises(ParseError, match="missing"):
        parse_report("report-version 1\ncommand validate\n")


def test_report_from_json_errors():
    with pytest.raises(ParseError, match="not valid JSON"):
        report_from_json("{nope")
    with pytest.raises(ParseError, match="missing a field"):
        report_from_json('{"command": "validate"}')


def test_report_detail_values_survive_single_spacing():
    report = RunReport(
        command="classify",
        verdict="CLASSIFIED",
        details=(("v-states-0", "0 4"), ("empty", "")),
    )
    assert parse_report(report.to_text()) == report


# -- digests --------------------------------------------------------------------


def test_file_digest_matches_hashlib(tmp_path):
    target = tmp_path / "blob.txt"
    target.write_bytes(b"vertices 2\nedge 0 1\n")
    expected = hashlib.sha256(b"vertices 2\nedge 0 1\n").hexdigest()
    assert file_digest(target) == expected
    assert file_digest(str(target)) == expected
