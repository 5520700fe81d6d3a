import pytest

from rtmpi import corpus
from rtmpi.lts import TAU_LABEL, explore, plain
from rtmpi.rtm import (
    BLANK,
    Configuration,
    RtmError,
    TapeInstance,
    format_rtm,
    initial_config,
    parse_rtm,
    rtm_generator,
    rtm_out,
)

ONE_RULE = "states: s t\nactions: a\ndata: 1\ninit: s\n"


def test_parse_one_rule():
    m = parse_rtm("states: s\nactions: a\ndata: 1\ninit: s\ns a [_/1] R s\n")
    assert len(m.rules) == 1
    assert m.rules[0].write == "1" and m.rules[0].move == "R"
    assert parse_rtm(format_rtm(m)) == m


@pytest.mark.parametrize(
    "text, message",
    [
        ("states: s\nactions: a\ninit: s\ns a [_/_] R t\n", "undeclared state t"),
        ("states: s\nactions: a\ninit: s\ns a [_/2] R s\n", "undeclared data symbol 2"),
        ("states: s\nactions: a\ninit: s\ns b [_/_] R s\n", "undeclared action b"),
        ("states: s\nactions: a\ninit: s\ns a [_/_] R s\ns a [_/_] R s\n", "duplicate rule"),
        ("states: s\nactions: a\n", "missing initial state"),
        ("states: s\ninit: s\nnonsense\n", "cannot parse"),
        ("states: s\ndata: _\ninit: s\n", "bad identifier"),
        ("states: s\nactions: tau\ninit: s\n", "tau"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(RtmError, match=message):
        parse_rtm(text)


def test_no_rules_is_a_deadlock():
    l = explore(rtm_generator(parse_rtm("states: s\ninit: s\n")))
    assert l.num_states == 1 and not l.transitions


def test_initial_config():
    m = parse_rtm(ONE_RULE)
    c = initial_config(m)
    assert c == Configuration("s", TapeInstance((BLANK,), 0))
    assert initial_config(m) == c
    assert c.render() == "s: [_]"


def test_write_and_move_right():
    m = parse_rtm(ONE_RULE + "s a [_/1] R t\n")
    assert rtm_out(m, initial_config(m)) == [(plain("a"), Configuration("t", TapeInstance(("1", BLANK), 1)))]


def test_move_left_on_blank_tape_stays_trimmed():
    m = parse_rtm(ONE_RULE + "s a [_/_] L t\n")
    assert rtm_out(m, initial_config(m)) == [(plain("a"), Configuration("t", TapeInstance((BLANK,), 0)))]


def test_no_matching_rule():
    m = parse_rtm(ONE_RULE + "s a [1/1] L t\n")
    assert rtm_out(m, initial_config(m)) == []


def test_tau_rule():
    m = parse_rtm(ONE_RULE + "s tau [_/_] R t\n")
    assert rtm_out(m, initial_config(m))[0][0] == TAU_LABEL


def test_nondeterministic_successors_are_sorted():
    m = parse_rtm("states: s t\nactions: a b\ninit: s\ns b [_/_] R t\ns a [_/_] R t\ns a [_/_] L s\n")
    out = rtm_out(m, initial_config(m))
    assert [(a.render(), c.state) for a, c in out] == [("a", "s"), ("a", "t"), ("b", "t")]


def test_tape_normalization():
    t = TapeInstance((BLANK, BLANK, "1", BLANK, BLANK), 2).normalized()
    assert t == TapeInstance(("1",), 0)
    t = TapeInstance(("1", BLANK, BLANK), 1).normalized()
    assert t == TapeInstance(("1", BLANK), 1)
    with pytest.raises(RtmError):
        TapeInstance(("1",), 1)


def test_parity_machine_lts():
    l = explore(rtm_generator(corpus.rtm("parity")), 100, 100)
    assert set(l.states) == {"even: [_]", "backO: 1 [_]", "odd: [1]", "backE: [_]"}
    edges = {(l.states[s], a.render(), l.states[t]) for s, a, t in l.transitions}
    assert edges == {
        ("even: [_]", "a", "backO: 1 [_]"),
        ("even: [_]", "ev", "backE: [_]"),
        ("backO: 1 [_]", "tau", "odd: [1]"),
        ("odd: [1]", "a", "backE: [_]"),
        ("odd: [1]", "od", "backO: 1 [_]"),
        ("backE: [_]", "tau", "even: [_]"),
    }


def test_deadlock_machine_lts():
    l = explore(rtm_generator(corpus.rtm("deadlock")))
    assert l.num_states == 1


def test_keys_are_deterministic():
    a = explore(rtm_generator(corpus.rtm("counter")))
    b = explore(rtm_generator(corpus.rtm("counter")))
    assert a == b and not a.frontier
