import pytest

from rtmpi import corpus
from rtmpi.compiler import (
    action_name,
    cell_template,
    compile_rtm,
    control_template,
    datum_name,
    generator_template,
    head_template,
    name_map,
    step_template,
    tape_snapshot,
)
from rtmpi.equivalence import EQUIVALENT, INDETERMINATE, oracle
from rtmpi.laws import check_tape, expected_menu, expected_tape
from rtmpi.lts import TAU_LABEL, explore, labels
from rtmpi.pi import InP, OutP, Par, Res, Sum, Tau, free_names, normalize, parse_pi, render
from rtmpi.pipeline import compiled_generator, roundtrip
from rtmpi.rtm import BLANK, TapeInstance, parse_rtm

HEADER = "states: s t\nactions: a b\ndata: 1\ninit: s\n"


def summands(template):
    body = template.body
    return body.items if isinstance(body, Sum) else (body,)


def test_cell_template():
    c = cell_template()
    assert isinstance(c, InP) and c.binders == ("t", "l", "r", "u", "d")
    assert free_names(c) == {"c"}
    assert len(summands(c)) == 2
    assert normalize(normalize(c)) is normalize(c)


def test_head_template():
    h = head_template()
    assert len(summands(h)) == 4
    assert free_names(h) == {"h", "read", "write", "left", "right"}


def test_generator_template():
    b = generator_template()
    assert isinstance(b, Sum) and len(b.items) == 2
    left = b.items[0]
    assert isinstance(left, InP) and left.channel == "bl"
    inner = left.body
    while isinstance(inner, Res):
        inner = inner.body
    # announce the new cell on t, then spawn the cell and the next generator
    assert isinstance(inner, OutP) and inner.channel == "t"
    assert inner.data == ("l", "r", "u", datum_name(BLANK))
    assert isinstance(inner.body, Par) and [p.channel for p in inner.body.items] == ["c", "bl"]


def test_generators_are_mirror_images():
    b = generator_template()
    right = render(b.items[1])
    assert "br!<r,t>" in right and "bl!<l,t>" in render(b.items[0])


def test_step_template_summands():
    one = parse_rtm(HEADER + "s a [_/1] R t\n")
    assert not isinstance(step_template(one, "s", BLANK), Sum)
    two = parse_rtm(HEADER + "s a [_/1] R t\ns b [_/_] L s\n")
    assert len(step_template(two, "s", BLANK).items) == 2
    assert render(step_template(two, "t", BLANK)) == "0"


def test_tau_rule_starts_with_tau():
    m = parse_rtm(HEADER + "s tau [_/1] R t\n")
    assert isinstance(step_template(m, "s", BLANK), Tau)
    l = explore(compiled_generator(m))
    assert {a.render() for a in labels(l)} == {"tau"}


def test_control_template_dispatches_on_state_and_datum():
    m = parse_rtm(HEADER + "s a [_/1] R t\n")
    s = control_template(m)
    assert [b.channel for b in s.items] == ["st_s", "st_t"]
    assert all(isinstance(b, InP) and b.binders == () for b in s.items)


def test_name_map_is_injective():
    m = parse_rtm("states: x\nactions: x\ndata: x\ninit: x\n")
    nm = name_map(m)
    assert len(set(nm.values())) == len(nm)


@pytest.mark.parametrize("name", corpus.RTMS)
def test_free_names_are_action_names(name):
    m = corpus.rtm(name)
    used = {action_name(r.action) for r in m.rules if r.action != "tau"}
    assert free_names(compile_rtm(m).term) == used


def test_compiled_term_reparses():
    out = compile_rtm(corpus.rtm("parity"))
    assert normalize(parse_pi(render(out.templates["M"]))) is out.term
    assert set(out.templates) == {"C", "B", "H", "S", "Control", "Cells", "Tape", "M"}


def test_deadlock_machine_compiles_to_a_silent_term():
    l = explore(compiled_generator(corpus.rtm("deadlock")))
    assert not l.frontier
    assert labels(l) <= {TAU_LABEL}
    assert any(not l.out(s) for s in range(l.num_states))


def test_one_rule_loop_roundtrip():
    m = parse_rtm("states: s\nactions: a\ninit: s\ns a [_/_] R s\n")
    # the compiled tape keeps growing, so only a visibly bounded check ends
    assert roundtrip(m, max_states=2000).verdict == INDETERMINATE
    assert roundtrip(m, visible_bound=4).verdict == EQUIVALENT


def test_parity_roundtrip_agrees_with_oracle():
    report = roundtrip(corpus.rtm("parity"))
    assert report.verdict == EQUIVALENT
    assert oracle(report.native, report.compiled, divergence=True).verdict == EQUIVALENT


def test_blank_tape_menu():
    m = corpus.rtm("parity")
    tape = TapeInstance.blank()
    report = check_tape(m, tape)
    assert set(report.menu) == {"read!dtblank", "write?dtblank", "write?dt_1", "left", "right"}
    assert report.ok(expected_menu(m, tape))


def test_expected_tape_edges():
    m = corpus.rtm("parity")
    tape = TapeInstance(("1",), 0)
    assert expected_tape(m, tape, "left") == TapeInstance((BLANK, "1"), 0)
    assert expected_tape(m, tape, "right") == TapeInstance(("1", BLANK), 1)
    assert expected_tape(m, tape, "write?dtblank") == TapeInstance((BLANK,), 0)
    assert expected_tape(m, tape, "read!dt_1") == tape


def test_tape_snapshot_checks_datum():
    m = corpus.rtm("parity")
    with pytest.raises(ValueError):
        tape_snapshot(m, TapeInstance(("1",), 0), ("s", BLANK))
