import subprocess
import sys

import pytest

from rtmpi import corpus
from rtmpi.cli import RunConfig, main
from rtmpi.compiler import compile_rtm
from rtmpi.lts import labels, read_aut
from rtmpi.pi import normalize, parse_pi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_explore_parity(capsys, tmp_path):
    target = tmp_path / "parity.aut"
    code, _, err = run(capsys, "explore", "corpus:parity.rtm", "--out", str(target))
    assert code == 0 and "4 states" in err
    assert read_aut(target.read_text()).num_states == 4


def test_explore_tau(capsys, tmp_path):
    src = tmp_path / "t.pi"
    src.write_text("tau.0\n")
    code, out, _ = run(capsys, "explore", str(src))
    assert code == 0 and out.startswith("des (0, 1, 2)")


def test_explore_branching_counter(capsys):
    code, _, err = run(capsys, "explore", "corpus:branching_counter_n2.pi", "--free-data", "e")
    assert code == 0 and "frontier 0" in err


def test_explore_settled_is_smaller(capsys):
    _, _, plain = run(capsys, "explore", "corpus:branching_counter_n1.pi", "--free-data", "e")
    code, _, settled = run(capsys, "explore", "corpus:branching_counter_n1.pi", "--free-data", "e", "--settle")
    assert code == 0 and int(settled.split()[0]) < int(plain.split()[0])


def test_compile_round_trips(capsys):
    code, out, _ = run(capsys, "compile", "corpus:parity.rtm")
    assert code == 0
    assert "# action a -> act_a" in out
    term = parse_pi(out)
    assert normalize(term) is compile_rtm(corpus.rtm("parity")).term


def test_compile_deadlock(capsys):
    assert run(capsys, "compile", "corpus:deadlock.rtm")[0] == 0


def test_check_exit_codes(capsys, tmp_path):
    assert run(capsys, "check", "corpus:tau_loop.aut", "corpus:tau_loop.aut")[0] == 0
    assert run(capsys, "check", "corpus:tau_loop.aut", "corpus:deadlock.aut", "--mode", "bb")[0] == 0
    code, out, _ = run(capsys, "check", "corpus:tau_loop.aut", "corpus:deadlock.aut")
    assert code == 1 and "diverges" in out


def test_check_writes_witness(capsys, tmp_path):
    target = tmp_path / "w.txt"
    code, _, _ = run(capsys, "check", "corpus:tau_loop.aut", "corpus:deadlock.aut", "--mode", "bb", "--out", str(target))
    assert code == 0 and target.read_text() == "(0,0)\n"


def test_check_indeterminate(capsys, tmp_path):
    src = tmp_path / "grow.rtm"
    src.write_text("states: s\nactions: a\ndata: 1\ninit: s\ns a [_/1] R s\n")
    assert run(capsys, "check", str(src), str(src), "--max-depth", "3")[0] == 2
    assert run(capsys, "check", str(src), str(src), "--max-depth", "3", "--allow-frontier")[0] == 2


def test_restrict(capsys, tmp_path):
    full = tmp_path / "xy.aut"
    run(capsys, "explore", "corpus:xy.pi", "--free-data", "a,b,c", "--out", str(full))
    code, out, _ = run(capsys, "restrict", str(full), "--free-data", "a,b")
    assert code == 0
    assert {a.render() for a in labels(read_aut(out))} == {"x?a", "x?b", "nu!a", "nu!b"}


def test_degree(capsys, tmp_path):
    per_state = tmp_path / "deg.txt"
    code, out, _ = run(capsys, "degree", "corpus:branching_counter_n3.pi", "--free-data", "e", "--out", str(per_state))
    assert code == 0 and out.startswith("supremum 4")
    assert per_state.read_text().startswith("0 ")


def test_degree_refuses_truncated_systems(capsys):
    assert run(capsys, "degree", "corpus:branching_counter_n3.pi", "--free-data", "e", "--max-states", "10")[0] == 2


def test_roundtrip(capsys):
    code, out, _ = run(capsys, "roundtrip", "corpus:parity.rtm")
    assert code == 0 and "dpbb: equivalent" in out


def test_roundtrip_needs_bounds_for_growing_tapes(capsys, tmp_path):
    src = tmp_path / "grow.rtm"
    src.write_text("states: s\nactions: a\ndata: 1\ninit: s\ns a [_/1] R s\n")
    code, out, _ = run(capsys, "roundtrip", str(src), "--max-depth", "20")
    assert code == 2 and "raise the bounds" in out
    assert run(capsys, "roundtrip", str(src), "--visible-bound", "3")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["explore", "missing.rtm"],
        ["explore", "corpus:tau_loop.aut"],
        ["explore", "corpus:parity.rtm", "--max-states", "0"],
        ["frobnicate"],
        ["check", "corpus:parity.rtm"],
        ["check", "a.aut", "b.aut", "--mode", "weak"],
    ],
)
def test_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3


def test_syntax_error_reported(capsys, tmp_path):
    src = tmp_path / "bad.pi"
    src.write_text("x?(y\n")
    code, _, err = run(capsys, "explore", str(src))
    assert code == 3 and "line 2, column 1" in err


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(mode="weak")
    with pytest.raises(ValueError):
        RunConfig(max_depth=0)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "rtmpi", "check", "corpus:tau_loop.aut", "corpus:deadlock.aut"],
                         capture_output=True, text=True)
    assert res.returncode == 1 and "dpbb: inequivalent" in res.stdout
