import pytest

from rtmpi import corpus
from rtmpi.lts import explore, isomorphic, read_aut, write_aut
from rtmpi.pi import NameUniverse, pi_generator
from rtmpi.rtm import rtm_generator


def test_listing():
    names = corpus.names()
    for rtm in corpus.RTMS:
        assert f"{rtm}.rtm" in names
    assert {"xy.pi", "tau_loop.aut", "deadlock.aut"} <= set(names)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_branching_counter_files_match_the_generator(n):
    assert corpus.read_text(f"branching_counter_n{n}.pi") == corpus.branching_counter_source(n)


def test_branching_counter_needs_positive_bound():
    with pytest.raises(ValueError):
        corpus.branching_counter_source(0)


@pytest.mark.parametrize("name", corpus.RTMS)
def test_machines_are_finite(name):
    l = explore(rtm_generator(corpus.rtm(name)))
    assert not l.frontier
    assert isomorphic(read_aut(write_aut(l)), l)


def test_aut_files():
    assert corpus.aut("tau_loop").num_states == 1
    assert corpus.aut("deadlock").transitions == ()


def test_terms_parse():
    assert explore(pi_generator(corpus.pi("xy"), NameUniverse(("a",)))).num_states > 1
