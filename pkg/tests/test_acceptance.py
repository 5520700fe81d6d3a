"""Acceptance run: one test per criterion, each with its time limit.

``pytest tests/test_acceptance.py`` prints a PASS/FAIL line per criterion
in the terminal summary; ``python tests/test_acceptance.py`` prints the
same lines without pytest.
"""

from __future__ import annotations

import contextlib
import io
import itertools
import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import properties  # noqa: E402
from randomgen import random_lts  # noqa: E402

from rtmpi import corpus  # noqa: E402
from rtmpi.cli import main  # noqa: E402
from rtmpi.equivalence import check_relation, equivalent, oracle  # noqa: E402
from rtmpi.laws import check_recreation, check_tape, expected_menu  # noqa: E402
from rtmpi.lts import explore, isomorphic, labels, read_aut, restrict, write_aut  # noqa: E402
from rtmpi.pi import NameUniverse, pi_generator  # noqa: E402
from rtmpi.rtm import BLANK, TapeInstance, rtm_generator  # noqa: E402

RESULTS = {}


def _record(number, title):
    """Store ``(ok, detail, seconds)`` for the summary printed at the end."""

    def wrap(check):
        def run():
            start = time.perf_counter()
            try:
                ok, detail = check()
            except Exception as exc:  # reported, then re-raised by the test
                RESULTS[number] = (title, False, f"{type(exc).__name__}: {exc}", time.perf_counter() - start)
                raise
            RESULTS[number] = (title, ok, detail, time.perf_counter() - start)
            return ok, detail, RESULTS[number][3]

        run.number, run.title = number, title
        return run

    return wrap


def _cli(*argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv))
    return code, out.getvalue()


@_record(1, "compiled machines are dpbb-equivalent to their RTMs")
def roundtrip_corpus():
    details, ok = [], True
    for name in corpus.RTMS:
        start = time.perf_counter()
        code, report = _cli("roundtrip", f"corpus:{name}.rtm", "--mode", "dpbb")
        seconds = time.perf_counter() - start
        ok &= code == 0 and "dpbb: equivalent" in report and seconds < 60
        details.append(f"{name}: exit {code} in {seconds:.1f} s")
    return ok, "; ".join(details)


def tape_cases():
    symbols = (BLANK, "1")
    for length in (1, 2):
        for cells in itertools.product(symbols, repeat=length):
            for head in range(length):
                yield TapeInstance(cells, head)
    yield TapeInstance(("_", "1", "1"), 0)
    yield TapeInstance(("1", "_", "1"), 1)
    yield TapeInstance(("1", "1", "_"), 2)


@_record(2, "tape transitions match the four tape laws")
def tape_laws():
    m = corpus.rtm("parity")
    failed = []
    count = 0
    for tape in tape_cases():
        count += 1
        report = check_tape(m, tape)
        if not report.ok(expected_menu(m, tape)):
            failed.append(tape.render())
    return not failed, f"{count} tapes" + (f", failed: {failed}" if failed else "")


@_record(3, "cell, generator and head recreation")
def recreation():
    results = check_recreation()
    failed = [k for k, r in results.items() if not r.equivalent]
    return not failed, f"{len(results)} laws" + (f", failed: {failed}" if failed else "")


@_record(4, "partition refinement agrees with the fixpoint oracle")
def oracle_agreement():
    rng = random.Random(2024)
    disagreements = bad_witnesses = 0
    for _ in range(200):
        a, b = random_lts(rng), random_lts(rng)
        for divergence in (False, True):
            fast, slow = equivalent(a, b, divergence), oracle(a, b, divergence)
            disagreements += fast.verdict != slow.verdict
            if fast.equivalent and not check_relation(a, b, fast.witness, divergence):
                bad_witnesses += 1
    return disagreements == bad_witnesses == 0, f"{disagreements} disagreements, {bad_witnesses} bad witnesses in 400 checks"


@_record(5, "divergence sensitivity")
def divergence():
    loop, stop = corpus.aut("tau_loop"), corpus.aut("deadlock")
    bb, dpbb = equivalent(loop, stop, False), equivalent(loop, stop, True)
    return bb.equivalent and not dpbb.equivalent, f"bb {bb.verdict}, dpbb {dpbb.verdict}"


@_record(6, "restriction yields finitely many labels")
def restriction():
    full = explore(pi_generator(corpus.pi("xy"), NameUniverse(("a", "b", "c"))))
    l = restrict(full, ("a", "b"))
    shown = {a.render() for a in labels(l)}
    return shown == {"x?a", "x?b", "nu!a", "nu!b"} and not l.frontier, f"labels {sorted(shown)}, {l.num_states} states"


@_record(7, "the unrolled counter reaches branching degree n+1")
def degree():
    details, ok = [], True
    u = corpus.BRANCHING_INPUT
    with tempfile.TemporaryDirectory() as tmp:
        for n in (1, 2, 3):
            start = time.perf_counter()
            full, restricted = f"{tmp}/full{n}.aut", f"{tmp}/restricted{n}.aut"
            _cli("explore", f"corpus:branching_counter_n{n}.pi", "--free-data", u, "--out", full)
            _cli("restrict", full, "--free-data", u, "--out", restricted)
            code, report = _cli("degree", restricted)
            d = int(report.split()[1])
            ok &= code == 0 and d >= n + 1 and time.perf_counter() - start < 120
            details.append(f"n={n}: {d}")
    return ok, ", ".join(details)


@_record(8, "engine property suites")
def property_suites():
    checks = (
        properties.normalization,
        properties.alpha_invariance,
        properties.substitution_laws,
        properties.tau_inertness,
        properties.compatibility,
        properties.degree_constancy,
    )
    failed = {c.__name__: len(bad) for c in checks if (bad := c())}
    return not failed, "all passed" if not failed else f"failures: {failed}"


def _cli_explore(name):
    cmd = [sys.executable, "-m", "rtmpi", "explore", f"corpus:{name}"]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


@_record(9, ".aut round trip")
def aut_roundtrip():
    systems = {name: corpus.aut(name[:-4]) for name in corpus.names() if name.endswith(".aut")}
    systems.update({f"{n}.rtm": explore(rtm_generator(corpus.rtm(n))) for n in corpus.RTMS})
    systems["xy.pi"] = explore(pi_generator(corpus.pi("xy"), NameUniverse(("a", "b"))))
    broken = [k for k, l in systems.items() if not isomorphic(read_aut(write_aut(l)), l)]
    stable = _cli_explore("parity.rtm") == _cli_explore("parity.rtm")
    return not broken and stable, f"{len(systems)} systems, byte-stable: {stable}" + (f", broken: {broken}" if broken else "")


CRITERIA = [roundtrip_corpus, tape_laws, recreation, oracle_agreement, divergence, restriction, degree,
            property_suites, aut_roundtrip]
LIMITS = {1: 180, 2: 30, 3: 10, 4: 60, 7: 120, 8: 300}


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{c.number}" for c in CRITERIA])
def test_criterion(criterion):
    ok, detail, seconds = criterion()
    assert ok, detail
    limit = LIMITS.get(criterion.number)
    assert limit is None or seconds < limit, f"took {seconds:.1f} s, limit {limit} s"


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        title, ok, detail, seconds = RESULTS[number]
        lines.append(f"criterion {number} {'PASS' if ok else 'FAIL'} ({seconds:.1f} s) {title}: {detail}")
    return lines


if __name__ == "__main__":
    for c in CRITERIA:
        try:
            c()
        except Exception:
            pass
    print("\n".join(summary_lines()))
