"""Watch the pi-calculus tape behave like a tape.

For a few tape instances we list the visible moves the tape term offers
and confirm that each move lands, after internal bookkeeping, in the tape
term for the expected new instance. Moving off either end grows the tape
with a blank cell.
"""

from rtmpi import corpus
from rtmpi.laws import check_tape, expected_menu, expected_tape
from rtmpi.rtm import TapeInstance

m = corpus.rtm("parity")
for tape in (TapeInstance.blank(), TapeInstance(("1", "_"), 1), TapeInstance(("1", "_", "1"), 0)):
    report = check_tape(m, tape)
    print(f"tape {tape.render()}: menu as expected: {report.ok(expected_menu(m, tape))}")
    for label, result in sorted(report.results.items()):
        print(f"  {label:14s} -> {expected_tape(m, tape, label).render():12s} {result.verdict}")
