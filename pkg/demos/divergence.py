"""Why divergence matters.

A state that can only spin on internal steps looks like a deadlock to
plain branching bisimilarity; the divergence-preserving variant keeps them
apart and says which state is responsible.
"""

from rtmpi import corpus
from rtmpi.equivalence import equivalent

loop, stop = corpus.aut("tau_loop"), corpus.aut("deadlock")
for divergence in (False, True):
    r = equivalent(loop, stop, divergence)
    mode = "dpbb" if divergence else "bb"
    print(f"{mode}: {r.verdict}")
    if r.evidence:
        print(f"  {r.evidence.describe()}")
