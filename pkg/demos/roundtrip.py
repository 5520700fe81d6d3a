"""Compile each corpus machine into a pi-term and compare the two systems.

The native machine and the compiled term are explored separately; the
compiled term talks to its tape over private channels, so all of that
traffic shows up as internal steps. Divergence-preserving branching
bisimilarity then asks whether those internal steps are harmless.
"""

from rtmpi import corpus
from rtmpi.pipeline import roundtrip

for name in corpus.RTMS:
    m = corpus.rtm(name)
    report = roundtrip(m)
    print(f"{name}: {len(m.rules)} rules")
    print(f"  native   {report.native.num_states:4d} states")
    print(f"  compiled {report.compiled.num_states:4d} states")
    print(f"  verdict  {report.verdict} ({report.seconds:.1f} s)")
