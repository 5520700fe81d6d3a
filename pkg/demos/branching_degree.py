"""A pi-term whose branching degree grows with its size.

The counter keeps a linked list of one-bit cells; every increment adds a
cell, and flushing reads the whole list back. Unrolling its replications
to n + 1 copies gives a finite system, and some reachable state in it has
n + 1 distinct moves up to equivalence. No bound on the degree holds for
the unrolled family, which is what separates the calculus from machines
with a fixed finite control.
"""

from rtmpi import corpus
from rtmpi.equivalence import branching_degree
from rtmpi.lts import explore, restrict
from rtmpi.pi import NameUniverse, pi_generator

u = corpus.BRANCHING_INPUT
for n in (1, 2, 3):
    l = restrict(explore(pi_generator(corpus.branching_counter(n), NameUniverse((u,)))), (u,))
    d = branching_degree(l)
    widest = max(d.per_state, key=d.per_state.get)
    print(f"n={n}: {l.num_states} states, degree {d.supremum} (first reached in state {widest})")
