"""Branching bisimilarity, with and without divergence preservation.

Both checks run signature refinement on the disjoint union of two systems:
states of the first keep their numbers, states of the second are shifted by
the size of the first. A τ-step is *inert* under a partition when it stays
inside its block. The signature of a state is the set of pairs
``(label, target block)`` reachable through inert τ-steps followed by one
non-inert step; in divergence-preserving mode it also records whether the
state can do infinitely many inert τ-steps. Blocks are split by signature
until nothing changes.

A brute-force :func:`oracle` computes the same relations from their
definition, for cross-checking on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .lts import FrontierError, Lts

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
INDETERMINATE = "indeterminate-frontier"

ORACLE_LIMIT = 10_000
_DIVERGES = ("divergence",)


@dataclass(frozen=True)
class Partition:
    blocks: tuple
    block_of: tuple

    @classmethod
    def from_block_of(cls, block_of) -> "Partition":
        index, blocks = {}, []
        norm = []
        for s, b in enumerate(block_of):
            if b not in index:
                index[b] = len(blocks)
                blocks.append([])
            blocks[index[b]].append(s)
            norm.append(index[b])
        return cls(tuple(frozenset(b) for b in blocks), tuple(norm))

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls.from_block_of([0] * n)

    def __len__(self):
        return len(self.blocks)

    def same(self, s: int, t: int) -> bool:
        return self.block_of[s] == self.block_of[t]


@dataclass(frozen=True)
class Evidence:
    """An obligation the other side cannot meet: ``state`` of system
    ``side`` (1 or 2) has ``label`` into the block containing ``target``,
    or diverges when ``label`` is ``None``."""

    side: int
    state: int
    label: Optional[str]
    target: Optional[int] = None
    target_side: Optional[int] = None

    def describe(self) -> str:
        if self.label is None:
            return f"state {self.state} of system {self.side} diverges"
        return (
            f"state {self.state} of system {self.side} can do {self.label} into the class of "
            f"state {self.target} of system {self.target_side}, which the other side cannot match"
        )


@dataclass(frozen=True)
class EquivResult:
    verdict: str
    witness: Optional[frozenset] = None
    evidence: Optional[Evidence] = None
    partition: Optional[Partition] = None

    @property
    def equivalent(self) -> bool:
        return self.verdict == EQUIVALENT


# ------------------------------------------------------------------ graphs


def _union(l1: Lts, l2: Lts):
    n1 = l1.num_states
    out = [list(l1.out(s)) for s in range(n1)]
    out += [[(a, t + n1) for a, t in l2.out(s)] for s in range(l2.num_states)]
    return out, n1


def _sccs(n, succ):
    """Strongly connected components in reverse topological order: every
    component comes after those it reaches."""
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from((s, t) for s in range(n) for t in succ[s])
    c = nx.condensation(g)
    return [sorted(c.nodes[k]["members"]) for k in reversed(list(nx.topological_sort(c)))]


def _diverging(n, succ, allowed=None):
    """States with an infinite path in the graph ``succ`` (restricted to
    ``allowed`` when given)."""
    if allowed is not None:
        succ = [[t for t in succ[s] if t in allowed] if s in allowed else [] for s in range(n)]
    result = set()
    for comp in _sccs(n, succ):
        members = set(comp)
        cyclic = len(comp) > 1 or any(t == comp[0] for t in succ[comp[0]])
        if cyclic or any(t in result for s in comp for t in succ[s] if t not in members):
            result |= members
    return result


def _inert(out, block):
    return [[t for a, t in out[s] if a.is_tau and block[t] == block[s]] for s in range(len(out))]


def _signatures(out, block, divergence):
    n = len(out)
    inert = _inert(out, block)
    sig = [None] * n
    for comp in _sccs(n, inert):
        acc = set()
        for s in comp:
            for a, t in out[s]:
                if not (a.is_tau and block[t] == block[s]):
                    acc.add((a, block[t]))
            for t in inert[s]:
                if sig[t] is not None:
                    acc |= sig[t]
        for s in comp:
            sig[s] = acc
    if divergence:
        for s in _diverging(n, inert):
            sig[s] = sig[s] | {_DIVERGES}
    return sig


def _refine(out, divergence, watch=None):
    """Coarsest stable partition of the states of ``out``. ``watch`` is a
    pair of states whose separation is explained by the returned evidence
    ``(state, obligation, block list)``."""
    n = len(out)
    block = [0] * n
    count = 1
    evidence = None
    while True:
        sig = _signatures(out, block, divergence)
        keys = {}
        new = [keys.setdefault((block[s], frozenset(sig[s])), len(keys)) for s in range(n)]
        if watch and evidence is None and block[watch[0]] == block[watch[1]] and new[watch[0]] != new[watch[1]]:
            s, t = watch
            extra = sig[s] - sig[t]
            if not extra:
                s, t = t, s
                extra = sig[s] - sig[t]
            evidence = (s, min(extra, key=repr), list(block))
        if len(keys) == count:
            return block, evidence
        block, count = new, len(keys)


def _evidence(found, n1):
    if found is None:
        return None
    s, obligation, block = found
    side, local = (1, s) if s < n1 else (2, s - n1)
    if obligation == _DIVERGES:
        return Evidence(side, local, None)
    label, b = obligation
    target = block.index(b)
    target_side, target = (1, target) if target < n1 else (2, target - n1)
    return Evidence(side, local, label.render(), target, target_side)


def _check_frontier(l1, l2, allow_frontier):
    if l1.frontier or l2.frontier:
        if not allow_frontier:
            raise FrontierError("cannot decide equivalence of truncated systems; raise the bounds or acknowledge the frontier")
        return True
    return False


def _decide(l1: Lts, l2: Lts, divergence: bool, allow_frontier: bool) -> EquivResult:
    if _check_frontier(l1, l2, allow_frontier):
        return EquivResult(INDETERMINATE)
    out, n1 = _union(l1, l2)
    i1, i2 = l1.initial, l2.initial + n1
    block, found = _refine(out, divergence, (i1, i2))
    partition = Partition.from_block_of(block)
    if block[i1] != block[i2]:
        return EquivResult(INEQUIVALENT, evidence=_evidence(found, n1), partition=partition)
    witness = frozenset(
        (s, t - n1) for s in range(n1) for t in range(n1, len(out)) if block[s] == block[t]
    )
    return EquivResult(EQUIVALENT, witness=witness, partition=partition)


def branching_bisim(l1: Lts, l2: Lts, allow_frontier: bool = False) -> EquivResult:
    return _decide(l1, l2, False, allow_frontier)


def dp_branching_bisim(l1: Lts, l2: Lts, allow_frontier: bool = False) -> EquivResult:
    return _decide(l1, l2, True, allow_frontier)


def equivalent(l1: Lts, l2: Lts, divergence: bool = True, allow_frontier: bool = False) -> EquivResult:
    return _decide(l1, l2, divergence, allow_frontier)


# ------------------------------------------------------------ relations


def _tau_closure(l: Lts, s: int) -> set:
    seen, todo = {s}, [s]
    while todo:
        x = todo.pop()
        for a, t in l.out(x):
            if a.is_tau and t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def _tau_plus(l: Lts, s: int) -> set:
    seen, todo = set(), [s]
    while todo:
        x = todo.pop()
        for a, t in l.out(x):
            if a.is_tau and t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def _matched(a, target_ok, mover: Lts, start: int, rel_here, closure) -> bool:
    """Is there ``start ->* m -(a)-> m'`` with ``rel_here(m)`` and
    ``target_ok(m')``?"""
    for m in closure(start):
        if not rel_here(m):
            continue
        if a.is_tau and target_ok(m):
            return True
        for b, t in mover.out(m):
            if b == a and target_ok(t):
                return True
    return False


def _violates(l1, l2, r, s1, s2, divergence, c1, c2) -> bool:
    for a, t1 in l1.out(s1):
        if not _matched(a, lambda t2: (t1, t2) in r, l2, s2, lambda m: (s1, m) in r, c2):
            return True
    for a, t2 in l2.out(s2):
        if not _matched(a, lambda t1: (t1, t2) in r, l1, s1, lambda m: (m, s2) in r, c1):
            return True
    if divergence:
        if _unmatched_divergence(l1, l2, s1, s2, lambda x, y: (x, y) in r):
            return True
        if _unmatched_divergence(l2, l1, s2, s1, lambda x, y: (y, x) in r):
            return True
    return False


def _unmatched_divergence(la: Lts, lb: Lts, sa: int, sb: int, related) -> bool:
    """Is there an infinite τ-path from ``sa`` along states related to
    ``sb``, none of which is related to a state in ``sb ->+``?"""
    later = _tau_plus(lb, sb)
    allowed = {x for x in range(la.num_states) if related(x, sb) and not any(related(x, y) for y in later)}
    if sa not in allowed:
        return False
    tau = [[t for a, t in la.out(x) if a.is_tau] for x in range(la.num_states)]
    return sa in _diverging(la.num_states, tau, allowed)


def check_relation(l1: Lts, l2: Lts, r, divergence: bool = False) -> bool:
    """Whether ``r`` (pairs of state numbers) is a branching bisimulation
    from ``l1`` to ``l2``, divergence-preserving when ``divergence`` is
    set. The initial states need not be related."""
    if l1.frontier or l2.frontier:
        raise FrontierError("relations are only checked on untruncated systems")
    r = frozenset(r)
    for s1, s2 in r:
        if not (0 <= s1 < l1.num_states and 0 <= s2 < l2.num_states):
            raise ValueError(f"pair ({s1}, {s2}) out of range")
    c1 = _cached(lambda s: _tau_closure(l1, s))
    c2 = _cached(lambda s: _tau_closure(l2, s))
    return not any(_violates(l1, l2, r, s1, s2, divergence, c1, c2) for s1, s2 in r)


def _cached(f):
    memo = {}

    def g(s):
        if s not in memo:
            memo[s] = f(s)
        return memo[s]

    return g


def oracle(l1: Lts, l2: Lts, divergence: bool = False, limit: int = ORACLE_LIMIT) -> EquivResult:
    """Greatest-fixpoint computation straight from the definition: start
    from all pairs and delete violating ones until none is left."""
    if l1.frontier or l2.frontier:
        raise FrontierError("the oracle needs untruncated systems")
    if l1.num_states * l2.num_states > limit:
        raise ValueError(f"oracle limited to {limit} state pairs")
    r = {(s1, s2) for s1 in range(l1.num_states) for s2 in range(l2.num_states)}
    c1 = _cached(lambda s: _tau_closure(l1, s))
    c2 = _cached(lambda s: _tau_closure(l2, s))
    changed = True
    while changed:
        changed = False
        for pair in sorted(r):
            if _violates(l1, l2, r, pair[0], pair[1], divergence, c1, c2):
                r.discard(pair)
                changed = True
    if (l1.initial, l2.initial) in r:
        return EquivResult(EQUIVALENT, witness=frozenset(r))
    return EquivResult(INEQUIVALENT)


# ------------------------------------------------------------ analysis


def divergence_classes(l: Lts, p: Partition) -> set:
    """States with an infinite τ-path that never leaves their block."""
    out = [l.out(s) for s in range(l.num_states)]
    return _diverging(l.num_states, _inert(out, p.block_of))


def bisimilarity_partition(l: Lts, divergence: bool = True, allow_frontier: bool = False) -> Partition:
    """The partition of the states of ``l`` into equivalence classes."""
    if l.frontier and not allow_frontier:
        raise FrontierError("cannot partition a truncated system")
    block, _ = _refine([l.out(s) for s in range(l.num_states)], divergence)
    return Partition.from_block_of(block)


@dataclass(frozen=True)
class Degree:
    per_state: dict
    supremum: int


def branching_degree(l: Lts) -> Degree:
    """Number of distinct ``(action, class)`` moves available to each state
    up to divergence-preserving branching bisimilarity, where a τ-move
    counts only if it leaves the class of the state."""
    p = bisimilarity_partition(l)
    out = [l.out(s) for s in range(l.num_states)]
    sig = _signatures(out, list(p.block_of), False)
    per_state = {s: len(sig[s]) for s in range(l.num_states)}
    reach = l.reachable()
    return Degree(per_state, max((per_state[s] for s in reach), default=0))
