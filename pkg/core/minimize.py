"""
Minimization and language equivalence.

Minimization completes the partial automaton with a sink, refines the partition with
Hopcroft's algorithm, drops the sink class and re-trims. Equivalence runs a synchronized
product search with union-find (Hopcroft-Karp) and returns a distinguishing word.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Hashable, Optional, Set, Tuple

from core.automaton import Dfa, Word
from core.models import Morphism
from core.unionfind import UnionFind

logger = logging.getLogger(__name__)

_SINK = None


def _hopcroft_partition(dfa: Dfa) -> Set[FrozenSet]:
    """Equivalence classes of the completed automaton (sink included as None)."""
    states = list(dfa.states) + [_SINK]
    inverse: Dict[Tuple[str, Optional[str]], Set] = {}
    for state in states:
        for letter in dfa.alphabet:
            target = dfa.delta.get((state, letter)) if state is not _SINK else _SINK
            inverse.setdefault((letter, target), set()).add(state)

    finals = frozenset(dfa.finals)
    others = frozenset(s for s in states if s not in finals)
    partition = {block for block in (finals, others) if block}
    if len(partition) <= 1:
        return partition

    block_of = {s: block for block in partition for s in block}
    worklist = {finals if len(finals) <= len(others) else others}

    while worklist:
        splitter = worklist.pop()
        for letter in dfa.alphabet:
            affected: Dict[FrozenSet, Set] = {}
            for target in splitter:
                for pred in inverse.get((letter, target), ()):
                    affected.setdefault(block_of[pred], set()).add(pred)

            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                inside = frozenset(overlap)
                outside = block - inside
                partition.remove(block)
                partition.update((inside, outside))
                for s in inside:
                    block_of[s] = inside
                for s in outside:
                    block_of[s] = outside
                if block in worklist:
                    worklist.remove(block)
                    worklist.update((inside, outside))
                else:
                    worklist.add(inside if len(inside) <= len(outside) else outside)
    return partition


def minimize(dfa: Dfa) -> Tuple[Dfa, Morphism]:
    """
    Compute the minimum DFA of L(dfa).

    Each class is named after its canonical-first member, so a minimum input comes back
    with its own names.

    Returns:
        Tuple of (minimum DFA, morphism from dfa onto it)
    """
    partition = _hopcroft_partition(dfa)
    index = dfa.canonical_index
    mapping: Dict[str, str] = {}
    for block in partition:
        if _SINK in block:
            continue
        members = sorted(block, key=index.__getitem__)
        for s in members:
            mapping[s] = members[0]

    delta = {}
    for (src, letter), dst in dfa.delta.items():
        if src in mapping and dst in mapping:
            delta[(mapping[src], letter)] = mapping[dst]
    names = [s for s in dfa.canonical_order if mapping.get(s) == s]
    minimum = Dfa(tuple(names), dfa.alphabet, mapping[dfa.initial],
                  frozenset(mapping[s] for s in dfa.finals if s in mapping), delta).trim()
    logger.debug(f"Minimized {dfa.size} states to {minimum.size}")
    return minimum, Morphism(dfa, minimum, mapping)


def equivalent(a: Dfa, b: Dfa) -> Tuple[bool, Optional[Word]]:
    """
    Decide L(a) = L(b) over the union of both alphabets.

    Returns:
        (True, None), or (False, w) with w accepted by exactly one of the automata
    """
    letters = sorted(set(a.alphabet) | set(b.alphabet))
    left = lambda s: ("A", s)
    right = lambda s: ("B", s)

    sets = UnionFind([])
    start = (a.initial, b.initial)
    sets.add(left(a.initial))
    sets.add(right(b.initial))
    sets.union(left(a.initial), right(b.initial))
    queue = deque([(start, "")])

    while queue:
        (p, q), word = queue.popleft()
        if (p in a.finals) != (q in b.finals):
            logger.debug(f"Distinguishing word found: '{word}'")
            return False, word
        for letter in letters:
            np = a.delta.get((p, letter)) if p is not None else None
            nq = b.delta.get((q, letter)) if q is not None else None
            x: Hashable = left(np)
            y: Hashable = right(nq)
            sets.add(x)
            sets.add(y)
            if sets.union(x, y):
                queue.append(((np, nq), word + letter))
    return True, None
