"""
Conversion of pattern-free DFAs into equivalent reversible DFAs.

The minimal SCC (w.r.t. reachability) that holds irreversible states is replaced by as
many copies as the largest same-letter in-degree of its states, and the transitions
entering it from outside are spread over the copies so that no copy is entered twice on
a letter. Repeating this until no irreversible state is left gives a reversible DFA;
started from the minimum DFA it gives a minimal one.
"""
import logging
from typing import Dict, List, Tuple

from core.automaton import Dfa, Transition, fresh_name
from core.errors import ForbiddenPattern
from core.minimize import minimize
from core.models import ConversionStep, ConversionTrace, CopyCount, Morphism
from core.reversibility import find_pattern_in, irreversible_states, require_minimum
from core.scc import sccs

logger = logging.getLogger(__name__)


def _pick_component(dfa: Dfa, irreversible) -> List[str]:
    """Minimal irreversible component, smallest canonical index among ties."""
    decomposition = sccs(dfa)
    candidates = sorted({decomposition.component_of[s] for s in irreversible})
    minimal = [
        i for i in candidates
        if not any(j != i and decomposition.precedes(j, i) for j in candidates)
    ]
    return dfa.sort_states(decomposition.components[minimal[0]])


def _replicate(dfa: Dfa, members: List[str], origin: Dict[str, str]
               ) -> Tuple[Dfa, Dict[str, str], ConversionStep]:
    """Replace one component by alpha copies and redistribute its entering transitions."""
    component = set(members)
    alpha = max(len(dfa.reverse_delta(s, x)) for s in members for x in dfa.alphabet)

    taken = set(dfa.states)
    copy: Dict[Tuple[str, int], str] = {}
    for s in members:
        for k in range(alpha):
            copy[(s, k)] = fresh_name(f"{s}#{k}", taken)
            taken.add(copy[(s, k)])

    delta: Dict[Tuple[str, str], str] = {}
    occupied: Dict[Tuple[str, str], set] = {}
    entries: List[Transition] = []
    for (src, letter), dst in dfa.delta.items():
        if src in component and dst in component:
            for k in range(alpha):
                delta[(copy[(src, k)], letter)] = copy[(dst, k)]
            occupied[(dst, letter)] = set(range(alpha))
        elif src in component:
            for k in range(alpha):
                delta[(copy[(src, k)], letter)] = dst
        elif dst in component:
            entries.append((src, letter, dst))
        else:
            delta[(src, letter)] = dst

    index = dfa.canonical_index
    entries.sort(key=lambda t: (index[t[0]], t[1]))
    redistribution: Dict[Transition, int] = {}
    for src, letter, dst in entries:
        used = occupied.setdefault((dst, letter), set())
        free = [k for k in range(alpha) if k not in used]
        if not free:
            # only possible when an entry shares its letter with an internal transition
            raise ForbiddenPattern(find_pattern_in(dfa))
        used.add(free[0])
        redistribution[(src, letter, dst)] = free[0]
        delta[(src, letter)] = copy[(dst, free[0])]

    states: List[str] = []
    new_origin: Dict[str, str] = {}
    for s in dfa.states:
        if s in component:
            for k in range(alpha):
                states.append(copy[(s, k)])
                new_origin[copy[(s, k)]] = origin[s]
        else:
            states.append(s)
            new_origin[s] = origin[s]

    initial = copy[(dfa.initial, 0)] if dfa.initial in component else dfa.initial
    finals = frozenset(
        copy[(s, k)] if s in component else s
        for s in dfa.finals for k in (range(alpha) if s in component else (0,))
    )
    replicated = Dfa(tuple(states), dfa.alphabet, initial, finals, delta).trim()
    new_origin = {s: new_origin[s] for s in replicated.states}
    logger.info(f"Replicated component {{{', '.join(members)}}} into {alpha} copies")
    return replicated, new_origin, ConversionStep(tuple(members), alpha, redistribution)


def _convert(dfa: Dfa) -> Tuple[Dfa, Dict[str, str], ConversionTrace]:
    current = dfa
    origin = {s: s for s in dfa.states}
    trace = ConversionTrace()
    while True:
        irreversible = irreversible_states(current)
        if not irreversible:
            break
        members = _pick_component(current, irreversible)
        current, origin, step = _replicate(current, members, origin)
        trace.steps.append(step)
    return current.trim(), origin, trace


def to_minimal_revdfa(min_dfa: Dfa) -> Tuple[Dfa, Morphism, ConversionTrace]:
    """
    Convert a minimum DFA into the canonical minimal reversible DFA.

    Args:
        min_dfa: Minimum DFA without the forbidden pattern

    Returns:
        Tuple of (reversible DFA, morphism onto min_dfa, replication trace)
    """
    require_minimum(min_dfa, "to_minimal_revdfa")
    witness = find_pattern_in(min_dfa)
    if witness is not None:
        raise ForbiddenPattern(witness)
    result, origin, trace = _convert(min_dfa)
    logger.info(f"Minimal reversible DFA: {min_dfa.size} -> {result.size} states "
                f"in {len(trace.steps)} replications")
    return result, Morphism(result, min_dfa, origin), trace


def to_revdfa_general(dfa: Dfa) -> Tuple[Dfa, Morphism]:
    """
    Convert any pattern-free DFA into an equivalent reversible DFA.

    Returns:
        Tuple of (reversible DFA, morphism onto minimize(dfa))
    """
    witness = find_pattern_in(dfa)
    if witness is not None:
        raise ForbiddenPattern(witness)
    result, origin, _ = _convert(dfa)
    minimum, to_minimum = minimize(dfa)
    mapping = {s: to_minimum(origin[s]) for s in result.states}
    return result, Morphism(result, minimum, mapping)


def copy_counts(min_dfa: Dfa) -> CopyCount:
    """c(q) for every state q of a pattern-free minimum DFA."""
    _, morphism, _ = to_minimal_revdfa(min_dfa)
    return CopyCount(morphism.fiber_sizes())
